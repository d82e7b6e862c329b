import numpy
from setuptools import Extension, setup

try:
    from Cython.Build import cythonize
except ImportError:
    # Pure-python fallback kernel is selected at import time, so a build
    # without Cython still yields a working package.
    ext_modules = []
else:
    ext_modules = cythonize(
        [
            Extension(
                "fusionlab._speedups",
                ["src/fusionlab/_speedups.pyx"],
                include_dirs=[numpy.get_include()],
                extra_compile_args=["-O3"],
                optional=True,
            )
        ],
        compiler_directives={"language_level": "3"},
    )

setup(ext_modules=ext_modules)
