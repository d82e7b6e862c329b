"""Exception types shared across the package."""


class FusionlabError(Exception):
    """Base class for all package-specific errors."""


class GroupTooLarge(FusionlabError):
    """Permutation closure or product exceeded the configured element cap."""


class CatalogMiss(FusionlabError, KeyError):
    """Requested group key is not in the catalog."""


class InvalidFusion(FusionlabError):
    """A partition of the class set does not induce an association scheme."""


class BlockNotInPartition(FusionlabError):
    """A named block is not one of the partition's blocks."""


class SchemeAxiomError(FusionlabError):
    """A color matrix violates the association-scheme axioms.

    Carries the list of :class:`fusionlab.schemes.AxiomViolation` records.
    """

    def __init__(self, violations):
        self.violations = list(violations)
        heads = "; ".join(str(v) for v in self.violations[:3])
        more = "" if len(self.violations) <= 3 else f" (+{len(self.violations) - 3} more)"
        super().__init__(f"{len(self.violations)} axiom violation(s): {heads}{more}")
