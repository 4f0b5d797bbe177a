"""Exception hierarchy shared by all modules."""


class NodalMorseError(Exception):
    """Base class for every error raised by this package."""


# graph construction
class DisconnectedGraph(NodalMorseError):
    pass


class InvalidEdge(NodalMorseError):
    pass


class DimensionMismatch(NodalMorseError):
    pass


# operator validation
class NotInOG(NodalMorseError):
    """Matrix violates the edge sign pattern (negative on edges, zero off)."""


class NotSymmetric(NodalMorseError):
    pass


class InvalidRange(NodalMorseError):
    pass


# eigensolvers
class NoConvergence(NodalMorseError):
    pass


class EmbeddingPairingFailure(NodalMorseError):
    """Doubled eigenvalues of the real embedding could not be matched."""


# magnetic / finite differences
class GraphMismatch(NodalMorseError):
    pass


class SimplicityLost(NodalMorseError):
    """Eigenvalue gap collapsed at or within a finite-difference stencil."""


class IllConditioned(NodalMorseError):
    """Step-halving cross-check of a finite difference disagreed."""


# nodal counts
class VanishingVertex(NodalMorseError):
    """Eigenvector component at some vertex is numerically zero."""


class HypothesesViolated(NodalMorseError):
    """Simplicity or nonvanishing hypothesis fails for the requested level."""


# quadratic form / splitting
class NotShifted(NodalMorseError):
    """Operator was not shifted so that the working eigenvalue is zero."""


class SplitFailure(NodalMorseError):
    """Gradient subspace and codifferential kernel do not split the space."""


class RankDeficientBasis(NodalMorseError):
    pass


# eigenvalue perturbation
class NotEigenvector(NodalMorseError):
    pass


class NotCritical(NodalMorseError):
    """First derivative of the eigenvalue is not zero."""


class SolveFailure(NodalMorseError):
    pass


# Hill / band structure
class ScanTooCoarse(NodalMorseError):
    """Band-edge scan produced an inconsistent interlacing pattern."""


class BandNotFound(NodalMorseError):
    pass


class NonMonotone(NodalMorseError):
    pass


class DegenerateEdge(NodalMorseError):
    pass


# vanishing-vertex analysis
class NotSingleVanishing(NodalMorseError):
    pass


class DegenerateEigenvalue(NodalMorseError):
    pass


class NotBipartite(NodalMorseError):
    pass
