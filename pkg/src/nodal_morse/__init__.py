"""Nodal statistics and magnetic flux Hessians on finite graphs.

Builds discrete Schrodinger operators on graphs, counts eigenvector sign
changes and nodal domains, and identifies the nodal defect with the Morse
index of the eigenvalue as a function of magnetic flux, both analytically
(edge quadratic form and Hodge-type splitting) and by finite differences
in flux coordinates.  A circle analogue via the Floquet discriminant of
Hill operators lives in :mod:`nodal_morse.hill`.
"""

from .backend import COMPILED, backend_name
from .errors import NodalMorseError
from .graphs import Graph, OneForm, build_graph, differential, gradient_subspace_basis
from .hodge import (
    EdgeForm,
    HodgeSplit,
    chord_flux_basis,
    compare_hessians,
    conjugated_form,
    codifferential_matrix,
    curvature_matrix,
    edge_quadratic_form,
    hodge_split,
    index_on_subspace,
)
from .magnetic import (
    FluxCoordinates,
    MagneticField,
    flux_eigenvalue,
    flux_gradient,
    flux_hessian,
    gauge_transform,
    magnetic_operator,
    morse_index,
    reduce_to_flux,
)
from .hill import (
    BandEdge,
    HillOperator,
    band_edges,
    curvature_identity_check,
    discriminant,
    floquet_eigenvalue,
    monodromy,
    parse_potential,
)
from .nodal import NodalReport, nodal_domains, nodal_report, sign_changes
from .operators import (
    SchrodingerOperator,
    build_operator,
    quadratic_form,
    random_operator,
    shift_diagonal,
)
from .perturbation import (
    MatrixCurve,
    eigenvalue_first_derivative,
    eigenvalue_second_derivative,
)
from .special import (
    BipartiteReport,
    DeterminantReport,
    VanishingReport,
    bipartite_check,
    determinant_index_check,
    vanishing_analysis,
)
from .spectral import (
    Eigenpair,
    HypothesisReport,
    check_hypotheses,
    eig_hermitian,
    eig_symmetric,
    hermitian_eigenvalues,
)

__version__ = "0.1.0"
