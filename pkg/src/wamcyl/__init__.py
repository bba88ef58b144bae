"""Weakly admissible meshes of the cylinder, approximate Fekete / discrete
Leja node extraction, and polynomial interpolation, least squares and
cubature at those nodes."""

from .approx import (
    Interpolant,
    LsqProjector,
    build_lsq,
    eval_interpolant,
    interpolate,
    lebesgue_constant,
    lsq_fit,
    lsq_norm,
)
from .cubature import (
    CubatureRule,
    apply_rule,
    cubature_weights,
    moments_wade,
    oracle_integral,
    product_rule,
)
from .densela import PivotRecord, cond_2, cond_inf, lu_row_pivot, qr_col_pivot, solve
from .errors import (
    ConvergenceError,
    DomainError,
    RankDeficiencyError,
    SingularMatrixError,
    WamcylError,
)
from .extract import ExtractionResult, OrthoBasis, orthogonalize, select_afp, select_dlp
from .meshgen import (
    Mesh,
    cheb_lobatto,
    control_mesh,
    disk_wam,
    generate_mesh,
    padua,
    wam1,
    wam2,
)
from .polybasis import (
    BasisSet,
    MultiIndex,
    cheb_t,
    cheb_u,
    enumerate_basis,
    vandermonde,
    wade_eval,
)
from .testfns import REGISTRY as TEST_FUNCTIONS
from .testfns import eval_test, get_function

__version__ = "0.1.0"
