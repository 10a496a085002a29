"""Sets of naturals whose sumsets have a prescribed asymptotic density."""

from .constructions import (
    beatty_construction,
    jfold_residues,
    rational_case_params,
    rational_construction,
    t_j_set,
    verify_case_b,
)
from .density import density_report, exact_density, index_density
from .greedy import build_greedy, check_ratio_monotone, run_greedy
from .numeric import (
    DensityTarget,
    FixedPointReal,
    IrrationalNumber,
    PrecisionError,
    floor_mul,
    frac_compare,
    parse_density,
    parse_theta,
)
from .sets import (
    FiniteSet,
    GroundSet,
    PeriodicSet,
    counting,
    floor_scale,
    iterated_sumset,
    materialize,
    sumset,
)

__version__ = "0.1.0"
