"""Thompson and Hilbert geometry of symmetric cones: Jordan-algebra kernel,
order gauges, closed-form horofunctions, detour distances and numerical
limit oracles."""

from .algebra import (
    AlgebraDescriptor,
    Element,
    SpectralDecomposition,
    complex_hermitian,
    diag,
    real_symmetric,
    spectral_decompose,
    spin,
    spin_factor,
    unit,
)
from .errors import AlgebraMismatchError, ConeError, DomainError, NotInteriorError, ParamsError, SpectralError
from .hilbert import (
    HilbertHorofunction,
    VariationHorofunction,
    busemann_path_variation,
    detour_distance_variation,
    eval_hilbert_horofunction,
    eval_variation_horofunction,
    exp_extension_hilbert,
    same_part_hilbert,
    same_part_variation,
)
from .limits import limit_functional
from .order import hilbert_distance, lower_gauge, project_det_one, thompson_distance, upper_gauge
from .thompson import (
    BoundaryParams,
    BusemannPath,
    HoroPair,
    MetricFunctional,
    busemann_path,
    detour_distance_thompson,
    eval_norm_horofunction,
    eval_thompson_horofunction,
    exp_extension_thompson,
    params_to_pair,
    same_part_thompson,
)

__version__ = "0.1.0"
