"""
Multiqubit density operators as real tensors of coherences.

The package is organised bottom-up:

- :mod:`cohtensor.smallherm`  small dense Hermitian linear algebra
- :mod:`cohtensor.coherence`  the product-operator basis and conversions
- :mod:`cohtensor.analysis`   reductions, partial transposes and entanglement tests
- :mod:`cohtensor.mixtures`   product-state mixtures and separability gadgets
- :mod:`cohtensor.families`   worked state families with closed-form spectra
- :mod:`cohtensor.cli`        the ``cohtensor`` command
"""

from .analysis import (
    AnalysisReport,
    analyze,
    correlation_tensor,
    index2_free,
    max_realignment_norm,
    norm_decomposition,
    partial_trace,
    partial_transpose,
    ppt_test,
    purity,
    realignment_norm,
    reduce_to,
    reduced_purities,
    trace_square_chain,
    uncorrelation_test,
)
from .coherence import (
    BlochVector,
    bloch_vector,
    density_to_tensor,
    product_operator,
    tensor_to_density,
)
from .errors import CohTensorError
from .families import bell, family_tensor, npt_family, tripartite, upb_family, werner, werner_prime
from .mixtures import (
    Mixture,
    compile_mixture,
    feasibility,
    gadget_a,
    gadget_b,
    separability_scan,
    upb_mixture_36,
    werner_mixture,
)
from .smallherm import hermitian_eigenvalues, singular_values

__version__ = "0.1.0"
