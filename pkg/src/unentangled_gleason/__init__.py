"""Frame functions on product states: Born-operator reconstruction, unentangled
bases with a qubit factor, product-basis counterexamples and entangled subspaces."""

__version__ = "0.1.0"

from .tensor_core import (
    OrthonormalReport,
    ProductState,
    Subspace,
    complement_basis,
    kernel_basis,
    orthonormal_report,
    overlap,
    qubit_hat,
    tensor_expand,
)
from .bases import (
    BasisBlockDecomposition,
    NotOrthonormal,
    NotQubitFirstFactor,
    StructureViolation,
    UnentangledBasis,
    decompose_qubit_basis,
    is_product_basis,
    mixed_unentangled_basis,
    qubit_block_basis,
    random_product_basis,
    reversed_structure_basis,
)
from .frames import (
    BornOracle,
    CounterexampleOracle,
    FrameOracle,
    QubitFrameFn,
    born_oracle,
    counterexample_oracle,
    phase_invariance_check,
    product_frame_oracle,
    qubit_frame_eval,
    verify_frame,
)
from .reconstruct import factor_polarization_map, hermitian_fit_residual, reconstruct
from .subspaces import (
    entangled_verdict,
    exact_rank1_test_small,
    max_entangled_dim,
    product_overlap_search,
    vandermonde_subspace,
)
