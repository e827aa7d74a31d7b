"""Finite-dimensional tensor-product linear algebra.

Multi-indices are ordered lexicographically with factor 1 slowest, i.e. the
ordering produced by ``np.kron`` and by ``reshape(dims)`` in C order.
"""

from dataclasses import dataclass
from functools import reduce

import numpy as np
import scipy.linalg

NORM_TOL = 1e-12
ORTHO_TOL = 1e-10
RANK_RTOL = 1e-10


def check_dims(dims, min_dim=2):
    dims = tuple(int(d) for d in dims)
    if len(dims) == 0:
        raise ValueError("dims must contain at least one factor")
    if any(d < min_dim for d in dims):
        raise ValueError(f"every factor dimension must be >= {min_dim}, got {dims}")
    return dims


def total_dim(dims):
    return int(np.prod(dims))


def canonical_phase(v, tol=NORM_TOL):
    """Return ``(w, phase)`` with ``v = phase * w`` and ``w`` in canonical form.

    Canonical form: the largest-modulus amplitude is real and nonnegative.
    Near-ties (within ``tol``) go to the lowest index.
    """
    v = np.asarray(v, dtype=np.complex128)
    mod = np.abs(v)
    top = mod.max() if mod.size else 0.0
    if top == 0:
        return v.copy(), 1.0 + 0j
    k = int(np.argmax(mod >= top - tol))
    phase = complex(v[k].real / mod[k], v[k].imag / mod[k])
    w = v * np.conj(phase)
    w[k] = mod[k]
    return w, phase


def kron_factors(vectors):
    """Kronecker product of arbitrary (not necessarily unit) factor vectors."""
    vectors = [np.asarray(v, dtype=np.complex128) for v in vectors]
    return reduce(np.kron, vectors)


class ProductState:
    """Unit product vector ``phase * a_1 ⊗ ... ⊗ a_n``.

    Each stored factor is a unit vector in canonical phase; the collected
    phases live in ``phase`` so that :func:`tensor_expand` reproduces the
    vector that was passed in.
    """

    __slots__ = ("factors", "phase")

    def __init__(self, factors, phase=1.0):
        fs = []
        total_phase = complex(phase)
        for f in factors:
            f = np.asarray(f, dtype=np.complex128).reshape(-1)
            nrm = np.linalg.norm(f)
            if abs(nrm - 1) > NORM_TOL:
                raise ValueError(f"factor is not a unit vector (norm {nrm!r})")
            w, ph = canonical_phase(f)
            fs.append(w)
            total_phase *= ph
        if not fs:
            raise ValueError("a product state needs at least one factor")
        self.factors = tuple(fs)
        mod = abs(total_phase)
        # leave already-unit phases untouched so encode/decode is bit-exact
        self.phase = total_phase if abs(mod - 1) < 1e-15 else total_phase / mod

    @classmethod
    def from_unnormalized(cls, factors):
        return cls([np.asarray(f, dtype=np.complex128) / np.linalg.norm(f) for f in factors])

    @property
    def dims(self):
        return tuple(f.shape[0] for f in self.factors)

    def scaled(self, j, lam):
        """Same state with factor ``j`` multiplied by the unit scalar ``lam``."""
        fs = list(self.factors)
        fs[j] = fs[j] * lam
        return ProductState(fs, self.phase)

    def rest(self, start=1):
        return ProductState(self.factors[start:])

    def __repr__(self):
        return f"ProductState(dims={self.dims}, phase={self.phase:.3g})"


def tensor_expand(p, dims=None):
    if dims is not None and tuple(dims) != p.dims:
        raise ValueError(f"product state has dims {p.dims}, expected {tuple(dims)}")
    return p.phase * kron_factors(p.factors)


def overlap(x, y):
    """Hermitian inner product, conjugate-linear in the first slot."""
    x = np.asarray(x)
    y = np.asarray(y)
    if x.shape != y.shape:
        raise ValueError(f"length mismatch: {x.shape} vs {y.shape}")
    return complex(np.vdot(x, y))


def qubit_hat(a):
    """The canonical unit qubit orthogonal to ``a``."""
    a = np.asarray(a, dtype=np.complex128).reshape(-1)
    if a.shape[0] != 2:
        raise ValueError(f"qubit_hat needs a 2-dimensional vector, got {a.shape[0]}")
    hat = np.array([-np.conj(a[1]), np.conj(a[0])])
    return canonical_phase(hat / np.linalg.norm(hat))[0]


def random_unit_vector(d, rng):
    v = rng.normal(size=d) + 1j * rng.normal(size=d)
    return v / np.linalg.norm(v)


def random_unitary(d, rng):
    """Haar-random unitary via QR of a complex Gaussian matrix."""
    z = (rng.normal(size=(d, d)) + 1j * rng.normal(size=(d, d))) / np.sqrt(2)
    q, r = np.linalg.qr(z)
    diag = np.diagonal(r)
    return q * (diag / np.abs(diag))


def random_product_state(dims, rng):
    return ProductState([random_unit_vector(d, rng) for d in dims])


def random_hermitian(n, rng, psd=False):
    z = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
    if psd:
        return z @ z.conj().T / n
    return (z + z.conj().T) / 2


def is_hermitian(op, tol=NORM_TOL):
    op = np.asarray(op)
    return op.ndim == 2 and op.shape[0] == op.shape[1] and np.abs(op - op.conj().T).max(initial=0.0) <= tol


@dataclass
class OrthonormalReport:
    max_deviation: float
    count: int
    ambient: int
    passed: bool

    def to_dict(self):
        return {"max_deviation": self.max_deviation, "count": self.count,
                "ambient": self.ambient, "passed": self.passed}


def orthonormal_report(vectors, tol=ORTHO_TOL, basis=False):
    """Check that ``vectors`` are orthonormal (and span the space if ``basis``)."""
    vecs = [np.asarray(v, dtype=np.complex128).reshape(-1) for v in vectors]
    if not vecs:
        return OrthonormalReport(0.0, 0, 0, not basis)
    ambient = vecs[0].shape[0]
    if any(v.shape[0] != ambient for v in vecs):
        raise ValueError("vectors have different lengths")
    m = np.column_stack(vecs)
    gram = m.conj().T @ m
    dev = float(np.abs(gram - np.eye(len(vecs))).max())
    ok = dev <= tol and (not basis or len(vecs) == ambient)
    return OrthonormalReport(dev, len(vecs), ambient, bool(ok))


class Subspace:
    """Subspace of C^N held as an N x k matrix of orthonormal columns."""

    def __init__(self, columns, ambient_dim=None, check=True):
        columns = np.asarray(columns, dtype=np.complex128)
        if columns.ndim == 1:
            columns = columns.reshape(-1, 1)
        if ambient_dim is not None and columns.size == 0:
            columns = np.zeros((ambient_dim, 0), dtype=np.complex128)
        if ambient_dim is not None and columns.shape[0] != ambient_dim:
            raise ValueError("columns do not match ambient_dim")
        if check and columns.shape[1]:
            gram = columns.conj().T @ columns
            dev = np.abs(gram - np.eye(columns.shape[1])).max()
            if dev > ORTHO_TOL:
                raise ValueError(f"subspace columns are not orthonormal (deviation {dev:.3g})")
        self.columns = columns

    @classmethod
    def span(cls, vectors, ambient_dim=None, rtol=RANK_RTOL):
        """Orthonormal basis for the span of arbitrary vectors (given as columns)."""
        vectors = np.asarray(vectors, dtype=np.complex128)
        if vectors.ndim == 1:
            vectors = vectors.reshape(-1, 1)
        n = vectors.shape[0] if ambient_dim is None else ambient_dim
        if vectors.size == 0:
            return cls(np.zeros((n, 0)), n)
        return cls(scipy.linalg.orth(vectors, rcond=rtol), n, check=False)

    @property
    def ambient_dim(self):
        return self.columns.shape[0]

    @property
    def dim(self):
        return self.columns.shape[1]

    def projector(self):
        return self.columns @ self.columns.conj().T

    def __repr__(self):
        return f"Subspace(ambient={self.ambient_dim}, dim={self.dim})"


def projector_distance(s1, s2):
    return float(np.linalg.norm(s1.projector() - s2.projector(), 2))


def complement_basis(s):
    n = s.ambient_dim
    if s.dim == 0:
        return Subspace(np.eye(n, dtype=np.complex128), n, check=False)
    u, _, _ = np.linalg.svd(s.columns, full_matrices=True)
    return Subspace(u[:, s.dim:], n, check=False)


def kernel_basis(functionals, ambient_dim, rtol=RANK_RTOL):
    """Joint kernel ``{x : sum_I lam[I] x[I] = 0}`` of linear covectors.

    Covectors act bilinearly (no conjugation). Rank is decided by singular
    values at ``rtol`` times the largest.
    """
    f = np.asarray(functionals, dtype=np.complex128).reshape(-1, ambient_dim)
    if f.shape[0] == 0:
        return Subspace(np.eye(ambient_dim, dtype=np.complex128), ambient_dim, check=False)
    return Subspace(scipy.linalg.null_space(f, rcond=rtol), ambient_dim, check=False)


def numerical_rank(m, rtol=RANK_RTOL):
    s = np.linalg.svd(np.asarray(m), compute_uv=False)
    if s.size == 0 or s[0] == 0:
        return 0
    return int((s >= rtol * s[0]).sum())
