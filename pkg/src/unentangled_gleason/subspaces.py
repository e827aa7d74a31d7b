"""Entangled subspaces: the dimension bound, an explicit extremal construction,
and tests for whether a subspace contains a product vector."""

import itertools
import string
from dataclasses import dataclass, field

import numpy as np

from .tensor_core import (
    ProductState,
    Subspace,
    check_dims,
    kernel_basis,
    numerical_rank,
    random_unit_vector,
    random_unitary,
    total_dim,
)

FOUND = 1 - 1e-6
NOT_FOUND = 1 - 1e-3
MIN_RESTARTS = 100


def segre_dim(dims):
    """Affine dimension of the cone of product tensors."""
    return sum(d - 1 for d in dims) + 1


def max_entangled_dim(dims):
    dims = check_dims(dims)
    return total_dim(dims) - segre_dim(dims)


def random_subspace(ambient, k, seed=None):
    rng = np.random.default_rng(seed)
    return Subspace(random_unitary(ambient, rng)[:, :k], ambient, check=False)


def degree_functionals(dims, points):
    """Rows ``lam_t[I] = t^{|I|}`` where ``|I|`` is the sum of the 0-based factor indices."""
    degree = np.zeros(dims, dtype=int)
    for j, d in enumerate(dims):
        shape = [1] * len(dims)
        shape[j] = d
        degree = degree + np.arange(d).reshape(shape)
    degree = degree.reshape(-1)
    return np.array([np.power(float(t), degree) for t in points])


def chebyshev_points(d):
    """Chebyshev nodes on [-1, 1]; their Vandermonde matrix stays well conditioned."""
    return [float(t) for t in np.cos((2 * np.arange(1, d + 1) - 1) * np.pi / (2 * d))]


@dataclass
class EntangledSubspaceCert:
    dims: tuple
    subspace: Subspace
    construction: dict
    certificate: dict


def vandermonde_subspace(dims, points=None):
    """Entangled subspace of dimension ``max_entangled_dim(dims)``.

    It is the joint kernel of ``d = sum(d_j - 1) + 1`` functionals
    ``lam_t``. On a product ``x = h_1 ⊗ ... ⊗ h_n`` one has
    ``lam_t(x) = prod_j P_j(t)`` with ``P_j(t) = sum_i h_j[i] t^i``; the
    product has degree at most ``d - 1`` and vanishes at ``d`` distinct
    points, so some ``P_j`` is identically zero, i.e. ``h_j = 0``.
    """
    dims = check_dims(dims)
    d = segre_dim(dims)
    points = chebyshev_points(d) if points is None else [float(t) for t in points]
    if len(points) != d:
        raise ValueError(f"need {d} points for dims {dims}, got {len(points)}")
    if len(set(points)) != len(points):
        raise ValueError("points must be distinct")
    rows = degree_functionals(dims, points)
    # row scaling leaves the kernel unchanged and keeps the SVD well scaled
    rows = rows / np.abs(rows).max(axis=1, keepdims=True)
    sub = kernel_basis(rows, total_dim(dims))
    rank = numerical_rank(rows)
    return EntangledSubspaceCert(
        dims, sub,
        {"method": "vandermonde", "points": points},
        {"kind": "exact", "functional_rank": rank, "expected_dim": total_dim(dims) - d},
    )


@dataclass
class SearchReport:
    best_overlap: float
    witness: ProductState
    best_restart: int
    restarts: int
    iterations: list
    converged: list
    traces: list = field(repr=False)
    seed: object = None

    def to_dict(self, with_traces=False):
        out = {
            "best_overlap": self.best_overlap,
            "witness": self.witness,
            "best_restart": self.best_restart,
            "restarts": self.restarts,
            "iterations": list(self.iterations),
            "converged": list(self.converged),
            "seed": self.seed,
        }
        if with_traces:
            out["traces"] = [list(t) for t in self.traces]
        return out


def _contract_except(W, hs, j):
    # W: (k, d_1..d_n) conjugated basis; hs[i]: (R, d_i). Returns (R, k, d_j).
    n = len(hs)
    letters = string.ascii_letters
    ax = letters[:n]
    terms = ["z" + ax] + [f"Y{ax[i]}" for i in range(n) if i != j]
    ops = [W] + [hs[i] for i in range(n) if i != j]
    return np.einsum(",".join(terms) + f"->Yz{ax[j]}", *ops)


def product_overlap_search(S, dims, restarts=MIN_RESTARTS, max_iters=500, tol=1e-12, seed=None,
                           init=None, target=None):
    """Maximize ``||P x||`` over unit product vectors ``x`` by alternating eigenvectors.

    With all factors but ``j`` fixed the objective ``<x|P|x>`` is a Hermitian
    form in ``h_j``; each step replaces ``h_j`` by its top eigenvector, so the
    objective never decreases. Restarts run as a batch from random product
    starts (or ``init``: a list of per-factor arrays of shape ``(restarts, d_j)``).
    A sweep gaining less than ``tol`` marks a restart converged. With
    ``target`` set, the search returns as soon as a restart reaches it.
    """
    dims = check_dims(dims)
    if S.ambient_dim != total_dim(dims):
        raise ValueError("subspace does not live in the space of dims")
    rng = np.random.default_rng(seed)
    n = len(dims)
    if init is None:
        hs = [np.array([random_unit_vector(d, rng) for _ in range(restarts)]) for d in dims]
    else:
        hs = [np.asarray(h, dtype=np.complex128).copy() for h in init]
        restarts = hs[0].shape[0]
    if S.dim == 0:
        w = ProductState([h[0] for h in hs])
        return SearchReport(0.0, w, 0, restarts, [0] * restarts, [True] * restarts,
                            [[0.0]] * restarts, seed)

    W = S.columns.T.conj().reshape((S.dim,) + dims)
    obj = np.zeros(restarts)
    traces = [[] for _ in range(restarts)]
    iters = np.zeros(restarts, dtype=int)
    done = np.zeros(restarts, dtype=bool)
    for it in range(max_iters):
        prev = obj.copy()
        for j in range(n):
            A = _contract_except(W, hs, j)
            G = np.einsum("rkc,rkd->rcd", A.conj(), A)
            vals, vecs = np.linalg.eigh(G)
            hs[j] = vecs[:, :, -1]
            obj = np.clip(vals[:, -1], 0.0, None)
        active = ~done
        for r in np.flatnonzero(active):
            traces[r].append(float(obj[r]))
        iters[active] = it + 1
        done |= active & (it > 0) & (obj - prev < tol)
        if done.all() or (target is not None and np.sqrt(obj.max()) >= target):
            break
    best = int(np.argmax(obj))
    witness = ProductState([h[best] / np.linalg.norm(h[best]) for h in hs])
    return SearchReport(float(np.sqrt(min(obj[best], 1.0))), witness, best, restarts,
                        iters.tolist(), done.tolist(), traces, seed)


def _minor_quadratics(A, B):
    # det of the (k,l) 2x2 minor of alpha*A + beta*B = c2 alpha^2 + c1 alpha beta + c0 beta^2
    qs = []
    for k, l in itertools.combinations(range(A.shape[1]), 2):
        c2 = A[0, k] * A[1, l] - A[0, l] * A[1, k]
        c0 = B[0, k] * B[1, l] - B[0, l] * B[1, k]
        c1 = A[0, k] * B[1, l] + B[0, k] * A[1, l] - A[0, l] * B[1, k] - B[0, l] * A[1, k]
        qs.append(np.array([c2, c1, c0]))
    return qs


def _binary_roots(q, tol):
    # projective roots (alpha, beta) of c2 a^2 + c1 a b + c0 b^2
    c2, c1, c0 = q
    roots = []
    if abs(c2) <= tol * np.abs(q).max():
        roots.append(np.array([1.0, 0.0]))
        if abs(c1) > tol * np.abs(q).max():
            roots.append(np.array([-c0 / c1, 1.0]))
    else:
        roots += [np.array([r, 1.0]) for r in np.roots([c2, c1, c0])]
    return [r / np.linalg.norm(r) for r in roots]


def _quad_value(q, r):
    return q[0] * r[0] ** 2 + q[1] * r[0] * r[1] + q[2] * r[1] ** 2


def binary_resultant(q1, q2):
    """Sylvester resultant of two binary quadratic forms."""
    a2, a1, a0 = q1
    b2, b1, b0 = q2
    syl = np.array([[a2, a1, a0, 0], [0, a2, a1, a0], [b2, b1, b0, 0], [0, b2, b1, b0]])
    return complex(np.linalg.det(syl))


def _rank_one_witness(v, d2):
    u, s, vh = np.linalg.svd(v.reshape(2, d2))
    return ProductState([u[:, 0], vh[0]])


@dataclass
class ExactVerdict:
    has_product: bool
    witness: ProductState = None
    minors: list = field(default_factory=list)
    resultants: list = field(default_factory=list)

    def to_dict(self):
        return {"has_product": self.has_product, "witness": self.witness,
                "minors": self.minors, "resultants": self.resultants}


def exact_rank1_test_small(S, dims, tol=1e-8):
    """Decide whether a 1- or 2-dimensional subspace of ``C^2 ⊗ C^d2`` (d2 in 2, 3)
    contains a product vector, via the 2x2 minors of the reshaped basis."""
    dims = tuple(dims)
    if len(dims) != 2 or dims[0] != 2 or dims[1] not in (2, 3):
        raise ValueError(f"exact test supports dims (2,2) and (2,3), got {dims}")
    if S.dim not in (1, 2):
        raise ValueError(f"exact test supports subspace dimension 1 or 2, got {S.dim}")
    d2 = dims[1]
    if S.dim == 1:
        A = S.columns[:, 0].reshape(2, d2)
        minors = [complex(A[0, k] * A[1, l] - A[0, l] * A[1, k])
                  for k, l in itertools.combinations(range(d2), 2)]
        if max(abs(m) for m in minors) < tol:
            return ExactVerdict(True, _rank_one_witness(S.columns[:, 0], d2), minors)
        return ExactVerdict(False, None, minors)

    A = S.columns[:, 0].reshape(2, d2)
    B = S.columns[:, 1].reshape(2, d2)
    qs = _minor_quadratics(A, B)
    res = [binary_resultant(q1, q2) for q1, q2 in itertools.combinations(qs, 2)]
    minors = [q.tolist() for q in qs]
    live = [q for q in qs if np.abs(q).max() > tol]
    if not live:
        return ExactVerdict(True, _rank_one_witness(S.columns[:, 0], d2), minors, res)
    for r in _binary_roots(live[0], tol):
        if all(abs(_quad_value(q, r)) <= tol * max(1.0, np.abs(q).max()) for q in live):
            v = r[0] * S.columns[:, 0] + r[1] * S.columns[:, 1]
            return ExactVerdict(True, _rank_one_witness(v / np.linalg.norm(v), d2), minors, res)
    return ExactVerdict(False, None, minors, res)


@dataclass
class Verdict:
    kind: str
    best_overlap: float = None
    witness: ProductState = None
    detail: dict = field(default_factory=dict)

    def to_dict(self):
        return {"verdict": self.kind, "best_overlap": self.best_overlap,
                "witness": self.witness, "detail": self.detail}


def entangled_verdict(obj, dims=None, policy="auto", restarts=MIN_RESTARTS, seed=0,
                      found=FOUND, not_found=NOT_FOUND, max_iters=500):
    """Classify a subspace or certificate.

    Kinds: ``certified_entangled``, ``numerically_entangled``,
    ``contains_product`` and ``inconclusive``. ``policy='auto'`` trusts exact
    certificates and the exact small-size test before searching;
    ``policy='search'`` always searches.
    """
    if isinstance(obj, EntangledSubspaceCert):
        dims = obj.dims
        if policy == "auto" and obj.certificate.get("kind") == "exact" \
                and obj.subspace.dim == obj.certificate.get("expected_dim"):
            return Verdict("certified_entangled", detail={"construction": obj.construction})
        S = obj.subspace
    else:
        S = obj
    dims = check_dims(dims)
    if policy == "auto":
        try:
            ex = exact_rank1_test_small(S, dims)
        except ValueError:
            ex = None
        if ex is not None:
            if ex.has_product:
                return Verdict("contains_product", 1.0, ex.witness, {"method": "exact-minors"})
            return Verdict("certified_entangled", detail={"method": "exact-minors"})
    rep = product_overlap_search(S, dims, restarts=max(restarts, MIN_RESTARTS), max_iters=max_iters,
                                 seed=seed, target=found)
    detail = {"method": "search", "restarts": rep.restarts, "seed": seed,
              "thresholds": {"found": found, "not_found": not_found}}
    if rep.best_overlap > found:
        return Verdict("contains_product", rep.best_overlap, rep.witness, detail)
    if rep.best_overlap < not_found:
        return Verdict("numerically_entangled", rep.best_overlap, None, detail)
    return Verdict("inconclusive", rep.best_overlap, rep.witness, detail)
