"""Recover the operator behind a Born-type oracle from polarization probes.

For one factor with reference basis ``v_0..v_{d-1}`` the probes are

    sigma(p, p) = v_p
    sigma(p, q) = (v_p + v_q) / sqrt(2)      p < q
    sigma(p, q) = (v_q + i v_p) / sqrt(2)    p > q

and ``<sigma|B|sigma>`` over all d^2 probes determines a Hermitian ``B``:
diagonal probes give ``B_pp``, the symmetric ones ``Re B_pq`` and the
``i``-rotated ones ``-Im B_pq`` after subtracting ``(B_pp + B_qq) / 2``.
On a tensor product the probe grid is the Cartesian product of the
per-factor probes and the inverse map is the Kronecker product of the
per-factor inverses.
"""

import itertools
import warnings
from dataclasses import dataclass

import numpy as np

from .tensor_core import ProductState, check_dims, random_product_state, tensor_expand, total_dim


class NotBornRepresentable(ValueError):
    pass


def probe_vectors(d):
    """The d^2 probe vectors in the reference basis, ordered by ``(p, q)``."""
    probes = []
    for p in range(d):
        for q in range(d):
            v = np.zeros(d, dtype=np.complex128)
            if p == q:
                v[p] = 1
            elif p < q:
                v[p] = v[q] = 1 / np.sqrt(2)
            else:
                v[q] = 1 / np.sqrt(2)
                v[p] = 1j / np.sqrt(2)
            probes.append(v)
    return probes


@dataclass
class PolarizationMap:
    d: int
    probes: list
    matrix: np.ndarray
    inverse: np.ndarray
    condition: float

    def values(self, B):
        """Probe values ``<sigma|B|sigma>`` of an operator."""
        return self.matrix @ np.asarray(B).reshape(-1)

    def operator(self, values):
        return (self.inverse @ np.asarray(values)).reshape(self.d, self.d)


def factor_polarization_map(d):
    """Map row-major ``vec(B)`` to the probe values, with its inverse."""
    probes = probe_vectors(d)
    m = np.array([np.outer(s.conj(), s).reshape(-1) for s in probes])
    cond = float(np.linalg.cond(m))
    assert np.isfinite(cond) and cond < 1e8, "polarization probe map is singular"
    return PolarizationMap(d, probes, m, np.linalg.inv(m), cond)


def polarization_identities(d, values):
    """Entrywise polarization: Hermitian ``B`` from its ``d^2`` probe values.

    Independent of :func:`factor_polarization_map`; ``values`` is ordered
    like :func:`probe_vectors`.
    """
    val = np.asarray(values, dtype=float).reshape(d, d)
    B = np.zeros((d, d), dtype=np.complex128)
    for p in range(d):
        B[p, p] = val[p, p]
    for p in range(d):
        for q in range(p + 1, d):
            mean = (val[p, p] + val[q, q]) / 2
            re = val[p, q] - mean
            im = mean - val[q, p]
            B[p, q] = re + 1j * im
            B[q, p] = re - 1j * im
    return B


@dataclass
class Reconstruction:
    c: np.ndarray
    asymmetry: float
    probe_condition: float
    evaluations: int

    def to_dict(self):
        return {"c": self.c, "asymmetry": self.asymmetry,
                "probe_condition": self.probe_condition, "evaluations": self.evaluations}


def reconstruct(oracle, dims=None, reference=None, tol=1e-8):
    """Coefficient operator ``c`` with ``oracle(x) = <x|c|x>`` on product states.

    Evaluates the oracle on all ``prod(d_j^2)`` products of per-factor probes
    and inverts. ``reference`` optionally gives a unitary per factor whose
    columns are the reference basis; ``c`` is then expressed in that basis.
    Raises :class:`NotBornRepresentable` if the recovered ``c`` is not
    Hermitian within ``tol`` (possible only for complex-valued oracles).
    """
    dims = check_dims(dims if dims is not None else oracle.dims)
    maps = [factor_polarization_map(d) for d in dims]
    if reference is None:
        reference = [np.eye(d) for d in dims]
    elif len(reference) != len(dims):
        raise ValueError("need one reference basis per factor")
    probes = [[U @ s for s in m.probes] for U, m in zip(reference, maps)]

    vals = np.empty([d * d for d in dims], dtype=np.complex128)
    for idx in itertools.product(*(range(d * d) for d in dims)):
        vals[idx] = oracle(ProductState([probes[j][k] for j, k in enumerate(idx)]))

    c = vals
    for j, m in enumerate(maps):
        c = np.moveaxis(np.tensordot(m.inverse, c, axes=([1], [j])), 0, j)
    n = len(dims)
    c = c.reshape([x for d in dims for x in (d, d)])
    c = c.transpose([2 * j for j in range(n)] + [2 * j + 1 for j in range(n)])
    N = total_dim(dims)
    c = c.reshape(N, N)
    asym = float(np.abs(c - c.conj().T).max())
    if asym > tol:
        raise NotBornRepresentable(f"probe values give a non-Hermitian operator (asymmetry {asym:.3g})")
    return Reconstruction((c + c.conj().T) / 2, asym,
                          float(np.prod([m.condition for m in maps])), int(vals.size))


def _features(x):
    # <x|T|x> = sum_r |x_r|^2 T_rr + sum_{r<s} 2 Re(conj(x_r) x_s) Re T_rs - 2 Im(conj(x_r) x_s) Im T_rs
    N = x.shape[0]
    z = np.outer(x.conj(), x)
    iu = np.triu_indices(N, 1)
    return np.concatenate([np.diag(z).real, 2 * z[iu].real, -2 * z[iu].imag])


def _hermitian_from_params(theta, N):
    T = np.diag(theta[:N]).astype(np.complex128)
    iu = np.triu_indices(N, 1)
    k = len(iu[0])
    T[iu] = theta[N:N + k] + 1j * theta[N + k:]
    T[(iu[1], iu[0])] = theta[N:N + k] - 1j * theta[N + k:]
    return T


def hermitian_fit(oracle, dims=None, M=None, seed=0, ridge=1e-12):
    """Least-squares Hermitian ``T`` matching ``oracle`` on random product states.

    Returns ``(T, rms_residual)``. Solved through ridge-regularized normal
    equations; warns when ``M`` is below ``N^2``.
    """
    dims = check_dims(dims if dims is not None else oracle.dims)
    N = total_dim(dims)
    M = 2 * N * N if M is None else int(M)
    if M < N * N:
        warnings.warn(f"{M} samples underdetermine a Hermitian fit with {N * N} parameters", stacklevel=2)
    rng = np.random.default_rng(seed)
    A = np.empty((M, N * N))
    y = np.empty(M)
    for k in range(M):
        p = random_product_state(dims, rng)
        A[k] = _features(tensor_expand(p))
        y[k] = oracle(p)
    G = A.T @ A
    theta = np.linalg.solve(G + ridge * np.eye(N * N), A.T @ y)
    resid = float(np.sqrt(np.mean((A @ theta - y) ** 2)))
    return _hermitian_from_params(theta, N), resid


def hermitian_fit_residual(oracle, dims=None, M=None, seed=0):
    return hermitian_fit(oracle, dims, M, seed)[1]
