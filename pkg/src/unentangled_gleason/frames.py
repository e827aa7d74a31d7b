"""Frame-function oracles on product states and sampled checks of the weight condition."""

from dataclasses import dataclass, field

import numpy as np

from .tensor_core import (
    check_dims,
    is_hermitian,
    orthonormal_report,
    random_product_state,
    random_unitary,
    tensor_expand,
    total_dim,
)


class FrameOracle:
    """Real-valued function on product states with a declared weight.

    Subclasses implement ``evaluate``. ``accepts(dims)`` says which basis
    layouts the oracle can be summed over.
    """

    dims = ()
    declared_weight = 0.0

    def __call__(self, p):
        return self.evaluate(p)

    def evaluate(self, p):
        raise NotImplementedError

    def accepts(self, dims):
        return tuple(dims) == tuple(self.dims)

    def descriptor(self):
        raise TypeError(f"{type(self).__name__} has no JSON descriptor")


class FunctionOracle(FrameOracle):
    def __init__(self, dims, fn, weight):
        self.dims = tuple(dims)
        self.fn = fn
        self.declared_weight = float(weight)

    def evaluate(self, p):
        return self.fn(p)


class BornOracle(FrameOracle):
    """``p -> <x|T|x>`` with ``x`` the expansion of ``p``; weight ``tr T``."""

    def __init__(self, T, dims):
        T = np.asarray(T, dtype=np.complex128)
        self.dims = check_dims(dims, min_dim=1)
        if T.shape != (total_dim(self.dims),) * 2:
            raise ValueError(f"operator shape {T.shape} does not match dims {self.dims}")
        if not is_hermitian(T):
            raise ValueError("operator is not Hermitian")
        self.T = T
        self.declared_weight = float(np.trace(T).real)

    def evaluate(self, p):
        x = tensor_expand(p)
        if x.shape[0] != self.T.shape[0]:
            raise ValueError(f"product state of dims {p.dims} does not fit operator on {self.dims}")
        return float(np.vdot(x, self.T @ x).real)

    def accepts(self, dims):
        return total_dim(dims) == total_dim(self.dims)

    def descriptor(self):
        return {"kind": "born", "dims": list(self.dims), "T": self.T}


def born_oracle(T, dims):
    return BornOracle(T, dims)


def bloch_vector(a):
    a = np.asarray(a, dtype=np.complex128)
    if a.shape != (2,):
        raise ValueError("Bloch vector needs a qubit")
    z = np.conj(a[0]) * a[1]
    return np.array([2 * z.real, 2 * z.imag, abs(a[0]) ** 2 - abs(a[1]) ** 2])


@dataclass
class QubitFrameFn:
    """Qubit frame function ``a -> weight/2 + odd(bloch(a))``.

    Only odd functions of the Bloch vector keep the antipodal sum equal to
    ``weight``; ``odd_part`` is ``(name, coef)`` with name ``cubic_z``,
    ``linear_z`` or ``zero``.
    """

    weight: float = 1.0
    odd_part: tuple = ("cubic_z", 0.3)

    def epsilon(self, p):
        name, coef = self.odd_part
        if name == "cubic_z":
            return coef * p[2] ** 3
        if name == "linear_z":
            return coef * p[2]
        if name == "zero":
            return 0.0
        raise ValueError(f"unknown odd part {name!r}")

    def __call__(self, a):
        return qubit_frame_eval(self, a)

    def descriptor(self):
        return {"weight": self.weight, "odd_part": {"name": self.odd_part[0], "coef": self.odd_part[1]}}


def qubit_frame_eval(g, a):
    return float(g.weight / 2 + g.epsilon(bloch_vector(a)))


class ProductFrameOracle(FrameOracle):
    """``a ⊗ u -> g(a) h(u)`` for a qubit frame function ``g``; weight multiplies."""

    def __init__(self, g, h):
        self.g = g
        self.h = h
        self.dims = (2,) + tuple(h.dims)
        self.declared_weight = float(g.weight * h.declared_weight)

    def evaluate(self, p):
        if p.dims[0] != 2:
            raise ValueError("first factor must be a qubit")
        return self.g(p.factors[0]) * self.h(p.rest())

    def accepts(self, dims):
        return dims[0] == 2 and self.h.accepts(dims[1:])

    def descriptor(self):
        return {"kind": "qubit_product", "g": self.g.descriptor(), "h": self.h.descriptor()}


def product_frame_oracle(g, h):
    return ProductFrameOracle(g, h)


def _fit(v, d):
    out = np.zeros(d, dtype=np.complex128)
    k = min(d, v.shape[0])
    out[:k] = v[:k]
    return out


def squared_embedding(u, d2, rotation=None):
    """Componentwise square of ``u`` padded or truncated to length ``d2``."""
    psi = _fit(np.asarray(u) ** 2, d2)
    return psi if rotation is None else rotation @ psi


class CounterexampleOracle(FrameOracle):
    """``u ⊗ v -> <v|phi(u)|v>`` with ``phi(u)`` PSD of trace ``w / d1``.

    Sums over every product basis equal ``w`` whatever ``phi`` is. The
    default ``phi(u) = w0 (|psi><psi| + (1 - |psi|^2) I / d2)`` with
    ``psi`` the squared embedding of ``u`` is quartic in ``u`` and so not a
    Hermitian form on product states.
    """

    def __init__(self, dims, weight, phi=None, seed=None):
        self.dims = check_dims(dims)
        if len(self.dims) != 2:
            raise ValueError("counterexample oracles are bipartite")
        if weight <= 0:
            raise ValueError("weight must be positive")
        self.declared_weight = float(weight)
        self.w0 = weight / self.dims[0]
        self.seed = seed
        self._custom = phi is not None
        self._rotation = None
        if seed is not None:
            self._rotation = random_unitary(self.dims[1], np.random.default_rng(seed))
        self._phi = phi if phi is not None else self._default_phi

    def _default_phi(self, u):
        d2 = self.dims[1]
        psi = squared_embedding(u, d2, self._rotation)
        return self.w0 * (np.outer(psi, psi.conj()) + (1 - np.vdot(psi, psi).real) / d2 * np.eye(d2))

    def phi(self, u):
        return self._phi(np.asarray(u, dtype=np.complex128))

    def evaluate(self, p):
        if p.dims != self.dims:
            raise ValueError(f"product state dims {p.dims} differ from {self.dims}")
        u, v = p.factors
        return float(np.vdot(v, self.phi(u) @ v).real)

    def descriptor(self):
        if self._custom:
            raise TypeError("counterexample oracle with a custom phi has no JSON descriptor")
        return {"kind": "counterexample", "dims": list(self.dims),
                "weight": self.declared_weight, "seed": self.seed}


def counterexample_oracle(dims, weight, phi=None, seed=None):
    return CounterexampleOracle(dims, weight, phi, seed)


class MixtureOracle(FrameOracle):
    """Pointwise ``lam * f + (1 - lam) * g``."""

    def __init__(self, f, g, lam):
        if tuple(f.dims) != tuple(g.dims):
            raise ValueError("mixed oracles must share dims")
        self.f, self.g, self.lam = f, g, float(lam)
        self.dims = tuple(f.dims)
        self.declared_weight = self.lam * f.declared_weight + (1 - self.lam) * g.declared_weight

    def evaluate(self, p):
        return self.lam * self.f(p) + (1 - self.lam) * self.g(p)

    def accepts(self, dims):
        return self.f.accepts(dims) and self.g.accepts(dims)


@dataclass
class FrameReport:
    weight: float
    seeds: list
    sums: list
    invalid: list = field(default_factory=list)
    tol: float = 1e-9

    @property
    def deviations(self):
        return np.abs(np.asarray(self.sums) - self.weight)

    @property
    def max_deviation(self):
        return float(self.deviations.max()) if self.sums else 0.0

    @property
    def mean(self):
        return float(np.mean(self.sums)) if self.sums else float("nan")

    @property
    def worst_seed(self):
        return self.seeds[int(np.argmax(self.deviations))] if self.sums else None

    @property
    def passed(self):
        return bool(self.sums) and not self.invalid and self.max_deviation <= self.tol

    def to_dict(self, bins=10):
        signed = np.asarray(self.sums) - self.weight
        counts, edges = np.histogram(signed, bins=bins) if self.sums else ([], [])
        return {
            "weight": self.weight,
            "samples": len(self.seeds),
            "mean": self.mean,
            "max_deviation": self.max_deviation,
            "worst_seed": self.worst_seed,
            "invalid_seeds": list(self.invalid),
            "tol": self.tol,
            "passed": self.passed,
            "deviation_histogram": {"edges": [float(e) for e in edges], "counts": [int(c) for c in counts]},
            "seeds": list(self.seeds),
            "sums": [float(s) for s in self.sums],
        }


def verify_frame(oracle, basis_source, M=1000, tol=1e-9, seed=0, basis_tol=1e-10):
    """Sum ``oracle`` over ``M`` sampled bases and compare with its weight.

    ``basis_source`` maps an integer seed to an :class:`UnentangledBasis`;
    seeds ``seed, seed+1, ...`` are used. Bases that fail validation are
    listed in ``invalid`` and make the report fail.
    """
    seeds, sums, invalid = [], [], []
    for s in range(seed, seed + M):
        basis = basis_source(s)
        rep = orthonormal_report(basis.matrix().T, tol=basis_tol, basis=True)
        if not rep.passed or not oracle.accepts(basis.dims):
            invalid.append(s)
            continue
        seeds.append(s)
        sums.append(float(sum(oracle(p) for p in basis.members)))
    return FrameReport(oracle.declared_weight, seeds, sums, invalid, tol)


def phase_invariance_check(oracle, samples=200, seed=0):
    """Largest change of ``oracle`` when one factor is multiplied by a unit scalar."""
    rng = np.random.default_rng(seed)
    worst = 0.0
    for _ in range(samples):
        p = random_product_state(oracle.dims, rng)
        j = int(rng.integers(len(oracle.dims)))
        lam = np.exp(2j * np.pi * rng.random())
        worst = max(worst, abs(oracle(p) - oracle(p.scaled(j, lam))))
    return worst
