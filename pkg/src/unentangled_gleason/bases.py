"""Product and unentangled orthonormal bases, and the qubit block decomposition."""

import itertools
from dataclasses import dataclass, field

import numpy as np

from .tensor_core import (
    ORTHO_TOL,
    ProductState,
    Subspace,
    canonical_phase,
    check_dims,
    complement_basis,
    kron_factors,
    orthonormal_report,
    qubit_hat,
    random_unit_vector,
    random_unitary,
    tensor_expand,
    total_dim,
)

RAY_TOL = 1e-8
# factor between a ray threshold and the edge of its ambiguity band
DEAD_ZONE = 100.0


class NotOrthonormal(ValueError):
    pass


class NotQubitFirstFactor(ValueError):
    pass


class StructureViolation(ValueError):
    pass


@dataclass
class UnentangledBasis:
    dims: tuple
    members: list

    def matrix(self):
        """Member expansions as the columns of a square matrix."""
        return np.column_stack([tensor_expand(p) for p in self.members])

    def report(self, tol=ORTHO_TOL):
        return orthonormal_report(self.matrix().T, tol=tol, basis=True)

    def __len__(self):
        return len(self.members)


def _shuffled(members, rng, random_phases=False):
    order = rng.permutation(len(members))
    out = [members[i] for i in order]
    if random_phases:
        out = [ProductState(p.factors, p.phase * np.exp(2j * np.pi * rng.random())) for p in out]
    return out


def random_product_basis(dims, seed=None):
    dims = check_dims(dims)
    rng = np.random.default_rng(seed)
    us = [random_unitary(d, rng) for d in dims]
    members = [
        ProductState([u[:, i] for u, i in zip(us, idx)])
        for idx in itertools.product(*(range(d) for d in dims))
    ]
    return UnentangledBasis(dims, members)


def _mixed_factors(dims, rng, pivot):
    # returns lists of per-factor vectors, in the original factor order
    if len(dims) == 1:
        u = random_unitary(dims[0], rng)
        return [[u[:, i]] for i in range(dims[0])]
    k = int(rng.integers(len(dims))) if pivot is None else pivot
    rest = dims[:k] + dims[k + 1:]
    v = random_unitary(dims[k], rng)
    out = []
    for i in range(dims[k]):
        for fs in _mixed_factors(rest, rng, None):
            out.append(fs[:k] + [v[:, i]] + fs[k:])
    return out


def mixed_unentangled_basis(dims, seed=None, pivot=None):
    """Recursive unentangled basis ``{v_i ⊗ u_ij}``.

    A factor (random unless ``pivot`` is given) is split off with a random
    basis ``{v_i}``; for each ``i`` an independent unentangled basis of the
    remaining factors is drawn. The output order is shuffled.
    """
    dims = check_dims(dims)
    rng = np.random.default_rng(seed)
    if pivot is not None and not 0 <= pivot < len(dims):
        raise ValueError(f"pivot {pivot} out of range for dims {dims}")
    members = [ProductState(fs) for fs in _mixed_factors(dims, rng, pivot)]
    return UnentangledBasis(dims, _shuffled(members, rng))


def reversed_structure_basis(dims, seed=None):
    """Bipartite basis ``{u_ij ⊗ v_i}``: the second factor's basis is shared."""
    dims = check_dims(dims)
    if len(dims) != 2:
        raise ValueError("reversed-structure bases are bipartite")
    return mixed_unentangled_basis(dims, seed, pivot=1)


def check_partition(n, partition):
    partition = [int(p) for p in partition]
    if sum(partition) != n:
        raise ValueError(f"partition {partition} does not sum to {n}")
    if any(p <= 0 for p in partition) or partition != sorted(partition, reverse=True):
        raise ValueError(f"partition {partition} must be positive and nonincreasing")
    return partition


def random_partition(n, rng):
    """A random partition of ``n``, nonincreasing."""
    parts = []
    left = n
    while left:
        k = int(rng.integers(1, left + 1))
        parts.append(k)
        left -= k
    return sorted(parts, reverse=True)


def all_partitions(n, largest=None):
    largest = n if largest is None else largest
    if n == 0:
        yield []
        return
    for k in range(min(n, largest), 0, -1):
        for rest in all_partitions(n - k, k):
            yield [k] + rest


def qubit_block_basis(n, partition, seed=None, same_bc=False):
    """Random unentangled basis of C^2 ⊗ C^n with prescribed block structure.

    ``C^n`` is split into random orthogonal blocks ``U_i`` of the sizes in
    ``partition``; each block contributes ``a_i ⊗ b_ij`` and ``â_i ⊗ c_ij``
    for random orthonormal bases ``b``, ``c`` of ``U_i`` (``c = b`` when
    ``same_bc``). Members are shuffled and given random phases.
    """
    if n < 1:
        raise ValueError("n must be positive")
    partition = check_partition(n, partition)
    rng = np.random.default_rng(seed)
    q = random_unitary(n, rng)
    members = []
    start = 0
    for size in partition:
        block = q[:, start:start + size]
        start += size
        a = random_unit_vector(2, rng)
        hat = qubit_hat(a)
        b = block @ random_unitary(size, rng)
        c = b if same_bc else block @ random_unitary(size, rng)
        members += [ProductState([a, b[:, j]]) for j in range(size)]
        members += [ProductState([hat, c[:, j]]) for j in range(size)]
    return UnentangledBasis((2, n), _shuffled(members, rng, random_phases=True))


def basis_family(kind, dims):
    """Seed -> basis generator for a named family over ``dims``.

    Kinds: ``product``, ``mixed``, ``reversed``, ``qubit-block`` (draws a
    random partition per seed; bases are over ``(2, prod(dims[1:]))``).
    """
    dims = tuple(dims)
    if kind == "product":
        return lambda seed: random_product_basis(dims, seed)
    if kind == "mixed":
        return lambda seed: mixed_unentangled_basis(dims, seed)
    if kind == "reversed":
        return lambda seed: reversed_structure_basis(dims, seed)
    if kind == "qubit-block":
        if dims[0] != 2:
            raise ValueError("qubit-block bases need a qubit first factor")
        n = total_dim(dims[1:])

        def gen(seed):
            rng = np.random.default_rng(seed)
            part = random_partition(n, rng)
            return qubit_block_basis(n, part, int(rng.integers(2**63)))
        return gen
    raise ValueError(f"unknown basis family {kind!r}")


@dataclass
class QubitBlock:
    a: np.ndarray
    hat_a: np.ndarray
    b_list: list
    c_list: list
    subspace: Subspace
    b_members: list = field(default_factory=list)
    c_members: list = field(default_factory=list)

    @property
    def size(self):
        return len(self.b_list)

    def members(self):
        """Block members ``a ⊗ b_j`` then ``â ⊗ c_j`` as product states."""
        return ([ProductState([self.a, b]) for b in self.b_list]
                + [ProductState([self.hat_a, c]) for c in self.c_list])


@dataclass
class BasisBlockDecomposition:
    partition: list
    blocks: list


def _split_qubit(basis):
    if basis.dims[0] != 2:
        raise NotQubitFirstFactor(f"first factor has dimension {basis.dims[0]}, not 2")
    qubits, rests = [], []
    for p in basis.members:
        if p.dims[0] != 2:
            raise NotQubitFirstFactor("member with non-qubit first factor")
        qubits.append(p.factors[0])
        rests.append(p.phase * kron_factors(p.factors[1:]))
    return np.array(qubits), np.array(rests)


def _relation(o, ray_tol):
    # 'same', 'orth', 'generic'; raises inside the dead zones
    if o > 1 - ray_tol:
        return "same"
    if o < ray_tol:
        return "orth"
    if o > 1 - DEAD_ZONE * ray_tol or o < DEAD_ZONE * ray_tol:
        raise StructureViolation(f"qubit overlap {o!r} is too close to a ray threshold to classify")
    return "generic"


def decompose_qubit_basis(basis, tol=ORTHO_TOL, ray_tol=RAY_TOL):
    """Split an unentangled basis of ``C^2 ⊗ H`` into qubit blocks.

    Members are grouped into qubit-ray classes. The largest remaining class
    (ray ``a``) is paired with the class on the orthogonal ray ``â``; the two
    must have equal size and their second factors must span the same block
    ``U``. All other second factors must be orthogonal to ``U`` and the
    procedure repeats on the rest. Raises :class:`StructureViolation` naming
    the failed observation when the input is not of this form.
    """
    qubits, rests = _split_qubit(basis)
    n2 = len(basis.members)
    if n2 % 2:
        raise NotQubitFirstFactor("odd number of members")
    rep = orthonormal_report([np.kron(q, r) for q, r in zip(qubits, rests)], tol=tol, basis=True)
    if not rep.passed:
        raise NotOrthonormal(f"members are not an orthonormal basis (deviation {rep.max_deviation:.3g}, "
                             f"{rep.count} of {rep.ambient})")

    qo = np.abs(qubits.conj() @ qubits.T)
    ho = np.abs(rests.conj() @ rests.T)
    rel = [[_relation(qo[i, j], ray_tol) for j in range(n2)] for i in range(n2)]
    for i in range(n2):
        for j in range(i + 1, n2):
            if rel[i][j] != "orth" and ho[i, j] > ray_tol:
                raise StructureViolation(
                    f"observation 2 fails for members {i},{j}: qubit overlap {qo[i, j]:.3g}, "
                    f"second-factor overlap {ho[i, j]:.3g}")

    classes = []
    seen = set()
    for i in range(n2):
        if i in seen:
            continue
        cls = [j for j in range(n2) if rel[i][j] == "same"]
        if any(rel[j][k] != "same" for j in cls for k in cls):
            raise StructureViolation("qubit-ray classes are not transitive")
        seen.update(cls)
        classes.append(cls)

    remaining = list(range(len(classes)))
    blocks = []
    while remaining:
        big = max(remaining, key=lambda c: (len(classes[c]), -c))
        cls = classes[big]
        a = canonical_phase(qubits[cls[0]])[0]
        hat = qubit_hat(a)
        partner = [c for c in remaining
                   if c != big and abs(np.vdot(hat, qubits[classes[c][0]])) > 1 - ray_tol]
        if not partner:
            raise StructureViolation(f"observation 1 fails: no member on the ray orthogonal to member {cls[0]}")
        other = classes[partner[0]]
        if len(other) != len(cls):
            raise StructureViolation(
                f"class-size equality fails: {len(cls)} members on a ray, {len(other)} on its orthogonal")

        def second(idx, ray):
            # u = a_j ⊗ r_j with a_j = mu * ray, so u = ray ⊗ (mu * r_j)
            mu = np.vdot(ray, qubits[idx])
            return canonical_phase(mu * rests[idx])[0]

        b_list = [second(i, a) for i in cls]
        c_list = [second(i, hat) for i in other]
        pb = np.column_stack(b_list)
        pc = np.column_stack(c_list)
        dist = np.linalg.norm(pb @ pb.conj().T - pc @ pc.conj().T, 2)
        if dist > ray_tol:
            raise StructureViolation(f"span equality fails: projector distance {dist:.3g}")
        remaining = [c for c in remaining if c not in (big, partner[0])]
        rest_idx = [i for c in remaining for i in classes[c]]
        if rest_idx:
            leak = np.abs(pb.conj().T @ rests[rest_idx].T).max()
            if leak > ray_tol:
                raise StructureViolation(f"remaining second factors are not orthogonal to the block ({leak:.3g})")
        blocks.append(QubitBlock(a, hat, b_list, c_list, Subspace(pb, check=False), list(cls), list(other)))

    blocks.sort(key=lambda b: -b.size)
    return BasisBlockDecomposition([b.size for b in blocks], blocks)


def _ray_classes(vectors, thresh):
    labels = []
    reps = []
    for v in vectors:
        for k, r in enumerate(reps):
            if abs(np.vdot(r, v)) > thresh:
                labels.append(k)
                break
        else:
            reps.append(v)
            labels.append(len(reps) - 1)
    return labels, len(reps)


def is_product_basis(basis, ray_tol=1e-10):
    """True iff members are all tensor combinations of one basis per factor."""
    for p in basis.members:
        if p.dims != tuple(basis.dims):
            return False
    keys = []
    for j, d in enumerate(basis.dims):
        labels, count = _ray_classes([p.factors[j] for p in basis.members], 1 - ray_tol)
        if count != d:
            return False
        keys.append(labels)
    combos = set(zip(*keys))
    return len(combos) == total_dim(basis.dims) == len(basis.members)
