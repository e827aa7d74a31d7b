"""Exit criteria, each at its stated tolerance. A PASS/FAIL line per criterion
is printed in the terminal summary."""

import time

import numpy as np

from unentangled_gleason.bases import (
    StructureViolation,
    all_partitions,
    basis_family,
    decompose_qubit_basis,
    qubit_block_basis,
)
from unentangled_gleason.frames import (
    QubitFrameFn,
    born_oracle,
    counterexample_oracle,
    product_frame_oracle,
    verify_frame,
)
from unentangled_gleason.reconstruct import hermitian_fit_residual, reconstruct
from unentangled_gleason.subspaces import (
    exact_rank1_test_small,
    max_entangled_dim,
    product_overlap_search,
    random_subspace,
    vandermonde_subspace,
)
from unentangled_gleason.tensor_core import Subspace, random_hermitian, random_product_state, random_unit_vector, tensor_expand


def test_01_reconstruction_round_trip(record):
    t0 = time.perf_counter()
    err33 = max(np.abs(reconstruct(born_oracle(T, (3, 3))).c - T).max()
                for T in (random_hermitian(9, np.random.default_rng(s)) for s in range(50)))
    err333 = max(np.abs(reconstruct(born_oracle(T, (3, 3, 3))).c - T).max()
                 for T in (random_hermitian(27, np.random.default_rng(1000 + s)) for s in range(10)))
    elapsed = time.perf_counter() - t0
    ok = err33 < 1e-9 and err333 < 1e-8 and elapsed < 10
    record("1 reconstruction round-trip", ok,
           f"max err (3,3) {err33:.2e} < 1e-9, (3,3,3) {err333:.2e} < 1e-8, {elapsed:.2f}s < 10s")
    assert ok


def test_02_frame_sum_constancy(record):
    worst = {}
    invalid = 0
    for dims in [(2, 3), (3, 3), (2, 2, 2)]:
        T = random_hermitian(int(np.prod(dims)), np.random.default_rng(sum(dims)))
        o = born_oracle(T, dims)
        kinds = ["product", "mixed"] + (["reversed"] if len(dims) == 2 else []) + \
                (["qubit-block"] if dims[0] == 2 else [])
        for kind in kinds:
            rep = verify_frame(o, basis_family(kind, dims), M=1000, tol=1e-9)
            invalid += len(rep.invalid)
            worst[(dims, kind)] = rep.max_deviation
    dev = max(worst.values())
    ok = dev <= 1e-9 and invalid == 0
    record("2 frame-sum constancy", ok,
           f"{len(worst)} (dims, family) pairs x 1000 bases, max |sum - tr T| {dev:.2e} <= 1e-9, invalid {invalid}")
    assert ok, worst


def test_03_qubit_product_non_born_frame_function(record):
    g = QubitFrameFn(1.0, ("cubic_z", 0.3))
    o = product_frame_oracle(g, born_oracle(np.eye(3), (3,)))
    rep = verify_frame(o, basis_family("qubit-block", (2, 3)), M=1000, tol=1e-9)
    resid = hermitian_fit_residual(o, (2, 3), M=2000, seed=0)
    rng = np.random.default_rng(1)
    min_val = min(o(random_product_state((2, 3), rng)) for _ in range(2000))
    ok = rep.passed and abs(o.declared_weight - 3) < 1e-15 and resid > 1e-3 and min_val >= 0
    record("3 qubit product frame function is not Born", ok,
           f"(a) max |sum - 3| {rep.max_deviation:.2e} <= 1e-9 over 1000 bases; "
           f"(b) residual {resid:.4f} > 1e-3 (M=2000); min value {min_val:.3f} >= 0")
    assert ok


def test_04_product_basis_counterexample(record):
    o = counterexample_oracle((3, 3), 9.0)
    prod = verify_frame(o, basis_family("product", (3, 3)), M=1000, tol=1e-9)
    resid = hermitian_fit_residual(o, (3, 3), M=2000, seed=0)
    rev = verify_frame(o, basis_family("reversed", (3, 3)), M=100, tol=0.01)
    ok = prod.passed and resid > 1e-3 and rev.max_deviation > 0.01
    record("4 product-basis counterexample", ok,
           f"product bases max dev {prod.max_deviation:.2e} <= 1e-9 (1000 seeds); residual {resid:.4f} > 1e-3; "
           f"reversed basis seed {rev.worst_seed} has |sum - 9| = {rev.max_deviation:.3f} > 0.01")
    assert ok


def test_05_qubit_basis_round_trip(record):
    rng = np.random.default_rng(5)
    parts = {n: list(all_partitions(n)) for n in range(1, 7)}
    cases = []
    for _ in range(500):
        n = int(rng.integers(1, 7))
        cases.append((parts[n][rng.integers(len(parts[n]))], int(rng.integers(2**32))))
    bases = [qubit_block_basis(sum(p), p, s) for p, s in cases]
    t0 = time.perf_counter()
    wrong = violations = 0
    worst = 0.0
    for (part, _), basis in zip(cases, bases):
        try:
            dec = decompose_qubit_basis(basis)
        except StructureViolation:
            violations += 1
            continue
        wrong += dec.partition != part
        got = np.array([tensor_expand(p) for blk in dec.blocks for p in blk.members()])
        ov = np.abs(got.conj() @ basis.matrix())
        worst = max(worst, np.abs(ov.max(axis=1) - 1).max(), np.abs(ov.max(axis=0) - 1).max())
    elapsed = time.perf_counter() - t0
    ok = wrong == 0 and violations == 0 and worst <= 1e-9 and elapsed < 5
    record("5 qubit-basis decomposition round-trip", ok,
           f"500 cases: {wrong} wrong partitions, {violations} StructureViolations, "
           f"max ||overlap| - 1| {worst:.1e} <= 1e-9, {elapsed:.2f}s < 5s")
    assert ok


def test_06_bound_and_attainment(record):
    table = {(2, 2): 1, (2, 3): 2, (3, 3): 4, (2, 2, 2): 4, (3, 3, 3): 20}
    bound_ok = all(max_entangled_dim(d) == k for d, k in table.items())
    dims_ok = all(vandermonde_subspace(d).subspace.dim == k for d, k in table.items())
    search = product_overlap_search(vandermonde_subspace((3, 3)).subspace, (3, 3), restarts=200, seed=0)
    exact = exact_rank1_test_small(vandermonde_subspace((2, 3)).subspace, (2, 3))
    ok = bound_ok and dims_ok and search.best_overlap < 0.999 and not exact.has_product
    record("6 entangled-subspace bound and attainment", ok,
           f"bound table {bound_ok}, construction dims {dims_ok}, (3,3) best overlap "
           f"{search.best_overlap:.4f} < 0.999, exact (2,3) product found: {exact.has_product}")
    assert ok


def test_07_bound_sharpness(record):
    found = sum(product_overlap_search(random_subspace(9, 5, s), (3, 3), seed=s).best_overlap > 1 - 1e-6
                for s in range(100))
    exact = sum(exact_rank1_test_small(random_subspace(4, 2, 10_000 + s), (2, 2)).has_product for s in range(100))
    ok = found >= 99 and exact == 100
    record("7 bound sharpness", ok,
           f"(3,3) dim-5: product found in {found}/100 (>= 99); (2,2) dim-2: exact product in {exact}/100")
    assert ok


def _small_subspaces(count, seed):
    rng = np.random.default_rng(seed)
    for i in range(count):
        dims = [(2, 2), (2, 3)][i % 2]
        N = int(np.prod(dims))
        k = int(rng.integers(1, 3))
        if rng.random() < 0.4:
            prod = np.kron(random_unit_vector(dims[0], rng), random_unit_vector(dims[1], rng))
            S = Subspace.span(np.column_stack([prod] + [random_unit_vector(N, rng) for _ in range(k - 1)]), N)
        else:
            S = random_subspace(N, k, int(rng.integers(2**32)))
        yield dims, S


def test_08_oracle_agreement(record):
    agree = disagree = excluded = with_product = 0
    for i, (dims, S) in enumerate(_small_subspaces(200, 8)):
        ex = exact_rank1_test_small(S, dims)
        rep = product_overlap_search(S, dims, restarts=100, seed=i, max_iters=2000)
        if 1 - 1e-3 <= rep.best_overlap <= 1 - 1e-6:
            excluded += 1
            continue
        with_product += ex.has_product
        if ex.has_product == (rep.best_overlap > 1 - 1e-6):
            agree += 1
        else:
            disagree += 1
    ok = disagree == 0
    record("8 exact vs search agreement", ok,
           f"{agree}/{agree + disagree} agree (100% required), {excluded} in inconclusive band excluded, "
           f"{with_product} with product vectors")
    assert ok
