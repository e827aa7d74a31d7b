import numpy as np
import pytest

from unentangled_gleason.bases import (
    UnentangledBasis,
    basis_family,
    decompose_qubit_basis,
    qubit_block_basis,
    random_partition,
)
from unentangled_gleason.frames import (
    BornOracle,
    FunctionOracle,
    MixtureOracle,
    QubitFrameFn,
    bloch_vector,
    born_oracle,
    counterexample_oracle,
    phase_invariance_check,
    product_frame_oracle,
    qubit_frame_eval,
    verify_frame,
)
from unentangled_gleason.reconstruct import hermitian_fit_residual
from unentangled_gleason.tensor_core import (
    ProductState,
    random_hermitian,
    random_product_state,
    random_unit_vector,
    qubit_hat,
)

e0, e1 = np.eye(2)
CUBIC = QubitFrameFn(1.0, ("cubic_z", 0.3))


def test_born_identity_and_projector():
    o = born_oracle(np.eye(4), (2, 2))
    assert o.declared_weight == 4
    p = random_product_state((2, 2), np.random.default_rng(0))
    assert o(p) == pytest.approx(1.0, abs=1e-14)
    P = np.zeros((4, 4))
    P[0, 0] = 1
    o = born_oracle(P, (2, 2))
    assert o(ProductState([e0, e0])) == 1
    assert o(ProductState([e1, e0])) == 0


def test_born_rejects_bad_operators():
    with pytest.raises(ValueError):
        born_oracle(np.eye(3), (2, 2))
    with pytest.raises(ValueError):
        born_oracle(np.triu(np.ones((4, 4))), (2, 2))


def test_born_sum_over_product_basis_is_trace():
    T = random_hermitian(9, np.random.default_rng(1), psd=True)
    o = born_oracle(T, (3, 3))
    rep = verify_frame(o, basis_family("product", (3, 3)), M=50)
    # direct summation over one basis as the independent check
    b = basis_family("product", (3, 3))(0)
    direct = sum(np.vdot(x, T @ x).real for x in b.matrix().T)
    assert abs(direct - np.trace(T).real) < 1e-10
    assert rep.passed and rep.max_deviation < 1e-10


def test_bloch_vector_of_orthogonal_states_is_antipodal():
    rng = np.random.default_rng(2)
    for _ in range(50):
        a = random_unit_vector(2, rng)
        np.testing.assert_allclose(bloch_vector(qubit_hat(a)), -bloch_vector(a), atol=1e-14)
        assert abs(np.linalg.norm(bloch_vector(a)) - 1) < 1e-14


def test_qubit_frame_constant_and_antipodal():
    g0 = QubitFrameFn(1.5, ("zero", 0.0))
    rng = np.random.default_rng(3)
    assert qubit_frame_eval(g0, random_unit_vector(2, rng)) == 0.75
    assert CUBIC(e0) + CUBIC(e1) == pytest.approx(1.0, abs=1e-12)
    worst = max(abs(CUBIC(a) + CUBIC(qubit_hat(a)) - 1.0)
                for a in (random_unit_vector(2, rng) for _ in range(10_000)))
    assert worst < 1e-12


def test_linear_odd_part_is_born():
    c, w = 0.4, 1.0
    g = QubitFrameFn(w, ("linear_z", c))
    o = FunctionOracle((2,), lambda p: g(p.factors[0]), w)
    T = w / 2 * np.eye(2) + c * np.diag([1, -1])
    rng = np.random.default_rng(4)
    for _ in range(20):
        a = random_unit_vector(2, rng)
        assert abs(g(a) - np.vdot(a, T @ a).real) < 1e-14
    assert hermitian_fit_residual(o, (2,), M=50) < 1e-10


def test_cubic_odd_part_is_not_born():
    o = FunctionOracle((2,), lambda p: CUBIC(p.factors[0]), 1.0)
    assert hermitian_fit_residual(o, (2,), M=200) > 1e-3


def test_product_oracle_weight():
    T = random_hermitian(3, np.random.default_rng(5), psd=True)
    g = QubitFrameFn(2.0, ("zero", 0.0))
    o = product_frame_oracle(g, born_oracle(T, (3,)))
    assert o.declared_weight == pytest.approx(2.0 * np.trace(T).real)
    with pytest.raises(ValueError):
        o(random_product_state((3, 3), np.random.default_rng(0)))


def test_qubit_product_sum_over_qubit_block_bases():
    o = product_frame_oracle(CUBIC, born_oracle(np.eye(3), (3,)))
    rep = verify_frame(o, basis_family("qubit-block", (2, 3)), M=1000)
    assert rep.passed and abs(rep.weight - 3) < 1e-15
    assert rep.max_deviation < 1e-9


@pytest.mark.parametrize("dims", [(2, 3), (2, 2, 2), (2, 3, 3)])
def test_weight_multiplicative(dims):
    rest = dims[1:]
    T = random_hermitian(int(np.prod(rest)), np.random.default_rng(sum(dims)), psd=True)
    o = product_frame_oracle(QubitFrameFn(1.3, ("cubic_z", 0.2)), born_oracle(T, rest))
    for kind in ("qubit-block", "mixed", "product"):
        rep = verify_frame(o, basis_family(kind, dims), M=100)
        assert rep.passed, (kind, rep.max_deviation)
        assert abs(rep.weight - 1.3 * np.trace(T).real) < 1e-12


def test_nested_product_oracle():
    inner = product_frame_oracle(QubitFrameFn(1.0, ("cubic_z", 0.3)), born_oracle(np.eye(3), (3,)))
    o = product_frame_oracle(QubitFrameFn(2.0, ("cubic_z", -0.5)), inner)
    assert o.dims == (2, 2, 3) and o.declared_weight == pytest.approx(6.0)
    for kind in ("mixed", "product"):
        assert verify_frame(o, basis_family(kind, (2, 2, 3)), M=200).passed


def test_block_sums_agree_for_born():
    # for Born h the b- and c-lists of a block carry the same total
    T = random_hermitian(5, np.random.default_rng(6))
    h = born_oracle(T, (5,))
    rng = np.random.default_rng(7)
    for s in range(30):
        dec = decompose_qubit_basis(qubit_block_basis(5, random_partition(5, rng), s))
        for blk in dec.blocks:
            sb = sum(h(ProductState([b])) for b in blk.b_list)
            sc = sum(h(ProductState([c])) for c in blk.c_list)
            assert abs(sb - sc) < 1e-9


def test_complement_sums_for_born():
    T = random_hermitian(9, np.random.default_rng(8))
    o = born_oracle(T, (3, 3))
    gen = basis_family("mixed", (3, 3))
    for s in range(20):
        members = gen(s).members
        F = members[:s % 9]
        rest = members[s % 9:]
        assert abs(sum(map(o, rest)) - (o.declared_weight - sum(map(o, F)))) < 1e-9


def test_counterexample_phi_is_psd_with_trace():
    for seed in (None, 3):
        o = counterexample_oracle((3, 4), 6.0, seed=seed)
        rng = np.random.default_rng(9)
        for _ in range(100):
            phi = o.phi(random_unit_vector(3, rng))
            assert np.linalg.eigvalsh(phi).min() >= -1e-10
            assert abs(np.trace(phi).real - 2.0) < 1e-12
    # truncation when d1 > d2
    o = counterexample_oracle((4, 2), 4.0)
    assert abs(np.trace(o.phi(np.eye(4)[3])).real - 1.0) < 1e-12


def test_counterexample_product_bases_constant():
    o = counterexample_oracle((3, 3), 9.0)
    # the sum is tr(phi(u_i)) summed over i = d1 * w0, as computed directly
    b = basis_family("product", (3, 3))(1)
    us = {tuple(np.round(p.factors[0], 12)) for p in b.members}
    direct = sum(np.trace(o.phi(np.array(u))).real for u in us)
    assert abs(direct - 9.0) < 1e-10
    rep = verify_frame(o, basis_family("product", (3, 3)), M=200)
    assert rep.passed and rep.max_deviation < 1e-10


def test_counterexample_constant_phi_is_born():
    o = counterexample_oracle((3, 3), 9.0, phi=lambda u: np.eye(3))
    assert hermitian_fit_residual(o, M=300) < 1e-10


def test_counterexample_fails_on_reversed_bases():
    o = counterexample_oracle((3, 3), 9.0)
    assert hermitian_fit_residual(o, M=400) > 1e-3
    rep = verify_frame(o, basis_family("reversed", (3, 3)), M=100)
    assert not rep.passed and rep.max_deviation > 0.01


def test_verify_frame_reports_invalid_bases():
    o = born_oracle(np.eye(4), (2, 2))
    def broken(seed):
        return UnentangledBasis((2, 2), [ProductState([e0, e0])] * 4)
    rep = verify_frame(o, broken, M=5)
    assert rep.invalid == list(range(5)) and not rep.passed
    d = rep.to_dict()
    assert d["invalid_seeds"] == list(range(5))


def test_phase_invariance():
    T = random_hermitian(6, np.random.default_rng(10))
    assert phase_invariance_check(born_oracle(T, (2, 3))) < 1e-12
    o = product_frame_oracle(CUBIC, born_oracle(np.eye(3), (3,)))
    assert phase_invariance_check(o) < 1e-12
    assert phase_invariance_check(counterexample_oracle((3, 3), 9.0)) < 1e-12
    sensitive = FunctionOracle((2, 2), lambda p: 1 + p.phase.real, 4.0)
    assert phase_invariance_check(sensitive) > 0.1


def test_mixture_oracle():
    b = born_oracle(np.eye(9), (3, 3))
    c = counterexample_oracle((3, 3), 9.0)
    m = MixtureOracle(b, c, 0.25)
    p = random_product_state((3, 3), np.random.default_rng(0))
    assert m(p) == pytest.approx(0.25 * b(p) + 0.75 * c(p))
    assert m.declared_weight == pytest.approx(9.0)
