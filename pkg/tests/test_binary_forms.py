from fractions import Fraction
from math import comb, factorial

import numpy as np
import pytest
import sympy

from elasinv import binary_forms as bf
from elasinv import tensor_core as tc
from elasinv.errors import ContractionArityError, DomainError, NonGenericError, UnsupportedOrderError
from elasinv.invariants import covariants_d2_d3
from elasinv.maeda import MAEDA_PAIRING, maeda_covariants, maeda_rational

from conftest import rel

NAMES = ("I2", "I3", "I4", "J2", "J3", "J4")


def random_form(rng, k):
    return bf.BinaryForm(rng.standard_normal(k + 1) + 1j * rng.standard_normal(k + 1))


def unit_harmonic(rng):
    H = tc.random_harmonic(4, rng)
    return H / tc.norm(H)


def symbolic_transvectant(fc, gc, r):
    """Direct evaluation of the derivative-sum formula in exact arithmetic."""
    u, v = sympy.symbols("u v")
    p, q = len(fc) - 1, len(gc) - 1
    f = sum(sympy.Rational(a) * u ** (p - j) * v**j for j, a in enumerate(fc))
    g = sum(sympy.Rational(a) * u ** (q - j) * v**j for j, a in enumerate(gc))
    acc = 0
    for i in range(r + 1):
        df = sympy.diff(f, u, r - i, v, i) if r else f
        dg = sympy.diff(g, u, i, v, r - i) if r else g
        acc += (-1) ** i * comb(r, i) * df * dg
    acc = sympy.expand(acc * sympy.Rational(factorial(p - r) * factorial(q - r),
                                            factorial(p) * factorial(q)))
    n = p + q - 2 * r
    poly = sympy.Poly(acc, u, v)
    return [poly.coeff_monomial(u ** (n - j) * v**j) for j in range(n + 1)]


def test_transvectant_matches_symbolic_oracle(rng):
    fc = [int(x) for x in rng.integers(-5, 6, size=9)]
    expected = symbolic_transvectant(fc, fc, 6)
    got = bf.transvectant(bf.BinaryForm(fc), bf.BinaryForm(fc), 6)
    assert np.allclose(got.coefficients, [complex(e) for e in expected], rtol=1e-13, atol=1e-13)
    gc = [int(x) for x in rng.integers(-5, 6, size=6)]
    for r in range(0, 6):
        expected = symbolic_transvectant(fc, gc, r)
        got = bf.transvectant(bf.BinaryForm(fc), bf.BinaryForm(gc), r)
        assert np.allclose(got.coefficients, [complex(e) for e in expected], rtol=1e-13)


def test_transvectant_zeroth_is_product(rng):
    f, g = random_form(rng, 3), random_form(rng, 4)
    assert np.allclose(bf.transvectant(f, g, 0).coefficients, (f * g).coefficients)


def test_transvectant_symmetry_and_degrees(rng):
    f, g = random_form(rng, 5), random_form(rng, 4)
    for r in range(6):
        t = bf.transvectant(f, g, r)
        if r <= 4:
            assert t.degree == 9 - 2 * r
        assert np.allclose(t.coefficients, (-1) ** r * bf.transvectant(g, f, r).coefficients)
        if r % 2:
            assert np.allclose(bf.transvectant(f, f, r).coefficients, 0)
    assert bf.transvectant(f, g, 5).norm() == 0
    with pytest.raises(ContractionArityError):
        bf.transvectant(f, g, -1)


def test_sl2_identity_and_composition(rng):
    f = random_form(rng, 6)
    assert np.allclose(bf.sl2_act(np.eye(2), f).coefficients, f.coefficients)
    g1, g2 = bf.random_moebius(rng, 0.5), bf.random_moebius(rng, 0.5)
    lhs = bf.sl2_act(g1, bf.sl2_act(g2, f))
    assert np.allclose(lhs.coefficients, bf.sl2_act(g1 @ g2, f).coefficients)


def test_sl2_action_is_pullback_by_inverse(rng):
    f, g = random_form(rng, 4), bf.random_moebius(rng, 0.5)
    u, v = 0.3 + 0.1j, -1.2
    w = np.linalg.solve(g, [u, v])
    assert np.isclose(bf.sl2_act(g, f)(u, v), f(*w))


def test_transvectants_are_equivariant(rng):
    f, g = random_form(rng, 6), random_form(rng, 4)
    gam = bf.random_moebius(rng, 0.5)
    for r in range(5):
        lhs = bf.transvectant(bf.sl2_act(gam, f), bf.sl2_act(gam, g), r)
        rhs = bf.sl2_act(gam, bf.transvectant(f, g, r))
        assert np.allclose(lhs.coefficients, rhs.coefficients, atol=1e-10 * rhs.norm())


def test_moebius_validation():
    with pytest.raises(DomainError):
        bf.sl2_act(np.diag([2.0, 2.0]), bf.BinaryForm([1, 0]))


def test_sl2_to_so3(rng):
    assert np.allclose(bf.sl2_to_so3(np.eye(2)), np.eye(3))
    theta = 0.7
    Pd = bf.sl2_to_so3(np.diag([np.exp(1j * theta / 2), np.exp(-1j * theta / 2)]))
    assert np.allclose(Pd.T @ Pd, np.eye(3))
    for _ in range(10):
        g1, g2 = bf.random_moebius(rng), bf.random_moebius(rng)
        P1, P2 = bf.sl2_to_so3(g1), bf.sl2_to_so3(g2)
        assert np.allclose(P1.T @ P1, np.eye(3), atol=1e-10)
        assert np.isclose(np.linalg.det(P1), 1, atol=1e-10)
        assert np.allclose(bf.sl2_to_so3(g1 @ g2), P1 @ P2, atol=1e-10)


def test_pullback_of_q_vanishes():
    assert bf.pullback_polynomial(np.eye(3)).norm() < 1e-15
    with pytest.raises(DomainError):
        bf.cartan_pullback(np.eye(3))
    assert bf.cartan_pullback(np.zeros((3, 3))).norm() == 0


def test_pullback_is_equivariant(rng):
    H = tc.random_harmonic(3, rng)
    gam = bf.random_moebius(rng, 0.5)
    P = bf.sl2_to_so3(gam)
    lhs = bf.cartan_pullback(tc.rotate(P, H))
    rhs = bf.sl2_act(gam, bf.cartan_pullback(H))
    assert np.allclose(lhs.coefficients, rhs.coefficients, atol=1e-10 * rhs.norm())


@pytest.mark.parametrize("n", range(1, 5))
def test_pullback_injective_on_harmonics(n):
    M = bf._pullback_matrix(n)
    assert M.shape == (2 * n + 1, 2 * n + 1)
    assert np.linalg.matrix_rank(M) == 2 * n + 1


def test_pushforward_round_trip(rng):
    f = random_form(rng, 8)
    H = bf.cartan_pushforward(f)
    assert tc.is_harmonic(H, 1e-12)
    assert np.allclose(bf.cartan_pullback(H).coefficients, f.coefficients)
    assert tc.norm(bf.cartan_pushforward(bf.BinaryForm.zero(8))) == 0
    with pytest.raises(DomainError):
        bf.cartan_pushforward(random_form(rng, 3))


def test_pushforward_of_Q_is_deviator_of_d2(rng):
    H = tc.random_harmonic(4, rng)
    f = bf.cartan_pullback(H)
    d2, _ = covariants_d2_d3(H)
    d2p = d2 - np.trace(d2) / 3 * np.eye(3)
    assert rel(bf.cartan_pushforward(bf.transvectant(f, f, 6)), d2p / 8) < 1e-12


def test_kappa_values():
    assert bf.kappa(4, 4, 0) == Fraction(1, 2)
    assert bf.kappa(2, 4, 1) == Fraction(5, 6)


@pytest.mark.parametrize("s", [3, 4])
def test_correspondence_fourth_order(rng, s):
    F, G = tc.random_harmonic(4, rng), tc.random_harmonic(4, rng)
    assert bf.check_transvectant_correspondence(F, G, s) <= 1e-9


def test_correspondence_sweep(rng):
    for p in range(1, 5):
        for q in range(1, 5):
            F, G = tc.random_harmonic(p, rng), tc.random_harmonic(q, rng)
            for s in range(2 * min(p, q) + 1):
                assert bf.check_transvectant_correspondence(F, G, s) <= 1e-9, (p, q, s)


def test_correspondence_inadmissible_index(rng):
    F = tc.random_harmonic(2, rng)
    with pytest.raises(ContractionArityError):
        bf.check_transvectant_correspondence(F, F, 5)


def test_scale_chain(rng):
    for _ in range(5):
        H = unit_harmonic(rng)
        c = maeda_covariants(H)
        b = bf.MaedaCovariants(bf.cartan_pullback(H))
        assert rel(bf.cartan_pushforward(b.t), c.T6 / 2**11) < 1e-8
        assert abs(b.M - c.M12 / 2**25) <= 1e-8 * c.M12 / 2**25
        assert rel(bf.cartan_pushforward(b.theta), c.w7 / 2**14) < 1e-8
        assert rel(bf.cartan_pushforward(b.j), c.J18 / 2**35) < 1e-8


def test_theta_squared_identity_carries_extra_power_of_two(rng):
    H = unit_harmonic(rng)
    c = maeda_covariants(H)
    b = bf.MaedaCovariants(bf.cartan_pullback(H))
    lhs = bf.cartan_pushforward(bf.transvectant(b.theta**2, b.f, 3))
    Hw = tc.r_contraction(H, c.w7, 1)
    assert rel(lhs, -tc.cross_product(Hw, c.w7) / 2**30) < 1e-8


def test_maeda_invariants_sl2_invariant(rng):
    f = random_form(rng, 8)
    base = bf.maeda_binary_invariants(f)
    for _ in range(3):
        moved = bf.maeda_binary_invariants(bf.sl2_act(bf.random_moebius(rng, 0.3), f))
        assert np.allclose(moved, base, rtol=1e-8)


def test_maeda_invariants_real_for_real_tensors(rng):
    vals = bf.maeda_binary_invariants(bf.cartan_pullback(unit_harmonic(rng)))
    assert np.all(np.abs(vals.imag) <= 1e-8 * np.abs(vals))


def test_maeda_pairing_constants(rng):
    for _ in range(5):
        H = unit_harmonic(rng)
        binary = dict(zip(NAMES, bf.maeda_binary_invariants(bf.cartan_pullback(H))))
        tensor = maeda_rational(H)
        for name, (bname, ratio) in MAEDA_PAIRING.items():
            assert np.isclose(binary[bname].real, ratio * tensor[name], rtol=1e-8), name


def test_maeda_non_generic():
    S = np.zeros((3,) * 4)
    for i in range(3):
        S[i, i, i, i] = 1.0
    with pytest.raises(NonGenericError):
        bf.maeda_binary_invariants(bf.cartan_pullback(tc.harmonic_part(S)))
    with pytest.raises(DomainError):
        bf.MaedaCovariants(bf.BinaryForm([1, 2, 3]))


def test_binary_form_basics(rng):
    f = random_form(rng, 4)
    assert bf.BinaryForm.from_dict(f.to_dict()).coefficients.tolist() == f.coefficients.tolist()
    with pytest.raises(ValueError):
        bf.BinaryForm.from_dict({"degree": 3, "coefficients": [[1, 0]]})
    with pytest.raises(UnsupportedOrderError):
        bf.BinaryForm(np.zeros(bf.MAX_DEGREE + 2))
    g = bf.BinaryForm([1, 0, 0])  # u²
    assert np.allclose(g.derivative(1, 0).coefficients, [2, 0])
    assert np.allclose(g.derivative(0, 1).coefficients, [0, 0])
    assert (f - f).norm() == 0 and np.isclose((2 * f / 2 - f).norm(), 0)
    with pytest.raises(ValueError):
        f.scalar()
