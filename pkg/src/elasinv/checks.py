"""Self-check suite: the acceptance properties, runnable from the CLI."""
import math
import time
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import binary_forms as bf
from . import conversions
from . import tensor_core as tc
from .coefficient_fit import fit_all, table_as_polynomial
from .elasticity import _ela_basis, decompose, random_elasticity, reconstruct, to_voigt
from .genericity import genericity_report
from .invariants import (dv_invariants, i_invariants, j_invariants,
                         separating21)
from .maeda import K_DEGREES, k_polynomials, maeda_covariants, maeda_rational, separating18
from .separation import (Decision, _part_norms, basis_sym2, compare_vectors, det_m_formula,
                         equivalent, gram_system, reconstruct_dv)


@dataclass
class CheckResult:
    name: str
    passed: bool
    detail: str
    seconds: float = 0.0

    def line(self):
        status = "PASS" if self.passed else "FAIL"
        return f"[{status}] {self.name}: {self.detail} ({self.seconds:.2f}s)"


def generic_elasticity(rng, threshold=1e-6):
    while True:
        E = random_elasticity(rng)
        if genericity_report(decompose(E).H, threshold).generic:
            return E


def unit_harmonic(rng):
    H = tc.random_harmonic(4, rng)
    return H / tc.norm(H)


def rotation_invariance(n=1000, seed=11):
    rng = np.random.default_rng(seed)
    worst = 0.0
    for _ in range(n):
        E, g = random_elasticity(rng), tc.random_rotation(rng)
        E2 = tc.rotate(g, E)
        d1, d2 = decompose(E), decompose(E2)
        _, deltas = compare_vectors(separating21(E, check=False), separating21(E2, check=False),
                                    _part_norms(d1), _part_norms(d2), 1e-8)
        worst = max(worst, max(d["delta"] / d["scale"] for d in deltas))
    return worst <= 1e-8, f"{n} pairs, worst weighted deviation {worst:.2e}"


def _conversion_errors(direction, n=100, seed=12):
    rng = np.random.default_rng(seed)
    worst = 0.0
    for _ in range(n):
        H = tc.random_harmonic(4, rng)
        I, J = i_invariants(H).values, j_invariants(H).values
        got, want = (conversions.i_from_j(J), I) if direction == "i" else (conversions.j_from_i(I), J)
        scale = np.maximum(np.abs(want), tc.norm(H) ** np.arange(2, 11))
        worst = max(worst, np.max(np.abs(got - want) / scale))
    return worst


def i_from_j_check(n=100):
    worst = _conversion_errors("i", n)
    return worst <= 1e-9, f"{n} tensors, worst relative error {worst:.2e}"


def j_from_i_check(n=100):
    worst = _conversion_errors("j", n)
    return worst <= 1e-9, f"{n} tensors, worst relative error {worst:.2e}"


def conversion_fit_check():
    results = fit_all()
    bad = []
    for name, (coeffs, unique) in results.items():
        table = conversions.I_FROM_J if name[0] == "I" else conversions.J_FROM_I
        if not unique or coeffs != table_as_polynomial(table[name]):
            bad.append(name)
    i9 = results["I9"][0].get((5, 2, 2))
    i10_den = math.lcm(*(c.denominator for c in results["I10"][0].values()))
    ok = not bad and i9 == Fraction(2025, 19440) and i10_den == 1620
    detail = (f"{len(results)} unique exact fits; I9 J5 J2^2 coefficient "
              f"{None if i9 is None else i9 * 19440}/19440; I10 denominator {i10_den}")
    if bad:
        detail += f"; mismatching entries {bad}"
    return ok, detail


def basis_determinant(n=100, seed=13):
    rng = np.random.default_rng(seed)
    a = np.diag([1.0, 2.0, 3.0])
    worked = basis_sym2(a, np.ones((3, 3)) - np.eye(3)).det_m
    worst = 0.0
    for _ in range(n):
        B = basis_sym2(a, tc.random_symmetric(2, rng))
        if B.det == 0:
            return False, "zero basis determinant"
        expected = det_m_formula(B.eigenvalues, *B.offdiagonal)
        worst = max(worst, abs(B.det_m - expected) / abs(expected))
    ok = worst <= 1e-10 and abs(worked - 6) <= 1e-12
    return ok, f"worked det M = {worked:.12g}; {n} pairs, worst relative error {worst:.2e}"


def separation(n=500, seed=14):
    rng = np.random.default_rng(seed)
    miss_eq = miss_dist = 0
    for _ in range(n):
        E = generic_elasticity(rng)
        if equivalent(E, tc.rotate(tc.random_rotation(rng), E)).decision != Decision.EQUIVALENT:
            miss_eq += 1
        P = random_elasticity(rng)
        P *= tc.norm(E) / tc.norm(P)
        if equivalent(E, E + 1e-3 * P).decision != Decision.DISTINCT:
            miss_dist += 1
    ok = miss_eq == 0 and miss_dist == 0
    return ok, f"{n} rotated pairs ({miss_eq} missed), {n} perturbed pairs ({miss_dist} missed)"


def gram_reconstruction(n=200, seed=15):
    rng = np.random.default_rng(seed)
    worst, min_eig = 0.0, np.inf
    for _ in range(n):
        dec = decompose(generic_elasticity(rng))
        r = reconstruct_dv(dec)
        worst = max(worst, r.d_residual, r.v_residual)
        min_eig = min(min_eig, np.linalg.eigvalsh(gram_system(dec.H).G)[0])
    ok = worst <= 1e-8 and min_eig > 0
    return ok, f"{n} decompositions, worst residual {worst:.2e}, smallest Gram eigenvalue {min_eig:.2e}"


def admissible_indices(p, q):
    return range(0, 2 * min(p, q) + 1)


def cartan_correspondence(n=50, seed=16):
    rng = np.random.default_rng(seed)
    worst, count = 0.0, 0
    for p in range(1, 5):
        for q in range(1, 5):
            for _ in range(n):
                F, G = tc.random_harmonic(p, rng), tc.random_harmonic(q, rng)
                for s in admissible_indices(p, q):
                    worst = max(worst, bf.check_transvectant_correspondence(F, G, s))
                    count += 1
    k = bf.kappa(4, 4, 0)
    ok = worst <= 1e-9 and k == Fraction(1, 2)
    return ok, f"{count} evaluations, worst residual {worst:.2e}; kappa(4,4,0) = {k}"


def _rel(a, b):
    return tc.norm(np.asarray(a) - np.asarray(b)) / max(tc.norm(b), 1e-300)


def scale_chain(n=50, seed=17):
    rng = np.random.default_rng(seed)
    worst = dict.fromkeys(("t", "M", "theta", "j"), 0.0)
    for _ in range(n):
        H = unit_harmonic(rng)
        c = maeda_covariants(H)
        b = bf.MaedaCovariants(bf.cartan_pullback(H))
        worst["t"] = max(worst["t"], _rel(bf.cartan_pushforward(b.t), c.T6 / 2**11))
        worst["M"] = max(worst["M"], abs(b.M - c.M12 / 2**25) / abs(c.M12 / 2**25))
        worst["theta"] = max(worst["theta"], _rel(bf.cartan_pushforward(b.theta), c.w7 / 2**14))
        worst["j"] = max(worst["j"], _rel(bf.cartan_pushforward(b.j), c.J18 / 2**35))
    ok = max(worst.values()) <= 1e-8
    return ok, f"{n} tensors, worst residuals " + ", ".join(f"{k} {v:.1e}" for k, v in worst.items())


def complex_step_jacobian(func, E, h=1e-30):
    """Jacobian of ``func(E).values`` along the 21 Voigt unit directions."""
    E = np.asarray(E, dtype=float)
    return np.array([np.imag(func(E + 1j * h * B).values) / h for B in _ela_basis()]).T


def orbit_tangents(E):
    """Unit Voigt coordinates of the three infinitesimal rotations of E."""
    out = []
    for k in range(3):
        W = tc.LEVI_CIVITA[k]
        T = (np.einsum("ia,ajkl->ijkl", W, E) + np.einsum("ja,iakl->ijkl", W, E)
             + np.einsum("ka,ijal->ijkl", W, E) + np.einsum("la,ijka->ijkl", W, E))
        c = to_voigt(T)[np.triu_indices(6)]
        out.append(c / np.linalg.norm(c))
    return np.array(out).T


def jacobian_gap(E):
    """``(rank, gap)`` for the row-normalized Jacobian of the 18 rational invariants.

    The gap is the smallest of the 18 singular values divided by the largest
    response along the rotation orbit, where the exact Jacobian vanishes.
    """
    J = complex_step_jacobian(separating18, E)
    J /= np.linalg.norm(J, axis=1, keepdims=True)
    sv = np.linalg.svd(J, compute_uv=False)
    floor = np.linalg.norm(J @ orbit_tangents(E), 2)
    gap = sv[-1] / max(floor, 1e-300)
    rank = int(np.linalg.matrix_rank(J))
    return rank, gap


def jacobian_rank(n=20, seed=18):
    rng = np.random.default_rng(seed)
    ranks, gaps = [], []
    for _ in range(n):
        E = generic_elasticity(rng)
        rank, gap = jacobian_gap(E / tc.norm(E))
        ranks.append(rank)
        gaps.append(gap)
    ok = all(r == 18 for r in ranks) and min(gaps) >= 1e6
    return ok, f"{n} points, ranks {sorted(set(ranks))}, smallest gap {min(gaps):.2e}"


def _scaling_values(H, dec):
    """All H-dependent scalars and covariants with their degree in H."""
    out = []
    for name, v, deg in i_invariants(H):
        out.append((name, v, deg["H"]))
    for name, v, deg in j_invariants(H):
        out.append((name, v, deg["H"]))
    c = maeda_covariants(H)
    out += [("T6", c.T6, 6), ("w7", c.w7, 7), ("J18", c.J18, 18), ("M12", c.M12, 12)]
    for name, v in k_polynomials(H, c).items():
        out.append((name, v, K_DEGREES[name]))
    for name, v, deg in maeda_rational(H):
        out.append((name, v, deg["H"]))
    for name, v, deg in dv_invariants(dec):
        out.append((name, v, deg["H"]))
    return out


def homogeneity(n=10, seed=19):
    rng = np.random.default_rng(seed)
    worst, count = 0.0, 0
    for _ in range(n):
        E = generic_elasticity(rng)
        dec = decompose(E)
        dec = dec.scaled(H=1 / tc.norm(dec.H))
        base = _scaling_values(dec.H, dec)
        for t in (2.0, 1 / 3):
            scaled = _scaling_values(t * dec.H, dec.scaled(H=t))
            for (name, v, k), (_, w, _) in zip(base, scaled):
                expected = np.asarray(v) * t**k
                err = tc.norm(np.asarray(w) - expected) / max(tc.norm(expected), 1e-300)
                worst = max(worst, err)
                count += 1
    return worst <= 1e-8, f"{count} scalings, worst relative error {worst:.2e}"


def round_trip(n=200, seed=20):
    rng = np.random.default_rng(seed)
    worst = 0.0
    for _ in range(n):
        E = random_elasticity(rng)
        dec = decompose(E)
        worst = max(worst, _rel(reconstruct(dec), E))
        back = decompose(reconstruct(dec))
        worst = max(worst, np.linalg.norm(back.coordinates() - dec.coordinates())
                    / np.linalg.norm(dec.coordinates()))
    return worst <= 1e-12, f"{n} tensors, worst relative error {worst:.2e}"


CHECKS = {
    "rotation_invariance": rotation_invariance,
    "i_from_j": i_from_j_check,
    "j_from_i": j_from_i_check,
    "conversion_fit": conversion_fit_check,
    "basis_determinant": basis_determinant,
    "separation": separation,
    "gram_reconstruction": gram_reconstruction,
    "cartan_correspondence": cartan_correspondence,
    "scale_chain": scale_chain,
    "jacobian_rank": jacobian_rank,
    "homogeneity": homogeneity,
    "round_trip": round_trip,
}


def run_checks(names=None):
    results = []
    for name in names or CHECKS:
        start = time.perf_counter()
        try:
            ok, detail = CHECKS[name]()
        except Exception as exc:  # a crash is a failed check, reported by name
            ok, detail = False, f"{type(exc).__name__}: {exc}"
        results.append(CheckResult(name, bool(ok), detail, time.perf_counter() - start))
    return results
