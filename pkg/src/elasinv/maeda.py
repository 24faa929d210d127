"""Rational invariants of H⁴ translated from Maeda's octavic invariants,
and the 18/19-element separating sets built on them.

Every rational invariant has a power of ``M12 = ‖d2² × d2‖²`` as its
denominator; multiplying it out gives the polynomial K-invariants, whose
subscripts are their degrees in H.
"""
from dataclasses import dataclass

import numpy as np

from . import tensor_core as tc
from .elasticity import decompose
from .errors import NonGenericError
from .genericity import DEFAULT_THRESHOLD, genericity_report, orthotropy_detector
from .invariants import InvariantVector, covariants_d2_d3, dv_invariants

sp = tc.scalar_product


@dataclass(frozen=True)
class CovariantSet:
    d2: np.ndarray
    d3: np.ndarray
    T6: np.ndarray
    w7: np.ndarray
    J18: np.ndarray
    M12: float


def maeda_covariants(H, check=True):
    d2, d3 = covariants_d2_d3(H, check)
    T6 = tc.cross_product(d2 @ d2, d2)
    w7 = tc.r_contraction(H, T6, 3)
    TT = tc.harmonic_part(tc.r_contraction(T6, T6, 1))
    J18 = tc.cross_product(TT, T6)
    return CovariantSet(d2, d3, T6, w7, J18, sp(T6, T6))


def k_polynomials(H, cov=None):
    """The numerators ``M12, K14, K27, K40i, K40k, K80, K93`` (all polynomial in H)."""
    c = cov if cov is not None else maeda_covariants(H, check=False)
    T6, w, J18, M = c.T6, c.w7, c.J18, c.M12
    w2 = tc.harmonic_product(w, w)
    w3 = tc.harmonic_product(w2, w)
    w4 = tc.harmonic_product(w3, w)
    w6 = tc.harmonic_product(tc.harmonic_product(w4, w), w)
    T6T6 = tc.r_contraction(T6, T6, 1)
    T6T6h = tc.harmonic_part(T6T6)

    K40k = (sp(tc.harmonic_product(H, w3), tc.harmonic_product(T6, T6T6h)) / 5
            + sp(tc.cross_product(H, w3), J18) / 7
            - 7 * M * sp(tc.r_contraction(H, w3, 2), T6) / 99)
    w6J18 = sp(w6, J18)
    K80 = sp(tc.cross_product(w, H), T6T6) * w6J18
    K93 = w6J18 * (36 * sp(tc.harmonic_product(w2, H), J18)
                   + 28 * M * sp(tc.cross_product(tc.r_contraction(H, w, 1), w), T6) / 5)
    return {
        "M12": M,
        "K14": sp(w, w),
        "K27": sp(w3, T6),
        "K40i": sp(w4, T6T6),
        "K40k": K40k,
        "K80": K80,
        "K93": K93,
    }


K_DEGREES = {"M12": 12, "K14": 14, "K27": 27, "K40i": 40, "K40k": 40, "K80": 80, "K93": 93}
# (numerator, power of M12 in the denominator)
RATIONAL = {"i2": ("K14", 1), "i3": ("K27", 2), "i4": ("K40i", 3),
            "k4": ("K40k", 3), "k8": ("K80", 6), "k9": ("K93", 7)}


def maeda_rational(H, threshold=DEFAULT_THRESHOLD):
    """``(i2, i3, i4, k4, k8, k9)``; each is homogeneous of the degree in its name."""
    d2, _ = covariants_d2_d3(H)
    if orthotropy_detector(d2) <= threshold:
        raise NonGenericError("d2 is not orthotropic: M12 vanishes", genericity_report(H, threshold))
    K = k_polynomials(H)
    M = K["M12"]
    out = InvariantVector()
    for name, (num, power) in RATIONAL.items():
        out.append(name, K[num] / M**power, K_DEGREES[num] - 12 * power)
    return out


def separating19(E):
    """``(λ, μ, M12, K14, K27, K40i, K40k, K80, K93, D.., V..)``; polynomial, never raises."""
    dec = decompose(E)
    out = InvariantVector([("lambda", dec.lam, {"E": 1}), ("mu", dec.mu, {"E": 1})])
    for name, value in k_polynomials(dec.H).items():
        out.append(name, value, K_DEGREES[name])
    return out.extend(dv_invariants(dec, check=False))


def separating18(E, threshold=DEFAULT_THRESHOLD):
    """``(λ, μ, i2, i3, i4, k4, k8, k9, D.., V..)``; needs a generic E."""
    dec = decompose(E)
    report = genericity_report(dec.H, threshold)
    if not report.generic:
        raise NonGenericError("elasticity tensor is not generic", report)
    out = InvariantVector([("lambda", dec.lam, {"E": 1}), ("mu", dec.mu, {"E": 1})])
    out.extend(maeda_rational(dec.H, threshold))
    return out.extend(dv_invariants(dec, check=False))


# Ratios ``binary / tensor`` between Maeda's invariants of f = φ*(H) and the
# tensor-side values, keyed by tensor name. Determined once by evaluation;
# the pairing follows the degree in H.
MAEDA_PAIRING = {
    "i2": ("I2", 2.0**-4),
    "i3": ("I3", 2.0**-6),
    "i4": ("I4", 2.0**-8),
    "k4": ("J4", 5 * 2.0**-7),
    "k8": ("J2", 2.0**-17),
    "k9": ("J3", 2.0**-19),
}
