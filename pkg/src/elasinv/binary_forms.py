"""Complex binary forms, transvectants and the Cartan correspondence.

A binary form of degree k is stored as its k + 1 complex coefficients
``a_0 .. a_k`` of ``a_0 u^k + a_1 u^(k-1) v + ... + a_k v^k``.
Harmonic tensors of order n are matched with forms of degree 2n through the
Cartan map ``(u, v) -> ((u² + v²)/2, (u² - v²)/2i, i u v)``.
"""
from fractions import Fraction
from functools import lru_cache
from math import comb, factorial, perm

import numpy as np

from . import tensor_core as tc
from .errors import ContractionArityError, DomainError, NonGenericError, UnsupportedOrderError

MAX_DEGREE = 2 * tc.MAX_ORDER


class BinaryForm:
    __slots__ = ("coefficients",)

    def __init__(self, coefficients):
        coefficients = np.atleast_1d(np.asarray(coefficients, dtype=complex))
        if coefficients.ndim != 1 or coefficients.size == 0:
            raise ValueError("a binary form needs a non-empty 1-d coefficient vector")
        if coefficients.size - 1 > MAX_DEGREE:
            raise UnsupportedOrderError(f"degree {coefficients.size - 1} exceeds {MAX_DEGREE}")
        self.coefficients = coefficients

    @classmethod
    def zero(cls, degree):
        return cls(np.zeros(degree + 1))

    @property
    def degree(self):
        return self.coefficients.size - 1

    def __repr__(self):
        return f"BinaryForm(degree={self.degree}, coefficients={self.coefficients!r})"

    def __call__(self, u, v):
        k = self.degree
        return sum(a * u ** (k - j) * v**j for j, a in enumerate(self.coefficients))

    def _check_same_degree(self, other):
        if self.degree != other.degree:
            raise ValueError(f"degree mismatch: {self.degree} vs {other.degree}")

    def __add__(self, other):
        self._check_same_degree(other)
        return BinaryForm(self.coefficients + other.coefficients)

    def __sub__(self, other):
        self._check_same_degree(other)
        return BinaryForm(self.coefficients - other.coefficients)

    def __neg__(self):
        return BinaryForm(-self.coefficients)

    def __mul__(self, other):
        if isinstance(other, BinaryForm):
            return BinaryForm(np.convolve(self.coefficients, other.coefficients))
        return BinaryForm(self.coefficients * other)

    __rmul__ = __mul__

    def __truediv__(self, scalar):
        return BinaryForm(self.coefficients / scalar)

    def __pow__(self, k):
        out = BinaryForm([1.0])
        for _ in range(k):
            out = out * self
        return out

    def scalar(self):
        """Value of a degree-0 form."""
        if self.degree != 0:
            raise ValueError(f"form of degree {self.degree} is not a scalar")
        return complex(self.coefficients[0])

    def norm(self):
        return float(np.linalg.norm(self.coefficients))

    def derivative(self, nu, nv):
        """``∂^(nu+nv) f / ∂u^nu ∂v^nv``."""
        k = self.degree
        if nu + nv > k:
            return BinaryForm.zero(0)
        out = np.zeros(k - nu - nv + 1, dtype=complex)
        for j, a in enumerate(self.coefficients):
            if j < nv or k - j < nu:
                continue
            out[j - nv] += a * perm(k - j, nu) * perm(j, nv)
        return BinaryForm(out)

    def to_dict(self):
        return {
            "degree": self.degree,
            "coefficients": [[float(a.real), float(a.imag)] for a in self.coefficients],
        }

    @classmethod
    def from_dict(cls, data):
        coeffs = [complex(re, im) for re, im in data["coefficients"]]
        if len(coeffs) != data["degree"] + 1:
            raise ValueError("coefficient count must equal degree + 1")
        return cls(coeffs)


def transvectant(f, g, r):
    """The r-th transvectant ``<f, g>_r``, a form of degree p + q - 2r."""
    p, q = f.degree, g.degree
    if r < 0:
        raise ContractionArityError("transvectant index must be non-negative")
    if r > min(p, q):
        return BinaryForm.zero(max(p + q - 2 * r, 0))
    scale = Fraction(factorial(p - r) * factorial(q - r), factorial(p) * factorial(q))
    out = np.zeros(p + q - 2 * r + 1, dtype=complex)
    for i in range(r + 1):
        term = f.derivative(r - i, i) * g.derivative(i, r - i)
        out += (-1) ** i * comb(r, i) * term.coefficients
    return BinaryForm(out * float(scale))


def as_moebius(gamma, tol=1e-12):
    gamma = np.asarray(gamma, dtype=complex)
    if gamma.shape != (2, 2):
        raise DomainError(f"SL(2,C) element must be 2x2, got {gamma.shape}")
    if abs(np.linalg.det(gamma) - 1.0) > tol:
        raise DomainError("matrix does not have unit determinant")
    return gamma


def random_moebius(rng, spread=1.0):
    m = np.eye(2) + spread * (rng.standard_normal((2, 2)) + 1j * rng.standard_normal((2, 2))) / 2
    return m / np.sqrt(np.linalg.det(m))


def _substitute(f, row1, row2):
    """``f(row1 · ξ, row2 · ξ)`` for linear forms given by their (u, v) coefficients."""
    k = f.degree
    out = BinaryForm.zero(k)
    L1, L2 = BinaryForm(row1), BinaryForm(row2)
    for j, a in enumerate(f.coefficients):
        out = out + a * (L1 ** (k - j)) * (L2**j)
    return out


def sl2_act(gamma, f):
    """``(γ ⋆ f)(ξ) = f(γ^{-1} ξ)``."""
    a, b, c, d = as_moebius(gamma).ravel()
    return _substitute(f, [d, -b], [-c, a])


# Cartan map components as quadratic forms in the (u², uv, v²) basis.
CARTAN = np.array([
    [0.5, 0.0, 0.5],
    [0.5 / 1j, 0.0, -0.5 / 1j],
    [0.0, 1j, 0.0],
])


def cartan_map(u, v):
    return np.array([(u * u + v * v) / 2, (u * u - v * v) / 2j, 1j * u * v])


def sl2_to_so3(gamma):
    """Matrix ``P(γ)`` in SO(3,C) with ``φ(γ ξ) = P(γ) φ(ξ)``.

    This realises the adjoint morphism in the coordinates fixed by the
    Cartan map, which is exactly what makes the pullback equivariant.
    """
    a, b, c, d = as_moebius(gamma).ravel()
    moved = np.array([
        _substitute(BinaryForm(row), [a, b], [c, d]).coefficients for row in CARTAN
    ])
    return moved @ np.linalg.inv(CARTAN)


def pullback_polynomial(S):
    """``p ∘ φ`` where ``p(x) = S(x, ..., x)``; no harmonicity check."""
    S = np.asarray(S, dtype=complex)
    n = S.ndim
    cur = S[..., None]
    for _ in range(n):
        # contract the last tensor index with φ_i and multiply polynomials
        tmp = np.einsum("...il,ij->...lj", cur, CARTAN)
        L = tmp.shape[-2]
        nxt = np.zeros(tmp.shape[:-2] + (L + 2,), dtype=complex)
        for j in range(3):
            nxt[..., j:j + L] += tmp[..., :, j]
        cur = nxt
    return BinaryForm(cur)


def cartan_pullback(H, tol=1e-10):
    """``φ*`` on harmonic tensors (real or complex), giving a form of degree 2n."""
    H = np.asarray(H)
    if not tc.is_harmonic(H, tol):
        raise DomainError("Cartan pullback is only defined on harmonic tensors")
    return pullback_polynomial(H)


@lru_cache(maxsize=None)
def _pullback_matrix(n):
    basis = tc.harmonic_basis(n)
    cols = [pullback_polynomial(basis[:, j].reshape((3,) * n)).coefficients
            for j in range(basis.shape[1])]
    return np.array(cols).T


def cartan_pushforward(f):
    """Inverse of ``φ*``: the complex harmonic tensor of order deg/2 mapped to ``f``."""
    if f.degree % 2:
        raise DomainError("only even-degree forms come from harmonic tensors")
    n = f.degree // 2
    if n == 0:
        return np.asarray(f.coefficients[0])
    coords = np.linalg.solve(_pullback_matrix(n), f.coefficients)
    return (tc.harmonic_basis(n) @ coords).reshape((3,) * n)


def kappa(p, q, r):
    """Scale factor of the odd transvectant correspondence, as an exact Fraction."""
    return Fraction(
        factorial(p + q - 1) * factorial(p - r - 1) * factorial(q - r - 1),
        2 ** (2 * r + 1) * factorial(p + q - 1 - 2 * r) * factorial(p - 1) * factorial(q - 1),
    )


def transvectant_correspondence(F, G, s):
    """Both sides of the transvectant/tensor dictionary for ``<φ*F, φ*G>_s``.

    Returns ``(lhs, rhs)`` as binary forms: the transvectant itself and the
    pullback of the matching tensor operation.
    """
    F, G = np.asarray(F), np.asarray(G)
    p, q = F.ndim, G.ndim
    if s < 0 or s > 2 * min(p, q):
        raise ContractionArityError(f"index {s} not admissible for orders ({p}, {q})")
    lhs = transvectant(pullback_polynomial(F), pullback_polynomial(G), s)
    r, odd = divmod(s, 2)
    if not odd:
        T = tc.harmonic_part(tc.r_contraction(F, G, r))
        rhs = pullback_polynomial(T) * (2.0**-r)
    else:
        T = tc.harmonic_part(tc.multi_trace(tc.cross_product(F, G), r))
        rhs = pullback_polynomial(T) * float(kappa(p, q, r))
    return lhs, rhs


def check_transvectant_correspondence(F, G, s):
    """Relative residual between ``<φ*F, φ*G>_s`` and its tensor translation."""
    lhs, rhs = transvectant_correspondence(F, G, s)
    scale = max(lhs.norm(), rhs.norm(), 1e-300)
    return (lhs - rhs).norm() / scale


class MaedaCovariants:
    """The covariants Q, t, θ, M, j of a binary octavic."""

    def __init__(self, f):
        if f.degree != 8:
            raise DomainError("Maeda invariants are defined for octavics")
        self.f = f
        self.Q = transvectant(f, f, 6)
        self.t = transvectant(transvectant(self.Q, self.Q, 2), self.Q, 1)
        self.theta = transvectant(f, self.t, 6)
        self.M = transvectant(self.t, self.t, 6).scalar()
        self.tt2 = transvectant(self.t, self.t, 2)
        self.j = transvectant(self.tt2, self.t, 1)


def maeda_binary_invariants(f, threshold=1e-24):
    """Maeda's six rational invariants ``(I2, I3, I4, J2, J3, J4)`` of an octavic.

    ``threshold`` bounds ``|M| / ‖f‖^12``; M carries large factorial
    normalizations, so its typical relative size is around 1e-15.
    """
    c = MaedaCovariants(f)
    f, t, th, M, j, tt2 = c.f, c.t, c.theta, c.M, c.j, c.tt2
    if abs(M) <= threshold * max(f.norm(), 1e-300) ** 12:
        raise NonGenericError("octavic is not generic (M vanishes)")
    tv = transvectant
    I2 = tv(th, th, 2).scalar() / M
    I3 = tv(th**3, t, 6).scalar() / M**2
    I4 = tv(th**4, tt2, 8).scalar() / M**3
    common = tv(th**6, j, 12).scalar()
    J2 = tv(tv(th, f, 1), tt2, 8).scalar() * common / M**6
    J3 = (36 * tv(th**2 * f, j, 12).scalar() / M**2
          - 28 * tv(tv(th**2, f, 3), t, 6).scalar() / (5 * M)) * common / M**5
    J4 = (2 * tv(f * th**3, t * tt2, 14).scalar() / M**3
          + 20 * tv(tv(f, th**3, 1), j, 12).scalar() / (7 * M**3)
          - 70 * tv(tv(f, th**3, 4), t, 6).scalar() / (99 * M**2))
    return np.array([I2, I3, I4, J2, J3, J4])
