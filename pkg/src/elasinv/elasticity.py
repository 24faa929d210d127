"""Elasticity tensors, plain Voigt I/O and the harmonic decomposition.

An elasticity tensor is a ``(3, 3, 3, 3)`` array with the minor and major
index symmetries. The Voigt convention maps index pairs
11→1, 22→2, 33→3, 23→4, 13→5, 12→6 and stores ``C_IJ = E_ijkl`` with no
Kelvin/Mandel factors.
"""
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from . import tensor_core as tc
from .errors import FormatError, InvalidDecompositionError

Q = tc.IDENTITY
VOIGT_PAIRS = ((0, 0), (1, 1), (2, 2), (1, 2), (0, 2), (0, 1))
VOIGT_INDEX = np.empty((3, 3), dtype=int)
for _I, (_i, _j) in enumerate(VOIGT_PAIRS):
    VOIGT_INDEX[_i, _j] = VOIGT_INDEX[_j, _i] = _I


def symmetry_defect(E):
    """Largest violation of the minor and major index symmetries."""
    E = np.asarray(E)
    return max(
        np.max(np.abs(E - E.transpose(1, 0, 2, 3))),
        np.max(np.abs(E - E.transpose(0, 1, 3, 2))),
        np.max(np.abs(E - E.transpose(2, 3, 0, 1))),
    )


def project_ela(E):
    """Orthogonal projection onto tensors with the elasticity symmetries."""
    E = (E + E.transpose(1, 0, 2, 3)) / 2
    E = (E + E.transpose(0, 1, 3, 2)) / 2
    return (E + E.transpose(2, 3, 0, 1)) / 2


def as_elasticity(E, tol=1e-12):
    """Validate an elasticity tensor; returns it with exact symmetries."""
    E = np.asarray(E)
    if not np.issubdtype(E.dtype, np.complexfloating):
        E = E.astype(float)
    if E.shape != (3, 3, 3, 3):
        raise FormatError(f"elasticity tensor must have shape (3, 3, 3, 3), got {E.shape}")
    if not np.all(np.isfinite(E)):
        raise FormatError("elasticity tensor has non-finite components")
    scale = max(np.max(np.abs(E)), 1e-300)
    if symmetry_defect(E) > tol * scale:
        raise FormatError("components violate E_ijkl = E_jikl = E_ijlk = E_klij")
    return project_ela(E)


def from_voigt(M, tol=1e-10):
    M = np.asarray(M, dtype=float)
    if M.shape != (6, 6):
        raise FormatError(f"Voigt matrix must be 6x6, got shape {M.shape}")
    if not np.all(np.isfinite(M)):
        raise FormatError("Voigt matrix has non-finite entries")
    if np.max(np.abs(M - M.T)) > tol * max(np.max(np.abs(M)), 1e-300):
        raise FormatError("Voigt matrix is not symmetric")
    upper = np.triu(M) + np.triu(M, 1).T
    return upper[VOIGT_INDEX[:, :, None, None], VOIGT_INDEX[None, None, :, :]]


def to_voigt(E):
    E = np.asarray(E)
    idx = np.array(VOIGT_PAIRS)
    return E[idx[:, 0][:, None], idx[:, 1][:, None], idx[:, 0][None, :], idx[:, 1][None, :]]


def isotropic(c1, c2):
    """``c1 δ_ij δ_kl + c2 (δ_ik δ_jl + δ_il δ_jk)``."""
    return (c1 * np.einsum("ij,kl->ijkl", Q, Q)
            + c2 * (np.einsum("ik,jl->ijkl", Q, Q) + np.einsum("il,jk->ijkl", Q, Q)))


def random_elasticity(seed=None):
    """21 independent standard-normal Voigt components, seeded."""
    rng = seed if isinstance(seed, np.random.Generator) else np.random.default_rng(seed)
    M = np.zeros((6, 6))
    M[np.triu_indices(6)] = rng.standard_normal(21)
    return from_voigt(M + np.triu(M, 1).T)


def dilatation(E):
    """``d_ij = E_kkij``."""
    return np.einsum("kkij->ij", E)


def voigt_tensor(E):
    """``v_ij = E_kikj``."""
    return np.einsum("kikj->ij", E)


def deviator(a):
    return a - (np.trace(a) / 3) * Q


@dataclass(frozen=True)
class HarmonicDecomposition:
    """``E = (λ, μ, d', v', H)``."""

    lam: float
    mu: float
    d_prime: np.ndarray
    v_prime: np.ndarray
    H: np.ndarray

    def parts(self):
        return self.lam, self.mu, self.d_prime, self.v_prime, self.H

    def scaled(self, lam=1.0, mu=1.0, d_prime=1.0, v_prime=1.0, H=1.0):
        return HarmonicDecomposition(self.lam * lam, self.mu * mu, self.d_prime * d_prime,
                                     self.v_prime * v_prime, self.H * H)

    def rotated(self, g):
        return HarmonicDecomposition(self.lam, self.mu, tc.rotate(g, self.d_prime),
                                     tc.rotate(g, self.v_prime), tc.rotate(g, self.H))

    def coordinates(self):
        """21 coordinates on fixed orthonormal bases of H² and H⁴."""
        b2, b4 = tc.harmonic_basis(2), tc.harmonic_basis(4)
        return np.concatenate([
            [self.lam, self.mu],
            b2.T @ np.reshape(self.d_prime, -1),
            b2.T @ np.reshape(self.v_prime, -1),
            b4.T @ np.reshape(self.H, -1),
        ])

    def to_dict(self):
        return {
            "lambda": float(self.lam),
            "mu": float(self.mu),
            "d_prime": np.asarray(self.d_prime, dtype=float).tolist(),
            "v_prime": np.asarray(self.v_prime, dtype=float).tolist(),
            "H": np.asarray(self.H, dtype=float).reshape(-1).tolist(),
            "norms": {
                "d_prime": tc.norm(self.d_prime),
                "v_prime": tc.norm(self.v_prime),
                "H": tc.norm(self.H),
            },
        }


def decompose(E):
    """Harmonic decomposition with the explicit fourth-order part
    ``H = E^s - q ⊙ a' - (7/30) tr(a) q ⊙ q`` where ``a = (2/7)(d + 2v)``."""
    E = np.asarray(E)
    d, v = dilatation(E), voigt_tensor(E)
    lam, mu = np.trace(d), np.trace(v)
    a = (d + 2 * v) * 2 / 7
    tra = np.trace(a)
    H = (tc.symmetrize(E) - tc.sym_product(Q, deviator(a))
         - tra * 7 / 30 * tc.sym_product(Q, Q))
    return HarmonicDecomposition(lam, mu, deviator(d), deviator(v), H)


@lru_cache(maxsize=1)
def _ela_basis():
    basis = []
    for I in range(6):
        for J in range(I, 6):
            M = np.zeros((6, 6))
            M[I, J] = M[J, I] = 1.0
            basis.append(from_voigt(M))
    return basis


@lru_cache(maxsize=1)
def _decomposition_matrix():
    """``decompose`` as a 21x21 matrix (Voigt unit basis -> part coordinates)."""
    return np.column_stack([decompose(B).coordinates() for B in _ela_basis()])


def check_decomposition(dec, tol=1e-10):
    scale = max(abs(dec.lam), abs(dec.mu), tc.norm(dec.d_prime), tc.norm(dec.v_prime),
                tc.norm(dec.H), 1e-300)
    for name, part, order in (("d'", dec.d_prime, 2), ("v'", dec.v_prime, 2), ("H", dec.H, 4)):
        part = np.asarray(part)
        if part.shape != (3,) * order:
            raise InvalidDecompositionError(f"{name} must have order {order}")
        if (tc.norm(part - tc.symmetrize(part)) > tol * scale
                or tc.norm(tc.trace(part)) > tol * scale):
            raise InvalidDecompositionError(f"{name} is not symmetric and traceless")


def reconstruct(dec, tol=1e-10):
    """Inverse of ``decompose``, by solving the cached 21x21 linear system."""
    check_decomposition(dec, tol)
    x = np.linalg.solve(_decomposition_matrix(), dec.coordinates())
    return sum(c * B for c, B in zip(x, _ela_basis()))
