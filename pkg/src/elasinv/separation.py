"""Orbit separation of generic elasticity tensors.

A generic E has an orthotropic ``d2`` and a triclinic pair ``(d2, d3)``. Then
``q, d2, d3, d2², (d2 d3)^s, [d2, d3]²`` is a basis of symmetric
second-order tensors, so ``d'`` and ``v'`` are recovered from their scalar
products with that basis through a 5x5 Gram system. Here ``(ab)^s`` is
``ab + ba``.
"""
import warnings
from dataclasses import dataclass, field
from enum import Enum

import numpy as np

from . import tensor_core as tc
from .elasticity import decompose, deviator
from .errors import NonGenericError, RecoveryFailedError, SingularBasisError
from .genericity import (DEFAULT_THRESHOLD, GenericityReport, axial_commutator,
                         genericity_from_covariants, genericity_report, is_orthotropic,
                         is_triclinic_pair, orthotropy_detector, triclinic_detectors)
from .invariants import covariants_d2_d3, commutator, gram_basis, separating21, sym_matprod

__all__ = [
    "GenericityReport", "genericity_report", "is_orthotropic", "is_triclinic_pair",
    "orthotropy_detector", "triclinic_detectors", "axial_commutator",
    "Sym2Basis", "basis_sym2", "GramSystem", "gram_system", "DVReconstruction",
    "reconstruct_dv", "Decision", "Comparison", "equivalent", "recover_rotation",
    "CONDITION_LIMIT",
]

CONDITION_LIMIT = 1e12
_SQ2 = np.sqrt(2.0)


def sym2_coordinates(a):
    """Orthonormal coordinates of a symmetric 3x3 tensor."""
    return np.array([a[0, 0], a[1, 1], a[2, 2], _SQ2 * a[1, 2], _SQ2 * a[0, 2], _SQ2 * a[0, 1]])


@dataclass(frozen=True)
class Sym2Basis:
    tensors: list
    det: float
    hadamard_ratio: float
    det_m: float
    eigenvalues: np.ndarray
    offdiagonal: tuple


def basis_sym2(a, b, threshold=1e-10):
    """The basis ``(q, a, b, a², (ab)^s, [a,b]²)`` of symmetric tensors.

    ``det`` is the 6x6 determinant in orthonormal coordinates (rotation
    invariant); ``det_m`` is the 3x3 off-diagonal block determinant in the
    eigenframe of ``a``, whose rows are the 23, 13, 12 components of
    ``b, (ab)^s, [a,b]²``.
    """
    a, b = np.asarray(a, dtype=float), np.asarray(b, dtype=float)
    c = commutator(a, b)
    tensors = [tc.IDENTITY.copy(), a, b, a @ a, sym_matprod(a, b), c @ c]
    X = np.array([sym2_coordinates(t) for t in tensors])
    det = np.linalg.det(X)
    rows = np.linalg.norm(X, axis=1)
    ratio = abs(det) / np.prod(rows) if np.all(rows > 0) else 0.0

    lam, R = np.linalg.eigh(a)
    local = [R.T @ b @ R, R.T @ tensors[4] @ R, R.T @ tensors[5] @ R]
    M = np.array([[t[1, 2] for t in local], [t[0, 2] for t in local], [t[0, 1] for t in local]])
    bl = local[0]
    if ratio <= threshold:
        raise SingularBasisError(f"(a, b) does not generate a basis (Hadamard ratio {ratio:.3e})")
    return Sym2Basis(tensors, det, ratio, np.linalg.det(M), lam, (bl[1, 2], bl[0, 2], bl[0, 1]))


def det_m_formula(eigenvalues, x, y, z):
    l1, l2, l3 = eigenvalues
    return (l2 - l1) * (l3 - l1) * (l3 - l2) * (x * x * y * y + y * y * z * z + z * z * x * x)


@dataclass(frozen=True)
class GramSystem:
    basis: list
    deviatoric: list
    G: np.ndarray
    report: GenericityReport


def gram_system(H, threshold=DEFAULT_THRESHOLD):
    d2, d3 = covariants_d2_d3(H)
    report = genericity_from_covariants(d2, d3, threshold)
    if not report.generic:
        raise NonGenericError("H is not generic: the Gram basis degenerates", report)
    basis = gram_basis(d2, d3)
    dev = [deviator(e) for e in basis]
    G = np.array([[np.sum(x * y) for y in dev] for x in dev])
    return GramSystem(basis, dev, G, report)


@dataclass(frozen=True)
class DVReconstruction:
    d_coefficients: np.ndarray
    v_coefficients: np.ndarray
    d_residual: float
    v_residual: float
    condition: float
    warning: str = ""

    def to_dict(self):
        return {
            "d_coefficients": self.d_coefficients.tolist(),
            "v_coefficients": self.v_coefficients.tolist(),
            "d_residual": self.d_residual,
            "v_residual": self.v_residual,
            "condition": self.condition,
            "warning": self.warning,
        }


def _relative_residual(target, basis, coeffs):
    n = tc.norm(target)
    if n == 0:
        return 0.0
    return tc.norm(target - sum(c * e for c, e in zip(coeffs, basis))) / n


def reconstruct_dv(dec, threshold=DEFAULT_THRESHOLD):
    """Coefficients of ``d'`` and ``v'`` on the deviatoric Gram basis.

    Only the invariants ``D_k = d' : ε_α`` and ``V_k = v' : ε_α`` and the
    Gram matrix enter the solve.
    """
    system = gram_system(dec.H, threshold)
    G = system.G
    s = 1 / np.sqrt(np.diag(G))
    Gs = G * np.outer(s, s)
    cond = np.linalg.cond(Gs)
    D = np.array([np.sum(dec.d_prime * e) for e in system.basis])
    V = np.array([np.sum(dec.v_prime * e) for e in system.basis])
    dc = s * np.linalg.solve(Gs, s * D)
    vc = s * np.linalg.solve(Gs, s * V)
    message = ""
    if cond > CONDITION_LIMIT:
        message = f"Gram matrix is ill-conditioned (condition number {cond:.3e})"
        warnings.warn(message, RuntimeWarning, stacklevel=2)
    return DVReconstruction(dc, vc, _relative_residual(dec.d_prime, system.deviatoric, dc),
                            _relative_residual(dec.v_prime, system.deviatoric, vc), cond, message)


class Decision(str, Enum):
    EQUIVALENT = "Equivalent"
    DISTINCT = "Distinct"
    NON_GENERIC = "NonGeneric"


@dataclass
class Comparison:
    decision: Decision
    reports: tuple
    deltas: list = field(default_factory=list)
    rotation: np.ndarray = None
    residual: float = None

    def to_dict(self):
        out = {
            "decision": self.decision.value,
            "genericity": [r.to_dict() for r in self.reports],
            "deltas": self.deltas,
        }
        if self.rotation is not None:
            out["rotation"] = np.asarray(self.rotation).tolist()
            out["rotation_residual"] = self.residual
        return out


def _part_norms(dec):
    return {"E": max(abs(dec.lam), abs(dec.mu), tc.norm(dec.d_prime), tc.norm(dec.v_prime),
                     tc.norm(dec.H)),
            "H": tc.norm(dec.H), "d'": tc.norm(dec.d_prime), "v'": tc.norm(dec.v_prime)}


def invariant_set(E, name="s21", threshold=DEFAULT_THRESHOLD):
    if name == "s21":
        return separating21(E, check=False)
    from .maeda import separating18, separating19
    if name == "s19":
        return separating19(E)
    if name == "s18":
        return separating18(E, threshold)
    raise ValueError(f"unknown invariant set {name!r}")


def compare_vectors(v1, v2, n1, n2, tol):
    """Per-invariant comparison with degree-weighted tolerance.

    An invariant of degree ``{part: k}`` is compared against
    ``tol * max(prod_part max(‖part1‖, ‖part2‖)^k, |v1|, |v2|)``.
    """
    deltas, agree = [], True
    for (name, a, degree), (_, b, _) in zip(v1, v2):
        scale = 1.0
        for part, k in degree.items():
            scale *= max(n1[part], n2[part]) ** k
        scale = max(scale, abs(a), abs(b))
        delta = abs(a - b)
        ok = bool(delta <= tol * scale)
        agree &= ok
        deltas.append({"name": name, "delta": float(delta), "scale": float(scale), "agree": ok})
    return agree, deltas


def equivalent(E1, E2, tol=1e-7, threshold=DEFAULT_THRESHOLD, invariant_set_name="s21",
               recover=False):
    dec1, dec2 = decompose(E1), decompose(E2)
    reports = (genericity_report(dec1.H, threshold), genericity_report(dec2.H, threshold))
    if not all(r.generic for r in reports):
        return Comparison(Decision.NON_GENERIC, reports)
    v1 = invariant_set(E1, invariant_set_name, threshold)
    v2 = invariant_set(E2, invariant_set_name, threshold)
    agree, deltas = compare_vectors(v1, v2, _part_norms(dec1), _part_norms(dec2), tol)
    result = Comparison(Decision.EQUIVALENT if agree else Decision.DISTINCT, reports, deltas)
    if recover and agree:
        result.rotation, result.residual = recover_rotation(E1, E2, return_residual=True)
    return result


_SIGNS = [np.diag(s) for s in ((1, 1, 1), (1, -1, -1), (-1, 1, -1), (-1, -1, 1),
                               (-1, -1, -1), (-1, 1, 1), (1, -1, 1), (1, 1, -1))]


def recover_rotation(E1, E2, tol=1e-6, return_residual=False):
    """Rotation g with ``g ⋆ E1 = E2``, from the eigenframes of ``d2``.

    The eigenframes agree up to a sign per axis; of the sign choices giving
    a proper rotation, the one with the smallest residual is kept.
    """
    E1, E2 = np.asarray(E1, dtype=float), np.asarray(E2, dtype=float)
    frames = []
    for E in (E1, E2):
        d2, _ = covariants_d2_d3(decompose(E).H)
        frames.append(np.linalg.eigh(d2)[1])
    V1, V2 = frames
    best, best_res = None, np.inf
    for S in _SIGNS:
        g = V2 @ S @ V1.T
        if np.linalg.det(g) < 0:
            continue
        res = tc.norm(tc.rotate(g, E1) - E2)
        if res < best_res:
            best, best_res = g, res
    scale = max(tc.norm(E1), 1e-300)
    if best_res > tol * scale:
        raise RecoveryFailedError(
            f"no proper frame alignment maps E1 to E2 (relative residual {best_res / scale:.3e})")
    return (best, best_res / scale) if return_residual else best
