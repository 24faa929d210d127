"""Dense small-tensor algebra over R^3 (or C^3).

Tensors are plain numpy arrays of shape ``(3,) * n``; order 0 is a 0-d array
or a Python scalar. Totally symmetric tensors are stored in full, redundantly.
Every routine works for real and complex dtypes and never conjugates, so the
polynomial maps built on top of it stay holomorphic (complex-step
differentiation relies on that).
"""
from functools import lru_cache
from itertools import combinations_with_replacement, permutations

import numpy as np

from .errors import ContractionArityError, DomainError, UnsupportedOrderError

# Order 8 is reached by the transvectant correspondence checks for pairs of
# fourth-order harmonic tensors (F ⊙ G with p = q = 4).
MAX_ORDER = 8

IDENTITY = np.eye(3)

LEVI_CIVITA = np.zeros((3, 3, 3))
for _i, _j, _k in permutations(range(3)):
    LEVI_CIVITA[_i, _j, _k] = np.linalg.det(np.eye(3)[[_i, _j, _k]])
LEVI_CIVITA = np.rint(LEVI_CIVITA)


def _check_order(n):
    if n > MAX_ORDER:
        raise UnsupportedOrderError(f"tensor order {n} exceeds the supported maximum {MAX_ORDER}")


def order(T):
    return np.ndim(T)


def symmetrize(T):
    """Average of ``T`` over all permutations of its indices.

    Built one index at a time: if ``T`` is already symmetric in its first
    ``m - 1`` axes, averaging over the ``m`` transpositions that move axis
    ``m - 1`` gives a tensor symmetric in the first ``m`` axes.
    """
    T = np.asarray(T)
    n = T.ndim
    _check_order(n)
    for m in range(2, n + 1):
        acc = T.copy()
        for k in range(m - 1):
            acc = acc + np.swapaxes(T, k, m - 1)
        T = acc / m
    return T


def is_symmetric(T, tol=1e-12):
    T = np.asarray(T)
    scale = max(norm(T), 1.0) if tol > 0 else 1.0
    return norm(T - symmetrize(T)) <= tol * scale


def sym_product(S1, S2):
    """Symmetric tensor product ``(S1 ⊗ S2)^s``."""
    S1, S2 = np.asarray(S1), np.asarray(S2)
    _check_order(S1.ndim + S2.ndim)
    return symmetrize(np.multiply.outer(S1, S2))


def sym_power(S, k):
    """``S ⊙ S ⊙ ... ⊙ S`` (k copies); k = 0 gives the scalar 1."""
    out = np.asarray(1.0)
    for _ in range(k):
        out = sym_product(out, S)
    return out


def r_contraction(T1, T2, r):
    """Contract the last ``r`` indices of ``T1`` with the first ``r`` of ``T2``."""
    T1, T2 = np.asarray(T1), np.asarray(T2)
    if r < 0 or r > min(T1.ndim, T2.ndim):
        raise ContractionArityError(
            f"cannot contract {r} indices between orders {T1.ndim} and {T2.ndim}"
        )
    _check_order(T1.ndim + T2.ndim - 2 * r)
    return np.tensordot(T1, T2, axes=r)


def sym_r_contraction(S1, S2, r):
    return symmetrize(r_contraction(S1, S2, r))


def scalar_product(T1, T2):
    """Full contraction ``<T1, T2>``. Bilinear (no complex conjugation)."""
    T1, T2 = np.asarray(T1), np.asarray(T2)
    if T1.shape != T2.shape:
        raise ContractionArityError(f"shape mismatch {T1.shape} vs {T2.shape}")
    return np.sum(T1 * T2)


def norm(T):
    """Frobenius norm (modulus-based, so it is a genuine norm on complex input)."""
    return float(np.sqrt(np.sum(np.abs(np.asarray(T)) ** 2)))


def trace(T, i=0, j=1):
    return np.trace(np.asarray(T), axis1=i, axis2=j)


def multi_trace(T, r):
    """Apply ``r`` successive traces on the leading index pairs."""
    for _ in range(r):
        T = trace(T)
    return T


def is_harmonic(T, tol=1e-12):
    T = np.asarray(T)
    if T.ndim < 2:
        return True
    scale = max(norm(T), 1.0)
    if norm(T - symmetrize(T)) > tol * scale:
        return False
    return norm(trace(T)) <= tol * scale


def cross_product(S1, S2):
    """Generalized cross product ``(S2 · ε · S1)^s`` of order ``n1 + n2 - 1``.

    Taken literally with ε_123 = +1. On two vectors this coincides with the
    classical ``u × v`` (same sign).
    """
    S1, S2 = np.asarray(S1), np.asarray(S2)
    if S1.ndim < 1 or S2.ndim < 1:
        raise ContractionArityError("cross product needs operands of order >= 1")
    _check_order(S1.ndim + S2.ndim - 1)
    eps = LEVI_CIVITA.astype(np.result_type(S1, S2, float))
    return symmetrize(np.tensordot(np.tensordot(S2, eps, axes=1), S1, axes=1))


def symmetric_basis(m):
    """Columns of 0/1 symmetric tensors, one per multiset of ``m`` indices."""
    cols = []
    for combo in combinations_with_replacement(range(3), m):
        B = np.zeros((3,) * m)
        for p in set(permutations(combo)):
            B[p] = 1.0
        cols.append(B.reshape(-1))
    return np.array(cols).T


@lru_cache(maxsize=None)
def _trace_part_basis(n):
    """Orthonormal basis of q ⊙ Sym^{n-2} plus the data to recover the cofactor."""
    B = symmetric_basis(n - 2)
    Q = np.empty((3**n, B.shape[1]))
    for j in range(B.shape[1]):
        V = B[:, j].reshape((3,) * (n - 2))
        Q[:, j] = sym_product(IDENTITY, V).reshape(-1)
    Qo, R = np.linalg.qr(Q)
    return Qo, R, B


def harmonic_part(S):
    """Leading harmonic part ``S'`` of a (symmetrized) tensor.

    ``S`` is split as ``S' + q ⊙ V``; ``q ⊙ V`` is the least-squares fit of
    the symmetric tensor over ``q ⊙ Sym^{n-2}``, and the residual is the
    harmonic part because the two summands are orthogonal.
    """
    S = symmetrize(S)
    n = S.ndim
    if n < 2:
        return S
    Qo, _, _ = _trace_part_basis(n)
    s = S.reshape(-1)
    return (s - Qo @ (Qo.T @ s)).reshape(S.shape)


def harmonic_cofactor(S):
    """The order ``n - 2`` symmetric tensor ``V`` with ``S^s - S' = q ⊙ V``."""
    S = symmetrize(S)
    n = S.ndim
    if n < 2:
        raise ContractionArityError("order < 2 tensors have no trace part")
    Qo, R, B = _trace_part_basis(n)
    c = np.linalg.solve(R, Qo.T @ S.reshape(-1))
    return (B @ c).reshape((3,) * (n - 2))


def harmonic_product(H1, H2):
    """``(H1 ⊙ H2)'``."""
    return harmonic_part(sym_product(H1, H2))


def harmonic_power(H, k):
    out = np.asarray(1.0)
    for _ in range(k):
        out = harmonic_product(out, H)
    return out


@lru_cache(maxsize=None)
def harmonic_basis(n):
    """Orthonormal basis of H^n as the columns of a ``3**n x (2n+1)`` matrix."""
    _check_order(n)
    if n == 0:
        return np.ones((1, 1))
    B = symmetric_basis(n)
    P = np.column_stack([harmonic_part(B[:, j].reshape((3,) * n)).reshape(-1)
                         for j in range(B.shape[1])])
    U, s, _ = np.linalg.svd(P, full_matrices=False)
    return U[:, : 2 * n + 1]


def rotate(g, T):
    """``(g ⋆ T)_{i1..in} = g_{i1 p1} ... g_{in pn} T_{p1..pn}``."""
    T = np.asarray(T)
    for _ in range(T.ndim):
        # contracts the current leading axis and appends the rotated one last
        T = np.tensordot(T, g, axes=([0], [1]))
    return T


def as_rotation(g, tol=1e-12):
    """Validate a proper rotation matrix and return it as a float array."""
    g = np.asarray(g, dtype=float)
    if g.shape != (3, 3):
        raise DomainError(f"rotation must be 3x3, got shape {g.shape}")
    if np.max(np.abs(g.T @ g - IDENTITY)) > tol or abs(np.linalg.det(g) - 1.0) > tol:
        raise DomainError("matrix is not a proper rotation (g^T g != I or det g != 1)")
    return g


def quaternion_to_matrix(w, x, y, z):
    return np.array([
        [1 - 2 * (y * y + z * z), 2 * (x * y - w * z), 2 * (x * z + w * y)],
        [2 * (x * y + w * z), 1 - 2 * (x * x + z * z), 2 * (y * z - w * x)],
        [2 * (x * z - w * y), 2 * (y * z + w * x), 1 - 2 * (x * x + y * y)],
    ])


def random_rotation(seed=None):
    """Haar-uniform rotation from a normalized Gaussian quaternion.

    ``seed`` may be an int (deterministic) or a ``numpy.random.Generator``
    owned by the caller.
    """
    rng = seed if isinstance(seed, np.random.Generator) else np.random.default_rng(seed)
    quat = rng.standard_normal(4)
    quat /= np.linalg.norm(quat)
    return quaternion_to_matrix(*quat)


def random_symmetric(n, rng):
    return symmetrize(rng.standard_normal((3,) * n))


def random_harmonic(n, rng):
    return harmonic_part(rng.standard_normal((3,) * n))
