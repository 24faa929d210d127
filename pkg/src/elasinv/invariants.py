"""Polynomial invariants of the fourth-order harmonic tensor and of E.

All routines stick to tensordot/einsum/matmul so they run unchanged on
complex arrays (complex-step derivatives) and on object arrays of
``fractions.Fraction`` (exact conversion-table fitting).
"""
import numpy as np

from . import tensor_core as tc
from .elasticity import decompose
from .errors import DomainError

Q = tc.IDENTITY


class InvariantVector:
    """Ordered, named invariant values with their degrees.

    A degree is a mapping from the harmonic component it depends on
    (``"E"``, ``"H"``, ``"d'"``, ``"v'"``) to the polynomial degree in it.
    """

    def __init__(self, entries=()):
        self.entries = []
        for name, value, degree in entries:
            self.append(name, value, degree)

    def append(self, name, value, degree):
        if name in self.names:
            raise ValueError(f"duplicate invariant name {name!r}")
        if isinstance(degree, int):
            degree = {"H": degree}
        self.entries.append((name, value, dict(degree)))

    def extend(self, other):
        for entry in other.entries:
            self.append(*entry)
        return self

    @property
    def names(self):
        return [e[0] for e in self.entries]

    @property
    def values(self):
        return np.array([e[1] for e in self.entries])

    @property
    def degrees(self):
        return [e[2] for e in self.entries]

    def total_degree(self, name):
        return sum(self.entries[self.names.index(name)][2].values())

    def __getitem__(self, name):
        return self.entries[self.names.index(name)][1]

    def __len__(self):
        return len(self.entries)

    def __iter__(self):
        return iter(self.entries)

    def __repr__(self):
        body = ", ".join(f"{n}={v:.6g}" for n, v, _ in self.entries)
        return f"InvariantVector({body})"

    def to_json(self):
        return [{"name": n, "value": _json_number(v), "degree": d} for n, v, d in self.entries]


def _json_number(v):
    v = complex(v)
    return v.real if v.imag == 0 else [v.real, v.imag]


def tr13(T):
    return np.einsum("ijil->jl", T)


def double_dot(H, a):
    """``(H : a)_{ij} = H_{ijkl} a_{kl}``."""
    return np.tensordot(H, a, axes=2)


def covariants_d2_d3(H, check=True):
    """``d2 = tr13 H²`` and ``d3 = tr13 H³`` with ``H² = H : H``."""
    H = np.asarray(H)
    if check and not tc.is_harmonic(H, 1e-10):
        raise DomainError("d2/d3 covariants need a fourth-order harmonic tensor")
    H2 = np.tensordot(H, H, axes=2)
    H3 = np.tensordot(H2, H, axes=2)
    return tr13(H2), tr13(H3)


def boehler_covariants(H, check=True):
    """The second-order covariants d2 .. d10 behind the J-invariants."""
    H = np.asarray(H)
    d2, d3 = covariants_d2_d3(H, check)
    H2 = np.tensordot(H, H, axes=2)
    d2sq = d2 @ d2
    return {
        2: d2,
        3: d3,
        4: d2sq,
        5: d2 @ double_dot(H, d2),
        6: d2sq @ d2,
        7: d2sq @ double_dot(H, d2),
        8: d2sq @ double_dot(H2, d2),
        9: d2sq @ double_dot(H, d2sq),
        10: d2sq @ double_dot(H2, d2sq),
    }


def j_invariants(H, check=True):
    d = boehler_covariants(H, check)
    return InvariantVector((f"J{k}", np.trace(d[k]), k) for k in range(2, 11))


def i_invariants_from_covariants(d2, d3):
    d2sq = d2 @ d2
    d3sq = d3 @ d3
    values = [
        ("I2", np.trace(d2)),
        ("I3", np.trace(d3)),
        ("I4", np.trace(d2sq)),
        ("I5", np.trace(d2 @ d3)),
        ("I6", np.trace(d2sq @ d2)),
        ("I7", np.trace(d2sq @ d3)),
        ("I8", np.trace(d2 @ d3sq)),
        ("I9", np.trace(d3sq @ d3)),
        ("I10", np.trace(d2sq @ d3sq)),
    ]
    return InvariantVector((name, v, int(name[1:])) for name, v in values)


def i_invariants(H, check=True):
    return i_invariants_from_covariants(*covariants_d2_d3(H, check))


def sym_matprod(a, b):
    """``(ab)^s := ab + ba`` (no factor 1/2)."""
    return a @ b + b @ a


def commutator(a, b):
    return a @ b - b @ a


def gram_basis(d2, d3):
    """The five covariants ``d2, d3, d2², (d2 d3)^s, [d2, d3]²``."""
    c = commutator(d2, d3)
    return [d2, d3, d2 @ d2, sym_matprod(d2, d3), c @ c]


GRAM_DEGREES = (2, 3, 4, 5, 10)


def dv_invariants(dec, check=True):
    """``D_k = d' : eps_k`` and ``V_k = v' : eps_k`` for the five Gram covariants."""
    d2, d3 = covariants_d2_d3(dec.H, check)
    basis = gram_basis(d2, d3)
    out = InvariantVector()
    for part, prime in (("D", "d'"), ("V", "v'")):
        tensor = dec.d_prime if part == "D" else dec.v_prime
        for eps, deg in zip(basis, GRAM_DEGREES):
            k = deg + 1
            out.append(f"{part}{k}", np.sum(tensor * eps), {prime: 1, "H": deg})
    return out


def separating21(E, check=True):
    """``(λ, μ, I2..I10, D3..D11, V3..V11)``: separates generic elasticity tensors."""
    dec = decompose(E)
    out = InvariantVector([("lambda", dec.lam, {"E": 1}), ("mu", dec.mu, {"E": 1})])
    out.extend(i_invariants(dec.H, check))
    out.extend(dv_invariants(dec, check))
    return out


def pair_invariants(a, b):
    """Integrity basis of a pair of symmetric second-order tensors."""
    a2, b2 = a @ a, b @ b
    values = [
        ("tr a", np.trace(a), {"a": 1}),
        ("tr a2", np.trace(a2), {"a": 2}),
        ("tr a3", np.trace(a2 @ a), {"a": 3}),
        ("tr b", np.trace(b), {"b": 1}),
        ("tr b2", np.trace(b2), {"b": 2}),
        ("tr b3", np.trace(b2 @ b), {"b": 3}),
        ("tr ab", np.trace(a @ b), {"a": 1, "b": 1}),
        ("tr a2b", np.trace(a2 @ b), {"a": 2, "b": 1}),
        ("tr ab2", np.trace(a @ b2), {"a": 1, "b": 2}),
        ("tr a2b2", np.trace(a2 @ b2), {"a": 2, "b": 2}),
    ]
    return InvariantVector(values)


def trace_invariants(a):
    a2 = a @ a
    return np.trace(a), np.trace(a2), np.trace(a2 @ a)


def elementary_invariants(a):
    """Elementary symmetric functions of the eigenvalues, from traces."""
    return elementary_from_traces(*trace_invariants(a))


def elementary_from_traces(t1, t2, t3):
    s1 = t1
    s2 = (t1 * t1 - t2) / 2
    s3 = (t1**3 - 3 * t1 * t2 + 2 * t3) / 6
    return s1, s2, s3


def traces_from_elementary(s1, s2, s3):
    return s1, s1 * s1 - 2 * s2, s1**3 - 3 * s1 * s2 + 3 * s3
