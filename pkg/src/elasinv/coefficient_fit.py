"""Exact recovery of the I <-> J conversion polynomials.

Both invariant families are evaluated on harmonic tensors with rational
components, in exact ``Fraction`` arithmetic. Each target invariant of degree
k is then fitted over every monomial of weighted degree k in the other
family; the linear system is solved exactly with sympy, and a unique
solution certifies the coefficients.
"""
from fractions import Fraction

import numpy as np
import sympy

from . import tensor_core as tc
from .invariants import i_invariants, j_invariants

WEIGHTS = tuple(range(2, 11))


def weighted_monomials(k, weights=WEIGHTS):
    """Multisets of ``weights`` summing to ``k``, as descending tuples."""
    out = []

    def rec(remaining, max_part, prefix):
        if remaining == 0:
            out.append(tuple(prefix))
            return
        for w in sorted(weights, reverse=True):
            if w <= min(remaining, max_part):
                rec(remaining - w, w, prefix + [w])

    rec(k, k, [])
    return out


def exact_harmonic(rng, spread=4):
    """Harmonic part of a random integer symmetric tensor, in Fractions."""
    ints = rng.integers(-spread, spread + 1, size=(3,) * 4)
    S = tc.symmetrize(np.vectorize(lambda x: Fraction(int(x)), otypes=[object])(ints))
    q = np.vectorize(Fraction, otypes=[object])(np.eye(3, dtype=int))
    trS = np.trace(S)
    H = (S - Fraction(6, 7) * tc.sym_product(q, trS)
         + Fraction(3, 35) * np.trace(trS) * tc.sym_product(q, q))
    return H


def exact_samples(n, seed=0):
    """``n`` pairs of exact (I, J) value dictionaries keyed by subscript."""
    rng = np.random.default_rng(seed)
    samples = []
    for _ in range(n):
        H = exact_harmonic(rng)
        I = {int(name[1:]): v for name, v, _ in i_invariants(H, check=False)}
        J = {int(name[1:]): v for name, v, _ in j_invariants(H, check=False)}
        samples.append((I, J))
    return samples


def fit(target, source, k, samples):
    """Fit ``target[k]`` as a polynomial in ``source`` over all weight-k monomials.

    Returns ``(coefficients, unique)`` where coefficients maps monomial tuples
    to Fractions (zero terms dropped).
    """
    monomials = weighted_monomials(k)
    rows, rhs = [], []
    for values in samples:
        src, tgt = values[source], values[target]
        rows.append([sympy.Rational(_prod(src, m)) for m in monomials])
        rhs.append(sympy.Rational(tgt[k]))
    A = sympy.Matrix(rows)
    b = sympy.Matrix(rhs)
    sol, params = A.gauss_jordan_solve(b)
    unique = params.shape[0] == 0
    if not unique:
        sol = sol.subs({p: 0 for p in params})
    coeffs = {m: Fraction(int(c.p), int(c.q)) for m, c in zip(monomials, sol) if c != 0}
    return coeffs, unique


def _prod(values, monomial):
    out = Fraction(1)
    for w in monomial:
        out *= Fraction(values[w])
    return out


def fit_all(degrees=(5, 7, 8, 9, 10), extra=6, seed=0):
    """Fit both directions for every degree; returns nested result dicts."""
    n = max(len(weighted_monomials(k)) for k in degrees) + extra
    samples = [({"I": I, "J": J}) for I, J in exact_samples(n, seed)]
    results = {}
    for k in degrees:
        results[f"I{k}"] = fit("I", "J", k, samples)
        results[f"J{k}"] = fit("J", "I", k, samples)
    return results


def table_as_polynomial(entry):
    """Convert a ``(denominator, [(numerator, monomial), ...])`` table entry."""
    den, terms = entry
    out = {}
    for num, mono in terms:
        key = tuple(sorted(mono, reverse=True))
        out[key] = out.get(key, Fraction(0)) + Fraction(num, den)
    return {m: c for m, c in out.items() if c != 0}
