"""Polynomial conversions between the J- and I-families of H⁴ invariants.

Each entry is ``(denominator, [(numerator, monomial), ...])`` where a
monomial lists the subscripts of the factors, so ``(1197, (4, 2, 2))`` in
the I8 row reads ``1197 J4 J2²``. Every coefficient here is certified by
``coefficient_fit.fit_all`` (exact rational fit, unique solution).
"""
import numpy as np

from .errors import FormatError

NAMES_I = tuple(f"I{k}" for k in range(2, 11))
NAMES_J = tuple(f"J{k}" for k in range(2, 11))

I_FROM_J = {
    "I2": (1, [(1, (2,))]),
    "I3": (1, [(1, (3,))]),
    "I4": (1, [(1, (4,))]),
    "I5": (6, [(3, (5,)), (2, (2, 3))]),
    "I6": (1, [(1, (6,))]),
    "I7": (6, [(3, (7,)), (2, (4, 3))]),
    "I8": (1620, [(1080, (8,)), (-1230, (6, 2)), (495, (5, 3)), (-216, (4, 4)),
                  (1197, (4, 2, 2)), (140, (3, 3, 2)), (-237, (2, 2, 2, 2))]),
    # the J5 J2² coefficient is 2025
    "I9": (19440, [(5184, (9,)), (-6480, (7, 2)), (9456, (6, 3)), (2025, (5, 2, 2)),
                   (-7974, (4, 3, 2)), (2500, (3, 3, 3)), (1596, (3, 2, 2, 2))]),
    # common denominator is 1620
    "I10": (1620, [(1080, (10,)), (-675, (8, 2)), (495, (7, 3)), (24, (6, 4)),
                   (-117, (6, 2, 2)), (-171, (4, 4, 2)), (190, (4, 3, 3)),
                   (228, (4, 2, 2, 2)), (-45, (2, 2, 2, 2, 2))]),
}

J_FROM_I = {
    "J2": (1, [(1, (2,))]),
    "J3": (1, [(1, (3,))]),
    "J4": (1, [(1, (4,))]),
    "J5": (3, [(6, (5,)), (-2, (2, 3))]),
    "J6": (1, [(1, (6,))]),
    "J7": (3, [(6, (7,)), (-2, (4, 3))]),
    "J8": (2160, [(3240, (8,)), (-1980, (5, 3)), (2460, (6, 2)), (380, (3, 3, 2)),
                  (432, (4, 4)), (-2394, (4, 2, 2)), (474, (2, 2, 2, 2))]),
    "J9": (10368, [(38880, (9,)), (25920, (7, 2)), (-8100, (5, 2, 2)), (-5000, (3, 3, 3)),
                   (-18912, (3, 6)), (7308, (3, 4, 2)), (-492, (3, 2, 2, 2))]),
    "J10": (17280, [(25920, (10,)), (16200, (8, 2)), (-15840, (7, 3)), (-9900, (5, 3, 2)),
                    (2240, (3, 3, 4)), (1900, (3, 3, 2, 2)), (-384, (6, 4)),
                    (14172, (6, 2, 2)), (4896, (4, 4, 2)), (-15618, (4, 2, 2, 2)),
                    (3090, (2, 2, 2, 2, 2))]),
}


def _evaluate(table, names_out, values):
    values = list(values)
    if len(values) != 9:
        raise FormatError(f"expected 9 invariant values (degrees 2..10), got {len(values)}")
    by_degree = dict(zip(range(2, 11), values))
    out = []
    for name in names_out:
        den, terms = table[name]
        acc = 0
        for num, mono in terms:
            term = num
            for k in mono:
                term = term * by_degree[k]
            acc = acc + term
        out.append(acc / den)
    return np.array(out)


def i_from_j(J):
    """I2..I10 from the 9-vector J2..J10."""
    return _evaluate(I_FROM_J, NAMES_I, J)


def j_from_i(I):
    """J2..J10 from the 9-vector I2..I10."""
    return _evaluate(J_FROM_I, NAMES_J, I)
