"""Numeric proxies for the Zariski-open genericity conditions.

All detectors are scale-free and rotation invariant; a condition holds when
its detector exceeds ``threshold``.
"""
from dataclasses import asdict, dataclass

import numpy as np

from . import tensor_core as tc
from .invariants import covariants_d2_d3

DEFAULT_THRESHOLD = 1e-8


def orthotropy_detector(a):
    """``‖a² × a‖ / ‖a‖³``; vanishes iff ``a`` has a repeated eigenvalue."""
    na = tc.norm(a)
    if na == 0:
        return 0.0
    return tc.norm(tc.cross_product(a @ a, a)) / na**3


def is_orthotropic(a, threshold=DEFAULT_THRESHOLD):
    det = orthotropy_detector(a)
    return det > threshold, det


def axial_commutator(a, b):
    """``v = ε : (ab - ba)``, i.e. ``v_i = ε_ijk (ab - ba)_jk``."""
    return np.tensordot(tc.LEVI_CIVITA, a @ b - b @ a, axes=2)


def triclinic_detectors(a, b):
    """``(‖[a,b]‖ / ‖a‖‖b‖, ‖(a v) × v‖ / ‖a‖‖v‖², ‖(b v) × v‖ / ‖b‖‖v‖²)``."""
    na, nb = tc.norm(a), tc.norm(b)
    v = axial_commutator(a, b)
    nv = tc.norm(v)
    if na == 0 or nb == 0 or nv == 0:
        return 0.0, 0.0, 0.0
    comm = nv / (na * nb)
    da = tc.norm(np.cross(a @ v, v)) / (na * nv**2)
    db = tc.norm(np.cross(b @ v, v)) / (nb * nv**2)
    return comm, da, db


def is_triclinic_pair(a, b, threshold=DEFAULT_THRESHOLD):
    """True iff the pair shares no eigenvector (trivial joint symmetry group)."""
    comm, da, db = triclinic_detectors(a, b)
    return comm > threshold and max(da, db) > threshold, (da, db)


@dataclass(frozen=True)
class GenericityReport:
    orthotropic_d2: bool
    orthotropy_detector: float
    triclinic_pair: bool
    commutator_detector: float
    triclinic_detectors: tuple
    threshold: float

    @property
    def generic(self):
        return self.orthotropic_d2 and self.triclinic_pair

    def to_dict(self):
        out = asdict(self)
        out["triclinic_detectors"] = list(self.triclinic_detectors)
        out["generic"] = self.generic
        return out


def genericity_from_covariants(d2, d3, threshold=DEFAULT_THRESHOLD):
    ortho, odet = is_orthotropic(d2, threshold)
    comm, da, db = triclinic_detectors(d2, d3)
    tric = comm > threshold and max(da, db) > threshold
    return GenericityReport(bool(ortho), float(odet), bool(tric), float(comm),
                            (float(da), float(db)), threshold)


def genericity_report(H, threshold=DEFAULT_THRESHOLD):
    """Genericity of a fourth-order harmonic tensor (the H part of E)."""
    d2, d3 = covariants_d2_d3(np.real_if_close(H))
    return genericity_from_covariants(d2, d3, threshold)
