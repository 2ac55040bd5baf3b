"""GD, GDMP, MPGD and GD-star inverses of dense complex matrices.

Matrices are numpy arrays; they are converted to complex128. Check reports
come back as dicts with the keys suite, pass, inconsistency, items, findings.
"""

import json

import numpy as np

from . import _core
from ._core import (
    ContractionViolated,
    Error,
    HypothesisViolated,
    Inconsistent,
    IndexTooLarge,
    InputError,
    InvalidWitness,
    NotApplicable,
    NotErgodic,
    Tolerance,
    classify,
    core_nilpotent,
    drazin,
    drazin_star,
    dual_gd_star,
    gd_canonical,
    gd_sample,
    gd_star,
    gd_star_one,
    gdmp,
    group_inverse,
    hartwig_spindelboeck,
    index,
    law_names,
    moore_penrose,
    mpgd,
    rank,
)

__all__ = [
    "ContractionViolated",
    "Error",
    "HypothesisViolated",
    "Inconsistent",
    "IndexTooLarge",
    "InputError",
    "InvalidWitness",
    "NotApplicable",
    "NotErgodic",
    "Tolerance",
    "classify",
    "core_nilpotent",
    "drazin",
    "drazin_star",
    "dual_gd_star",
    "fuzz",
    "gd_canonical",
    "gd_sample",
    "gd_star",
    "gd_star_one",
    "gd_verify",
    "gdmp",
    "group_inverse",
    "hartwig_spindelboeck",
    "index",
    "law_names",
    "leq",
    "markov_stationary",
    "moore_penrose",
    "mpgd",
    "perturbed_one_inverse",
    "rank",
    "run_law",
    "solve",
    "verify_penrose",
    "verify_suite",
]


def _tol(tol):
    return Tolerance() if tol is None else tol


def gd_verify(A, X, tol=None):
    return json.loads(_core.gd_verify(A, X, _tol(tol)))


def verify_penrose(A, X, tol=None):
    return json.loads(_core.verify_penrose(A, X, _tol(tol)))


def verify_suite(suite, A, X, tol=None):
    """suite is one of sa3, dual, star-one, special, spectral."""
    return json.loads(_core.verify_suite(suite, A, X, _tol(tol)))


def leq(A, B, relation, witness=None, tol=None):
    """(holds, report) for A <= B under the named relation."""
    holds, rep = _core.leq(A, B, relation, witness, _tol(tol))
    return holds, json.loads(rep)


def run_law(name, matrices, witnesses, tol=None):
    mats = [np.asarray(M, dtype=complex) for M in matrices]
    wits = [np.asarray(W, dtype=complex) for W in witnesses]
    return json.loads(_core.run_law(name, mats, wits, _tol(tol)))


def perturbed_one_inverse(A, X, E, tol=None):
    G, rep = _core.perturbed_one_inverse(A, X, E, _tol(tol))
    return G, json.loads(rep)


def solve(mode, A, b, X, z=None, tol=None):
    """x and its report for mode lsq, minnorm or gram."""
    b = np.asarray(b, dtype=complex).reshape(-1)
    if z is not None:
        z = np.asarray(z, dtype=complex).reshape(-1)
    x, rep = _core.solve(mode, A, b, X, z, _tol(tol))
    return x, json.loads(rep)


def markov_stationary(T, seed=0, draws=5, tol=None):
    w, rep = _core.markov_stationary(np.asarray(T, dtype=float), seed, draws, _tol(tol))
    return w, json.loads(rep)


def fuzz(suites="all", n=200, max_size=8, seed=7, draws=3, tol=None):
    return json.loads(_core.fuzz(suites, n, max_size, seed, draws, _tol(tol)))
