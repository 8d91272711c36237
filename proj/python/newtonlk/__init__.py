"""Newton transformations and the operators L_k on hypersurfaces of space forms.

The heavy lifting happens in the compiled ``_newtonlk`` extension; report
commands return plain dicts with the same schema as the command line tool.
"""

import json

from ._newtonlk import (
    SCHEMA_VERSION,
    DomainError,
    GeometryError,
    IoError,
    SchemaError,
    binomial,
    characteristic_polynomial,
    classify_example3,
    elementary_symmetric,
    mean_curvatures,
    newton_constant,
    newton_eigenvalues,
    newton_matrix,
    newton_matrix_sum,
    predicted_affine,
    predicted_Hk,
    sample_family,
    scalar_curvature_residual,
    selfadjoint_defect,
    trace_identities,
)
from . import _newtonlk as _core

__all__ = [
    "SCHEMA_VERSION",
    "DomainError",
    "GeometryError",
    "IoError",
    "SchemaError",
    "binomial",
    "characteristic_polynomial",
    "classify_example3",
    "elementary_symmetric",
    "fit_csv",
    "identity_suite",
    "mean_curvatures",
    "newton_constant",
    "newton_eigenvalues",
    "newton_matrix",
    "newton_matrix_sum",
    "predicted_affine",
    "predicted_Hk",
    "sample_family",
    "scalar_curvature_residual",
    "selfadjoint_defect",
    "trace_identities",
    "verify_example",
]


def identity_suite(n_max=8, trials=100, seed=42):
    """Run the algebraic identity suite; returns the JSON report as a dict."""
    return json.loads(_core.identity_suite_json(n_max, trials, seed))


def verify_example(family, **params):
    """Sample a catalog family, fit (A, b), compare and classify.

    Keyword arguments mirror the command line flags: n, c, tau, r, m, axis, k,
    samples, seed, tol_class, constrain_selfadjoint.
    """
    return json.loads(_core.verify_example_json(family, **params))


def fit_csv(csv_text, k, c, constrain_selfadjoint=False, tol_class=1e-4):
    """Fit (A, b) to samples given as CSV text (u_1..u_n, x_0..x_{n+1}, Lkx_0..Lkx_{n+1})."""
    return json.loads(_core.fit_csv_json(csv_text, k, c, constrain_selfadjoint, tol_class))
