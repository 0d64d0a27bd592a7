"""Interacting two-state Markov chains on weighted networks."""

import json

from ._core import (
    ConvergenceError,
    DomainError,
    Error,
    Graph,
    NumericalError,
    Params,
    ParseError,
    descent_bound,
    embed,
    entropy_rate,
    homogeneous_closed_form,
    hypercube_relative_entropy,
    integrate,
    jacobian,
    lemma31_quantity,
    lemma42_quantity,
    relative_entropy,
    sis_equilibrium,
    steady,
    variance_bound,
    vector_field,
    vector_field_laplacian,
    verify_json,
)


def verify(suite="all", trials=100, seed=0):
    """Run a property suite and return the report as a dict."""
    return json.loads(verify_json(suite, trials, seed))


def steady_report(graph, params, method="auto", tol=1e-10):
    """Steady state plus the bound diagnostics, as a dict."""
    from ._core import steady_report as _report

    return json.loads(_report(graph, params, method, tol))


__all__ = [name for name in dir() if not name.startswith("_")]
