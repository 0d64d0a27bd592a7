import math

import numpy as np
import pytest

import mcnet


def test_steady_on_regular_graph_matches_closed_form():
    g = mcnet.Graph.circulant(8, 3)
    c = mcnet.Params.uniform(8, 1.0, 1.0, 1.5, 0.5)
    s = mcnet.steady(g, c)
    expect = mcnet.homogeneous_closed_form(1.0, 1.0, c.gamma_hat, 3.0)
    assert s["residual"] < 1e-10
    assert np.allclose(s["p_bar"], expect, atol=1e-10)


def test_vector_field_forms_agree():
    rng = np.random.default_rng(3)
    g = mcnet.Graph.from_edges(4, [(0, 1, 1.0), (1, 2, 0.5), (2, 3, 2.0), (3, 0, 1.5)])
    c = mcnet.Params(rng.uniform(0.2, 2, 4), rng.uniform(0.2, 2, 4), 1.2, 0.4)
    p = rng.uniform(0.05, 0.95, 4)
    assert np.max(np.abs(mcnet.vector_field(g, c, p) - mcnet.vector_field_laplacian(g, c, p))) < 1e-12
    h = 1e-6
    fd = np.column_stack(
        [(mcnet.vector_field(g, c, p + h * e) - mcnet.vector_field(g, c, p - h * e)) / (2 * h) for e in np.eye(4)]
    )
    assert np.max(np.abs(mcnet.jacobian(g, c, p) - fd)) < 1e-5


def test_integrate_decreases_entropy():
    g = mcnet.Graph.star(5)
    c = mcnet.Params.uniform(5, 0.8, 0.6, 1.0, 0.3)
    ref = mcnet.steady(g, c, method="newton", tol=1e-13)["p_bar"]
    tr = mcnet.integrate(g, c, np.full(5, 0.9), t_end=1.0, reference=ref)
    e = np.asarray(tr["entropy"])
    assert tr["p"].shape == (1001, 5)
    assert np.all(np.diff(e) <= 1e-9)


def test_embedding_preserves_relative_entropy():
    p = np.array([0.2, 0.7, 0.4])
    q = np.array([0.5, 0.3, 0.6])
    dist = mcnet.embed(p)
    assert dist.shape == (8,)
    assert math.isclose(dist.sum(), 1.0, abs_tol=1e-12)
    assert math.isclose(mcnet.hypercube_relative_entropy(p, q), mcnet.relative_entropy(p, q), abs_tol=1e-12)


def test_sis_and_errors():
    assert mcnet.sis_equilibrium(1.0, 1.0, 2.0) == pytest.approx(0.5)
    assert mcnet.sis_equilibrium(2.0, 1.0, 2.0) is None
    with pytest.raises(mcnet.DomainError):
        mcnet.homogeneous_closed_form(0.0, 2.0, 2.0, 1.0)
    with pytest.raises(mcnet.ParseError):
        mcnet.Graph.parse("2\n0 0 1\n")
    with pytest.raises(mcnet.DomainError):
        mcnet.variance_bound(mcnet.Graph.path(3), mcnet.Params.uniform(3, 1, 1, 1, 1))


def test_verify_is_deterministic():
    a = mcnet.verify("embedding", trials=10, seed=5)
    b = mcnet.verify("embedding", trials=10, seed=5)
    assert a == b
    assert a["ok"] is True


def test_steady_report_keys():
    g = mcnet.Graph.path(3)
    c = mcnet.Params.uniform(3, 1.0, 1.0, 1.0, 0.0)
    r = mcnet.steady_report(g, c)
    assert {"p_bar", "residual", "method", "lambda1", "variance", "variance_bound"} <= set(r)
    assert r["variance"] <= r["variance_bound"] + 1e-10
