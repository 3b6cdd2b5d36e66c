import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from cleftlab import curated
from cleftlab import modules as md
from cleftlab.algebra import validate_algebra
from cleftlab.cleft import (FUNCTORS, ThetaExtensionData, apply_functor, functor_e, functor_F, functor_G,
                            functor_i, functor_l, module_from_triple, morita_context_ring, nilpotency,
                            theta_extension, triple_from_module, truncated_tensor_ring, validate_theta,
                            verify_cleft_identities)
from cleftlab.errors import InputError, NotNilpotent

SUITES = {name: fn() for name, fn in curated.SUITES.items()}


@pytest.mark.parametrize("name,dim_gamma,dim_m", [
    ("E2", 2, 1), ("E3", 3, 2), ("E4", 3, 1), ("E6", 2, 1), ("Morita6", 4, 2),
])
def test_suites_are_valid(name, dim_gamma, dim_m):
    s = SUITES[name]
    assert s.check() == []
    assert validate_algebra(s.lam) == []
    assert (s.gamma.dim, s.m.dim, s.lam.dim) == (dim_gamma, dim_m, dim_gamma + dim_m)


@pytest.mark.parametrize("name", ["E2", "E3", "E4", "Morita6"])
def test_cleft_identities_hold(name):
    s = SUITES[name]
    res = verify_cleft_identities(s, curated.gamma_samples(s.gamma), curated.lambda_samples(s.lam))
    assert res["failures"] == []
    assert res["checks"] > 0


@settings(max_examples=15, deadline=None)
@given(st.sampled_from(["E2", "E3", "E4"]), st.integers(0, 10 ** 6))
def test_identities_on_random_modules(name, seed):
    s = SUITES[name]
    rng = np.random.default_rng(seed)
    ys = [md.random_module(s.gamma, rng, max_dim=5)]
    xs = [md.random_module(s.lam, rng, max_dim=5)]
    assert verify_cleft_identities(s, ys, xs)["failures"] == []


def test_nilpotency_of_curated_bimodules():
    assert nilpotency(SUITES["E2"].m) == 2
    assert nilpotency(SUITES["E4"].m) == 2
    assert nilpotency(SUITES["E3"].m) == 2
    assert nilpotency(SUITES["E6"].m) is None


def test_theta_must_be_balanced():
    s = SUITES["E2"]
    bad = ThetaExtensionData(s.gamma, s.m, np.array([[1]]))
    assert any("balanced" in v for v in validate_theta(bad))
    with pytest.raises(InputError):
        theta_extension(bad)


def test_idempotent_theta_gives_non_nilpotent_kernel():
    # Gamma = M = k with m^2 = m: Lambda = k x k, and M is not in the radical
    g = curated.k()
    m = md.Bimodule(g, g, np.ones((1, 1, 1), np.int64), np.ones((1, 1, 1), np.int64))
    d = ThetaExtensionData(g, m, np.array([[1]]))
    assert validate_theta(d) == []
    s = theta_extension(d)
    assert s.lam.rad.dim == 0
    assert s.meta["warnings"]
    # one supplied idempotent for a two-block semisimple algebra
    assert any("not split basic" in v for v in validate_algebra(s.lam))


def test_truncated_tensor_ring_of_E4_bimodule():
    g = curated.kA2()
    s = truncated_tensor_ring(g, curated.e4_bimodule(g), name="T")
    assert s.lam.dim == 4 and s.meta["s"] == 2
    assert validate_algebra(s.lam) == []
    with pytest.raises(NotNilpotent):
        truncated_tensor_ring(curated.dual_numbers(), curated.e6_bimodule(curated.dual_numbers()), cutoff=4)


def test_tensor_ring_with_square_of_kronecker_arrows():
    # M = two parallel arrows 1 -> 1 over k: M^(x)2 = k^4, never zero, rejected
    g = curated.k()
    m = md.Bimodule(g, g, np.ones((1, 2, 2), np.int64) * np.eye(2, dtype=np.int64),
                    np.ones((1, 2, 2), np.int64) * np.eye(2, dtype=np.int64))
    with pytest.raises(NotNilpotent):
        truncated_tensor_ring(g, m, cutoff=3)


def test_triangular_triples_round_trip():
    s = SUITES["E3"]
    a, b = s.meta["A"], s.meta["B"]
    rng = np.random.default_rng(3)
    for _ in range(5):
        x = md.random_module(a, rng, max_dim=3)
        y = md.regular_module(b)
        tdim = md.tensor_over_algebra(x, s.meta["N"]).dim
        f = rng.integers(0, a.p, size=(y.dim, tdim))
        v = module_from_triple(s, x, y, f)
        x2, y2, f2 = triple_from_module(s, v)
        assert md.iso_test(x, x2) and md.iso_test(y, y2)
        assert x2.dim + y2.dim == v.dim
        assert md.iso_test(module_from_triple(s, x2, y2, f2), v)


def test_morita_rejects_nonzero_maps():
    a, b = curated.kxk(), curated.kxk()
    n = curated.one_dim_bimodule(a, b, 0, 0)
    m = curated.one_dim_bimodule(b, a, 1, 1)
    with pytest.raises(InputError):
        morita_context_ring(a, b, n, m, phi=np.ones((1, 1)))


def test_functor_e_i_composition_and_dimensions():
    s = SUITES["E4"]
    for y in curated.gamma_samples(s.gamma):
        assert (functor_e(s, functor_i(s, y)).action == y.action).all()
        assert functor_l(s, y).dim == y.dim + functor_F(s, y).dim
    reg = md.regular_module(s.lam)
    assert functor_G(s, reg).dim == functor_F(s, functor_e(s, reg)).dim


def test_functor_registry():
    s = SUITES["E2"]
    y = md.simple_module(s.gamma, 0)
    assert set(FUNCTORS) == {"i", "e", "l", "q", "F", "G", "F'", "r", "p", "G'"}
    assert apply_functor(s, "F", y).dim == functor_F(s, y).dim
    with pytest.raises(InputError):
        apply_functor(s, "Z", y)
    with pytest.raises(InputError):
        functor_e(s, y)  # y is a Gamma-module
