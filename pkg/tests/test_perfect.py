import numpy as np
import pytest

from cleftlab import curated
from cleftlab import modules as md
from cleftlab.perfect import PROBE, f_projective_test, nilpotency_index, perfect_report

FIN0 = {"kind": "Finite", "value": 0}


@pytest.mark.parametrize("name", ["E2", "E4"])
def test_perfect_examples(name):
    # [PAPER] perfect with s = 2; M is projective on each side
    pr = perfect_report(curated.SUITES[name]().m)
    assert pr.verdict == "Perfect"
    assert pr.s == 2
    assert pr.fd_left.to_json() == FIN0
    assert pr.pd_right.to_json() == FIN0
    assert pr.n == 1 and pr.n_coperfect == 1
    assert pr.condition_R == {"pass": True, "witness": None}
    assert pr.coperfect == {"derived": True, "spot_check": True}


def test_triangular_bimodule_is_perfect():
    pr = perfect_report(curated.SUITES["E3"]().m)
    assert pr.verdict == "Perfect" and pr.s == 2 and pr.n == 1


def test_zero_bimodule():
    g = curated.kA2()
    zero = md.Bimodule(g, g, np.zeros((3, 0, 0), np.int64), np.zeros((3, 0, 0), np.int64))
    pr = perfect_report(zero)
    assert pr.verdict == "Perfect" and pr.s == 1 and pr.n == 0
    assert pr.tor_table == {}


def test_non_nilpotent_example():
    # [PAPER] k over k[x]/(x^2): every tensor power is k again
    pr = perfect_report(curated.SUITES["E6"]().m)
    assert pr.verdict == "NotPerfect"
    assert str(pr.nilpotency) == "NotWithin(16)"
    assert pr.nilpotency.repeat == (1, 2)
    assert pr.pd_right.to_json() == {"kind": "Infinite", "offset": 0, "period": 1}
    assert pr.fd_left.infinite
    assert pr.n is None
    assert pr.to_json()["nilpotency_index"] == {"kind": "NotWithin", "cutoff": 16, "repeat": [1, 2]}


def test_tor_witness_makes_bimodule_not_perfect():
    # the simple bimodule e2 M e1 over kA2: M (x) M = 0 but Tor_1(M, M) = k
    g = curated.kA2()
    m = curated.one_dim_bimodule(g, g, 1, 0)
    pr = perfect_report(m)
    assert pr.s == 2
    assert pr.pd_right.to_json() == {"kind": "Finite", "value": 1}
    assert pr.tor_table == {(1, 1): 1}
    assert pr.condition_R == {"pass": False, "witness": [1, 1]}
    assert pr.verdict == "NotPerfect"


def test_nilpotency_cutoff_without_certificate():
    # two loops over k: powers grow, so no repeat is found and the answer stays open
    g = curated.k()
    two = md.Bimodule(g, g, np.eye(2, dtype=np.int64)[None], np.eye(2, dtype=np.int64)[None])
    r = nilpotency_index(two, cutoff=3)
    assert not r.finite and r.repeat is None
    pr = perfect_report(two, nilp_cutoff=3)
    assert pr.verdict == "Unknown"
    assert PROBE == 3


def test_f_projective_examples():
    s6 = curated.SUITES["E6"]()
    pr6 = perfect_report(s6.m)
    res = f_projective_test(md.simple_module(s6.gamma, 0), s6.m, pr6)
    assert res.passed is False and res.first_failure == (1, 1)

    s3 = curated.SUITES["E3"]()
    pr3 = perfect_report(s3.m)
    for t in range(s3.gamma.r):
        res = f_projective_test(md.projective_summand(s3.gamma, t)[0], s3.m, pr3)
        assert res.passed and res.equivalence_ok and res.closure_ok


def test_report_json_keys():
    js = perfect_report(curated.SUITES["E2"]().m).to_json()
    assert js["nilpotency_index"] == {"kind": "Some", "value": 2}
    assert set(js) >= {"fd_left", "pd_right", "tor_table", "condition_R", "n", "verdict"}
