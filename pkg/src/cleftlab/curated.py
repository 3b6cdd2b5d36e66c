"""Curated algebras, bimodules and cleft suites used by tests and the CLI.

Path algebras compose left to right, so kA2 (arrow a: 1 -> 2) has e1 a = a = a e2.
"""
from __future__ import annotations

import numpy as np

from . import modules as md
from .algebra import field_algebra, make_algebra, path_algebra, product_algebra
from .cleft import morita_context_ring, trivial_extension, triangular_matrix_ring
from .exactlinalg import DEFAULT_P


def k(p=DEFAULT_P):
    return field_algebra(p)


def kxk(p=DEFAULT_P):
    a = product_algebra(field_algebra(p), field_algebra(p))
    return make_algebra(a.field, a.C, a.unit, a.idempotents, ["e1", "e2"], a.rad.basis, "kxk")


def dual_numbers(p=DEFAULT_P):
    return path_algebra(1, [("x", 0, 0)], [{("x", "x"): 1}], length_cap=3, p=p, name="k[x]/(x^2)")


def kA2(p=DEFAULT_P):
    return path_algebra(2, [("a", 0, 1)], p=p, name="kA2")


def kA2_table(p=DEFAULT_P):
    """Hand-written kA2 table with basis (e1, e2, al) and e2 al = al = al e1."""
    C = np.zeros((3, 3, 3), dtype=np.int64)
    C[0, 0, 0] = 1
    C[1, 1, 1] = 1
    C[1, 2, 2] = 1  # e2 al = al
    C[2, 0, 2] = 1  # al e1 = al
    return make_algebra(p, C, [1, 1, 0], [[1, 0, 0], [0, 1, 0]], ["e1", "e2", "al"], [[0, 0, 1]], "kA2'")


def kronecker(p=DEFAULT_P):
    return path_algebra(2, [("a", 0, 1), ("b", 0, 1)], p=p, name="Kronecker")


def one_dim_bimodule(left_alg, right_alg, left_vertex, right_vertex, name=""):
    """The 1-dimensional bimodule e_s M e_t: left acts through vertex s, right through t."""
    lc = md._top_coefficients(left_alg)[:, left_vertex]
    rc = md._top_coefficients(right_alg)[:, right_vertex]
    return md.Bimodule(left_alg, right_alg, lc.reshape(-1, 1, 1).copy(), rc.reshape(-1, 1, 1).copy(), name)


def e2_bimodule(gamma):
    """Arrow bimodule over k x k: e2 acts by 1 on the left, e1 on the right."""
    return one_dim_bimodule(gamma, gamma, 1, 0, "arrow")


def e4_bimodule(gamma):
    """Gamma e1 (x) e2 Gamma over kA2: a second arrow parallel to a."""
    return one_dim_bimodule(gamma, gamma, 0, 1, "Gamma e1 (x) e2 Gamma")


def e6_bimodule(gamma):
    return one_dim_bimodule(gamma, gamma, 0, 0, "k")


def e3_bimodule(a, b):
    """N = A as an (A, B)-bimodule with B = k acting by scalars."""
    return md.Bimodule(a, b, a.left_mats.copy(), np.eye(a.dim, dtype=np.int64)[None, :, :].copy(), "A")


def suite_E2(p=DEFAULT_P):
    g = kxk(p)
    return trivial_extension(g, e2_bimodule(g), "E2")


def suite_E3(p=DEFAULT_P):
    a, b = dual_numbers(p), k(p)
    return triangular_matrix_ring(a, b, e3_bimodule(a, b), "E3")


def suite_E4(p=DEFAULT_P):
    g = kA2(p)
    return trivial_extension(g, e4_bimodule(g), "E4")


def suite_E6(p=DEFAULT_P):
    g = dual_numbers(p)
    return trivial_extension(g, e6_bimodule(g), "E6")


def suite_morita6(p=DEFAULT_P):
    a, b = kxk(p), kxk(p)
    n = one_dim_bimodule(a, b, 0, 0, "N")
    m = one_dim_bimodule(b, a, 1, 1, "M")
    return morita_context_ring(a, b, n, m, name="Morita6")


SUITES = {"E2": suite_E2, "E3": suite_E3, "E4": suite_E4, "E6": suite_E6, "Morita6": suite_morita6}

ALGEBRAS = {
    "k": k, "kxk": kxk, "k[x]/(x^2)": dual_numbers, "kA2": kA2, "kA2_table": kA2_table,
    "Kronecker": kronecker,
    "E3": lambda p=DEFAULT_P: suite_E3(p).lam,
    "Morita6": lambda p=DEFAULT_P: suite_morita6(p).lam,
}


def curated_algebras(p=DEFAULT_P):
    """All curated algebras by id."""
    return {name: fn(p) for name, fn in ALGEBRAS.items()}


def gamma_samples(gamma):
    """Simples, indecomposable projectives and the regular module."""
    out = [md.simple_module(gamma, t) for t in range(gamma.r)]
    out += [md.projective_summand(gamma, t)[0] for t in range(gamma.r)]
    out.append(md.regular_module(gamma))
    return out


def lambda_samples(lam):
    out = [md.simple_module(lam, t) for t in range(lam.r)]
    out.append(md.regular_module(lam))
    return out
