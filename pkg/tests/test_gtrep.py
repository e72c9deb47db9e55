from fractions import Fraction
from itertools import product

import pytest
from hypothesis import given, strategies as st

from qsymp.gtrep import (GTPattern, WeightError, act_chevalley, check_chevalley_relations,
                         check_gl_relations, enumerate_patterns, gl_module, module_manifest,
                         root_vectors, rtf_generators)
from qsymp.scalar import ONE, QDIFF, qpow
from qsymp.tensor import OpMatrix, build_R, check_rtt


def _weyl_gl(nu):
    # oracle: product formula over pairs i < j
    d = Fraction(1)
    for i in range(len(nu)):
        for j in range(i + 1, len(nu)):
            d *= Fraction(nu[i] - nu[j] + j - i, j - i)
    return int(d)


def _brute_patterns(nu):
    # oracle: all integer triangles within [min, max], filtered by interlacing
    N = len(nu)
    lo, hi = min(nu), max(nu)
    count = 0
    inner = [(k, i) for k in range(1, N) for i in range(1, k + 1)]
    for vals in product(range(lo, hi + 1), repeat=len(inner)):
        rows = [list() for _ in range(N - 1)] + [list(nu)]
        for (k, i), v in zip(inner, vals):
            rows[k - 1].append(v)
        if all(rows[k][i] >= rows[k - 1][i] >= rows[k][i + 1]
               for k in range(1, N) for i in range(k)):
            count += 1
    return count


def test_pattern_counts():
    assert len(enumerate_patterns((0, 0))) == 1
    assert len(enumerate_patterns((1, 0))) == 2
    assert len(enumerate_patterns((1, 0, 0, 0))) == 4


@pytest.mark.parametrize("nu", [(2, 1, 0), (1, 1, 0, 0), (2, 0, 0, 0), (3, 1, 1), (2, 2, 1, 0)])
def test_pattern_count_oracles(nu):
    n = len(enumerate_patterns(nu))
    assert n == _brute_patterns(nu) == _weyl_gl(nu)


@given(st.lists(st.integers(0, 3), min_size=2, max_size=4))
def test_patterns_interlace(raw):
    nu = tuple(sorted(raw, reverse=True))
    pats = enumerate_patterns(nu)
    assert len(pats) == len(set(pats)) == _weyl_gl(nu)
    assert all(p.is_valid() for p in pats)
    assert pats == sorted(pats, key=GTPattern.sort_key)


def test_invalid_weight():
    with pytest.raises(WeightError):
        enumerate_patterns((0, 1))


def test_chevalley_two_dim():
    mats = act_chevalley((1, 0))
    V = gl_module((1, 0))
    assert [p.entry(1, 1) for p in V.basis] == [0, 1]
    assert mats["t[1]"] == OpMatrix.diagonal([qpow(0), qpow(1)])
    assert mats["e[1]"] == OpMatrix(2, 2, {(1, 0): ONE})


def test_trivial_module():
    mats = act_chevalley((0, 0, 0))
    for k in (1, 2):
        assert mats[f"e[{k}]"].is_zero() and mats[f"f[{k}]"].is_zero()
    for k in (1, 2, 3):
        assert mats[f"t[{k}]"] == OpMatrix.identity(1)


def test_root_vectors_base_and_recursion():
    V = gl_module((1, 0, 0))
    E = root_vectors((1, 0, 0))
    assert E[1, 2] == V.e(1)
    q = qpow(1)
    assert E[1, 3] == E[1, 2] @ E[2, 3] - (E[2, 3] @ E[1, 2]).scale(q)


@pytest.mark.parametrize("nu", [(1, 0, 0, 0), (1, 1, 0, 0), (2, 1, 0, 0)])
def test_root_vectors_independent_of_intermediate(nu):
    V = gl_module(nu)
    for i in range(1, 5):
        for j in range(1, 5):
            if abs(i - j) >= 2:
                assert len(set(V.root_vector_all_k(i, j).values())) == 1


def test_rtf_small():
    T, TB = rtf_generators((1, 0))
    V = gl_module((1, 0))
    # t_21 = (q - q^-1) t_11 f_1 on the two-dimensional module
    assert T[2, 1] == (V.t(1) @ V.f(1)).scale(QDIFF)
    assert T[2, 1].nnz() == 1
    assert V.tb(2, 1).is_zero()
    assert (2, 1) not in TB


@pytest.mark.parametrize("nu", [(1, 0), (2, 1, 0), (1, 1, 0, 0)])
def test_inverse_pairs(nu):
    T, TB = rtf_generators(nu)
    for i in range(1, len(nu) + 1):
        assert T[i, i] @ TB[i, i] == OpMatrix.identity(gl_module(nu).dim)


CASES = [(N, nu) for N in (2, 3, 4)
         for nu in [(1,) + (0,) * (N - 1), (1, 1) + (0,) * (N - 2), (2,) + (0,) * (N - 1)]]


@pytest.mark.parametrize("N,nu", CASES)
def test_relations_componentwise(N, nu):
    assert check_gl_relations(gl_module(nu)) == []


@pytest.mark.parametrize("N,nu", CASES)
def test_relations_matrix_form(N, nu):
    # second route: the RTT relations in matrix form
    T, TB = rtf_generators(nu)
    R = build_R(N)
    assert check_rtt(R, T, T, N).is_zero()
    assert check_rtt(R, TB, TB, N).is_zero()
    assert check_rtt(R, TB, T, N).is_zero()


def test_chevalley_relations_bigger_weight():
    assert check_chevalley_relations(gl_module((2, 1, 0))) == []


def test_manifest():
    m = module_manifest((1, 0), ["t[2,1]", "e[1]"])
    assert m["dim"] == 2 and sorted(m["matrices"]) == ["e[1]", "t[2,1]"]
    with pytest.raises(KeyError):
        module_manifest((1, 0), ["x[1]"])
