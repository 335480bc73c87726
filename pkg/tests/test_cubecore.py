import itertools
import random
from fractions import Fraction
from math import comb

import pytest
import sympy
from hypothesis import given, settings, strategies as st

from cubefv.constructions import ncp_f_vector
from cubefv.cubecore import (
    basis_vector,
    build_transform_matrix,
    cube_f_vector,
    f_to_h,
    h_to_f,
    lemma2_vector,
    partial_unimodality_check,
    validate_adin,
    verify_lemma1,
    verify_lemma2,
)
from cubefv.errors import InvalidInputError, NonIntegralError
from cubefv.seqkit import peak_indices, strictly_decreasing, strictly_increasing


def enumerate_cube_faces(d):
    # a face of [0,1]^d is a word over {0, 1, *}; its dimension is the number of stars
    counts = [0] * (d + 1)
    for word in itertools.product("01*", repeat=d):
        counts[word.count("*")] += 1
    return tuple(counts[:d])


def sympy_solve_h(f):
    """Independent oracle: solve h H = f with sympy's exact linear algebra."""
    d = len(f)
    H = sympy.Matrix(d, d, lambda i, j: sympy.Rational(comb(d - i - 1, d - j - 1) if j >= i else 0, 2**j))
    h = H.T.LUsolve(sympy.Matrix([sympy.Rational(str(x)) for x in f]))
    return tuple(Fraction(int(x.p), int(x.q)) for x in h)


@pytest.mark.parametrize("d", range(1, 8))
def test_cube_f_vector_matches_enumeration(d):
    assert cube_f_vector(d) == enumerate_cube_faces(d)


def test_cube_examples():
    assert cube_f_vector(1) == (2,)
    assert cube_f_vector(3) == (8, 12, 6)
    assert peak_indices(cube_f_vector(9)) == (3,)
    with pytest.raises(InvalidInputError):
        cube_f_vector(0)


@pytest.mark.parametrize("d", range(1, 201))
def test_cube_monotonicity(d):
    f = cube_f_vector(d)
    assert strictly_increasing(f, 0, d // 3)
    assert strictly_decreasing(f, (d + 1) // 3, d - 1)


@pytest.mark.parametrize("d", range(1, 40))
def test_cube_peak_set(d):
    t = d // 3
    expected = (t, t + 1) if d % 3 == 2 else (t,)
    # index d (the cube itself, f_d = 1) is omitted from f; it never peaks for d >= 1
    assert peak_indices(cube_f_vector(d)) == expected


def test_matrix_rows_d3():
    H = build_transform_matrix(3)
    assert H[0] == (1, 1, Fraction(1, 4))
    assert H[2] == (0, 0, Fraction(1, 4))


@pytest.mark.parametrize("d", range(1, 25))
def test_matrix_invariants(d):
    H = build_transform_matrix(d)
    for i in range(d):
        assert H[i][i] == Fraction(1, 2**i)
        assert all(H[i][j] == 0 for j in range(i))
        # row i = i zeros, then 2**(1-d) * f(C^(d-i-1)) with a trailing 1
        e = d - i - 1
        cube = (cube_f_vector(e) if e else ()) + (1,)
        assert H[i][i:] == tuple(Fraction(x, 2 ** (d - 1)) for x in cube)


def test_h_to_f_examples():
    assert h_to_f((8, 8, 8), integral=True) == (8, 12, 6)
    assert h_to_f((4, 4), integral=True) == (4, 4)
    with pytest.raises(NonIntegralError):
        h_to_f((1, 1, 1), integral=True)


def test_f_to_h_examples():
    assert f_to_h((4, 4)) == (4, 4)
    assert f_to_h((8, 12, 6)) == (8, 8, 8)


@pytest.mark.parametrize("d", range(1, 13))
def test_cube_h_vector_is_constant(d):
    expected = (2**d,) * d
    assert sympy_solve_h(cube_f_vector(d)) == expected
    assert f_to_h(cube_f_vector(d)) == expected
    assert h_to_f(expected, integral=True) == cube_f_vector(d)


@pytest.mark.parametrize("d", [1, 2, 5, 9, 14])
def test_f_to_h_against_sympy(d):
    rng = random.Random(d)
    f = [Fraction(rng.randint(-50, 50), rng.randint(1, 9)) for _ in range(d)]
    assert f_to_h(f) == sympy_solve_h(f)


rationals = st.fractions(min_value=-10**6, max_value=10**6, max_denominator=1000)


@settings(max_examples=150)
@given(st.integers(1, 30).flatmap(lambda d: st.lists(rationals, min_size=d, max_size=d)))
def test_round_trips(v):
    assert f_to_h(h_to_f(v)) == tuple(v)
    assert h_to_f(f_to_h(v)) == tuple(v)


def test_validate_adin():
    assert validate_adin((8, 8, 8)).ok
    r = validate_adin((1, 2, 1, 2))
    assert not r.symmetric
    assert validate_adin(f_to_h(ncp_f_vector(4, 6))).ok
    r = validate_adin((1, Fraction(1, 2), 1))
    assert not r.positive_integers and r.symmetric and not r.unimodal


def test_basis_vector_examples():
    assert basis_vector(3, 0) == (1, 1, Fraction(1, 2))
    assert basis_vector(3, 1) == (0, Fraction(1, 2), Fraction(1, 4))
    with pytest.raises(InvalidInputError):
        basis_vector(3, 2)


@pytest.mark.parametrize("d", range(1, 26))
def test_decomposition_identity(d):
    rng = random.Random(d)
    g = [Fraction(rng.randint(-99, 99), rng.randint(1, 7)) for _ in range((d + 1) // 2)]
    h = [g[min(t, d - 1 - t)] for t in range(d)]
    total = [Fraction(0)] * d
    for i in range((d - 1) // 2 + 1):
        for j, x in enumerate(basis_vector(d, i)):
            total[j] += h[i] * x
    assert tuple(total) == h_to_f(h)


def test_lemma1_examples():
    H = build_transform_matrix(3)
    assert peak_indices(H[1][1:]) == (0,)  # column 1 = floor(5/3)
    assert H[0][1] == H[1][1] + 2 * H[1][2] == 1


@pytest.mark.parametrize("d", range(1, 51))
def test_lemma1(d):
    assert verify_lemma1(d)


def test_lemma2_examples():
    assert lemma2_vector(3, 0, 2) == (1, 1, Fraction(1, 2))
    assert verify_lemma2(3, 0, 2)
    with pytest.raises(InvalidInputError):
        verify_lemma2(3, 2, 1)
    for d in range(1, 12):
        for i in range(d):
            assert lemma2_vector(d, i, i) == tuple(2 * x for x in build_transform_matrix(d)[i])


@pytest.mark.parametrize("d", range(2, 31))
def test_lemma2_failures_are_exactly_the_last_two_rows(d):
    # H(d-2, *) + H(d-1, *) ends in two equal entries 2**(2-d), so the strict
    # descent after the peak at d-2 cannot hold; every other pair satisfies the chain
    failures = {(i, k) for i in range(d) for k in range(i, d) if not verify_lemma2(d, i, k)}
    assert failures == {(d - 2, d - 1)}
    a = lemma2_vector(d, d - 2, d - 1)
    assert a[-2] == a[-1] == Fraction(1, 2 ** (d - 2))


@pytest.mark.parametrize("d", range(3, 31))
def test_basis_vectors_peak(d):
    for i in range((d - 1) // 2 + 1):
        b = basis_vector(d, i)
        p = (d + 2 * i) // 3
        assert p - i in peak_indices(b[i:])
        assert verify_lemma2(d, i, d - 1 - i)


def test_partial_unimodality_cube12():
    r = partial_unimodality_check(cube_f_vector(12))
    assert r.increasing_part and r.decreasing_part
    assert r.dip_zone == (4, 8)
    assert r.dip_candidates == (5, 6)
    assert r.holds


def test_partial_unimodality_square():
    r = partial_unimodality_check((4, 4))
    assert r.holds and not r.strengthened_applies


def test_partial_unimodality_detects_violation():
    r = partial_unimodality_check((5, 4, 3, 2, 1, 1))
    assert not r.increasing_part
    assert not r.holds


def random_valid_h(rng, d, top=10**6):
    g = sorted(rng.randint(1, top) for _ in range((d + 1) // 2))
    return [g[min(t, d - 1 - t)] for t in range(d)]


@pytest.mark.parametrize("d", range(3, 61))
def test_partial_unimodality_property(d):
    rng = random.Random(1000 + d)
    for _ in range(100):
        h = random_valid_h(rng, d)
        assert partial_unimodality_check(h_to_f(h)).holds, h
