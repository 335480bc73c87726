from fractions import Fraction
from math import comb

import pytest

from cubefv.constructions import (
    apply_caps,
    capped_ncp_f_vector,
    capping_delta,
    euler_characteristic,
    ncp_f_vector,
)
from cubefv.cubecore import cube_f_vector, f_to_h, validate_adin
from cubefv.errors import InvalidInputError
from cubefv.seqkit import peak_indices, unimodality_report


def test_capping_delta_examples():
    assert capping_delta(3) == (4, 8, 4)
    assert capping_delta(2) == (2, 2)
    with pytest.raises(InvalidInputError):
        capping_delta(1)


@pytest.mark.parametrize("d", range(2, 51))
def test_capping_delta_euler_and_shape(d):
    delta = capping_delta(d)
    assert euler_characteristic(delta) == 0
    assert all(x > 0 for x in delta)
    if d >= 3:
        assert (d + 1) // 3 in peak_indices(delta[:-1])


def test_apply_caps():
    assert apply_caps(cube_f_vector(3), 1) == (12, 20, 10)
    f = (8, 12, 6)
    assert apply_caps(f, 0) == f
    assert apply_caps(apply_caps(f, 3), 4) == apply_caps(f, 7)
    with pytest.raises(InvalidInputError):
        apply_caps(f, -1)
    with pytest.raises(InvalidInputError):
        apply_caps((8,), 1)


def test_capped_ncp_examples():
    assert capped_ncp_f_vector(3, 3, 2) == (16, 28, 14)
    assert capped_ncp_f_vector(12, 131, 0)[0] == 2**131


@pytest.mark.parametrize("d", range(2, 21))
def test_ncp_on_cube_vertices_is_cube(d):
    assert ncp_f_vector(d, d) == cube_f_vector(d)


def test_ncp_examples():
    assert ncp_f_vector(4, 5)[0] == 32
    assert euler_characteristic(ncp_f_vector(5, 6)) == 1 - (-1) ** 5
    with pytest.raises(InvalidInputError):
        ncp_f_vector(5, 4)


@pytest.mark.parametrize("d", range(2, 11))
def test_ncp_adin_and_unimodal(d):
    for n in range(d, d + 7):
        f = ncp_f_vector(d, n)
        assert euler_characteristic(f) == 1 - (-1) ** d
        assert validate_adin(f_to_h(f)).ok
        assert unimodality_report(f).is_unimodal


@pytest.mark.parametrize("d", range(2, 41))
def test_capped_cube_is_cubical_and_peaks(d):
    for c in (1, 10, 10**6, 10**9):
        f = apply_caps(cube_f_vector(d), c)
        assert validate_adin(f_to_h(f)).ok
        assert (d + 1) // 3 in peak_indices(f)


def _c(n, k):
    return comb(n, k) if 0 <= k <= n else 0


def limiting_peak(d):
    """Argmax over k of the coefficient of the leading power of n in f_k / 2**n (d even)."""
    half = d // 2
    weights = [
        Fraction(_c(half, k - half + 1) + _c(half - 1, k - half), 2**k)
        for k in range(d)
    ]
    return max(range(d), key=weights.__getitem__)


# observed: the peak stays put from these n on (checked up to n = d + 2000)
NCP_PEAK_THRESHOLD = {6: 9, 8: 12, 10: 34, 12: 26}


@pytest.mark.parametrize("d", [6, 8, 10, 12])
def test_ncp_peak_drifts_towards_two_thirds(d):
    final = limiting_peak(d)
    assert abs(final - 2 * d // 3) <= 1
    threshold = NCP_PEAK_THRESHOLD[d]
    assert peak_indices(ncp_f_vector(d, threshold - 1)) != (final,)
    for n in range(threshold, d + 2000, 7):
        assert peak_indices(ncp_f_vector(d, n)) == (final,)
