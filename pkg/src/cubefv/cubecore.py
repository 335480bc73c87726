"""Cube f-vectors, the transform matrix H and the f <-> short h-vector maps.

Vectors are plain tuples.  Face vectors hold ``int`` entries, short
h-vectors and matrix entries hold :class:`~fractions.Fraction`.  The matrix
is

    H(i, j) = 2**-j * binom(d-i-1, d-j-1),     0 <= i, j <= d-1

so that ``f = h @ H``.  H is upper triangular with diagonal 2**-i, which is
what :func:`f_to_h` relies on.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb, lcm
from operator import mul
from typing import Iterable, Sequence

from cubefv.errors import InvalidInputError, NonIntegralError
from cubefv.seqkit import (
    as_seq,
    is_symmetric,
    is_unimodal,
    peak_indices,
    strictly_decreasing,
    strictly_increasing,
)


def binom(n: int, k: int) -> int:
    """Binomial coefficient, zero outside 0 <= k <= n."""
    if n < 0 or k < 0 or k > n:
        return 0
    return comb(n, k)


def _check_dim(d, minimum: int = 1) -> int:
    if isinstance(d, bool) or not isinstance(d, int):
        raise InvalidInputError(f"dimension must be an integer, got {d!r}")
    if d < minimum:
        raise InvalidInputError(f"dimension must be >= {minimum}, got {d}")
    return d


def cube_f_vector(d: int) -> tuple[int, ...]:
    """f_k(C^d) = 2**(d-k) * binom(d, k) for k < d."""
    _check_dim(d)
    return tuple(2 ** (d - k) * comb(d, k) for k in range(d))


@lru_cache(maxsize=256)
def build_transform_matrix(d: int) -> tuple[tuple[Fraction, ...], ...]:
    _check_dim(d)
    return tuple(
        tuple(Fraction(binom(d - i - 1, d - j - 1), 2**j) for j in range(d))
        for i in range(d)
    )


def _as_face_vector(f: Iterable) -> tuple:
    f = as_seq(f)
    if any(x < 0 for x in f):
        raise InvalidInputError("face counts must be nonnegative")
    return f


@lru_cache(maxsize=256)
def _scaled_columns(d: int) -> tuple[tuple[int, ...], ...]:
    # column j of 2**(d-1) * H, truncated to its nonzero part (rows 0..j)
    return tuple(
        tuple(binom(d - i - 1, d - j - 1) << (d - 1 - j) for i in range(j + 1)) for j in range(d)
    )


def h_to_f(h: Iterable, integral: bool = False) -> tuple:
    """Row vector times matrix, ``h @ H``.

    With ``integral=True`` the result is returned as ints and a
    :class:`NonIntegralError` is raised if any entry is fractional, which
    means ``h`` is not the short h-vector of any cubical polytope.
    """
    h = as_seq(h)
    d = len(h)
    den = lcm(*(x.denominator for x in h))
    nums = [x.numerator * (den // x.denominator) for x in h]
    scale = den << (d - 1)
    f = tuple(Fraction(sum(map(mul, nums, col)), scale) for col in _scaled_columns(d))
    if integral:
        bad = [j for j, x in enumerate(f) if x.denominator != 1]
        if bad:
            raise NonIntegralError(f"h @ H has non-integral entries at indices {bad}")
        return tuple(int(x) for x in f)
    return f


def f_to_h(f: Iterable) -> tuple[Fraction, ...]:
    """Solve ``f = h @ H`` by substitution against the triangular H."""
    f = as_seq(f)
    d = len(f)
    H = build_transform_matrix(d)
    h: list[Fraction] = []
    for j in range(d):
        acc = f[j] - sum((h[i] * H[i][j] for i in range(j)), Fraction(0))
        h.append(acc / H[j][j])
    return tuple(h)


@dataclass(frozen=True)
class AdinReport:
    positive_integers: bool
    symmetric: bool
    unimodal: bool

    @property
    def ok(self) -> bool:
        return self.positive_integers and self.symmetric and self.unimodal

    def to_dict(self) -> dict:
        return {
            "positive_integers": self.positive_integers,
            "symmetric": self.symmetric,
            "unimodal": self.unimodal,
            "ok": self.ok,
        }


def validate_adin(h: Iterable) -> AdinReport:
    """Check the three necessary conditions on a cubical short h-vector."""
    h = as_seq(h)
    return AdinReport(
        positive_integers=all(x.denominator == 1 and x > 0 for x in h),
        symmetric=is_symmetric(h),
        unimodal=is_unimodal(h),
    )


def basis_vector(d: int, i: int) -> tuple[Fraction, ...]:
    """H(i, *) + H(d-i-1, *), or H(i, *) alone when the two rows coincide."""
    _check_dim(d)
    if not 0 <= i <= (d - 1) // 2:
        raise InvalidInputError(f"basis index must lie in 0..{(d - 1) // 2}, got {i}")
    H = build_transform_matrix(d)
    if 2 * i == d - 1:
        return H[i]
    return tuple(a + b for a, b in zip(H[i], H[d - i - 1]))


def _peaked_chain(a: Sequence, start: int, peak: int) -> bool:
    # a[start] < ... < a[peak-1] <= a[peak] > ... > a[-1]
    if peak - 1 >= start:
        if not strictly_increasing(a, start, peak - 1) or a[peak - 1] > a[peak]:
            return False
    return strictly_decreasing(a, peak, len(a) - 1)


def verify_lemma1(d: int) -> bool:
    """Row-wise peak chains of H, the exact peak sets, and the Pascal recursion.

    Rows are checked from their first nonzero entry (column i) on.
    """
    _check_dim(d)
    H = build_transform_matrix(d)
    for i in range(d):
        row = H[i]
        peak = (d + 2 * i) // 3
        if not _peaked_chain(row, i, peak):
            return False
        expected = {peak - 1, peak} if (d - i) % 3 == 0 else {peak}
        if {i + t for t in peak_indices(row[i:])} != expected:
            return False
    for i in range(d - 1):
        for j in range(d - 1):
            if H[i][j] != H[i + 1][j] + 2 * H[i + 1][j + 1]:
                return False
    return True


def lemma2_vector(d: int, i: int, k: int) -> tuple[Fraction, ...]:
    _check_dim(d)
    if not 0 <= i <= k <= d - 1:
        raise InvalidInputError(f"need 0 <= i <= k <= d-1, got i={i}, k={k}, d={d}")
    H = build_transform_matrix(d)
    return tuple(a + b for a, b in zip(H[i], H[k]))


def verify_lemma2(d: int, i: int, k: int) -> bool:
    """Peak chain of H(i, *) + H(k, *) with peak at floor((d+2i)/3).

    The chain is read from column i on; columns before i are all zero.
    """
    a = lemma2_vector(d, i, k)
    return _peaked_chain(a, i, (d + 2 * i) // 3)


@dataclass(frozen=True)
class PartialUnimodalityReport:
    d: int
    increasing_part: bool  # f_0 < ... < f_{t-1} <= f_t, t = floor(d/3)
    decreasing_part: bool  # f_u > ... > f_{d-1}, u = floor(2d/3)
    strengthened_applies: bool
    strengthened_holds: bool | None  # f_{u-1} > f_u > ... when applicable
    dip_zone: tuple[int, int]
    dip_candidates: tuple[int, ...]

    @property
    def holds(self) -> bool:
        return (
            self.increasing_part
            and self.decreasing_part
            and self.strengthened_holds is not False
        )

    def to_dict(self) -> dict:
        return {
            "d": self.d,
            "increasing_part": self.increasing_part,
            "decreasing_part": self.decreasing_part,
            "strengthened_applies": self.strengthened_applies,
            "strengthened_holds": self.strengthened_holds,
            "dip_zone": list(self.dip_zone),
            "dip_candidates": list(self.dip_candidates),
            "holds": self.holds,
        }


def partial_unimodality_check(f: Iterable) -> PartialUnimodalityReport:
    """Check the first-third increase / last-third decrease of a face vector.

    The strengthened tail (decreasing already from floor(2d/3) - 1) is only
    claimed for d = 0, 2, 3 mod 6 and d >= 3; every polygon has f_0 = f_1.
    """
    f = _as_face_vector(f)
    d = len(f)
    if d < 2:
        raise InvalidInputError("partial unimodality needs d >= 2")
    t, u = d // 3, 2 * d // 3
    inc = _peaked_chain(f[: t + 1], 0, t) if t > 0 else True
    dec = strictly_decreasing(f, u, d - 1)
    applies = d >= 3 and d % 6 in (0, 2, 3)
    strong = strictly_decreasing(f, u - 1, d - 1) if applies else None
    candidates = tuple(x for x in range(t + 1, u) if not (applies and x == u - 1))
    return PartialUnimodalityReport(d, inc, dec, applies, strong, (t, u), candidates)
