"""Exact finite sequences: unimodality, peaks, dips and symmetry.

All entries are coerced to :class:`fractions.Fraction`; ints pass through
unchanged in value.  Nothing here touches floating point.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational
from typing import Iterable, Sequence

from cubefv.errors import InvalidInputError


def as_exact(value) -> Fraction:
    """Coerce an int, Fraction or "p/q" string to an exact Fraction.

    Floats are rejected outright.
    """
    if type(value) is Fraction:
        return value
    if type(value) is int:
        return Fraction(value)
    if isinstance(value, bool):
        raise InvalidInputError(f"boolean is not a number: {value!r}")
    if isinstance(value, (int, Rational)):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise InvalidInputError(f"not an exact rational: {value!r}") from exc
    raise InvalidInputError(f"unsupported scalar type {type(value).__name__}: {value!r}")


def as_seq(values: Iterable) -> tuple[Fraction, ...]:
    s = tuple(as_exact(v) for v in values)
    if not s:
        raise InvalidInputError("sequence must be nonempty")
    return s


@dataclass(frozen=True)
class UnimodalityReport:
    is_unimodal: bool
    peak_indices: tuple[int, ...]
    dip_indices: tuple[int, ...]
    increasing_prefix_end: int
    decreasing_suffix_start: int

    def to_dict(self) -> dict:
        return {
            "is_unimodal": self.is_unimodal,
            "peak_indices": list(self.peak_indices),
            "dip_indices": list(self.dip_indices),
            "increasing_prefix_end": self.increasing_prefix_end,
            "decreasing_suffix_start": self.decreasing_suffix_start,
        }


def _prefix_end(s: Sequence, strict: bool) -> int:
    p = 0
    while p + 1 < len(s) and (s[p] < s[p + 1] if strict else s[p] <= s[p + 1]):
        p += 1
    return p


def _suffix_start(s: Sequence, strict: bool) -> int:
    q = len(s) - 1
    while q > 0 and (s[q - 1] > s[q] if strict else s[q - 1] >= s[q]):
        q -= 1
    return q


def dip_indices(s: Sequence) -> tuple[int, ...]:
    """Indices i with s[j] > s[i] < s[k] for some j < i < k."""
    n = len(s)
    if n < 3:
        return ()
    suffix_max = [None] * n
    running = s[-1]
    for i in range(n - 2, -1, -1):
        suffix_max[i] = running
        running = max(running, s[i])
    dips = []
    prefix_max = s[0]
    for i in range(1, n - 1):
        if prefix_max > s[i] < suffix_max[i]:
            dips.append(i)
        prefix_max = max(prefix_max, s[i])
    return tuple(dips)


def peak_indices(s: Sequence) -> tuple[int, ...]:
    """Indices i with s non-decreasing up to i and non-increasing from i."""
    p = _prefix_end(s, strict=False)
    q = _suffix_start(s, strict=False)
    return tuple(range(q, p + 1))


def unimodality_report(s: Iterable) -> UnimodalityReport:
    s = as_seq(s)
    peaks = peak_indices(s)
    dips = dip_indices(s)
    # the two characterisations of unimodality must agree
    assert (not dips) == bool(peaks)
    return UnimodalityReport(
        is_unimodal=not dips,
        peak_indices=peaks,
        dip_indices=dips,
        increasing_prefix_end=_prefix_end(s, strict=True),
        decreasing_suffix_start=_suffix_start(s, strict=True),
    )


def is_unimodal(s: Iterable) -> bool:
    return not dip_indices(as_seq(s))


def is_symmetric(s: Iterable) -> bool:
    s = as_seq(s)
    return all(s[i] == s[-1 - i] for i in range(len(s) // 2))


def strictly_increasing(s: Sequence, start: int, stop: int) -> bool:
    """True iff s[start] < s[start+1] < ... < s[stop] (inclusive bounds)."""
    return all(s[t] < s[t + 1] for t in range(start, stop))


def strictly_decreasing(s: Sequence, start: int, stop: int) -> bool:
    """True iff s[start] > s[start+1] > ... > s[stop] (inclusive bounds)."""
    return all(s[t] > s[t + 1] for t in range(start, stop))
