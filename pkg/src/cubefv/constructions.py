"""Face vectors of capped polytopes and neighborly cubical polytopes (NCPs).

Naming: ``c`` is the number of capping operations, ``n`` is the NCP vertex
exponent (the polytope has 2**n vertices).
"""
from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from typing import Iterable

from cubefv.cubecore import _check_dim, binom
from cubefv.errors import ConsistencyError, InvalidInputError


def capping_delta(d: int) -> tuple[int, ...]:
    """Per-index increase of the f-vector caused by gluing one d-cube on a facet."""
    _check_dim(d, 2)
    head = tuple(
        2 ** (d - k) * binom(d, k) - 2 ** (d - k - 1) * binom(d - 1, k) for k in range(d - 1)
    )
    return head + (2 * (d - 1),)


def _check_count(c, name="cap count") -> int:
    if isinstance(c, bool) or not isinstance(c, int):
        raise InvalidInputError(f"{name} must be an integer, got {c!r}")
    if c < 0:
        raise InvalidInputError(f"{name} must be >= 0, got {c}")
    return c


def apply_caps(f: Iterable[int], c: int) -> tuple[int, ...]:
    f = tuple(f)
    for x in f:
        if isinstance(x, bool) or not isinstance(x, int) or x < 0:
            raise InvalidInputError(f"face counts must be nonnegative integers, got {x!r}")
    _check_count(c)
    delta = capping_delta(len(f))
    return tuple(x + c * y for x, y in zip(f, delta))


def _check_ncp(d, n) -> None:
    _check_dim(d, 2)
    if isinstance(n, bool) or not isinstance(n, int):
        raise InvalidInputError(f"vertex exponent must be an integer, got {n!r}")
    if n < d:
        raise InvalidInputError(f"NCP needs n >= d, got n={n}, d={d}")


@lru_cache(maxsize=1024)
def ncp_f_vector(d: int, n: int) -> tuple[int, ...]:
    """Face vector of a neighborly cubical d-polytope with 2**n vertices.

    The odd-d branch carries 2**-j terms, so the sum is taken in Fractions and
    each entry must come out integral.
    """
    _check_ncp(d, n)
    out = []
    for k in range(d):
        top = (d - 2) // 2 if d % 2 == 0 else (d - 3) // 2
        total = Fraction(
            sum(
                (binom(d - i - 1, k - i) + binom(i, k - d + i + 1)) * binom(n - d + i, i)
                for i in range(top + 1)
            )
        )
        if d % 2 == 1:
            half = (d - 1) // 2
            total += sum(
                (
                    Fraction(binom(half, d - k - 1) * binom(n - (d + 3) // 2 - j, n - d - j), 2**j)
                    for j in range(n - d + 1)
                ),
                Fraction(0),
            )
        value = 2 ** (n - k) * total
        if value.denominator != 1:
            raise ConsistencyError(f"NCP entry f_{k} for d={d}, n={n} is not integral: {value}")
        out.append(int(value))
    if out[0] != 2**n:
        raise ConsistencyError(f"NCP f_0 for d={d}, n={n} is {out[0]}, expected 2**{n}")
    return tuple(out)


def capped_ncp_f_vector(d: int, n: int, c: int) -> tuple[int, ...]:
    return apply_caps(ncp_f_vector(d, n), c)


def euler_characteristic(f: Iterable[int]) -> int:
    """Alternating sum of a face vector; equals 1 - (-1)**d for a d-polytope."""
    return sum((-1) ** k * x for k, x in enumerate(f))
