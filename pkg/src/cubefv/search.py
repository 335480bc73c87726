"""Counterexample search over NCP base, vertex exponent and cap count.

For a fixed NCP with 2**n vertices, capping c times gives
``f(c) = F + c * delta`` with every entry linear in c, so the set of c for
which f dips at a given (j, i, k) is an interval computed in closed form.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import ceil, floor

from cubefv.constructions import _check_ncp, capping_delta, capped_ncp_f_vector, ncp_f_vector
from cubefv.cubecore import partial_unimodality_check
from cubefv.errors import ConsistencyError
from cubefv.feasibility import _check_pattern, dip_patterns
from cubefv.seqkit import unimodality_report

PAPER_D = 12
PAPER_N = 131
PAPER_CAPS = 1841 * 10**39
PAPER_VERTEX_DIGITS = "3770370722"


@dataclass(frozen=True)
class CapsInterval:
    """Nonempty real interval of cap counts; ``None`` bounds are infinite.

    Empty solution sets are returned as ``None`` by the functions below,
    never as a crossed interval.
    """

    lower: Fraction | None
    upper: Fraction | None
    lower_open: bool = False
    upper_open: bool = False

    def __post_init__(self):
        if self.lower is not None and self.upper is not None:
            if self.lower > self.upper or (
                self.lower == self.upper and (self.lower_open or self.upper_open)
            ):
                raise ValueError(f"empty interval {self}")

    def __contains__(self, c) -> bool:
        if self.lower is not None:
            if c < self.lower or (self.lower_open and c == self.lower):
                return False
        if self.upper is not None:
            if c > self.upper or (self.upper_open and c == self.upper):
                return False
        return True

    def smallest_integer(self) -> int | None:
        lo = self.lower if self.lower is not None else Fraction(0)
        c = ceil(lo)
        if c == lo and self.lower_open:
            c += 1
        return c if c in self else None

    def largest_integer(self) -> int | None:
        if self.upper is None:
            return None
        c = floor(self.upper)
        if c == self.upper and self.upper_open:
            c -= 1
        return c if c in self else None

    def to_dict(self) -> dict:
        return {
            "lower": None if self.lower is None else str(self.lower),
            "lower_open": self.lower_open,
            "upper": None if self.upper is None else str(self.upper),
            "upper_open": self.upper_open,
        }


def _linear_positive(a0: int, slope: int):
    """Solve a0 + slope * c > 0 over the reals: (lower, upper) open bounds or 'all'/'none'."""
    if slope == 0:
        return "all" if a0 > 0 else "none"
    root = Fraction(-a0, slope)
    return ("gt", root) if slope > 0 else ("lt", root)


def dip_caps_interval(d: int, n: int, p) -> CapsInterval | None:
    """All real c >= 0 with f_j(c) > f_i(c) < f_k(c), or None if there are none."""
    _check_ncp(d, n)
    j, i, k = _check_pattern(d, p)
    base = ncp_f_vector(d, n)
    delta = capping_delta(d)
    lo, lo_open = Fraction(0), False
    hi, hi_open = None, False
    for other in (j, k):
        sol = _linear_positive(base[other] - base[i], delta[other] - delta[i])
        if sol == "none":
            return None
        if sol == "all":
            continue
        kind, root = sol
        if kind == "gt":
            if root > lo or (root == lo and not lo_open):
                lo, lo_open = root, True
        else:
            if hi is None or root <= hi:
                hi, hi_open = root, True
    if hi is not None and (hi < lo or (hi == lo and (lo_open or hi_open))):
        return None
    return CapsInterval(lo, hi, lo_open, hi_open)


@dataclass(frozen=True)
class CounterexampleSpec:
    d: int
    n: int
    c: int
    pattern: tuple[int, int, int]
    interval: CapsInterval
    f_digest: tuple[int, int, int]

    def to_dict(self) -> dict:
        return {
            "d": self.d,
            "n": self.n,
            "c": str(self.c),
            "pattern": list(self.pattern),
            "interval": self.interval.to_dict(),
            "f_digest": [str(x) for x in self.f_digest],
        }


def find_counterexample(d: int, n: int) -> CounterexampleSpec | None:
    """Smallest cap count giving a dip, ties broken by the lexicographically first pattern."""
    _check_ncp(d, n)
    best = None
    for p in dip_patterns(d):
        interval = dip_caps_interval(d, n, p)
        if interval is None:
            continue
        c = interval.smallest_integer()
        if c is None:
            continue
        if best is None or c < best[0]:
            best = (c, p, interval)
    if best is None:
        return None
    c, (j, i, k), interval = best
    f = capped_ncp_f_vector(d, n, c)
    if not f[j] > f[i] < f[k]:
        raise ConsistencyError(f"constructed f for d={d}, n={n}, c={c} does not dip at {(j, i, k)}")
    return CounterexampleSpec(d, n, c, (j, i, k), interval, (f[j], f[i], f[k]))


def minimal_vertex_exponent(d: int, n_max: int) -> int | None:
    """Smallest n in [d, n_max] whose NCP can be capped into a dip."""
    _check_ncp(d, n_max)
    for n in range(d, n_max + 1):
        if find_counterexample(d, n) is not None:
            return n
    return None


@dataclass(frozen=True)
class VerificationReport:
    d: int
    n: int
    c: int
    f: tuple[int, ...]
    dip_indices: tuple[int, ...]
    vertex_digits: int
    vertex_leading: str
    interval: CapsInterval

    def to_dict(self) -> dict:
        return {
            "d": self.d,
            "n": self.n,
            "c": str(self.c),
            "f": [str(x) for x in self.f],
            "dip_indices": list(self.dip_indices),
            "vertex_digits": self.vertex_digits,
            "vertex_leading_digits": self.vertex_leading,
            "caps_interval_4_5_6": self.interval.to_dict(),
        }


def verify_paper_counterexample() -> VerificationReport:
    """Rebuild the 12-dimensional non-unimodal instance and check every claim about it."""
    d, n, c = PAPER_D, PAPER_N, PAPER_CAPS
    f = capped_ncp_f_vector(d, n, c)

    def check(ok: bool, what: str) -> None:
        if not ok:
            raise ConsistencyError(f"paper counterexample: {what}")

    check(f[4] > f[5] < f[6], "f_4 > f_5 < f_6 fails")
    check(f[0] == 2**n + 2048 * c, "f_0 != 2**131 + 2048 c")
    digits = str(f[0])
    check(len(digits) == 46, f"f_0 has {len(digits)} digits")
    check(digits[:10] == PAPER_VERTEX_DIGITS, f"f_0 leading digits {digits[:10]}")
    check(partial_unimodality_check(f).holds, "partial unimodality bounds fail")
    dips = unimodality_report(f).dip_indices
    check(dips == (5,), f"dip indices {dips}, expected (5,)")
    interval = dip_caps_interval(d, n, (4, 5, 6))
    check(interval is not None and c in interval, "cap count outside the dip interval")
    return VerificationReport(d, n, c, f, dips, len(digits), digits[:10], interval)
