"""Exact Fourier-Motzkin feasibility for mixed strict/weak linear systems.

Each constraint reads ``coefficients . x + constant >= 0`` (or ``> 0`` when
strict).  Variables are eliminated from the highest index down.  An
infeasible system yields a certificate: the chain of nonnegative pairwise
combinations that ends in a ground contradiction, plus the flattened Farkas
multipliers over the original constraints.  A feasible system yields a
rational witness found by back-substitution.

The dip systems built here encode "a positive, symmetric, unimodal short
h-vector whose f = h @ H dips at (j, i, k)" in the reduced coordinates
g_s = h_s = h_{d-1-s}, s < ceil(d/2).
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from math import lcm
from typing import Sequence, Union

from cubefv.cubecore import _check_dim, build_transform_matrix, h_to_f, validate_adin
from cubefv.errors import ConsistencyError, InvalidInputError
from cubefv.seqkit import is_unimodal, unimodality_report


@dataclass(frozen=True)
class LinConstraint:
    coefficients: tuple[Fraction, ...]
    constant: Fraction
    strict: bool = False

    @property
    def relation(self) -> str:
        return ">" if self.strict else ">="

    @property
    def is_ground(self) -> bool:
        return not any(self.coefficients)

    @property
    def is_contradiction(self) -> bool:
        if not self.is_ground:
            return False
        return self.constant < 0 or (self.strict and self.constant == 0)

    def value(self, x: Sequence) -> Fraction:
        return sum((a * v for a, v in zip(self.coefficients, x)), self.constant)

    def satisfied_by(self, x: Sequence) -> bool:
        v = self.value(x)
        return v > 0 if self.strict else v >= 0

    def to_dict(self) -> dict:
        return {
            "coefficients": [str(a) for a in self.coefficients],
            "constant": str(self.constant),
            "relation": self.relation,
        }

    @classmethod
    def from_dict(cls, data: dict) -> "LinConstraint":
        if data["relation"] not in (">", ">="):
            raise InvalidInputError(f"unknown relation {data['relation']!r}")
        return cls(
            tuple(Fraction(a) for a in data["coefficients"]),
            Fraction(data["constant"]),
            data["relation"] == ">",
        )


def constraint(coefficients, constant=0, strict=False) -> LinConstraint:
    return LinConstraint(tuple(Fraction(a) for a in coefficients), Fraction(constant), strict)


def _combine(terms) -> LinConstraint:
    """Nonnegative combination of (multiplier, constraint) pairs."""
    terms = list(terms)
    m = len(terms[0][1].coefficients)
    coeffs = [Fraction(0)] * m
    const = Fraction(0)
    strict = False
    for mult, con in terms:
        if mult < 0:
            raise ConsistencyError("negative multiplier in combination")
        if mult == 0:
            continue
        for t in range(m):
            coeffs[t] += mult * con.coefficients[t]
        const += mult * con.constant
        strict = strict or con.strict
    return LinConstraint(tuple(coeffs), const, strict)


@dataclass
class ConstraintSystem:
    m: int
    constraints: list[LinConstraint] = field(default_factory=list)
    tags: list[str] = field(default_factory=list)

    def add(self, con: LinConstraint, tag: str = "") -> None:
        if len(con.coefficients) != self.m:
            raise InvalidInputError(
                f"constraint has {len(con.coefficients)} coefficients, system has {self.m} variables"
            )
        self.constraints.append(con)
        self.tags.append(tag)

    def satisfied_by(self, x: Sequence) -> bool:
        return all(c.satisfied_by(x) for c in self.constraints)

    def to_dict(self) -> dict:
        return {
            "m": self.m,
            "constraints": [
                dict(c.to_dict(), tag=t) for c, t in zip(self.constraints, self.tags)
            ],
        }

    @classmethod
    def from_dict(cls, data: dict) -> "ConstraintSystem":
        sys_ = cls(int(data["m"]))
        for item in data["constraints"]:
            sys_.add(LinConstraint.from_dict(item), item.get("tag", ""))
        return sys_


@dataclass(frozen=True)
class Step:
    """Derived constraint ``id`` = sum of multiplier * constraint[parent]."""

    id: int
    parents: tuple[tuple[int, Fraction], ...]
    result: LinConstraint

    def to_dict(self) -> dict:
        return {
            "id": self.id,
            "parents": [[p, str(mult)] for p, mult in self.parents],
            **self.result.to_dict(),
        }


@dataclass(frozen=True)
class Certificate:
    """Replayable proof of infeasibility.

    Constraint ids below ``n_original`` refer to the system's constraints in
    order; larger ids are defined by ``steps``.
    """

    n_original: int
    steps: tuple[Step, ...]
    contradiction: int
    farkas: tuple[Fraction, ...]

    def to_dict(self) -> dict:
        return {
            "n_original": self.n_original,
            "steps": [s.to_dict() for s in self.steps],
            "contradiction": self.contradiction,
            "farkas": [str(x) for x in self.farkas],
        }

    @classmethod
    def from_dict(cls, data: dict) -> "Certificate":
        steps = tuple(
            Step(
                int(s["id"]),
                tuple((int(p), Fraction(mult)) for p, mult in s["parents"]),
                LinConstraint.from_dict(s),
            )
            for s in data["steps"]
        )
        return cls(
            int(data["n_original"]),
            steps,
            int(data["contradiction"]),
            tuple(Fraction(x) for x in data["farkas"]),
        )


@dataclass(frozen=True)
class Infeasible:
    certificate: Certificate
    feasible = False


@dataclass(frozen=True)
class Feasible:
    witness: tuple[Fraction, ...]
    feasible = True


FeasibilityOutcome = Union[Feasible, Infeasible]


def _normalize(con: LinConstraint) -> tuple[Fraction, LinConstraint]:
    """Positive scale factor and the scaled constraint (leading |coeff| = 1)."""
    lead = next((a for a in con.coefficients if a), None)
    if lead is None:
        lead = con.constant if con.constant else Fraction(1)
    s = 1 / abs(lead)
    return s, LinConstraint(tuple(a * s for a in con.coefficients), con.constant * s, con.strict)


def _tighter(a: LinConstraint, b: LinConstraint) -> bool:
    """a implies b for constraints with identical coefficients."""
    if a.constant != b.constant:
        return a.constant < b.constant
    return a.strict or not b.strict


class _Eliminator:
    def __init__(self, system: ConstraintSystem):
        self.system = system
        self.pool: list[LinConstraint] = list(system.constraints)
        self.parents: dict[int, tuple[tuple[int, Fraction], ...]] = {}

    def derive(self, terms) -> int:
        raw = _combine((mult, self.pool[i]) for i, mult in terms)
        s, con = _normalize(raw)
        self.pool.append(con)
        idx = len(self.pool) - 1
        self.parents[idx] = tuple((i, mult * s) for i, mult in terms if mult)
        return idx

    def prune(self, ids: list[int]) -> list[int]:
        best: dict[tuple, int] = {}
        order = []
        for i in ids:
            con = self.pool[i]
            key = tuple(_normalize(con)[1].coefficients)
            if key not in best:
                best[key] = i
                order.append(key)
            elif _tighter(_normalize(con)[1], _normalize(self.pool[best[key]])[1]) and not _tighter(
                _normalize(self.pool[best[key]])[1], _normalize(con)[1]
            ):
                best[key] = i
        return [best[k] for k in order]

    def certificate(self, bad: int) -> Certificate:
        n = len(self.system.constraints)
        needed = set()
        stack = [bad]
        while stack:
            i = stack.pop()
            if i >= n and i not in needed:
                needed.add(i)
                stack.extend(p for p, _ in self.parents[i])
        steps = tuple(Step(i, self.parents[i], self.pool[i]) for i in sorted(needed))
        farkas = _flatten(n, steps, bad)
        return Certificate(n, steps, bad, farkas)


def _flatten(n: int, steps: Sequence[Step], target: int) -> tuple[Fraction, ...]:
    expansion: dict[int, list[Fraction]] = {}
    for i in range(n):
        row = [Fraction(0)] * n
        row[i] = Fraction(1)
        expansion[i] = row
    for step in steps:
        row = [Fraction(0)] * n
        for p, mult in step.parents:
            for t in range(n):
                row[t] += mult * expansion[p][t]
        expansion[step.id] = row
    return tuple(expansion[target])


def fourier_motzkin(system: ConstraintSystem) -> FeasibilityOutcome:
    elim = _Eliminator(system)
    for i, con in enumerate(elim.pool):
        if con.is_contradiction:
            return Infeasible(elim.certificate(i))
    active = elim.prune([i for i, c in enumerate(elim.pool) if not c.is_ground])
    # stages[v] holds the active ids once variables v..m-1 are gone
    stages: dict[int, list[int]] = {system.m: active}
    for v in range(system.m - 1, -1, -1):
        pos = [i for i in active if elim.pool[i].coefficients[v] > 0]
        neg = [i for i in active if elim.pool[i].coefficients[v] < 0]
        nxt = [i for i in active if elim.pool[i].coefficients[v] == 0]
        for p in pos:
            for q in neg:
                a = elim.pool[p].coefficients[v]
                b = -elim.pool[q].coefficients[v]
                idx = elim.derive([(p, b), (q, a)])
                con = elim.pool[idx]
                if con.is_contradiction:
                    return Infeasible(elim.certificate(idx))
                if not con.is_ground:
                    nxt.append(idx)
        active = elim.prune(nxt)
        stages[v] = active

    x: list[Fraction] = []
    for v in range(system.m):
        x.append(_pick(v, x, [elim.pool[i] for i in stages[v + 1]]))
    witness = tuple(x)
    if not system.satisfied_by(witness):
        raise ConsistencyError(f"Fourier-Motzkin witness {witness} violates the system")
    return Feasible(witness)


def _pick(v: int, known: list[Fraction], cons: list[LinConstraint]) -> Fraction:
    """Choose x_v given x_0..x_{v-1}: midpoint, or one past a half-open bound."""
    lo = hi = None
    lo_strict = hi_strict = False
    for con in cons:
        a = con.coefficients[v]
        if a == 0:
            continue
        rest = con.constant + sum(
            (con.coefficients[t] * known[t] for t in range(v)), Fraction(0)
        )
        bound = -rest / a
        if a > 0:
            if lo is None or bound > lo:
                lo, lo_strict = bound, con.strict
            elif bound == lo:
                lo_strict = lo_strict or con.strict
        else:
            if hi is None or bound < hi:
                hi, hi_strict = bound, con.strict
            elif bound == hi:
                hi_strict = hi_strict or con.strict
    if lo is None and hi is None:
        return Fraction(0)
    if hi is None:
        return lo + 1
    if lo is None:
        return hi - 1
    if lo > hi or (lo == hi and (lo_strict or hi_strict)):
        raise ConsistencyError(f"empty range for x_{v} during back-substitution")
    return (lo + hi) / 2


def replay_certificate(system: ConstraintSystem, certificate: Certificate) -> bool:
    """Independently re-derive every step and the final contradiction."""
    n = len(system.constraints)
    if certificate.n_original != n:
        return False
    known: dict[int, LinConstraint] = dict(enumerate(system.constraints))
    for step in certificate.steps:
        if step.id in known or any(p not in known for p, _ in step.parents):
            return False
        if any(mult < 0 for _, mult in step.parents):
            return False
        derived = _combine((mult, known[p]) for p, mult in step.parents)
        claimed = step.result
        if derived.coefficients != claimed.coefficients or derived.constant != claimed.constant:
            return False
        if claimed.strict and not derived.strict:
            return False
        known[step.id] = claimed
    final = known.get(certificate.contradiction)
    if final is None or not final.is_contradiction:
        return False
    if len(certificate.farkas) != n or any(x < 0 for x in certificate.farkas):
        return False
    flat = _combine(zip(certificate.farkas, system.constraints))
    if flat.coefficients != final.coefficients or flat.constant != final.constant:
        return False
    return not final.strict or flat.strict


# --- dip systems -----------------------------------------------------------


def reduced_size(d: int) -> int:
    return (d + 1) // 2


def expand_symmetric(g: Sequence, d: int) -> tuple:
    """Full symmetric vector h_t = g[min(t, d-1-t)]."""
    if len(g) != reduced_size(d):
        raise InvalidInputError(f"need {reduced_size(d)} reduced coordinates for d={d}")
    return tuple(g[min(t, d - 1 - t)] for t in range(d))


def f_entry_form(d: int, j: int) -> tuple[Fraction, ...]:
    """Coefficients of f_j as a linear form in the reduced coordinates."""
    H = build_transform_matrix(d)
    coeffs = [Fraction(0)] * reduced_size(d)
    for t in range(d):
        coeffs[min(t, d - 1 - t)] += H[t][j]
    return tuple(coeffs)


def _check_pattern(d: int, p) -> tuple[int, int, int]:
    try:
        j, i, k = (int(x) for x in p)
    except (TypeError, ValueError) as exc:
        raise InvalidInputError(f"dip pattern must be three indices, got {p!r}") from exc
    if not 0 <= j < i < k <= d - 1:
        raise InvalidInputError(f"dip pattern needs 0 <= j < i < k <= {d - 1}, got {p!r}")
    return j, i, k


def dip_patterns(d: int):
    return itertools.combinations(range(d), 3)


def build_dip_system(d: int, p) -> ConstraintSystem:
    _check_dim(d, 2)
    j, i, k = _check_pattern(d, p)
    m = reduced_size(d)
    system = ConstraintSystem(m)
    unit = [0] * m
    unit[0] = 1
    system.add(constraint(unit, -1), "h positive: g_0 >= 1 (scale normalization)")
    for t in range(m - 1):
        row = [0] * m
        row[t + 1], row[t] = 1, -1
        system.add(constraint(row), f"h nondecreasing to middle: g_{t + 1} - g_{t} >= 0")
    fi = f_entry_form(d, i)
    for other in (j, k):
        fo = f_entry_form(d, other)
        system.add(
            LinConstraint(tuple(a - b for a, b in zip(fo, fi)), Fraction(0), True),
            f"dip: f_{other} > f_{i}",
        )
    return system


@dataclass(frozen=True)
class PatternOutcome:
    pattern: tuple[int, int, int]
    system: ConstraintSystem
    outcome: FeasibilityOutcome

    @property
    def feasible(self) -> bool:
        return self.outcome.feasible

    def to_dict(self) -> dict:
        out = {"pattern": list(self.pattern), "system": self.system.to_dict()}
        if isinstance(self.outcome, Infeasible):
            out["status"] = "infeasible"
            out["certificate"] = self.outcome.certificate.to_dict()
        else:
            out["status"] = "feasible"
            out["witness"] = [str(x) for x in self.outcome.witness]
        return out


@dataclass(frozen=True)
class RefutationReport:
    d: int
    outcomes: tuple[PatternOutcome, ...]

    @property
    def refuted(self) -> bool:
        return all(not o.feasible for o in self.outcomes)

    @property
    def feasible_patterns(self) -> list[tuple[int, int, int]]:
        return [o.pattern for o in self.outcomes if o.feasible]

    def bundle(self) -> dict:
        """Self-contained certificate bundle for third-party replay."""
        return {
            "d": self.d,
            "variables": [f"g_{s}" for s in range(reduced_size(self.d))],
            "substitution": "h_t = g_min(t, d-1-t)",
            "normalization": "g_0 >= 1; the system is otherwise scale invariant, so "
            "rational feasibility is equivalent to a positive integer solution",
            "refuted": self.refuted,
            "patterns": [o.to_dict() for o in self.outcomes],
        }


def refute_dimension(d: int) -> RefutationReport:
    """Decide every dip pattern for dimension d, in lexicographic pattern order."""
    _check_dim(d, 2)
    outcomes = []
    for p in dip_patterns(d):
        system = build_dip_system(d, p)
        outcomes.append(PatternOutcome(p, system, fourier_motzkin(system)))
    return RefutationReport(d, tuple(outcomes))


@dataclass(frozen=True)
class HWitness:
    d: int
    pattern: tuple[int, int, int]
    h: tuple[int, ...]
    f: tuple[int, ...]

    def to_dict(self) -> dict:
        return {
            "d": self.d,
            "pattern": list(self.pattern),
            "h": [str(x) for x in self.h],
            "f": [str(x) for x in self.f],
            "dip_indices": list(unimodality_report(self.f).dip_indices),
            "realizability": "unknown",
        }


def scale_witness(d: int, g: Sequence[Fraction]) -> tuple[int, ...]:
    """Smallest positive multiple of a rational witness with h and h @ H integral."""
    g = [Fraction(x) for x in g]
    scale = lcm(*(x.denominator for x in g))
    h = [x * scale for x in expand_symmetric(g, d)]
    f = h_to_f(h)
    extra = lcm(*(x.denominator for x in f))
    return tuple(int(x * extra) for x in h)


def find_h_witness(d: int) -> HWitness | None:
    """First feasible dip pattern turned into an integral short h-vector, or None."""
    _check_dim(d, 2)
    for p in dip_patterns(d):
        outcome = fourier_motzkin(build_dip_system(d, p))
        if not outcome.feasible:
            continue
        h = scale_witness(d, outcome.witness)
        f = h_to_f(h, integral=True)
        if not validate_adin(h).ok or is_unimodal(f):
            raise ConsistencyError(f"scaled witness {h} for d={d} failed re-verification")
        return HWitness(d, p, h, f)
    return None
