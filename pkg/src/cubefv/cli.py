"""Command line interface.

Every command prints one JSON report ``{command, inputs, outputs, status}``
on stdout.  Exact numbers are always decimal strings ("p/q" for proper
fractions).  Exit codes: 0 success, 1 invalid input or failed check, 2 when
an existence question is answered negatively (``witness``,
``counterexample``) or a refutation does not go through (``refute``).
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import re
import sys
from fractions import Fraction

from cubefv import constructions, cubecore, feasibility, search
from cubefv.errors import CubefvError, InvalidInputError
from cubefv.seqkit import as_exact, unimodality_report

EXIT_OK, EXIT_INVALID, EXIT_ABSENT = 0, 1, 2


class Report:
    def __init__(self, command: str, inputs: dict, outputs: dict, status: str = "ok",
                 table: tuple[list, list] | None = None):
        self.command = command
        self.inputs = inputs
        self.outputs = outputs
        self.status = status
        self.table = table

    def to_dict(self) -> dict:
        return {
            "command": self.command,
            "inputs": self.inputs,
            "outputs": self.outputs,
            "status": self.status,
        }


def exact_str(x) -> str:
    return str(Fraction(x)) if not isinstance(x, int) else str(x)


def vec_out(v) -> list[str]:
    return [exact_str(x) for x in v]


def vector_table(v):
    return ["index", "value"], [[k, exact_str(x)] for k, x in enumerate(v)]


def parse_vector(text: str) -> list[Fraction]:
    """Accept a JSON list, a JSON report with ``outputs.vector``, or separated numbers."""
    text = text.strip()
    if not text:
        raise InvalidInputError("no vector given")
    if text[0] in "[{":
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise InvalidInputError(f"malformed JSON vector: {exc}") from exc
        if isinstance(data, dict):
            try:
                data = data["outputs"]["vector"]
            except (KeyError, TypeError) as exc:
                raise InvalidInputError("JSON report carries no outputs.vector") from exc
        if not isinstance(data, list):
            raise InvalidInputError("vector must be a JSON list")
        items = data
    else:
        items = [t for t in re.split(r"[,\s]+", text) if t]
    out = []
    for item in items:
        if isinstance(item, float):
            raise InvalidInputError(f"floating-point entry {item!r}; use integers or 'p/q' strings")
        out.append(as_exact(item if not isinstance(item, str) else item))
    if not out:
        raise InvalidInputError("empty vector")
    return out


def read_vector(args) -> list[Fraction]:
    text = args.vector if args.vector is not None else sys.stdin.read()
    return parse_vector(text)


def face_vector(values) -> tuple[int, ...]:
    for k, x in enumerate(values):
        if x.denominator != 1:
            raise InvalidInputError(f"face count f_{k} = {x} is not an integer")
        if x < 0:
            raise InvalidInputError(f"face count f_{k} = {x} is negative")
    return tuple(int(x) for x in values)


def _check_length(v, d):
    if d is not None and len(v) != d:
        raise InvalidInputError(f"vector has length {len(v)}, expected d = {d}")


# --- commands --------------------------------------------------------------

def cmd_cube(args):
    f = cubecore.cube_f_vector(args.d)
    return Report("cube", {"d": args.d}, {"vector": vec_out(f)}, table=vector_table(f))


def cmd_hmatrix(args):
    H = cubecore.build_transform_matrix(args.d)
    rows = [vec_out(r) for r in H]
    header = ["row"] + [f"col_{j}" for j in range(args.d)]
    table = (header, [[i] + r for i, r in enumerate(rows)])
    return Report("hmatrix", {"d": args.d}, {"matrix": rows}, table=table)


def cmd_f2h(args):
    f = face_vector(read_vector(args))
    _check_length(f, args.d)
    h = cubecore.f_to_h(f)
    outputs = {"vector": vec_out(h), "adin": cubecore.validate_adin(h).to_dict()}
    return Report("f2h", {"f": vec_out(f)}, outputs, table=vector_table(h))


def cmd_h2f(args):
    h = read_vector(args)
    _check_length(h, args.d)
    f = cubecore.h_to_f(h, integral=args.integral)
    return Report("h2f", {"h": vec_out(h), "integral": args.integral}, {"vector": vec_out(f)},
                  table=vector_table(f))


def cmd_ncp(args):
    f = constructions.ncp_f_vector(args.d, args.n)
    return Report("ncp", {"d": args.d, "n": args.n}, {"vector": vec_out(f)},
                  table=vector_table(f))


def cmd_cap(args):
    f = face_vector(read_vector(args))
    _check_length(f, args.d)
    out = constructions.apply_caps(f, args.c)
    return Report("cap", {"f": vec_out(f), "d": len(f), "c": str(args.c)},
                  {"vector": vec_out(out)}, table=vector_table(out))


def cmd_analyze(args):
    v = read_vector(args)
    _check_length(v, args.d)
    outputs = {"unimodality": unimodality_report(v).to_dict()}
    if len(v) >= 2 and all(x.denominator == 1 and x >= 0 for x in v):
        f = face_vector(v)
        outputs["partial_unimodality"] = cubecore.partial_unimodality_check(f).to_dict()
        outputs["euler_characteristic"] = str(constructions.euler_characteristic(f))
        h = cubecore.f_to_h(f)
        outputs["short_h_vector"] = vec_out(h)
        outputs["adin"] = cubecore.validate_adin(h).to_dict()
    return Report("analyze", {"vector": vec_out(v)}, outputs)


def cmd_refute(args):
    report = feasibility.refute_dimension(args.d)
    bundle = report.bundle()
    replayed = all(
        feasibility.replay_certificate(o.system, o.outcome.certificate)
        for o in report.outcomes if not o.feasible
    )
    outputs = {
        "patterns": len(report.outcomes),
        "infeasible": sum(not o.feasible for o in report.outcomes),
        "certificates": sum(not o.feasible for o in report.outcomes),
        "feasible_patterns": [list(p) for p in report.feasible_patterns],
        "certificates_replayed": replayed,
    }
    if args.certificates == "-":
        outputs["bundle"] = bundle
    elif args.certificates:
        with open(args.certificates, "w") as fh:
            json.dump(bundle, fh, indent=1)
        outputs["certificates_path"] = args.certificates
    status = "refuted" if report.refuted else "counterexample-found"
    return Report("refute", {"d": args.d}, outputs, status)


def cmd_witness(args):
    w = feasibility.find_h_witness(args.d)
    if w is None:
        return Report("witness", {"d": args.d}, {}, "absent")
    outputs = w.to_dict()
    outputs["vector"] = outputs["h"]
    return Report("witness", {"d": args.d}, outputs, "counterexample-found",
                  table=vector_table(w.h))


def cmd_counterexample(args):
    inputs = {"d": args.d, "n": args.n, "minimize_n": args.minimize_n}
    if args.minimize_n is not None:
        n = search.minimal_vertex_exponent(args.d, args.minimize_n)
        spec = None if n is None else search.find_counterexample(args.d, n)
    else:
        if args.n is None:
            raise InvalidInputError("counterexample needs -n or --minimize-n")
        spec = search.find_counterexample(args.d, args.n)
    if spec is None:
        return Report("counterexample", inputs, {}, "absent")
    iv = spec.interval.to_dict()
    table = (
        ["d", "n", "c", "j", "i", "k", "lower", "lower_open", "upper", "upper_open"],
        [[spec.d, spec.n, spec.c, *spec.pattern, iv["lower"], iv["lower_open"],
          iv["upper"], iv["upper_open"]]],
    )
    return Report("counterexample", inputs, spec.to_dict(), "counterexample-found", table=table)


def cmd_verify_paper(args):
    r = search.verify_paper_counterexample()
    out = r.to_dict()
    out["vector"] = out["f"]
    return Report("verify-paper", {"d": r.d, "n": r.n, "c": str(r.c)}, out,
                  table=vector_table(r.f))


def cmd_selftest(args):
    checks = {}
    checks["lemma1"] = {"d_max": args.lemma1_max,
                        "ok": all(cubecore.verify_lemma1(d) for d in range(1, args.lemma1_max + 1))}
    bad = [
        [d, i, k]
        for d in range(1, args.lemma2_max + 1)
        for i in range(d)
        for k in range(i, d)
        if not cubecore.verify_lemma2(d, i, k)
    ]
    checks["lemma2"] = {"d_max": args.lemma2_max, "ok": not bad, "failures": bad}
    basis_bad = [
        [d, i]
        for d in range(3, args.lemma2_max + 1)
        for i in range((d - 1) // 2 + 1)
        if not cubecore.verify_lemma2(d, i, d - 1 - i) and 2 * i != d - 1
    ]
    checks["basis_vectors"] = {"ok": not basis_bad, "failures": basis_bad}
    checks["round_trip"] = {
        "ok": all(cubecore.f_to_h(cubecore.cube_f_vector(d)) == (2**d,) * d for d in range(1, 13))
    }
    checks["ncp_cube"] = {
        "ok": all(constructions.ncp_f_vector(d, d) == cubecore.cube_f_vector(d) for d in range(2, 21))
    }
    checks["refute"] = {"ok": all(feasibility.refute_dimension(d).refuted for d in range(2, 11))}
    try:
        search.verify_paper_counterexample()
        checks["paper_counterexample"] = {"ok": True}
    except CubefvError as exc:
        checks["paper_counterexample"] = {"ok": False, "error": str(exc)}
    ok = all(c["ok"] for c in checks.values())
    return Report("selftest", {"lemma1_max": args.lemma1_max, "lemma2_max": args.lemma2_max},
                  checks, "ok" if ok else "failed")


# --- plumbing --------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="cubefv", description=__doc__.splitlines()[0])
    parser.add_argument("--format", choices=("json", "csv"), default="json")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, func, help_):
        p = sub.add_parser(name, help=help_)
        p.set_defaults(func=func)
        p.add_argument("--format", choices=("json", "csv"), default=argparse.SUPPRESS)
        return p

    def vector_arg(p):
        p.add_argument("--vector", "-v", help="comma separated values or JSON; default: stdin")
        p.add_argument("-d", type=int, help="expected length")

    add("cube", cmd_cube, "f-vector of the d-cube").add_argument("-d", type=int, required=True)
    add("hmatrix", cmd_hmatrix, "transform matrix H").add_argument("-d", type=int, required=True)
    vector_arg(add("f2h", cmd_f2h, "short cubical h-vector of an f-vector"))
    p = add("h2f", cmd_h2f, "f-vector h @ H of a short h-vector")
    vector_arg(p)
    p.add_argument("--integral", action="store_true", help="fail unless every entry is an integer")
    p = add("ncp", cmd_ncp, "f-vector of a neighborly cubical polytope with 2^n vertices")
    p.add_argument("-d", type=int, required=True)
    p.add_argument("-n", type=int, required=True)
    p = add("cap", cmd_cap, "apply c capping operations to an f-vector")
    vector_arg(p)
    p.add_argument("-c", type=int, required=True)
    vector_arg(add("analyze", cmd_analyze, "unimodality and partial unimodality report"))
    p = add("refute", cmd_refute, "decide every dip pattern in dimension d")
    p.add_argument("-d", type=int, required=True)
    p.add_argument("--certificates", metavar="PATH", help="write the certificate bundle ('-' embeds it)")
    add("witness", cmd_witness, "integral h-vector whose f-vector dips").add_argument(
        "-d", type=int, required=True)
    p = add("counterexample", cmd_counterexample, "smallest cap count producing a dip")
    p.add_argument("-d", type=int, required=True)
    p.add_argument("-n", type=int)
    p.add_argument("--minimize-n", type=int, metavar="MAX")
    add("verify-paper", cmd_verify_paper, "rebuild the 12-dimensional counterexample")
    p = add("selftest", cmd_selftest, "bounded verification suite")
    p.add_argument("--lemma1-max", type=int, default=50)
    p.add_argument("--lemma2-max", type=int, default=30)
    return parser


EXIT_FOR_STATUS = {"ok": EXIT_OK, "refuted": EXIT_OK, "counterexample-found": EXIT_OK,
                   "absent": EXIT_ABSENT, "failed": EXIT_INVALID}


def emit(report: Report, fmt: str, stream) -> None:
    if fmt == "csv":
        if report.table is None:
            raise InvalidInputError(f"command {report.command!r} has no tabular output")
        writer = csv.writer(stream, lineterminator="\n")
        header, rows = report.table
        writer.writerow(header)
        writer.writerows(rows)
    else:
        json.dump(report.to_dict(), stream, indent=2)
        stream.write("\n")


def run(argv=None, stdout=None) -> int:
    stdout = stdout or sys.stdout
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        report = args.func(args)
        buf = io.StringIO()
        emit(report, args.format, buf)
    except CubefvError as exc:
        print(f"cubefv {args.command}: {exc}", file=sys.stderr)
        return EXIT_INVALID
    stdout.write(buf.getvalue())
    code = EXIT_FOR_STATUS[report.status]
    if report.command == "refute" and report.status != "refuted":
        code = EXIT_ABSENT
    return code


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
