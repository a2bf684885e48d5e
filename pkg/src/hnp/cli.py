"""Command-line front end.

Exit status: 0 on success, 1 on a domain error (unsupported ambient, H not a
subgroup, budget exceeded, table mismatch), 2 on a usage error (bad flags,
malformed permutations, schema violations).
"""

from __future__ import annotations

import argparse
import json
import re
import sys
from concurrent.futures import ThreadPoolExecutor
from typing import List, Optional, Sequence

import jsonschema

from . import __version__
from .abelian import AbelianError, InvariantFactors
from .census import CensusError, census_run
from .cover import CoverError
from .obstruction import (ExtensionProblem, ObstructionError, ObstructionReport, decide, elementary_2_example, f_gh,
                          first_obstruction, h1_invariant, knot_norm_one, three_torsion_possible, wa_defect,
                          witness_three_torsion)
from .oracle import BudgetExceeded, default_budget, sandwich_check, sha_omega2
from .permcore import GroupError, PermGroup, PermParseError, natural_group, parse_permutation
from .tables import AMBIENTS, TABLES, group_name

SCHEMA_NAME = "hnp-report"
SCHEMA_VERSION = 1

_GENS = {"type": "array", "items": {"type": "string"}}
INPUT_SCHEMA = {
    "type": "object",
    "required": ["ambient", "H"],
    "additionalProperties": False,
    "properties": {
        "ambient": {
            "oneOf": [
                {"type": "object", "required": ["n", "kind"], "additionalProperties": False,
                 "properties": {"n": {"type": "integer", "minimum": 1}, "kind": {"enum": ["S", "A"]}}},
                {"type": "object", "required": ["generators", "degree"], "additionalProperties": False,
                 "properties": {"generators": _GENS, "degree": {"type": "integer", "minimum": 1}}},
            ]
        },
        "H": {"type": "object", "required": ["generators"], "additionalProperties": False,
              "properties": {"generators": _GENS}},
        "ramified": {"type": "array", "items": {
            "type": "object", "required": ["generators"], "additionalProperties": False,
            "properties": {"generators": _GENS}}},
    },
}


class UsageError(Exception):
    pass


# ---------------------------------------------------------------------------
# input parsing


def split_generator_list(text: str) -> List[str]:
    """'[g1,g2]' -> ['g1', 'g2'], splitting only at commas outside parentheses."""
    text = text.strip()
    if not text.startswith("["):
        return [text] if text else []
    if not text.endswith("]"):
        raise UsageError(f"unterminated generator list {text!r}")
    body = text[1:-1]
    out, depth, cur = [], 0, []
    for ch in body:
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        if ch == "," and depth == 0:
            out.append("".join(cur).strip())
            cur = []
        else:
            cur.append(ch)
    tail = "".join(cur).strip()
    if tail or out:
        out.append(tail)
    return out


def parse_ambient(text: str):
    m = re.fullmatch(r"\s*([AaSs])\s*(\d+)\s*", text)
    if not m:
        raise UsageError(f"ambient must look like A5 or S4, got {text!r}")
    return int(m.group(2)), m.group(1).upper()


def _gens(texts: Sequence[str], degree: int) -> PermGroup:
    return PermGroup([parse_permutation(t, degree) for t in texts], degree)


def problem_from_json(data: dict) -> ExtensionProblem:
    validator = jsonschema.Draft7Validator(INPUT_SCHEMA)
    errors = sorted(validator.iter_errors(data), key=lambda e: list(e.absolute_path))
    if errors:
        msgs = []
        for e in errors:
            pointer = "/" + "/".join(str(p) for p in e.absolute_path)
            msgs.append(f"{pointer}: {e.message}")
        raise UsageError("input does not match schema:\n  " + "\n  ".join(msgs))
    amb = data["ambient"]
    ramified = [D["generators"] for D in data.get("ramified", [])]
    if "kind" in amb:
        n = amb["n"]
        return ExtensionProblem.natural(n, amb["kind"], _gens(data["H"]["generators"], n),
                                        [_gens(D, n) for D in ramified])
    n = amb["degree"]
    G = _gens(amb["generators"], n)
    return ExtensionProblem(G, _gens(data["H"]["generators"], n), [_gens(D, n) for D in ramified])


def problem_from_args(args) -> ExtensionProblem:
    if args.input:
        try:
            with open(args.input) as fh:
                data = json.load(fh)
        except (OSError, json.JSONDecodeError) as exc:
            raise UsageError(f"cannot read {args.input}: {exc}")
        return problem_from_json(data)
    if not args.ambient and not args.G:
        raise UsageError("give --ambient, --G with --degree, or --input FILE")
    H = [g for item in (args.H or []) for g in split_generator_list(item)]
    ramified = [split_generator_list(item) for item in (args.ramified or [])]
    data = {"H": {"generators": H}, "ramified": [{"generators": D} for D in ramified]}
    if args.G:
        if not args.degree:
            raise UsageError("--G needs --degree")
        data["ambient"] = {"generators": [g for item in args.G for g in split_generator_list(item)],
                           "degree": args.degree}
    else:
        n, kind = parse_ambient(args.ambient)
        data["ambient"] = {"n": n, "kind": kind}
    return problem_from_json(data)


# ---------------------------------------------------------------------------
# rendering


def envelope(command: str, result) -> dict:
    return {"schema": SCHEMA_NAME, "version": SCHEMA_VERSION, "tool_version": __version__,
            "command": command, "result": result}


def render_json(command: str, result) -> str:
    return json.dumps(envelope(command, result), indent=2, sort_keys=True)


def parse_report(text: str) -> ObstructionReport:
    """Inverse of the JSON rendering of ``decide``."""
    data = json.loads(text)
    if data.get("schema") != SCHEMA_NAME or data.get("version") != SCHEMA_VERSION:
        raise UsageError("not an hnp report of a supported version")
    return ObstructionReport.from_json(data["result"])


def _describe(prob: ExtensionProblem) -> dict:
    return {
        "G": f"{prob.ambient[1]}{prob.ambient[0]}" if prob.ambient else f"order {prob.G.order}",
        "H": {"generators": [str(g) for g in prob.H.gens], "order": prob.H.order, "name": group_name(prob.H)},
        "index": prob.index,
        "ramified": [[str(g) for g in D.gens] for D in prob.ramified],
    }


def _emit(args, command: str, result: dict, text: str) -> None:
    if args.format == "json":
        print(render_json(command, result))
    else:
        print(text)


# ---------------------------------------------------------------------------
# commands


def cmd_group_value(args, name: str) -> int:
    prob = problem_from_args(args)
    trace: List[str] = []
    if name == "fgh":
        val = f_gh(prob.G, prob.H)
    elif name == "firstobs":
        val = first_obstruction(prob)
    elif name == "knot":
        val = knot_norm_one(prob, trace)
    elif name == "h1":
        val = h1_invariant(prob, args.method, trace)
    else:
        h1 = h1_invariant(prob, "auto", trace)
        val = wa_defect(h1, knot_norm_one(prob, trace))
    result = {"problem": _describe(prob), "value": val.to_json(), "rule_trace": trace}
    _emit(args, name, result, f"{name}: {val.name}")
    return 0


def cmd_decide(args) -> int:
    prob = problem_from_args(args)
    rep = decide(prob, args.method)
    result = dict(rep.to_json())
    result["problem"] = _describe(prob)
    lines = [f"G = {result['problem']['G']}, H = {result['problem']['H']['name']} "
             f"(order {prob.H.order}, index {prob.index}), ramified places: {len(prob.ramified)}",
             f"knot group : {rep.knot.name}",
             f"H^1        : {rep.h1.name}",
             f"WA defect  : {rep.wa_defect.name}",
             f"method     : {rep.method}",
             "trace:"] + [f"  - {t}" for t in rep.rule_trace]
    if args.format == "json":
        out = envelope("decide", rep.to_json())
        out["problem"] = result["problem"]
        print(json.dumps(out, indent=2, sort_keys=True))
    else:
        print("\n".join(lines))
    return 0


def table_rows(key: str, both_paths: bool = True, jobs: int = 1) -> List[dict]:
    """Compute every row of one table; each row records the value and whether it matches."""
    n, kind = AMBIENTS[key]
    method = "both" if both_paths and not (kind == "A" and n in (6, 7)) else "auto"

    def one(row) -> dict:
        prob = ExtensionProblem.natural(n, kind, list(row.generators))
        val = h1_invariant(prob, method)
        expected = InvariantFactors.parse(row.h1)
        return {"index": row.index, "H": row.name, "generators": list(row.generators),
                "h1": val.name, "expected": expected.name, "match": val == expected}

    if jobs <= 1:
        return [one(r) for r in TABLES[key]]
    with ThreadPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(one, TABLES[key]))


def cmd_tables(args) -> int:
    keys = list(TABLES) if args.which == "all" else [args.which]
    result = {}
    text = []
    ok = True
    for key in keys:
        rows = table_rows(key, jobs=args.jobs)
        result[key] = rows
        n, kind = AMBIENTS[key]
        text.append(f"G = {kind}{n}")
        text.append(f"{'[K:k]':>6}  {'H':<14} {'H^1':<10} {'':<6}")
        for r in rows:
            flag = "" if r["match"] else f"MISMATCH (expected {r['expected']})"
            text.append(f"{r['index']:>6}  {r['H']:<14} {r['h1']:<10} {flag}")
            ok = ok and r["match"]
        text.append("")
    text.append("all rows match" if ok else "some rows differ from the reference values")
    _emit(args, "tables", {"tables": result, "all_match": ok}, "\n".join(text))
    return 0 if ok else 1


def cmd_census(args) -> int:
    kwargs = {} if args.budget is None else {"budget": args.budget}
    rep = census_run(args.degree, jobs=args.jobs, **kwargs)
    _emit(args, "census", rep.to_json(), rep.render_text())
    return 0


def cmd_oracle(args) -> int:
    prob = problem_from_args(args)
    budget = args.budget if args.budget is not None else default_budget()
    sha = sha_omega2(prob.G, prob.H, budget)
    F = f_gh(prob.G, prob.H)
    result = {"problem": _describe(prob), "sha_omega2": sha.to_json(), "fgh": F.to_json()}
    lines = [f"Sha^2_omega(G, J_G/H) : {sha.name}", f"F(G,H)                : {F.name}"]
    if args.sandwich:
        good = sandwich_check(prob.G, prob.H, budget=budget)
        result["sandwich"] = good
        lines.append(f"sandwich bounds hold  : {good}")
    _emit(args, "oracle", result, "\n".join(lines))
    return 0


def cmd_examples(args) -> int:
    two = []
    for k in range(args.max_k + 1):
        n, gens = elementary_2_example(k)
        H = PermGroup(gens, n)
        two.append({"k": k, "n": n, "generators": [str(g) for g in gens],
                    "fgh": f_gh(natural_group(n, "A"), H).name})
    three = []
    for n in range(5, args.max_n + 1):
        if three_torsion_possible(n):
            h = witness_three_torsion(n)
            val = f_gh(natural_group(n, "A"), PermGroup([h], n))
            three.append({"n": n, "generator": str(h), "fgh": val.name})
    lines = ["elementary abelian 2-parts F(A_n, H) = (Z/2)^k:"]
    lines += [f"  k={e['k']}: n={e['n']}, H=<{', '.join(e['generators'])}>, F={e['fgh']}" for e in two]
    lines.append(f"3-torsion witnesses for 5 <= n <= {args.max_n}:")
    lines += [f"  n={e['n']}: h={e['generator']}, F={e['fgh']}" for e in three]
    _emit(args, "examples", {"elementary_2": two, "three_torsion": three}, "\n".join(lines))
    return 0


# ---------------------------------------------------------------------------


def _problem_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--input", help="JSON file describing the problem")
    p.add_argument("--ambient", help="natural ambient group, e.g. A4 or S5")
    p.add_argument("--G", action="append", help="explicit generators of G, e.g. '[(1,2,3),(1,2)]'")
    p.add_argument("--degree", type=int, help="degree for explicit --G")
    p.add_argument("--H", action="append", help="generators of H: one permutation or a list '[g1,g2]'")
    p.add_argument("--ramified", action="append",
                   help="decomposition group at a ramified place, as '[g1,g2]'; repeat per place")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="hnp", description="Hasse norm principle and weak approximation "
                                     "invariants of norm-one tori from Galois group data")
    parser.add_argument("--version", action="version", version=f"hnp {__version__}")
    parser.add_argument("--format", choices=["text", "json"], default="text")
    sub = parser.add_subparsers(dest="command", required=True)
    for name, desc in [("fgh", "F(G,H) = (H meet [G,G]) / focal subgroup"),
                       ("firstobs", "first obstruction with ramified data"),
                       ("knot", "knot group of the norm-one torus"),
                       ("h1", "the invariant H^1(k, Pic X)"),
                       ("wa", "defect of weak approximation"),
                       ("decide", "knot group, H^1 and WA defect with the rule trace")]:
        p = sub.add_parser(name, help=desc)
        _problem_flags(p)
        if name in ("h1", "decide"):
            p.add_argument("--method", choices=["auto", "cover", "both"], default="auto")
    p = sub.add_parser("tables", help="recompute the reference tables and compare")
    p.add_argument("which", choices=list(TABLES) + ["all"])
    p.add_argument("--jobs", type=int, default=1, help="rows computed in parallel")
    p = sub.add_parser("census", help="transitive groups of degree n with alpha and H^1")
    p.add_argument("degree", type=int)
    p.add_argument("--jobs", type=int, default=1, help="records computed in parallel")
    p.add_argument("--budget", type=int)
    p = sub.add_parser("oracle", help="bar-resolution check of H^1 for small G")
    _problem_flags(p)
    p.add_argument("--budget", type=int)
    p.add_argument("--sandwich", action="store_true", help="also check the divisibility bounds")
    p = sub.add_parser("examples", help="explicit 2-group and 3-torsion constructions")
    p.add_argument("--max-k", type=int, default=3)
    p.add_argument("--max-n", type=int, default=13)
    for p in sub.choices.values():
        p.add_argument("--format", choices=["text", "json"], default=argparse.SUPPRESS)
    return parser


DOMAIN_ERRORS = (ObstructionError, CoverError, BudgetExceeded, CensusError, AbelianError, GroupError)


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if exc.code is not None else 0
    try:
        if args.command in ("fgh", "firstobs", "knot", "h1", "wa"):
            return cmd_group_value(args, args.command)
        return {"decide": cmd_decide, "tables": cmd_tables, "census": cmd_census,
                "oracle": cmd_oracle, "examples": cmd_examples}[args.command](args)
    except (UsageError, PermParseError) as exc:
        print(f"hnp: usage error: {exc}", file=sys.stderr)
        return 2
    except DOMAIN_ERRORS as exc:
        print(f"hnp: error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
