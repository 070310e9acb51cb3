"""Command-line front end.

Exit codes: 0 success, 1 I/O or parse error, 2 precondition failure,
3 internal verification failure (including a failed check).
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys
from pathlib import Path
from typing import List, Optional

from . import checks as chk
from .census import census_record, census_stream, write_csv
from .coalgebra import coalgebra_from_dict, comultiplier_monoid, duality_report, inner_comultiplier
from .degeneracy import degeneracy_report, injectivity_checks
from .errors import (
    AlgebraError,
    BoundExceeded,
    InternalVerificationFailed,
    OrderTooLarge,
    PreconditionFailed,
    SemigroupError,
)
from .extension import DEFAULT_MAX_HULL, extend_flat, extend_sharp
from .hull import hull
from .linear import (
    algebra_from_dict,
    concretization,
    convolution_semigroup,
    inner_multiplier,
    multiplier_monoid,
    parse_alg_json,
)
from .semigroup import as_monoid, read_sgp

EXIT_OK, EXIT_IO, EXIT_PRECONDITION, EXIT_INTERNAL = 0, 1, 2, 3


class Report:
    def __init__(self, command: str):
        self.command = command
        self.inputs: dict = {}
        self.params: dict = {}
        self.results: dict = {}
        self.checks: List[dict] = []
        self.lines: List[str] = []

    def add_input(self, path) -> None:
        p = Path(path)
        self.inputs[str(p)] = hashlib.sha256(p.read_bytes()).hexdigest()

    def check(self, statement: str, passed: bool, witness=None) -> None:
        self.checks.append({"statement": statement, "status": "pass" if passed else "fail",
                            "witness": witness})

    def say(self, line: str) -> None:
        self.lines.append(line)

    @property
    def ok(self) -> bool:
        return all(c["status"] == "pass" for c in self.checks)

    def to_dict(self) -> dict:
        return {"command": self.command, "inputs": self.inputs, "params": self.params,
                "results": self.results, "checks": self.checks}


# --- commands ----------------------------------------------------------------

def _fmt_map(m) -> str:
    return "[" + " ".join(str(v) for v in m) + "]"


def cmd_hull(args) -> Report:
    rep = Report("hull")
    rep.add_input(args.file)
    S = read_sgp(args.file)
    H = hull(S)
    rep.results = H.to_dict()
    rep.check("hull.monoid-laws", True)
    rep.say(f"hull: {len(H)} elements ({H.inner_count} inner, {H.outer_count} outer)")
    for i, m in enumerate(H.elements):
        tag = f"inner {list(m.inner_witnesses)}" if m.is_inner else "outer"
        rep.say(f"  {i:>3}  L={_fmt_map(m.L)}  R={_fmt_map(m.R)}  {tag}")
    if len(H) <= 16:
        rep.say("star table:")
        for row in H.star_table.tolist():
            rep.say("  " + " ".join(f"{v:>3}" for v in row))
    M = as_monoid(S)
    if M is not None:
        iso = chk._safe(chk._monoid_iso, {"S": [list(r) for r in S.table]})[0]
        rep.check("hull.monoid-canonical-iso", iso, None if iso else {"S": [list(r) for r in S.table]})
        rep.say("hull ≅ input monoid (canonical map verified)" if iso else "canonical map is NOT an isomorphism")
    return rep


def cmd_props(args) -> Report:
    rep = Report("props")
    rep.add_input(args.file)
    S = read_sgp(args.file)
    d = degeneracy_report(S)
    inj = injectivity_checks(S)
    rep.results = {"degeneracy": d.to_dict(), "injectivity": inj.to_dict()}
    for name, flag in (("globally idempotent", d.globally_idempotent),
                       ("left non-degenerate", d.left_nondeg),
                       ("right non-degenerate", d.right_nondeg)):
        key = name.replace(" ", "_").replace("-", "").replace("nondegenerate", "nondeg")
        w = d.witnesses.get(key)
        rep.say(f"{name}: {'yes' if flag else 'no'}" + ("" if w is None else f" (witness: {w})"))
    rep.say(f"in Sem_nd: {'yes' if d.in_sem_nd else 'no'}")
    rep.say(f"left translation map x -> L_x injective: {'yes' if inj.left_map_injective else 'no'}")
    rep.say(f"right translation map x -> R_x injective: {'yes' if inj.right_map_injective else 'no'}")
    rep.say(f"canonical map injective: {'yes' if inj.canonical_injective else 'no'}")
    rep.check("degeneracy.side-injectivity", inj.consistent,
              None if inj.consistent else {"S": [list(r) for r in S.table]})
    return rep


def _read_hom(path) -> dict:
    obj = json.loads(Path(path).read_text())
    if isinstance(obj, list):
        obj = {"map": obj}
    if not isinstance(obj, dict) or not isinstance(obj.get("map"), list):
        raise ValueError("hom file must be a JSON array of images or an object with a 'map' array")
    return obj


def cmd_extend(args) -> Report:
    rep = Report("extend")
    for p in (args.src, args.dst, args.hom):
        rep.add_input(p)
    S, T = read_sgp(args.src), read_sgp(args.dst)
    hom = _read_hom(args.hom)
    f = [int(v) for v in hom["map"]]
    rep.params = {"mode": args.mode, "max_hull": args.max_hull}
    HS = hull(S)
    if args.mode == "sharp":
        HT = hull(T)
        if hom.get("into", "hull") == "elements":
            can = HT.canonical_indices()
            f = [can[v] for v in f]
        res = extend_sharp(S, T, f, HS, HT, args.max_hull)
    else:
        M = as_monoid(T)
        if M is None:
            raise PreconditionFailed("flat mode needs a monoid target; dst has no identity")
        res = extend_flat(S, M, f, HS, args.max_hull)
    rep.results = {"f": f, **res.to_dict()}
    label = "f#" if args.mode == "sharp" else "f_flat"
    rep.say(f"{label} = {_fmt_map(res.map)}")
    for k, v in res.checks.items():
        rep.say(f"  {k}: {'ok' if v else 'FAILED'}")
    if res.uniqueness_checked:
        rep.say(f"  uniqueness search: {res.solutions_found} solution(s) among monoid homs "
                f"restricting to f")
    elif res.note:
        rep.say(f"  {res.note}")
    if args.mode == "sharp" and S == T and list(res.map) == list(range(len(HS))):
        rep.say("  extension is the identity")
    rep.check(f"extension.{args.mode}-exists-unique", all(res.checks.values()))
    return rep


def _load_alg_obj(path) -> dict:
    return parse_alg_json(Path(path).read_text())


def cmd_alg(args) -> Report:
    rep = Report(f"alg {args.sub}")
    rep.add_input(args.file)
    obj = _load_alg_obj(args.file)
    if args.sub == "comult":
        if "comul" not in obj:
            raise AlgebraError("file has no 'comul' key; not a coalgebra")
        C = coalgebra_from_dict(obj)
        CM = comultiplier_monoid(C)
        inner = {inner_comultiplier(C, f) for f in C.covectors}
        dr = duality_report(C)
        rep.results = {"comultipliers": CM.to_dict(), "inner_count": len(inner), "duality": dr.to_dict()}
        rep.say(_pair_summary(len(CM), len(inner), "comultiplier"))
        rep.say("transpose onto Mult(dual algebra): " + ("isomorphism" if dr.transpose_is_isomorphism else "NOT an isomorphism"))
        rep.say("swapped transpose onto Mult(opposite dual): "
                + ("anti-isomorphism" if dr.swapped_transpose_is_anti_isomorphism else "NOT an anti-isomorphism"))
        rep.check("coalgebra.transpose-duality", dr.ok, None if dr.ok else {"coalg": obj})
        return rep
    A = algebra_from_dict(obj)
    if args.sub == "mult":
        M = multiplier_monoid(A)
        inner = {inner_multiplier(A, v) for v in A.vectors}
        rep.results = {"multipliers": M.to_dict(), "inner_count": len(inner)}
        rep.say(_pair_summary(len(M), len(inner), "multiplier"))
    elif args.sub == "conv":
        C = convolution_semigroup(A)
        d = degeneracy_report(C)
        rep.results = {"table": [list(r) for r in C.table], "degeneracy": d.to_dict()}
        rep.say(f"convolution semigroup on {C.n} vectors; non-degenerate: {'yes' if d.nondegenerate else 'no'}")
        if C.n <= 16:
            for row in C.table:
                rep.say("  " + " ".join(f"{v:>3}" for v in row))
    else:
        r = concretization(A)
        rep.results = r.to_dict()
        rep.say(r.summary())
        rep.check("linear.concretization-hom", r.monoid_hom)
    return rep


def _pair_summary(total: int, inner: int, kind: str) -> str:
    if inner == total:
        return f"{total} pairs, all inner"
    return f"{total} {kind} pairs ({inner} inner)"


def cmd_census(args) -> Report:
    rep = Report("census")
    rep.params = {"max_order": args.max_order, "sample_every": args.sample_every, "seed": args.seed,
                  "reduce_iso": args.reduce_iso}
    records = (census_record(S) for S in census_stream(args.max_order, args.sample_every, args.seed,
                                                       reduce_iso=args.reduce_iso))
    out = open(args.out, "w", newline="") if args.out else sys.stdout
    try:
        counts: dict = {}

        def counted():
            for r in records:
                counts[r.semigroup.n] = counts.get(r.semigroup.n, 0) + 1
                yield r

        write_csv(counted(), out)
    finally:
        if args.out:
            out.close()
    rep.results = {"records_per_order": counts}
    if args.out:
        rep.say(f"wrote {sum(counts.values())} records to {args.out}")
    return rep


def cmd_check_paper(args) -> Report:
    rep = Report("check-paper")
    ctx = chk.Context()
    if args.scope in ("linear", "all"):
        ctx = chk.load_fleet(args.fleet)
        for a in ctx.algebras + ctx.coalgebras:
            rep.add_input(Path(args.fleet) / a["name"])
    ctx.max_order, ctx.sample_every, ctx.seed, ctx.max_hull = (
        args.max_order, args.sample_every, args.seed, args.max_hull)
    rep.params = {"scope": args.scope, **ctx.params()}

    def progress(r):
        if not args.json:
            mark = "PASS" if r.passed else "FAIL"
            extra = "" if r.passed else f"  witness: {json.dumps(r.witness)} {r.detail}"
            print(f"{mark}  {r.statement}  ({r.instances} instances, {r.seconds:.1f}s){extra}", flush=True)

    results = chk.run_checks(args.scope, ctx, progress)
    rep.checks = [r.to_dict() for r in results]
    npass = sum(r.passed for r in results)
    rep.results = {"passed": npass, "total": len(results)}
    rep.say(f"{npass}/{len(results)} statements pass")
    return rep


def cmd_verify_report(args) -> Report:
    """Re-parse a JSON report and re-derive each check's flag from its witness."""
    rep = Report("verify-report")
    rep.add_input(args.report)
    data = json.loads(Path(args.report).read_text())
    ctx = None
    if args.rerun:
        params = data.get("params", {})
        ctx = chk.load_fleet(args.fleet) if params.get("scope", "set") != "set" else chk.Context()
        for k in ("max_order", "sample_every", "seed", "max_hull"):
            if k in params:
                setattr(ctx, k, params[k])
    mismatches = []
    for entry in data.get("checks", []):
        if entry["statement"] not in chk.BY_ID:
            continue
        again = chk.recheck(entry, ctx)
        if again != (entry["status"] == "pass"):
            mismatches.append(entry["statement"])
    rep.results = {"rechecked": len(data.get("checks", [])), "mismatches": mismatches}
    rep.check("report.round-trip", not mismatches, {"statements": mismatches} if mismatches else None)
    rep.say("all flags reproduced" if not mismatches else f"flags differ for: {', '.join(mismatches)}")
    return rep


# --- argument parsing --------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="multhull", description="Translational hulls and multiplier monoids.")
    sub = ap.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--json", action="store_true", help="print the JSON report instead of text")
        return p

    p = common(sub.add_parser("hull", help="translational hull of a .sgp semigroup"))
    p.add_argument("file")
    p.set_defaults(func=cmd_hull)

    p = common(sub.add_parser("props", help="degeneracy and injectivity report"))
    p.add_argument("file")
    p.set_defaults(func=cmd_props)

    p = common(sub.add_parser("extend", help="extend a hom along the canonical map"))
    p.add_argument("src")
    p.add_argument("dst")
    p.add_argument("hom", help="JSON image array, or {\"map\": [...], \"into\": \"hull\"|\"elements\"}")
    p.add_argument("--mode", choices=("sharp", "flat"), default="sharp")
    p.add_argument("--max-hull", type=int, default=DEFAULT_MAX_HULL)
    p.set_defaults(func=cmd_extend)

    p = common(sub.add_parser("alg", help="linear computations on a .alg file"))
    p.add_argument("file")
    p.add_argument("sub", choices=("mult", "conv", "concretize", "comult"))
    p.set_defaults(func=cmd_alg)

    p = common(sub.add_parser("census", help="CSV census of semigroups up to a given order"))
    p.add_argument("--max-order", type=int, default=3)
    p.add_argument("--sample-every", type=int, default=25)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--reduce-iso", action="store_true")
    p.add_argument("--out", help="CSV path (default: stdout)")
    p.set_defaults(func=cmd_census)

    p = common(sub.add_parser("check-paper", help="run every property suite"))
    p.add_argument("--scope", choices=chk.SCOPES, default="all")
    p.add_argument("--max-order", type=int, default=4)
    p.add_argument("--fleet", default=str(chk.default_fleet_dir()))
    p.add_argument("--sample-every", type=int, default=25)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--max-hull", type=int, default=DEFAULT_MAX_HULL)
    p.set_defaults(func=cmd_check_paper)

    p = common(sub.add_parser("verify-report", help="re-verify the witnesses of a JSON report"))
    p.add_argument("report")
    p.add_argument("--rerun", action="store_true", help="also rerun checks that carry no witness")
    p.add_argument("--fleet", default=str(chk.default_fleet_dir()))
    p.set_defaults(func=cmd_verify_report)
    return ap


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        rep = args.func(args)
    except PreconditionFailed as e:
        print(f"precondition failed: {e}", file=sys.stderr)
        if getattr(args, "json", False):
            print(json.dumps({"command": args.command, "error": "precondition",
                              "which": e.which, "witness": e.witness}))
        return EXIT_PRECONDITION
    except (OrderTooLarge, BoundExceeded) as e:
        print(f"precondition failed: {e}", file=sys.stderr)
        return EXIT_PRECONDITION
    except InternalVerificationFailed as e:
        print(f"internal verification failed: {e}", file=sys.stderr)
        return EXIT_INTERNAL
    except (OSError, SemigroupError, AlgebraError, ValueError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_IO
    if args.json:
        print(json.dumps(rep.to_dict(), indent=1))
    else:
        for line in rep.lines:
            print(line)
    return EXIT_OK if rep.ok else EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
