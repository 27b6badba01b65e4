"""Command-line front end.

Every subcommand writes JSON lines to stdout, one object per check with keys
name, status, expected, actual, ms.  Exit status is 0 when every check
passes, 1 when one fails, 2 on bad usage.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
from typing import Sequence

from . import clifford, groups, hecke, heis, verify
from .exact import as_number, format_scalar, parse_scalar
from .families import ALIASES, FamilyId, family_report, resolve
from .pairing import classical_fourier, gram_to_json

SEED_ENV = "ALMOST_FOURIER_SEED"


class UsageError(Exception):
    pass


class Writer:
    """Single sink for report lines; remembers whether anything failed."""

    def __init__(self, stream=None):
        self.stream = stream or sys.stdout
        self.failed = 0
        self.passed = 0

    def record(self, rec: verify.Record):
        if rec.passed:
            self.passed += 1
        elif rec.status == "fail":
            self.failed += 1
        self.stream.write(json.dumps(rec.to_json()) + "\n")
        self.stream.flush()

    def check(self, name, ok, expected="", actual=""):
        self.record(verify.Record(name, "pass" if ok else "fail", verify._s(expected), verify._s(actual), 0.0))

    def run(self, checks):
        for rec in verify.run_checks(checks):
            self.record(rec)


def _dump(path: str, data) -> None:
    with open(path, "w") as fh:
        json.dump(data, fh, indent=2)
        fh.write("\n")


def _seed(args) -> int:
    if args.seed is not None:
        return args.seed
    env = os.environ.get(SEED_ENV)
    if env:
        try:
            return int(env, 0)
        except ValueError:
            raise UsageError(f"{SEED_ENV} must be an integer, got {env!r}") from None
    return verify.DEFAULT_SEED


# -- subcommands ----------------------------------------------------------------

def cmd_fourier(args, out: Writer):
    if args.file:
        g, _ = groups.load_group(args.file)
    elif args.group in groups.STANDARD_GROUPS:
        g = groups.STANDARD_GROUPS[args.group]()
    else:
        raise UsageError(f"unknown group {args.group!r}; choose from {', '.join(groups.STANDARD_GROUPS)}")
    gs = classical_fourier(g)
    m = gs.matrix
    out.check(f"fourier.{g.name}.hermitian", gs.is_hermitian(), True, gs.is_hermitian())
    sq = m @ m
    out.check(f"fourier.{g.name}.square_is_identity", sq == type(m).identity(m.nrows), "I",
              sq.to_strings())
    if args.csv:
        gs.to_csv(args.csv)
    if args.json:
        _dump(args.json, gram_to_json(gs))


def cmd_heis(args, out: Writer):
    try:
        h = heis.build(args.n)
    except heis.SizeLimit as exc:
        raise UsageError(str(exc)) from None
    if args.spectrum:
        if args.n > 2:
            raise UsageError("--spectrum supports n <= 2")
        rep = heis.spectrum_report(args.n)
        out.check(f"heis.n{args.n}.closed_form", rep.matches_closed_form, 0, len(rep.mismatches))
        out.check(f"heis.n{args.n}.square_block_formula", rep.square_matches_blocks, True,
                  rep.square_matches_blocks)
        out.check(f"heis.n{args.n}.min_poly_divides_124", rep.min_poly_ok, True, rep.min_poly_ok)
        out.check(f"heis.n{args.n}.det_nonzero", rep.determinant != 0, "nonzero",
                  format_scalar(rep.determinant))
        out.check(f"heis.n{args.n}.char_poly_square", rep.residual is None, "(t-1)^a(t-2)^b(t-4)^c",
                  rep.factored)
        print(f"char_poly(M^2) = {rep.factored}", file=sys.stderr)
        if args.json:
            _dump(args.json, rep.to_json())
    else:
        bad = heis.sampled_closed_form_check(args.n, args.samples, _seed(args))
        out.check(f"heis.n{args.n}.closed_form_sampled", not bad, 0, len(bad))
        if args.json:
            _dump(args.json, {"n": args.n, "samples": args.samples, "mismatches": bad})
    out.check(f"heis.n{args.n}.z_count", len(h.zindex) == heis.z_count(args.n), heis.z_count(args.n),
              len(h.zindex))


def cmd_family(args, out: Writer):
    try:
        fid = resolve(args.id)
    except (KeyError, ValueError):
        names = [f.value for f in FamilyId] + list(ALIASES)
        raise UsageError(f"unknown family {args.id!r}; choose from {', '.join(names)}") from None
    rep = family_report(fid)
    for c in rep.checks:
        out.check(f"family.{fid.value}.{c.name}", c.ok, c.expected, c.actual)
    for note in rep.notes:
        print(f"note: {note}", file=sys.stderr)
    if args.csv:
        rep.space.to_csv(args.csv)
    if args.json:
        _dump(args.json, rep.to_json())


HECKE_CHECKS = ["relations", "omega", "restrict", "decompose", "vrc"]


def cmd_hecke(args, out: Writer):
    seed = _seed(args)
    lam = None
    if args.lam is not None:
        try:
            lam = as_number(parse_scalar(args.lam))
        except ValueError:
            raise UsageError(f"bad lambda {args.lam!r}") from None
    try:
        if args.graph:
            g = hecke.load_wgraph(args.graph)
        else:
            g = hecke.wgraph(args.kind, args.n, lam)
    except hecke.BadParams as exc:
        raise UsageError(str(exc)) from None
    n = g.n
    m = hecke.module(g, check=False)
    selected = [args.check] if args.check else HECKE_CHECKS
    report = {"graph": g.to_json()}
    if "relations" in selected:
        bad = hecke.relation_failures(m)
        out.check(f"hecke.{g.kind}.n{n}.relations", not bad, "[]", bad)
        report["relations"] = bad
    if "omega" in selected:
        try:
            hecke.omega(g.kind, n, g.lam, m)
            ok, msg = True, "ok"
        except hecke.RelationFailure as exc:
            ok, msg = False, str(exc)
        out.check(f"hecke.{g.kind}.n{n}.omega", ok, "ok", msg)
    if "restrict" in selected:
        for i in g.generators:
            try:
                r = hecke.restrict(m, g, i, seed=seed)
                ok = r.stable and r.sub_matches and r.quotient_trivial and r.trace_law
                out.check(f"hecke.{g.kind}.n{n}.restrict.s{i}", ok, True, r.__dict__)
            except hecke.StabilityFailure as exc:
                out.check(f"hecke.{g.kind}.n{n}.restrict.s{i}", False, True, str(exc))
    if "decompose" in selected:
        r = hecke.decompose_d1(n, seed=seed)
        out.check(f"hecke.d1.n{n}.decompose", r.ok, (n + 1, n - 1), r.dims)
        report["decompose"] = {k: v for k, v in r.__dict__.items()}
    if "vrc" in selected:
        r = hecke.vrc_identities((n,), seed=seed)
        out.check("hecke.vrc.square_is_identity", r.square_is_identity, True, r.square_is_identity)
        out.check("hecke.vrc.matches_reduced_gram", r.matches_gram, True, r.F.to_strings())
        out.check("hecke.vrc.all", r.ok, True, r.ok)
        report["vrc"] = {"F": r.F.to_strings(), "notes": r.notes}
    if args.dump_graph:
        hecke.dump_wgraph(g, args.dump_graph)
    if args.json:
        _dump(args.json, report)


CLIFFORD_CHECKS = ["beta", "delta", "conj", "kernel", "all"]
SC_NAMES = {"SL": "SL", "Spin": "Spin", "Sp": "Symplectic", "Symplectic": "Symplectic"}


def cmd_clifford(args, out: Writer):
    seed = _seed(args)
    did = False
    if args.exceptional:
        did = True
        try:
            grp, label = args.exceptional.split(":", 1)
            row = clifford.exceptional_lookup(grp, label)
        except ValueError:
            raise UsageError("--exceptional expects GROUP:LABEL") from None
        except clifford.UnknownLabel as exc:
            raise UsageError(f"unknown orbit label {exc.args[0]}") from None
        print(json.dumps(row.__dict__))
    if args.list_exceptional:
        did = True
        for row in clifford.exceptional_rows():
            print(json.dumps(row.__dict__))
    if args.sc:
        did = True
        try:
            m = clifford.parse_datum(args.m or "")
        except clifford.CliffordError as exc:
            raise UsageError(str(exc)) from None
        val = clifford.simply_connected(SC_NAMES[args.sc], m)
        print(json.dumps({"type": SC_NAMES[args.sc], "m": m, "simply_connected": val}))
    if args.datum:
        did = True
        try:
            d = clifford.SpinDatum(clifford.parse_datum(args.datum))
        except clifford.CliffordError as exc:
            raise UsageError(str(exc)) from None
        import random
        rng = random.Random(seed)
        which = CLIFFORD_CHECKS[:-1] if args.check == "all" else [args.check]
        tag = f"clifford[{args.datum}]"
        if "beta" in which:
            r = clifford.beta_sample_check(args.samples, min(8, max(d.n, 1)), seed)
            out.check(f"{tag}.beta", r.ok, 0, r.checks[0]["actual"])
        if "delta" in which:
            if not d.odd:
                raise UsageError("delta check needs an odd index")
            r = clifford.delta_check(d)
            for c in r.checks:
                out.check(f"{tag}.delta.{c['name']}", c["ok"], c["expected"], c["actual"])
        if "conj" in which:
            for i in d.odd:
                r = clifford.conj_action_check(d, i, rng=rng)
                for c in r.checks:
                    out.check(f"{tag}.conj.i{i}.{c['name']}", c["ok"], c["expected"], c["actual"])
                if "sign" in r.data:
                    print(f"i={i}: lift sign {r.data['sign']:+d}", file=sys.stderr)
        if "kernel" in which:
            r = clifford.kernel_containment_check(d, rng)
            for c in r.checks:
                out.check(f"{tag}.kernel.{c['name']}", c["ok"], c["expected"], c["actual"])
    if not did:
        raise UsageError("clifford needs one of --datum, --sc, --exceptional, --list-exceptional")


def cmd_verify_all(args, out: Writer):
    out.run(verify.all_checks(seed=_seed(args)))
    print(f"{out.passed} passed, {out.failed} failed", file=sys.stderr)


# -- parser -----------------------------------------------------------------------

def _int(text: str) -> int:
    return int(text, 0)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=_int, default=None,
                        help=f"seed for sampled checks (default 0xC4A7, or ${SEED_ENV})")

    p = argparse.ArgumentParser(prog="almost-fourier", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    f = sub.add_parser("fourier", parents=[common], help="classical Fourier matrix of a finite group")
    f.add_argument("--group", default="S3", help="one of " + ", ".join(groups.STANDARD_GROUPS))
    f.add_argument("--file", help="group JSON file (multiplication table, optional characters)")
    f.add_argument("--csv")
    f.add_argument("--json")
    f.set_defaults(func=cmd_fourier)

    h = sub.add_parser("heis", parents=[common], help="Heisenberg family pairings")
    h.add_argument("--n", type=int, required=True)
    h.add_argument("--spectrum", action="store_true", help="full matrix, square and spectrum (n <= 2)")
    h.add_argument("--samples", type=int, default=200)
    h.add_argument("--json")
    h.set_defaults(func=cmd_heis)

    fam = sub.add_parser("family", parents=[common], help="tabulated continuous families")
    fam.add_argument("--id", required=True, help="F14, F15a, F15b, F112 (or F15_rsq1, F15_rsqm1)")
    fam.add_argument("--csv")
    fam.add_argument("--json")
    fam.set_defaults(func=cmd_family)

    hk = sub.add_parser("hecke", parents=[common], help="W-graph modules of affine Hecke algebras")
    hk.add_argument("--n", type=int, default=2)
    hk.add_argument("--kind", choices="abcd", default="a")
    hk.add_argument("--lambda", dest="lam", help="edge parameter of kind d, e.g. 2 or 3/2")
    hk.add_argument("--check", choices=HECKE_CHECKS)
    hk.add_argument("--graph", help="load the W-graph from JSON instead")
    hk.add_argument("--dump-graph", help="write the W-graph as JSON")
    hk.add_argument("--json")
    hk.set_defaults(func=cmd_hecke)

    c = sub.add_parser("clifford", parents=[common], help="spin lifts and simply-connectedness")
    c.add_argument("--datum", help='multiplicities "i:m_i,...", e.g. "1:1,3:1"')
    c.add_argument("--check", choices=CLIFFORD_CHECKS, default="all")
    c.add_argument("--samples", type=int, default=200)
    c.add_argument("--sc", choices=sorted(SC_NAMES))
    c.add_argument("--m", help='multiplicities for --sc, e.g. "1:3,3:3"')
    c.add_argument("--exceptional", help="GROUP:LABEL, e.g. F4:B_3 (label * for all other orbits)")
    c.add_argument("--list-exceptional", action="store_true")
    c.set_defaults(func=cmd_clifford)

    v = sub.add_parser("verify-all", parents=[common], help="run every golden and property check")
    v.set_defaults(func=cmd_verify_all)
    return p


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    out = Writer()
    try:
        args.func(args, out)
    except UsageError as exc:
        print(f"almost-fourier: error: {exc}", file=sys.stderr)
        return 2
    return 1 if out.failed else 0


if __name__ == "__main__":
    sys.exit(main())
