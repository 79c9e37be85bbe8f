"""Command line front end.

    hilbertgen hilbert exAt_i.alg --degree 3 --json
    hilbertgen dual thm_ex_c
    hilbertgen conjecture anick --n 3 --r 4 --degree 6
    hilbertgen corpus run thm_ex_b_dual --degree 4

A file argument that does not exist on disk is looked up in the corpus.
Exit status: 0 ok, 1 parse or validation error, 2 a --strict conjecture
check disagreed where the closed form is proven.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from math import comb

from . import conjectures as cj
from .fileformat import ParseError, parse_presentation, serialize_presentation
from .fp_linalg import DEFAULT_PRIME, PrimeField
from .generic import corpus_entry, corpus_text, corpus, generic_estimate
from .hilbert import algebra_type, degree3_span_test, hilbert_series, lie_series, strongly_free_test
from .koszul import koszul_dual
from .presentation import Flavor
from .series import (AlgebraType, PowerSeries, bracket, exp_op, froberg_series, log_op,
                     quadratic_inverse)

KEY_ORDER = ("series", "slice_dims", "type", "verdicts")


class UsageError(Exception):
    pass


def _ints(text: str) -> list[int]:
    try:
        return [int(x) for x in text.replace(" ", "").split(",") if x]
    except ValueError:
        raise UsageError(f"expected a comma separated integer list, got {text!r}") from None


def _load(args):
    path = args.file
    if os.path.exists(path):
        with open(path) as fh:
            return parse_presentation(fh.read(), args.prime)
    name = os.path.basename(path)
    name = name[:-4] if name.endswith(".alg") else name
    try:
        return corpus_entry(name, args.prime)
    except KeyError:
        raise UsageError(f"{path}: no such file or corpus entry") from None


def _field(args) -> PrimeField:
    return PrimeField(args.prime or DEFAULT_PRIME)


def _need_degree(args):
    if args.degree is None:
        raise UsageError("--degree is required for this command")
    return args.degree


def _ordered(report: dict) -> dict:
    out = {k: report[k] for k in KEY_ORDER if k in report}
    out.update((k, v) for k, v in report.items() if k not in out)
    return out


# ---------------------------------------------------------------------------
# commands; each returns (report dict, text, exit code)


def cmd_hilbert(args):
    p = _load(args)
    D = _need_degree(args)
    res = hilbert_series(p, D)
    report = {"series": res.series.as_strings(), "slice_dims": list(res.slice_dims)}
    text = [f"A(z) = {res.series}", f"ideal slice dims: {list(res.slice_dims)}"]
    if p.flavor is Flavor.LIE:
        try:
            ls = lie_series(p, D)
            report["lie_series"] = ls.as_strings()
            text.append(f"L(z) = {ls}")
        except ValueError as exc:
            text.append(f"no Lie series: {exc}")
    return report, "\n".join(text), 0


def cmd_type(args):
    p = _load(args)
    rep = algebra_type(p, args.degree)
    report = {"type": rep.type.to_json(), "minimal": rep.minimal, "dropped": list(rep.dropped)}
    text = f"type {rep.type}" + ("" if rep.minimal else
                                 f" (dropped redundant relations {list(rep.dropped)})")
    return report, text, 0


def cmd_dual(args):
    p = _load(args)
    d = koszul_dual(p)
    text = serialize_presentation(d).rstrip("\n")
    return {"flavor": d.flavor.value, "presentation": text}, text, 0


def cmd_strongfree(args):
    p = _load(args)
    D = _need_degree(args)
    ok = strongly_free_test(p, D)
    return ({"strongly_free": ok, "degree": D},
            f"strongly free through degree {D}: {'yes' if ok else 'no'}", 0)


def cmd_span3(args):
    p = _load(args)
    res = degree3_span_test(p)
    report = {"independent": res.independent, "spanning": res.spanning, "rank": res.rank}
    text = f"rank {res.rank}; independent: {res.independent}; spanning: {res.spanning}"
    return report, text, 0


def _type_from_args(args) -> AlgebraType:
    if args.n is None:
        raise UsageError("--n is required")
    if args.degrees:
        return AlgebraType(args.n, tuple(_ints(args.degrees)))
    if args.r is None:
        raise UsageError("give --r or --degrees")
    return AlgebraType.quadratic(args.n, args.r)


def cmd_generic(args):
    t = _type_from_args(args)
    D = _need_degree(args)
    rep = generic_estimate(args.flavor, t, D, args.samples, args.seed, _field(args))
    report = rep.to_json()
    text = [f"{rep.flavor.value} type {t}: estimate {rep.estimate}"]
    for seed, s, st in zip(rep.seeds, rep.per_sample, rep.sample_types):
        text.append(f"  seed {seed}: {s}   (type {st})")
    if not rep.all_unanimous:
        bad = [d for d, u in enumerate(rep.unanimous) if not u]
        text.append(f"samples disagree in degrees {bad}; rerun with more --samples or another --seed")
    return report, "\n".join(text), 0


def _sweep_params(kind: str, args) -> list[tuple[int, int]]:
    if args.n is not None and (args.r is not None or args.degrees):
        return [(args.n, args.r)]
    top = 6 if args.long else args.max_n
    ns = [args.n] if args.n is not None else range(2, top + 1)
    out = []
    for n in ns:
        rmax = comb(n + 1, 2) if kind == "lie" else n * n
        out += [(n, r) for r in range(1, rmax + 1)]
    return out


def cmd_conjecture(args):
    D = _need_degree(args)
    f = _field(args)
    verdicts = []
    if args.which == "froberg":
        if args.n is None or not (args.degrees or args.r is not None):
            raise UsageError("froberg needs --n and --degrees (or --r)")
        verdicts.append(cj.check_froberg(_type_from_args(args), D, args.samples, args.seed, f))
    else:
        check = {"anick": cj.check_anick_quadratic, "lie": cj.check_lie,
                 "koszul": cj.check_genkos}[args.which]
        for n, r in _sweep_params(args.which, args):
            verdicts.append(check(n, r, D, args.samples, args.seed, f))
    lines = []
    for v in verdicts:
        regime = "proven" if v.proven_regime else "conjectural comparison"
        status = "agree" if v.agrees else "MISMATCH"
        t = v.params["type"]
        head = f"{v.id} n={t['n']} degrees={t['degrees']}: {status} ({regime})"
        if v.id == "koszul":
            head += f"; predicted Koszul: {v.details['predicted_koszul']}, passes: {v.details['passes']}"
        else:
            head += f"\n  expected {v.expected}\n  observed {v.observed}"
        lines.append(head)
    code = 2 if args.strict and any(v.violation for v in verdicts) else 0
    return {"verdicts": [v.to_json() for v in verdicts]}, "\n".join(lines), code


def cmd_series(args):
    D = _need_degree(args)
    if args.which == "froberg":
        s = froberg_series(_type_from_args(args), D)
    elif args.which == "anick-inv":
        if args.n is None or args.r is None:
            raise UsageError("anick-inv needs --n and --r")
        s = quadratic_inverse(args.n, args.r, D)
        if args.bracket:
            s = bracket(s)
    else:
        if not args.coeffs:
            raise UsageError(f"{args.which} needs --coeffs")
        src = PowerSeries(_ints(args.coeffs) + [0] * (D + 1), D)
        s = {"exp": exp_op, "log": log_op, "bracket": bracket}[args.which](src)
    return {"series": s.as_strings()}, str(s), 0


def cmd_corpus(args):
    if args.action == "list":
        entries = corpus(args.prime)
        report = {"entries": [{"name": k, "flavor": p.flavor.value, "n": p.n, "r": p.r}
                              for k, p in entries.items()]}
        text = "\n".join(f"{k:20s} {p.flavor.value:15s} n={p.n} r={p.r}" for k, p in entries.items())
        return report, text, 0
    if not args.name:
        raise UsageError("corpus run needs a NAME")
    if args.action == "show":
        try:
            text = corpus_text(args.name).rstrip("\n")
        except KeyError:
            raise UsageError(f"no corpus entry {args.name!r}") from None
        return {"presentation": text}, text, 0
    args.file = args.name
    return cmd_hilbert(args)


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--degree", "-D", type=int, help="degree bound D")
    common.add_argument("--prime", type=int, help=f"field size (default {DEFAULT_PRIME})")
    common.add_argument("--samples", type=int, default=3)
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--json", action="store_true", help="print a JSON report")
    common.add_argument("--out", help="write the report here instead of stdout")
    common.add_argument("--strict", action="store_true",
                        help="exit 2 when a proven-regime check disagrees")

    typed = argparse.ArgumentParser(add_help=False)
    typed.add_argument("--n", type=int)
    typed.add_argument("--r", type=int)
    typed.add_argument("--degrees", help="relation degrees, e.g. 2,2,3")

    ap = argparse.ArgumentParser(prog="hilbertgen", description="Hilbert series of generic algebras")
    sub = ap.add_subparsers(dest="command", required=True)
    for name, fn, hlp in [("hilbert", cmd_hilbert, "Hilbert series and ideal slice dimensions"),
                          ("type", cmd_type, "type after dropping redundant relations"),
                          ("dual", cmd_dual, "Koszul dual presentation"),
                          ("strongfree", cmd_strongfree, "check A(z) p_t(z) = 1 through D"),
                          ("span3", cmd_span3, "degree-3 independence / spanning")]:
        sp = sub.add_parser(name, parents=[common], help=hlp)
        sp.add_argument("file", help="presentation file or corpus name")
        sp.set_defaults(fn=fn)

    sp = sub.add_parser("generic", parents=[common, typed], help="sampled generic series")
    sp.add_argument("--flavor", default="noncommutative")
    sp.set_defaults(fn=cmd_generic)

    sp = sub.add_parser("conjecture", parents=[common, typed], help="compare with closed forms")
    sp.add_argument("which", choices=["froberg", "anick", "lie", "koszul"])
    sp.add_argument("--max-n", type=int, default=4, help="sweep bound when --n/--r are omitted")
    sp.add_argument("--long", action="store_true", help="sweep up to n = 6 (slow)")
    sp.set_defaults(fn=cmd_conjecture)

    sp = sub.add_parser("series", parents=[common, typed], help="closed-form series")
    sp.add_argument("which", choices=["froberg", "anick-inv", "exp", "log", "bracket"])
    sp.add_argument("--coeffs", help="input coefficients for exp/log/bracket")
    sp.add_argument("--bracket", action="store_true", help="bracket the anick-inv series")
    sp.set_defaults(fn=cmd_series)

    sp = sub.add_parser("corpus", parents=[common], help="named example presentations")
    sp.add_argument("action", choices=["list", "run", "show"])
    sp.add_argument("name", nargs="?")
    sp.set_defaults(fn=cmd_corpus)
    return ap


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        report, text, code = args.fn(args)
    except (ParseError, UsageError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    out = json.dumps(_ordered(report), indent=2) if args.json else text
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(out + "\n")
    else:
        print(out)
    return code


if __name__ == "__main__":
    sys.exit(main())
