"""Command-line front end.

Exit codes: 0 success, 1 a verification or check failed, 2 bad input.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import List, Optional, Sequence

from .geometry import (
    find_specialization_weight,
    gin,
    tangent_dimension,
    verify_specialization,
    weight_initial_ideal,
)
from .groebner import groebner_basis, initial_ideal
from .hilbert import (
    InadmissibleError,
    default_degree_bound,
    extend_hilbert,
    format_poly,
    gotzmann_bound,
    hilbert_function,
    lex_segment,
    parse_poly,
    regularity,
)
from .monomial import (
    MonomialIdeal,
    enumerate_borel_with_hf,
    enumerate_saturated_borel_with_hp,
    is_strongly_stable,
    saturate,
)
from .parsing import ParseError, canonical_generators, parse_ideal_document
from .ring import GREVLEX, MonomialOrder, RingContext

EXIT_OK, EXIT_FAIL, EXIT_INPUT = 0, 1, 2


class InputError(Exception):
    pass


def emit_report(report, fmt: str = "text", timing: bool = True) -> str:
    """Render a VerificationReport (or a list of them)."""
    reports = report if isinstance(report, list) else [report]
    if fmt == "json":
        data = [r.as_dict(timing) for r in reports]
        return json.dumps(data if isinstance(report, list) else data[0], indent=2, sort_keys=True)
    lines = []
    for r in reports:
        rows = [(c.name, _show(c.expected), _show(c.computed), "PASS" if c.passed else "FAIL") for c in r.checks]
        heads = ("check", "expected", "computed", "")
        widths = [max(len(h), *(len(row[i]) for row in rows)) if rows else len(h) for i, h in enumerate(heads)]
        status = "PASS" if r.passed else "FAIL"
        took = f" ({int(round(r.elapsed * 1000))} ms)" if timing else ""
        lines.append(f"case {r.case}: {status}{took}")
        lines.append("  " + "  ".join(h.ljust(w) for h, w in zip(heads, widths)).rstrip())
        for row in rows:
            lines.append("  " + "  ".join(v.ljust(w) for v, w in zip(row, widths)).rstrip())
        lines.append("")
    return "\n".join(lines).rstrip() + "\n"


def _show(v) -> str:
    if isinstance(v, str):
        return v
    return json.dumps(v, sort_keys=True)


# ---------- helpers ----------

def _read_document(path: str, args=None):
    try:
        text = sys.stdin.read() if path == "-" else open(path, encoding="utf-8").read()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None
    try:
        doc = parse_ideal_document(text)
    except ParseError as exc:
        raise InputError(f"{path}: {exc}") from None
    if args is not None:
        _order(args, doc)  # reject an order that does not fit the ring
    return doc


def _order(args, doc=None) -> MonomialOrder:
    order = GREVLEX
    if getattr(args, "order", None):
        try:
            order = MonomialOrder.parse(args.order)
        except ValueError as exc:
            raise InputError(str(exc)) from None
    elif doc is not None and doc.order is not None:
        order = doc.order
    if doc is not None and order.weight is not None and len(order.weight) != doc.ring.num_vars:
        raise InputError(f"weight {order} has {len(order.weight)} entries, ring has {doc.ring.num_vars} variables")
    return order


def _monomial(doc, what="input") -> MonomialIdeal:
    if not all(g.is_monomial() for g in doc.generators):
        raise InputError(f"{what} must be a monomial ideal")
    return doc.monomial_ideal()


def _ints(text: str, what: str) -> List[int]:
    try:
        return [int(a) for a in text.replace(",", " ").split()]
    except ValueError:
        raise InputError(f"bad {what} {text!r}") from None


def _ring(args) -> RingContext:
    names = args.ring.replace(",", " ").split()
    try:
        return RingContext(tuple(names))
    except ValueError as exc:
        raise InputError(str(exc)) from None


def _poly(args):
    if not getattr(args, "poly", None):
        return None
    try:
        return parse_poly(args.poly)
    except ValueError as exc:
        raise InputError(str(exc)) from None


# ---------- commands ----------
# Each returns (exit code, payload dict, text).

def cmd_hf(args):
    doc = _read_document(args.file, args)
    I = doc.ideal
    D = args.max_degree if args.max_degree is not None else max(g.degree() for g in I.generators) + 2
    hd = hilbert_function(I, D)
    payload = {"degree_bound": D, "ideal": hd.h_ideal, "quotient": hd.h_quotient}
    text = f"h_I   = {hd.h_ideal}\nh_S/I = {hd.h_quotient}"
    return EXIT_OK, payload, text


def cmd_hp(args):
    doc = _read_document(args.file, args)
    mono = initial_ideal(doc.ideal, GREVLEX)
    poly = mono.hilbert_polynomial()
    payload = {"hilbert_polynomial": format_poly(poly), "coefficients": [str(c) for c in poly]}
    return EXIT_OK, payload, format_poly(poly)


def _hf_arg(args) -> List[int]:
    if not args.hf:
        raise InputError("--hf is required")
    return _ints(args.hf, "Hilbert function")


def cmd_lex_segment(args):
    ring = _ring(args)
    h = _hf_arg(args)
    p = _poly(args)
    D = args.max_degree
    if p is not None:
        D = D if D is not None else default_degree_bound(ring, h, p)
        h = extend_hilbert(ring, h, p, max(D, len(h) - 1))
    L = lex_segment(ring, h, D)
    return EXIT_OK, {"ideal": L.generator_strings()}, str(L)


def cmd_regularity(args):
    doc = _read_document(args.file, args)
    I = doc.ideal
    if I.is_monomial():
        mono = I.as_monomial_ideal()
        ok, witness = is_strongly_stable(mono)
        if not ok:
            res = gin(I, GREVLEX, seed=args.seed, trials=args.trials)
            if not res.agreed:
                return EXIT_FAIL, {"error": "gin did not stabilize"}, "gin did not stabilize; try another --seed"
            reg = res.ideal.max_degree()
        else:
            reg = regularity(mono)
    else:
        res = gin(I, GREVLEX, seed=args.seed, trials=args.trials)
        if not res.agreed:
            return EXIT_FAIL, {"error": "gin did not stabilize"}, "gin did not stabilize; try another --seed"
        reg = res.ideal.max_degree()
    return EXIT_OK, {"regularity": reg}, str(reg)


def cmd_borel_check(args):
    doc = _read_document(args.file, args)
    mono = _monomial(doc)
    ok, witness = is_strongly_stable(mono)
    payload = {"strongly_stable": ok, "witness": mono.ring.format_monomial(witness) if witness else None}
    text = "strongly stable" if ok else f"not strongly stable: missing {payload['witness']}"
    return (EXIT_OK if ok else EXIT_FAIL), payload, text


def cmd_borel_enum(args):
    ring = _ring(args)
    p = _poly(args)
    if args.saturated:
        if p is None:
            raise InputError("--saturated needs --poly")
        R = args.max_degree
        if R is None:
            R = gotzmann_bound(p)
        res = enumerate_saturated_borel_with_hp(ring, p, R)
    else:
        h = _hf_arg(args)
        res = enumerate_borel_with_hf(ring, h, args.max_degree, p)
    ideals = [I.generator_strings() for I in res.ideals]
    payload = {"degree_bound": res.degree_bound, "complete": res.complete, "count": len(ideals), "ideals": ideals}
    text = "\n".join(str(I) for I in res.ideals) or "(none)"
    if not res.complete:
        text += "\n(search truncated)"
    return EXIT_OK, payload, text


def cmd_sat(args):
    doc = _read_document(args.file, args)
    J = saturate(_monomial(doc))
    return EXIT_OK, {"ideal": J.generator_strings()}, str(J)


def cmd_gb(args):
    doc = _read_document(args.file, args)
    order = _order(args, doc)
    gb = groebner_basis(doc.ideal, order)
    gens = [g.format(order) for g in canonical_generators(gb.elements, order)]
    return EXIT_OK, {"order": str(order), "basis": gens}, "\n".join(gens)


def cmd_initial(args):
    doc = _read_document(args.file, args)
    order = _order(args, doc)
    J = initial_ideal(doc.ideal, order)
    return EXIT_OK, {"order": str(order), "ideal": J.generator_strings()}, str(J)


def cmd_gin(args):
    doc = _read_document(args.file, args)
    order = _order(args, doc)
    res = gin(doc.ideal, order, seed=args.seed, trials=args.trials)
    payload = {
        "order": str(order), "seed": args.seed, "trials": args.trials, "agreed": res.agreed,
        "ideal": res.ideal.generator_strings() if res.agreed else None,
    }
    if not res.agreed:
        return EXIT_FAIL, payload, "trials disagree or result not strongly stable; try another --seed"
    return EXIT_OK, payload, str(res.ideal)


def cmd_tangent(args):
    doc = _read_document(args.file, args)
    I = doc.ideal
    if I.is_monomial():
        I = I.as_monomial_ideal()
    try:
        rep = tangent_dimension(I, args.syzygies)
    except ValueError as exc:
        raise InputError(str(exc)) from None
    return EXIT_OK, rep.as_dict(), str(rep.dimension)


def _target(args) -> MonomialIdeal:
    if not args.target:
        raise InputError("--target is required")
    return _monomial(_read_document(args.target), "target")


def cmd_specialize(args):
    doc = _read_document(args.file, args)
    target = _target(args)
    if not args.weight:
        raise InputError("--weight is required")
    w = _ints(args.weight, "weight vector")
    if len(w) != doc.ring.num_vars:
        raise InputError("weight vector length does not match the ring")
    check = verify_specialization(doc.ideal, target, w)
    limit = weight_initial_ideal(doc.ideal, w)
    payload = {
        "weight": w, "limit": limit.generator_strings(), "initial_matches": check.initial_matches,
        "hilbert_matches": check.hilbert_matches, "tangent_source": check.tangent_source,
        "tangent_target": check.tangent_target, "verified": check.ok,
    }
    text = f"limit {limit}\n" + ("verified" if check.ok else "not verified")
    return (EXIT_OK if check.ok else EXIT_FAIL), payload, text


def cmd_find_weight(args):
    doc = _read_document(args.file, args)
    target = _target(args)
    try:
        w = find_specialization_weight(doc.ideal, target, args.max_entry)
    except ValueError as exc:
        return EXIT_FAIL, {"weight": None, "error": str(exc)}, str(exc)
    if w is None:
        return EXIT_FAIL, {"weight": None}, f"no weight with entries <= {args.max_entry}"
    return EXIT_OK, {"weight": list(w.weights)}, str(w)


def cmd_verify_paper(args):
    from .scenarios import builtin_cases, get_case, run_case

    try:
        cases = [get_case(args.case)] if args.case else builtin_cases()
    except KeyError as exc:
        raise InputError(exc.args[0]) from None
    reports = [run_case(c, seed=args.seed, samples=args.samples, gin_trials=args.trials) for c in cases]
    ok = all(r.passed for r in reports)
    report = reports[0] if args.case else reports
    return (EXIT_OK if ok else EXIT_FAIL), report, None


COMMANDS = {
    "hf": (cmd_hf, "Hilbert function of an ideal"),
    "hp": (cmd_hp, "Hilbert polynomial of S/I"),
    "lex-segment": (cmd_lex_segment, "lex-segment ideal of a Hilbert function"),
    "regularity": (cmd_regularity, "Castelnuovo-Mumford regularity"),
    "borel-check": (cmd_borel_check, "test strong stability of a monomial ideal"),
    "borel-enum": (cmd_borel_enum, "enumerate Borel-fixed ideals"),
    "sat": (cmd_sat, "saturation of a monomial ideal"),
    "gb": (cmd_gb, "reduced Groebner basis"),
    "initial": (cmd_initial, "initial ideal"),
    "gin": (cmd_gin, "generic initial ideal"),
    "tangent": (cmd_tangent, "dimension of Hom(I, S/I)_0"),
    "specialize": (cmd_specialize, "verify a weight degeneration"),
    "find-weight": (cmd_find_weight, "search for a degenerating weight vector"),
    "verify-paper": (cmd_verify_paper, "run the built-in verification cases"),
}

FILE_COMMANDS = {"hf", "hp", "regularity", "borel-check", "sat", "gb", "initial", "gin", "tangent",
                 "specialize", "find-weight"}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--order", help="lex, grevlex or weight:w0,w1,...[/lex|/grevlex]")
    common.add_argument("--max-degree", type=int, help="degree bound")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--trials", type=int, default=3)
    common.add_argument("--format", choices=("text", "json"), default="text")

    parser = argparse.ArgumentParser(prog="sghilb", description="Standard-graded Hilbert scheme computations.")
    sub = parser.add_subparsers(dest="command", required=True)
    for name, (_, help_text) in COMMANDS.items():
        sp = sub.add_parser(name, parents=[common], help=help_text, description=help_text)
        if name in FILE_COMMANDS:
            sp.add_argument("file", help="ideal document ('-' for stdin)")
        if name in ("lex-segment", "borel-enum"):
            sp.add_argument("--ring", default="x y z t", help="variable names")
            sp.add_argument("--hf", help="dim I_d for d = 0, 1, ... (comma separated)")
            sp.add_argument("--poly", help="Hilbert polynomial of S/I, e.g. 4d or '3d + 1'")
        if name == "borel-enum":
            sp.add_argument("--saturated", action="store_true", help="saturated ideals with --poly")
        if name == "tangent":
            sp.add_argument("--syzygies", choices=("taylor", "schreyer"))
        if name in ("specialize", "find-weight"):
            sp.add_argument("--target", help="document with the monomial target ideal")
        if name == "specialize":
            sp.add_argument("--weight", help="weight vector, e.g. 5,1,1,1")
        if name == "find-weight":
            sp.add_argument("--max-entry", type=int, default=6)
        if name == "verify-paper":
            sp.add_argument("--case", help="run a single case")
            sp.add_argument("--samples", type=int, default=1, help="family members per family")
            sp.add_argument("--no-timing", action="store_true", help="report elapsed_ms as 0")
    return parser


def run_command(argv: Optional[Sequence[str]] = None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    if args.trials < 2:
        print("error: --trials must be at least 2", file=err)
        return EXIT_INPUT
    func = COMMANDS[args.command][0]
    try:
        code, payload, text = func(args)
    except (InputError, InadmissibleError) as exc:
        print(f"error: {exc}", file=err)
        return EXIT_INPUT
    except ValueError as exc:
        print(f"error: {exc}", file=err)
        return EXIT_INPUT
    if args.command == "verify-paper":
        out.write(emit_report(payload, args.format, timing=not args.no_timing))
        return code
    if args.format == "json":
        out.write(json.dumps({"command": args.command, **payload}, indent=2, sort_keys=True) + "\n")
    else:
        out.write(text.rstrip() + "\n")
    return code


def main() -> None:
    sys.exit(run_command())


if __name__ == "__main__":
    main()
