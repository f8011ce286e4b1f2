"""
Command-line front end.

Every subcommand takes one presentation source (``--file PATH`` or
``--builtin bii`` or ``--builtin gmn --m M --n N``) and words written as
whitespace-separated generator names, quoted as one argument.  ``e`` is the
empty word.

Exit status: 0 decided true / success, 1 decided false, 2 inconclusive at
the given bound, 3 usage or input error.  ``--machine`` prints one JSON object
with sorted keys, so identical inputs give byte-identical output.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import bii, conjugacy, divisibility, garside, gmn
from .words import ClassCeilingExceeded, Presentation, PresentationError, enumerate_class, parse_presentation

OK, FALSE, INCONCLUSIVE, ERROR = 0, 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # argparse would exit with status 2
        raise UsageError(message)


class Out:
    """Collects a result for either human or machine rendering."""

    def __init__(self, machine: bool):
        self.machine = machine
        self.data: dict = {}
        self.lines: list[str] = []

    def put(self, key: str, value, text: str | None = None) -> None:
        self.data[key] = value
        if text is not None:
            self.lines.append(text)

    def say(self, text: str) -> None:
        self.lines.append(text)

    def emit(self, status: int) -> int:
        if self.machine:
            self.data["exit"] = status
            print(json.dumps(self.data, sort_keys=True))
        else:
            for line in self.lines:
                print(line)
        return status


# -- presentation loading ----------------------------------------------------

def _load(args) -> tuple[Presentation, gmn.GmnContext | None]:
    sources = [x for x in (args.file, args.builtin) if x]
    if len(sources) != 1:
        raise UsageError("give exactly one of --file or --builtin")
    ctx = None
    if args.file:
        p = parse_presentation(Path(args.file).read_text(encoding="utf-8"), ceiling=args.ceiling)
    elif args.builtin == "bii":
        p = bii.bii_presentation()
    else:
        if args.m is None or args.n is None:
            raise UsageError("--builtin gmn needs --m and --n")
        try:
            ctx = gmn.gmn_presentation(args.m, args.n)
        except ValueError as exc:
            raise UsageError(str(exc)) from None
        p = ctx.p
    p.ceiling = args.ceiling
    if args.cache and Path(args.cache).exists():
        p.load_cache(args.cache)
    return p, ctx


def _default_delta(args, p: Presentation, ctx) -> str:
    if getattr(args, "delta", None):
        return p.word(args.delta)
    if ctx is not None:
        return ctx.delta
    if args.builtin == "bii":
        return bii.delta_k(1, p)
    raise UsageError("--delta is required for this presentation")


def _w(p: Presentation, w: str) -> str:
    return p.show(w)


# -- subcommands ------------------------------------------------------------

def cmd_eq(args, p, ctx, out):
    u, v = p.word(args.u), p.word(args.v)
    res = enumerate_class(p, u).canonical == enumerate_class(p, v).canonical if len(u) == len(v) else False
    out.put("equal", res, "equal" if res else "not equal")
    return OK if res else FALSE


def cmd_class(args, p, ctx, out):
    cls = enumerate_class(p, p.word(args.w))
    members = [_w(p, m) for m in sorted(cls.members)]
    out.put("canonical", _w(p, cls.canonical), f"canonical: {_w(p, cls.canonical)}")
    out.put("size", len(members), f"size: {len(members)}")
    out.put("members", members)
    for m in members:
        out.say("  " + m)
    return OK


def cmd_div(args, p, ctx, out):
    u, v = p.word(args.u), p.word(args.v)
    q = divisibility.left_divides(p, u, v) if args.side == "left" else divisibility.right_divides(p, u, v)
    out.put("divides", q is not None)
    out.put("quotient", None if q is None else _w(p, q))
    out.say("does not divide" if q is None else f"divides; quotient {_w(p, q)}")
    return OK if q is not None else FALSE


def cmd_mcm(args, p, ctx, out):
    J = [p.word(x) for x in args.J]
    res = divisibility.mcm_bounded(p, J, args.side, args.bound)
    items = [_w(p, c.canonical) for c in res.sorted()]
    out.put("bound", args.bound)
    out.put("minimal", items, f"minimal common {args.side} multiples up to length {args.bound}:")
    for x in items:
        out.say("  " + x)
    return OK


def cmd_mcd(args, p, ctx, out):
    J = [p.word(x) for x in args.J]
    res = sorted(divisibility.mcd(p, J, args.side), key=lambda c: (c.length, c.canonical))
    items = [_w(p, c.canonical) for c in res]
    out.put("maximal", items, "maximal common divisors:")
    for x in items:
        out.say("  " + x)
    return OK


def cmd_lcm_failure(args, p, ctx, out):
    res = divisibility.lcm_failure_witness(p, args.bound, args.side)
    if res is None:
        out.put("witness", None, f"no letter pair with two minimal common multiples up to length {args.bound}")
        return INCONCLUSIVE
    out.put("pair", [_w(p, x) for x in res.pair], "pair: " + ", ".join(_w(p, x) for x in res.pair))
    out.put("multiples", [_w(p, x) for x in res.multiples])
    for x in res.multiples:
        out.say("  " + _w(p, x))
    return OK


def _cert_out(p, cert, out):
    out.put("sigma", cert.sigma.show(p), f"sigma: {cert.sigma.show(p)}")
    if cert.quotients:
        out.put("quotients", {_w(p, s): _w(p, q) for s, q in cert.quotients})
        for s, q in cert.quotients:
            out.say(f"  {_w(p, s)} . {_w(p, q)}")


def cmd_qz(args, p, ctx, out):
    cert = garside.quasi_central_cert(p, p.word(args.d))
    out.put("quasi_central", cert is not None, "quasi-central" if cert else "not quasi-central")
    if cert:
        _cert_out(p, cert, out)
    return OK if cert else FALSE


def cmd_fund(args, p, ctx, out):
    cert = garside.fundamental_cert(p, p.word(args.d))
    out.put("fundamental", cert is not None, "fundamental" if cert else "not fundamental")
    if cert:
        _cert_out(p, cert, out)
    return OK if cert else FALSE


def cmd_garside(args, p, ctx, out):
    res = garside.garside_check(p, p.word(args.d))
    out.put("garside", res, "Garside" if res else "not Garside")
    return OK if res else FALSE


def cmd_minfund(args, p, ctx, out):
    try:
        res = garside.minimal_fundamental_check(p, p.word(args.d))
    except ValueError as exc:
        out.put("error", str(exc), str(exc))
        return FALSE
    out.put("minimal", res, "minimal fundamental" if res else "fundamental, not minimal")
    return OK if res else FALSE


def cmd_indec(args, p, ctx, out):
    try:
        res = garside.indecomposable_qz_check(p, p.word(args.d))
    except ValueError as exc:
        out.put("error", str(exc), str(exc))
        return FALSE
    out.put("indecomposable", res, "indecomposable" if res else "decomposable")
    return OK if res else FALSE


def cmd_search(args, p, ctx, out):
    hits = garside.search_quasi_central(p, args.bound, jobs=args.jobs)
    rows = []
    for h in hits:
        row = {
            "word": _w(p, h.cert.word),
            "sigma": h.cert.sigma.show(p),
            "fundamental": h.fundamental,
            "minimal": h.minimal,
            "indecomposable": h.indecomposable,
        }
        rows.append(row)
        flags = [k for k in ("fundamental", "minimal", "indecomposable") if row[k]]
        out.say(f"{row['word']}  sigma={row['sigma']}  {' '.join(flags)}")
    out.put("bound", args.bound)
    out.put("hits", rows)
    return OK


def cmd_tame(args, p, ctx, out):
    rep = garside.tameness_probe(p, args.bound, args.outer, jobs=args.jobs)
    out.put("witnesses", {_w(p, a): _w(p, b) for a, b in rep.witnesses.items()})
    out.put("inconclusive", [_w(p, a) for a in rep.inconclusive])
    for a, b in rep.witnesses.items():
        out.say(f"{_w(p, a)} divides {_w(p, b)}")
    for a in rep.inconclusive:
        out.say(f"{_w(p, a)}: no minimal fundamental multiple up to length {rep.outer_bound}")
    return OK if rep.tame_at_bound else INCONCLUSIVE


def cmd_transmin(args, p, ctx, out):
    mins = conjugacy.minimal_transits(p, p.word(args.w), args.bound)
    rows = [{"element": _w(p, m.element.canonical), "conjugates": [_w(p, q) for q in m.conjugates]} for m in mins]
    out.put("bound", args.bound)
    out.put("minimal_transits", rows, f"minimal transit elements up to length {args.bound}:")
    for r in rows:
        out.say(f"  {r['element']}  ->  {', '.join(r['conjugates'])}")
    return OK


def cmd_orbit(args, p, ctx, out):
    delta = _default_delta(args, p, ctx)
    st = conjugacy.orbit_closure(p, p.word(args.w), delta)
    levels = [sorted(_w(p, c.canonical) for c in lv) for lv in st.levels]
    out.put("stabilized_at", st.stabilized_at, f"stabilized at level {st.stabilized_at}")
    out.put("orbit", levels[-1] if levels else [])
    out.put("levels", levels)
    for x in (levels[-1] if levels else []):
        out.say("  " + x)
    return OK


def _verdict(p, v: conjugacy.Verdict, out) -> int:
    out.put("status", v.status, f"{v.status} ({v.reason})" if v.reason else v.status)
    out.put("reason", v.reason)
    out.put("conjugator", None if v.conjugator is None else _w(p, v.conjugator))
    if v.conjugator is not None:
        out.say(f"conjugator: {_w(p, v.conjugator)}")
    return {conjugacy.YES: OK, conjugacy.NO: FALSE}.get(v.status, INCONCLUSIVE)


def cmd_conj(args, p, ctx, out):
    u, v = p.word(args.u), p.word(args.v)
    if ctx is not None and not args.delta:
        return _verdict(p, gmn.gmn_conjugate(ctx, u, v), out)
    if args.builtin == "bii" and not args.delta:
        return _verdict(p, bii.bii_conjugate(u, v, p), out)
    delta = _default_delta(args, p, ctx)
    return _verdict(p, conjugacy.are_conjugate(p, u, v, delta, assume_P=args.assume_P), out)


def cmd_propP(args, p, ctx, out):
    delta = _default_delta(args, p, ctx)
    res = conjugacy.property_P_probe(p, p.word(args.w), delta, args.bound)
    out.put("holds_at_bound", res.holds)
    out.put("bound", res.bound)
    out.put("checked", res.checked)
    if res.holds:
        out.say(f"every minimal transit element up to length {res.bound} divides the fundamental element ({res.checked} checked)")
        return INCONCLUSIVE
    out.put("counterexample", _w(p, res.counterexample), f"counterexample: {_w(p, res.counterexample)}")
    return FALSE


def _fund(args, p, ctx):
    delta = _default_delta(args, p, ctx)
    cert = garside.fundamental_cert(p, delta)
    if cert is None:
        raise UsageError("the given --delta is not fundamental")
    return cert


def cmd_group_eq(args, p, ctx, out):
    cert = _fund(args, p, ctx)
    g1, g2 = conjugacy.parse_group_word(p, args.g1), conjugacy.parse_group_word(p, args.g2)
    res = conjugacy.group_equal(p, g1, g2, cert)
    out.put("equal", res, "equal" if res else "not equal")
    return OK if res else FALSE


def cmd_group_conj(args, p, ctx, out):
    cert = _fund(args, p, ctx)
    g1, g2 = conjugacy.parse_group_word(p, args.g1), conjugacy.parse_group_word(p, args.g2)
    decide = None
    if ctx is not None:
        decide = lambda a, b: gmn.gmn_conjugate(ctx, a, b)  # noqa: E731
    return _verdict(p, conjugacy.group_conjugate(p, g1, g2, cert, assume_P=args.assume_P, decide=decide), out)


# -- B_ii ---------------------------------------------------------------

def _need(args, which: str):
    if args.builtin != which:
        raise UsageError(f"this subcommand needs --builtin {which}")


def cmd_bii_nf(args, p, ctx, out):
    _need(args, "bii")
    nf = bii.bii_normal_form(p.word(args.w), p)
    out.put("normal_form", {"k": nf.k, "j": nf.j, "p": nf.p, "q": nf.q, "r": nf.r}, nf.show())
    return OK


def cmd_bii_transmin(args, p, ctx, out):
    _need(args, "bii")
    fam = bii.bii_trans_min_table(p.word(args.w), p, printed=args.printed)
    out.put("family", fam.show(p), fam.show(p))
    out.put("label", fam.label)
    return OK


def cmd_bii_conj(args, p, ctx, out):
    _need(args, "bii")
    return _verdict(p, bii.bii_conjugate(p.word(args.u), p.word(args.v), p, printed=args.printed), out)


# -- G_{m,n} ------------------------------------------------------------

def _ctx(args, ctx) -> gmn.GmnContext:
    if ctx is None:
        raise UsageError("this subcommand needs --builtin gmn --m M --n N")
    return ctx


def cmd_gmn_nf(args, p, ctx, out):
    ctx = _ctx(args, ctx)
    w = p.word(args.w)
    if not gmn.gmn_membership_W(ctx, w):
        out.put("in_W", False, "not in W (a factor equal to D_1 or D_2 occurs)")
        return FALSE
    nf = gmn.gmn_normal_form(ctx, w)
    out.put("in_W", True)
    out.put("blocks", [[_w(p, a), _w(p, b)] for a, b in nf.blocks], nf.show(ctx))
    return OK


def cmd_gmn_strata(args, p, ctx, out):
    ctx = _ctx(args, ctx)
    st = gmn.gmn_strata(ctx, p.word(args.w))
    data = {"k": st.k, "lambda1": st.lam1, "lambda2": st.lam2, "mu1": st.mu1, "mu2": st.mu2, "case": st.case}
    out.put("strata", data, " ".join(f"{k}={v}" for k, v in data.items()))
    out.put("rest", _w(p, st.rest), f"rest: {_w(p, st.rest)}")
    return OK


def cmd_gmn_mcm(args, p, ctx, out):
    ctx = _ctx(args, ctx)
    x, w = p.word(args.x), p.word(args.w)
    if len(x) != 1:
        raise UsageError("the first argument must be a letter")
    try:
        fam = gmn.gmn_mcm_letter(ctx, x, w)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    out.put("description", fam.show(ctx), fam.show(ctx))
    out.put("branch", fam.branch)
    inst = [_w(p, v) for v in fam.instantiate(ctx, args.bound)]
    out.put("instances", inst, f"instances up to length {args.bound}:")
    for v in inst:
        out.say("  " + v)
    return OK


def cmd_gmn_propP(args, p, ctx, out):
    ctx = _ctx(args, ctx)
    rep = gmn.gmn_property_P(ctx, p.word(args.w))
    out.put("case", rep.case)
    out.put("holds", rep.holds)
    out.put(
        "letters",
        {_w(p, lw.letter): {"branch": lw.branch, "witnesses": [_w(p, a) for a in lw.witnesses]} for lw in rep.letters},
    )
    out.say(rep.show(ctx))
    return OK if rep.holds else FALSE


def cmd_gmn_conj(args, p, ctx, out):
    ctx = _ctx(args, ctx)
    return _verdict(p, gmn.gmn_conjugate(ctx, p.word(args.u), p.word(args.v)), out)


def cmd_gmn_export(args, p, ctx, out):
    ctx = _ctx(args, ctx)
    text = p.to_text()
    out.put("presentation", text, text.rstrip("\n"))
    return OK


# -- parser -------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    g = common.add_argument_group("presentation and bounds")
    g.add_argument("--file", help="presentation file")
    g.add_argument("--builtin", choices=("bii", "gmn"), help="built-in presentation")
    g.add_argument("--m", type=int, help="m for --builtin gmn")
    g.add_argument("--n", type=int, help="n for --builtin gmn")
    g.add_argument("--ceiling", type=int, default=5_000_000, help="largest class size enumerated (default 5000000)")
    g.add_argument("--machine", action="store_true", help="print one JSON object")
    g.add_argument("--jobs", type=int, default=1, help="worker processes for searches")
    g.add_argument("--cache", help="load class cache from, and save it to, this path")

    parser = _Parser(prog="hpmonoid", description="Word and conjugacy problems in positive homogeneous monoids.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def add(name, func, helptext, *params):
        sp = sub.add_parser(name, parents=[common], help=helptext)
        for prm in params:
            sp.add_argument(prm)
        sp.set_defaults(func=func)
        return sp

    add("eq", cmd_eq, "word problem", "u", "v")
    add("class", cmd_class, "equivalence class of a word", "w")
    sp = add("div", cmd_div, "divisibility", "u", "v")
    sp.add_argument("--side", choices=("left", "right"), default="left")
    sp = add("mcm", cmd_mcm, "minimal common multiples up to a length bound")
    sp.add_argument("J", nargs="+")
    sp.add_argument("--side", choices=("left", "right"), default="right")
    sp.add_argument("--bound", type=int, default=6)
    sp = add("mcd", cmd_mcd, "maximal common divisors")
    sp.add_argument("J", nargs="+")
    sp.add_argument("--side", choices=("left", "right"), default="left")
    sp = add("lcm-failure", cmd_lcm_failure, "letter pair with several minimal common multiples")
    sp.add_argument("--side", choices=("left", "right"), default="right")
    sp.add_argument("--bound", type=int, default=6)
    add("qz", cmd_qz, "quasi-central certificate", "d")
    add("fund", cmd_fund, "fundamental certificate", "d")
    add("garside", cmd_garside, "Garside element check", "d")
    add("minfund", cmd_minfund, "minimal fundamental check", "d")
    add("indec", cmd_indec, "indecomposable quasi-central check", "d")
    sp = add("search", cmd_search, "all quasi-central elements up to a length bound")
    sp.add_argument("--bound", type=int, default=6)
    sp = add("tame", cmd_tame, "tameness probe")
    sp.add_argument("--bound", type=int, default=6)
    sp.add_argument("--outer", type=int, default=None)
    sp = add("transmin", cmd_transmin, "minimal transit elements up to a length bound", "w")
    sp.add_argument("--bound", type=int, default=6)
    sp = add("orbit", cmd_orbit, "orbit of a word under divisors of a fundamental element", "w")
    sp.add_argument("--delta")
    sp = add("conj", cmd_conj, "positive conjugacy", "u", "v")
    sp.add_argument("--delta")
    sp.add_argument("--assume-P", dest="assume_P", action="store_true", help="treat an orbit miss as a definite no")
    sp = add("propP", cmd_propP, "bounded probe of property P", "w")
    sp.add_argument("--delta")
    sp.add_argument("--bound", type=int, default=6)
    sp = add("group-eq", cmd_group_eq, "word problem in the group of fractions", "g1", "g2")
    sp.add_argument("--delta")
    sp = add("group-conj", cmd_group_conj, "conjugacy in the group of fractions", "g1", "g2")
    sp.add_argument("--delta")
    sp.add_argument("--assume-P", dest="assume_P", action="store_true")

    bp = sub.add_parser("bii", help="the built-in B_ii monoid")
    bsub = bp.add_subparsers(dest="bii_command", required=True, parser_class=_Parser)

    def badd(name, func, helptext, *params):
        sp = bsub.add_parser(name, parents=[common], help=helptext)
        for prm in params:
            sp.add_argument(prm)
        sp.set_defaults(func=func, builtin_default="bii")
        return sp

    badd("nf", cmd_bii_nf, "normal form", "w")
    sp = badd("transmin", cmd_bii_transmin, "tabulated minimal transit elements", "w")
    sp.add_argument("--printed", action="store_true", help="use the family as printed")
    sp = badd("conj", cmd_bii_conj, "table-driven conjugacy", "u", "v")
    sp.add_argument("--printed", action="store_true")

    gp = sub.add_parser("gmn", help="the built-in G_{m,n} monoids")
    gsub = gp.add_subparsers(dest="gmn_command", required=True, parser_class=_Parser)

    def gadd(name, func, helptext, *params):
        sp = gsub.add_parser(name, parents=[common], help=helptext)
        for prm in params:
            sp.add_argument(prm)
        sp.set_defaults(func=func, builtin_default="gmn")
        return sp

    gadd("nf", cmd_gmn_nf, "block normal form of an element of W", "w")
    gadd("strata", cmd_gmn_strata, "k, lambda and mu extraction", "w")
    sp = gadd("mcm", cmd_gmn_mcm, "minimal common multiple of a letter and an element of W", "x", "w")
    sp.add_argument("--bound", type=int, default=10)
    gadd("propP", cmd_gmn_propP, "case analysis for property P", "w")
    gadd("conj", cmd_gmn_conj, "conjugacy", "u", "v")
    gadd("export", cmd_gmn_export, "print the presentation in file format")
    return parser


def run(argv: list[str] | None = None) -> int:
    machine = "--machine" in (argv if argv is not None else sys.argv[1:])
    try:
        args = build_parser().parse_args(argv)
        if args.builtin is None and args.file is None:
            args.builtin = getattr(args, "builtin_default", None)
            if args.builtin == "gmn":
                args.m = 2 if args.m is None else args.m
                args.n = 2 if args.n is None else args.n
        p, ctx = _load(args)
        out = Out(args.machine)
        status = args.func(args, p, ctx, out)
        if args.cache:
            p.save_cache(args.cache)
        return out.emit(status)
    except SystemExit as exc:  # --help
        return int(exc.code or 0)
    except (UsageError, PresentationError, ClassCeilingExceeded, OSError, ValueError) as exc:
        if machine:
            print(json.dumps({"error": str(exc), "exit": ERROR}, sort_keys=True))
        else:
            print(f"error: {exc}", file=sys.stderr)
        return ERROR


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
