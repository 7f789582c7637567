"""Command-line experiments: ``apsets <command> [options]``.

Commands write CSV (default) or JSON to ``--output`` or stdout.  Failures
print a single ``error: <kind>: <message>`` line to stderr and exit 2.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from pathlib import Path

from . import additive, arcs, expsum, selftest, setgen, spectrum


class CLIError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise CLIError(f"usage: {message}")


def _ints(text: str) -> list[int]:
    try:
        return [int(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")


def _window(text: str) -> tuple[int, int]:
    try:
        lo, hi = (int(t) for t in text.split(":"))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected LO:HI, got {text!r}")
    return lo, hi


def _fmt(v) -> str:
    if isinstance(v, float):
        return f"{v:.17g}"
    return str(v)


def _emit(args, columns: list[str], rows: list[list]) -> None:
    if args.format == "json":
        text = json.dumps([dict(zip(columns, r)) for r in rows], indent=1) + "\n"
    else:
        lines = [",".join(columns)] + [",".join(_fmt(v) for v in r) for r in rows]
        text = "\n".join(lines) + "\n"
    if args.output:
        Path(args.output).write_text(text)
    else:
        sys.stdout.write(text)


def _load(path: str) -> setgen.IntegerSet:
    p = Path(path)
    if not p.exists():
        raise CLIError(f"set file not found: {path}")
    return setgen.IntegerSet.load(p)


def _set_id(path: str) -> str:
    return Path(path).stem


# commands

def cmd_generate(args) -> None:
    fam = args.family
    params: dict = {"x": args.x}
    if fam == "kfree":
        s = setgen.gen_kfree(args.k, args.x)
        params["k"] = args.k
    elif fam == "beatty":
        s = setgen.gen_beatty(args.r, args.x)
        params["r"] = args.r
    elif fam == "periodic":
        if args.q is None:
            raise CLIError("periodic family needs --q")
        s = setgen.gen_periodic(args.q, args.residues, args.x)
        params.update(q=args.q, residues=args.residues)
    elif fam in ("intersect", "union", "complement"):
        inputs = [_load(p) for p in args.inputs]
        need = 1 if fam == "complement" else 2
        if len(inputs) != need:
            raise CLIError(f"{fam} needs {need} --inputs file(s)")
        s = setgen.combine(fam, *inputs)
        params = {"x": s.limit, "inputs": [str(p) for p in args.inputs]}
    else:
        raise CLIError(f"unknown family {fam!r}")
    if not args.output:
        raise CLIError("generate needs --output")
    s.save(args.output)
    sidecar = {"family": fam, "params": params, "count": s.count,
               "density": setgen.density(s)}
    Path(str(args.output) + ".json").write_text(json.dumps(sidecar, indent=1) + "\n")
    if args.text:
        Path(str(args.output) + ".txt").write_text(s.to_text())


def _major_arcs(kind: str, x: int, Q: float) -> arcs.ArcSystem:
    if kind == "farey":
        return arcs.farey_major_arcs(x, Q)
    if kind.startswith("sequence:beatty"):
        r = int(kind.removeprefix("sequence:beatty"))
        return arcs.beatty_major_arcs(r, x, Q)
    raise CLIError(f"unknown arc family {kind!r} (farey | sequence:beatty<r>)")


def cmd_energy(args) -> None:
    s = _load(args.set)
    c = expsum.autocorrelation(s)
    rows = []
    for Q in args.Q:
        minor = arcs.complement(_major_arcs(args.arcs, s.limit, Q))
        en = expsum.energy_on_arcs(c, minor, threads=args.threads)
        rows.append([_set_id(args.set), s.limit, args.arcs, Q, minor.total_measure,
                     en, en / s.limit])
    _emit(args, ["set_id", "x", "arc_system", "Q", "measure", "energy", "ratio"], rows)


def cmd_extremality(args) -> None:
    Qmax = max(args.Q)
    if args.mode == "theoretical":
        curve = spectrum.kfree_extremality_curve(args.k, Qmax)
        set_id, x = f"kfree{args.k}-limit", ""
    else:
        if not args.set:
            raise CLIError("empirical mode needs --set")
        s = _load(args.set)
        if s.count == 0:
            raise CLIError("set has density 0; extremality sum undefined")
        curve = spectrum.extremality_curve(s, Qmax)
        set_id, x = _set_id(args.set), s.limit
    rows = []
    for Q in args.Q:
        sub = spectrum.ExtremalityCurve(curve.rho, curve.partial[:Q])
        rows.append([set_id, x, Q, sub.value, sub.target, sub.gap, sub.last_increment])
    _emit(args, ["set_id", "x", "Q", "partial_sum", "inv_rho", "gap", "last_increment"], rows)


def _candidates(spec: str) -> list:
    out = []
    for part in spec.split(","):
        part = part.strip()
        if part.startswith("farey:"):
            out += arcs.farey_centers(int(part[6:]))
        elif part.startswith("beatty"):
            r, _, Q = part[6:].partition(":")
            out += arcs.beatty_spectrum(int(r), int(Q))
        elif "/" in part:
            out.append(Fraction(part))
        elif part:
            out.append(float(part))
    return out


def cmd_spectrum(args) -> None:
    s = _load(args.set)
    est = spectrum.spectrum_scan(s, _candidates(args.candidates), args.threshold)
    rows = [[float(b), c.real, c.imag, m] for b, c, m in est.entries]
    _emit(args, ["beta", "re", "im", "modulus"], rows)


def cmd_represent(args) -> None:
    a, b = _load(args.set_a), _load(args.set_b)
    kind = args.main_term
    if kind == "beatty":
        main = additive.beatty_main_term
    elif kind == "interval":
        main = float
    elif kind.startswith("rational:"):
        Q = int(kind[9:])
        if args.coefficients == "empirical":
            ta, tb = spectrum.arc_coefficient_table(a, Q), spectrum.arc_coefficient_table(b, Q)
        else:
            k = int(args.coefficients.removeprefix("kfree"))
            ta = tb = spectrum.kfree_coefficient_table(k, Q)
        predictor = additive.RationalMainTerm(ta, tb)

        def main(n):
            return predictor(n).real
    else:
        raise CLIError(f"unknown main term {kind!r} (beatty | interval | rational:<Q>)")
    rep = additive.asymptotic_report(a, b, main, args.window)
    rows = [[n, r, m, r / m] for n, r, m in
            zip(rep.ns.tolist(), rep.r.tolist(), rep.main.tolist())]
    _emit(args, ["n", "r", "main_term", "ratio"], rows)
    print(f"mean={rep.mean:.6f} min={rep.min:.6f} max={rep.max:.6f}", file=sys.stderr)


def cmd_selftest(args) -> None:
    if not selftest.run():
        raise CLIError("selftest failed")


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--output", "-o", help="output path (default stdout)")
    common.add_argument("--format", choices=["csv", "json"], default="csv")
    common.add_argument("--threads", type=int, default=1)

    p = _Parser(prog="apsets", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    g = sub.add_parser("generate", parents=[common], help="write a set file")
    g.add_argument("--family", required=True,
                   choices=["kfree", "beatty", "periodic", "intersect", "union", "complement"])
    g.add_argument("--x", type=int, required=False, default=None)
    g.add_argument("--k", type=int, default=2)
    g.add_argument("--r", type=int, default=2)
    g.add_argument("--q", type=int)
    g.add_argument("--residues", type=_ints, default=[])
    g.add_argument("--inputs", nargs="+", default=[])
    g.add_argument("--text", action="store_true", help="also write a .txt element list")
    g.set_defaults(func=cmd_generate)

    e = sub.add_parser("energy", parents=[common], help="minor-arc energy per Q")
    e.add_argument("--set", required=True)
    e.add_argument("--Q", type=_ints, required=True)
    e.add_argument("--arcs", default="farey")
    e.set_defaults(func=cmd_energy)

    x = sub.add_parser("extremality", parents=[common], help="extremality partial sums")
    x.add_argument("--set")
    x.add_argument("--Q", type=_ints, required=True)
    x.add_argument("--mode", choices=["empirical", "theoretical"], default="empirical")
    x.add_argument("--k", type=int, default=2)
    x.set_defaults(func=cmd_extremality)

    s = sub.add_parser("spectrum", parents=[common], help="Fourier coefficient scan")
    s.add_argument("--set", required=True)
    s.add_argument("--candidates", required=True,
                   help="comma list of farey:Q, beatty<r>:Q, p/q or decimals")
    s.add_argument("--threshold", type=float, default=0.01)
    s.set_defaults(func=cmd_spectrum)

    r = sub.add_parser("represent", parents=[common], help="r(n) against a main term")
    r.add_argument("--set-a", required=True)
    r.add_argument("--set-b", required=True)
    r.add_argument("--window", type=_window, required=True)
    r.add_argument("--main-term", default="beatty")
    r.add_argument("--coefficients", default="empirical",
                   help="empirical | kfree<k> (for rational main terms)")
    r.set_defaults(func=cmd_represent)

    t = sub.add_parser("selftest", parents=[common], help="run exact-identity checks")
    t.set_defaults(func=cmd_selftest)
    return p


def main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
        if args.command == "generate" and args.family not in ("intersect", "union", "complement") \
                and args.x is None:
            raise CLIError("generate needs --x")
        args.func(args)
    except CLIError as exc:
        print(f"error: cli: {exc}", file=sys.stderr)
        return 2
    except (ValueError, ArithmeticError, OSError) as exc:
        print(f"error: {type(exc).__name__}: {exc}".replace("\n", " "), file=sys.stderr)
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())
