"""Batch command-line surface.

Subcommands: expand, hadamard, obstruct, modp, diagonal, euler, optics.
Every command accepts --json (stable machine output) or --table (human
rendering of the same data; the default).  Exit codes: 0 success,
2 malformed input, 3 violated mathematical precondition, 4 exhausted
budget.  GRADEFORGE_CONFIG may name a JSON file overriding defaults;
--show-config prints the effective configuration.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from .algebraic import Annihilator
from .analytic import QuadratureConfig, euler_report, optics_identity_check
from .automata import KernelBudgets, christol_report
from .catalog import BuiltinSeries, builtin_names
from .config import Defaults, load_defaults
from .descriptors import (
    SeriesDescriptor,
    coeffs_json,
    descriptor_from_tokens,
    expand_descriptor,
    materialize,
)
from .diagonals import diagonal_witness, product_witness
from .errors import GradeforgeError, SchemaError
from .holonomic import PRecurrence, hadamard_recurrence
from .obstruction import obstruction_report
from .rationals import format_rational, parse_rational
from .series import hadamard_mul


# -- shared helpers -----------------------------------------------------------

def _descriptor(kind: str, payload: str) -> SeriesDescriptor:
    return descriptor_from_tokens(kind, payload)


def _annihilator_of(desc: SeriesDescriptor) -> Annihilator:
    obj = materialize(desc)
    if isinstance(obj, Annihilator):
        return obj
    if isinstance(obj, BuiltinSeries) and obj.annihilator is not None:
        return obj.annihilator
    raise SchemaError(
        "this command needs an algebraic branch: pass an 'algebraic' "
        "descriptor or a builtin that has an annihilator"
    )


def _recurrence_of(desc: SeriesDescriptor) -> PRecurrence:
    obj = materialize(desc)
    if isinstance(obj, PRecurrence):
        return obj
    if isinstance(obj, BuiltinSeries) and obj.recurrence is not None:
        return obj.recurrence
    raise SchemaError(
        "--emit-recurrence needs holonomic descriptors (or builtins "
        "carrying a recurrence) on both sides"
    )


def _read_json_arg(arg: str, what: str):
    text = arg
    if arg.startswith("@"):
        try:
            with open(arg[1:], encoding="utf-8") as fh:
                text = fh.read()
        except OSError as exc:
            raise SchemaError(f"cannot read {what} file {arg[1:]}: {exc}") from exc
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise SchemaError(f"{what} is not valid JSON: {exc}") from exc


# -- command handlers ---------------------------------------------------------

def _cmd_expand(args, cfg: Defaults) -> dict:
    terms = args.terms if args.terms is not None else cfg.terms
    series = expand_descriptor(_descriptor(args.kind, args.payload), terms)
    return coeffs_json(series)


def _cmd_hadamard(args, cfg: Defaults) -> dict:
    da = _descriptor(args.kind_a, args.payload_a)
    db = _descriptor(args.kind_b, args.payload_b)
    terms = args.terms if args.terms is not None else cfg.terms
    product = hadamard_mul(
        expand_descriptor(da, terms), expand_descriptor(db, terms)
    )
    data = coeffs_json(product)
    if args.emit_recurrence:
        rec = hadamard_recurrence(_recurrence_of(da), _recurrence_of(db))
        data["recurrence"] = rec.to_json_dict()
    return data


def _cmd_obstruct(args, cfg: Defaults) -> dict:
    terms = args.terms if args.terms is not None else cfg.terms
    f = expand_descriptor(_descriptor(args.kind, args.payload), terms)
    report = obstruction_report(
        f,
        window=args.window if args.window is not None else cfg.window,
        max_period=(
            args.max_period if args.max_period is not None else cfg.max_period
        ),
        zero_threshold=cfg.zero_threshold,
        positive_threshold=cfg.positive_threshold,
    )
    return report.to_json_dict()


def _cmd_modp(args, cfg: Defaults) -> dict:
    ann = _annihilator_of(_descriptor(args.kind, args.payload))
    if args.p < 2:
        raise SchemaError("--p must be at least 2")
    if args.r < 1:
        raise SchemaError("--r must be at least 1")
    q = args.base if args.base is not None else args.p
    budgets = KernelBudgets(
        max_states=(
            args.max_states if args.max_states is not None else cfg.max_states
        ),
        max_depth=(
            args.depth if args.depth is not None else cfg.depth_for_base(q)
        ),
        fingerprint_length=(
            args.fingerprint_length
            if args.fingerprint_length is not None
            else cfg.fingerprint_length
        ),
    )
    report = christol_report(ann, args.p, args.r, q=q, budgets=budgets)
    return report.to_json_dict()


def _cmd_diagonal(args, cfg: Defaults) -> dict:
    ann = _annihilator_of(_descriptor(args.kind, args.payload))
    order = args.order if args.order is not None else cfg.diagonal_order
    witness = diagonal_witness(ann, verified_order=order)
    if args.square:
        # Four variables: verification cost grows fast, so cap the order.
        witness = product_witness([witness, witness], min(order, 8))
    diag = witness.diagonal(witness.verified_order)
    return {
        "witness": witness.to_json_dict(),
        "diagonal": [format_rational(c) for c in diag.coeffs],
    }


def _cmd_euler(args, cfg: Defaults) -> dict:
    quad = QuadratureConfig(
        nodes=args.nodes if args.nodes is not None else cfg.laguerre_nodes,
        tolerance=(
            args.tolerance if args.tolerance is not None else cfg.quad_tolerance
        ),
    )
    terms = args.terms if args.terms is not None else cfg.branch_terms
    return euler_report(args.z, quad, terms)


def _parse_plates(arg: str) -> list[tuple[Fraction, Fraction]]:
    rows = _read_json_arg(arg, "plate list")
    if not isinstance(rows, list) or not rows:
        raise SchemaError("plates must be a nonempty list of [a, n] pairs")
    plates = []
    for row in rows:
        if (not isinstance(row, list) or len(row) != 2
                or any(isinstance(v, bool) or not isinstance(v, (int, str))
                       for v in row)):
            raise SchemaError(
                "each plate must be [weight, index] with rational entries"
            )
        try:
            a, nk = (parse_rational(str(v)) for v in row)
        except ValueError as exc:
            raise SchemaError(f"plate {row}: {exc}") from exc
        if nk == 0:
            raise SchemaError("plate indices must be nonzero")
        plates.append((a, nk))
    return plates


def _cmd_optics(args, cfg: Defaults) -> dict:
    terms = args.terms if args.terms is not None else cfg.terms
    series = expand_descriptor(_descriptor(args.kind, args.payload), terms)
    plates = _parse_plates(args.plates)
    gap = optics_identity_check(plates, series, terms)
    return {
        "order": terms,
        "plates": len(plates),
        "exact": isinstance(gap, Fraction),
        "discrepancy": format_rational(gap) if isinstance(gap, Fraction)
        else gap,
    }


# -- table renderers ----------------------------------------------------------

def _table_coeffs(data: dict) -> str:
    lines = [f"{n}\t{c}" for n, c in enumerate(data["coeffs"])]
    if "recurrence" in data:
        rec = data["recurrence"]
        lines.append("")
        lines.append(f"recurrence of order {rec['order']}, base index {rec['n0']}")
        for i, dense in enumerate(rec["coeffs"]):
            parts = []
            for k, c in enumerate(dense):
                if c == "0":
                    continue
                if k == 0:
                    parts.append(c)
                else:
                    mono = "n" if k == 1 else f"n^{k}"
                    head = "" if c == "1" else "-" if c == "-1" else f"{c}*"
                    parts.append(f"{head}{mono}")
            poly = " + ".join(parts).replace("+ -", "- ") or "0"
            lines.append(f"  p_{i}(n) = {poly}")
        lines.append(f"  initial: {' '.join(rec['initial'])}")
    return "\n".join(lines)


def _table_obstruct(data: dict) -> str:
    lines = [f"verdict      {data['verdict']}",
             f"truncation   {data['truncation']}"]
    support = " ".join(f"{p}@{idx}" for p, idx in data["prime_support"])
    lines.append(f"prime support  {support or '(none)'}")
    radius = data["radius"]
    beta = "n/a" if radius["beta"] is None else f"{radius['beta']:.4f}"
    lines.append(f"radius fit   beta={beta}  class={radius['class']}")
    period = data["periodicity"]
    extra = {k: v for k, v in period.items() if k != "kind"}
    detail = "  ".join(f"{k}={v}" for k, v in extra.items())
    lines.append(f"periodicity  {period['kind']}{('  ' + detail) if detail else ''}")
    return "\n".join(lines)


def _table_modp(data: dict) -> str:
    lines = [
        f"p^r          {data['p']}^{data['r']}",
        f"base         {data['q']}",
        f"status       {data['status']}",
        f"states       {len(data['automaton']['states'])}",
        f"fingerprint  {data['automaton']['fingerprint_length']} terms "
        f"(truncation {data['automaton']['truncation']})",
    ]
    for st in data["automaton"]["states"]:
        arrows = " ".join(
            f"{d}->{'?' if t is None else t}"
            for d, t in enumerate(st["transitions"])
        )
        lines.append(
            f"  state {st['id']}: rep (k={st['k']}, j={st['j']}) "
            f"hash {st['fingerprint_hash']}  {arrows}"
        )
    return "\n".join(lines)


def _monomial(exponents, names) -> str:
    parts = [
        f"{names[i]}^{e}" if e > 1 else names[i]
        for i, e in enumerate(exponents) if e
    ]
    return "*".join(parts)


def _table_poly_rows(rows, nvars: int) -> str:
    if nvars == 2:
        names = ["x", "y"]
    else:
        names = [f"{'x' if i % 2 == 0 else 'y'}{i // 2 + 1}" for i in range(nvars)]
    parts = []
    for row in rows:
        mono = _monomial(row[:-1], names)
        coeff = row[-1]
        if mono:
            prefix = "" if coeff == "1" else "-" if coeff == "-1" else f"{coeff}*"
            parts.append(f"{prefix}{mono}")
        else:
            parts.append(coeff)
    return " + ".join(parts).replace("+ -", "- ") or "0"


def _table_diagonal(data: dict) -> str:
    w = data["witness"]
    nvars = 2 * w["d"]
    lines = [
        f"factors         {w['d']}",
        f"verified order  {w['verified_order']}",
        f"constant shift  {w['constant_shift']}",
        f"numerator       {_table_poly_rows(w['R']['num'], nvars)}",
        f"denominator     {_table_poly_rows(w['R']['den'], nvars)}",
        "diagonal        " + " ".join(data["diagonal"]),
    ]
    return "\n".join(lines)


def _table_euler(data: dict) -> str:
    return "\n".join([
        f"value           {data['value']:.12f}",
        f"error estimate  {data['error_estimate']:.3e}",
        f"reference       {data['reference']:.12f}",
        f"discrepancy     {data['discrepancy']:.3e}",
        f"method          {data['method']}",
        f"branch offset   {data['branch_offset']:.6e}",
    ])


def _table_optics(data: dict) -> str:
    return "\n".join([
        f"order        {data['order']}",
        f"plates       {data['plates']}",
        f"exact        {'yes' if data['exact'] else 'no'}",
        f"discrepancy  {data['discrepancy']}",
    ])


def _dot_from_data(data: dict) -> str:
    """DOT view of a modp report, matching KernelAutomaton.to_dot."""
    aut = data["automaton"]
    lines = [
        "digraph kernel {",
        "  rankdir=LR;",
        f'  label="base {aut["q"]}, mod {aut["modulus"]}, {data["status"]}";',
    ]
    for st in aut["states"]:
        lines.append(
            f'  s{st["id"]} [label="s{st["id"]}\\n(k={st["k"]}, j={st["j"]})"];'
        )
    for st in aut["states"]:
        for d, t in enumerate(st["transitions"]):
            if t is None:
                lines.append(f'  u{st["id"]}_{d} [label="?", shape=plaintext];')
                lines.append(f'  s{st["id"]} -> u{st["id"]}_{d} '
                             f'[label="{d}", style=dashed];')
            else:
                lines.append(f'  s{st["id"]} -> s{t} [label="{d}"];')
    lines.append("}")
    return "\n".join(lines)


_COMMANDS = {
    "expand": (_cmd_expand, _table_coeffs),
    "hadamard": (_cmd_hadamard, _table_coeffs),
    "obstruct": (_cmd_obstruct, _table_obstruct),
    "modp": (_cmd_modp, _table_modp),
    "diagonal": (_cmd_diagonal, _table_diagonal),
    "euler": (_cmd_euler, _table_euler),
    "optics": (_cmd_optics, _table_optics),
}


# -- parser -------------------------------------------------------------------

_DESCRIPTOR_HELP = (
    "descriptor: KIND PAYLOAD, where KIND is one of coeffs, algebraic, "
    "holonomic, rational-exppoly, builtin; PAYLOAD is inline JSON, @file, "
    f"or a builtin name ({', '.join(builtin_names())})"
)


def _add_output_flags(sp, extra: tuple[str, ...] = ()):
    group = sp.add_mutually_exclusive_group()
    group.add_argument("--json", action="store_true",
                       help="machine-readable output")
    group.add_argument("--table", action="store_true",
                       help="human-readable output (default)")
    for flag in extra:
        group.add_argument(flag, action="store_true",
                           help="graphviz DOT output of the automaton")


def _add_descriptor(sp, suffix: str = ""):
    sp.add_argument(f"kind{suffix}", metavar=f"KIND{suffix.upper()}",
                    help=_DESCRIPTOR_HELP if not suffix else argparse.SUPPRESS)
    sp.add_argument(f"payload{suffix}", metavar=f"PAYLOAD{suffix.upper()}")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="gradeforge",
        description="Exact Hadamard-product toolkit: expansion, closure, "
                    "obstructions, kernel automata, diagonal lifts, and the "
                    "analytic bench.",
    )
    parser.add_argument("--show-config", action="store_true",
                        help="print the effective configuration and exit")
    sub = parser.add_subparsers(dest="command")

    sp = sub.add_parser("expand", help="print exact series coefficients")
    _add_descriptor(sp)
    sp.add_argument("--terms", type=int, help="coefficient count")
    _add_output_flags(sp)

    sp = sub.add_parser("hadamard", help="termwise product of two series")
    _add_descriptor(sp, "_a")
    _add_descriptor(sp, "_b")
    sp.add_argument("--terms", type=int)
    sp.add_argument("--emit-recurrence", action="store_true",
                    help="also derive the product recurrence "
                         "(holonomic inputs only)")
    _add_output_flags(sp)

    sp = sub.add_parser("obstruct", help="scan for infinite-grade evidence")
    _add_descriptor(sp)
    sp.add_argument("--terms", type=int)
    sp.add_argument("--window", type=int,
                    help="tail window for the prime-support scan")
    sp.add_argument("--max-period", type=int,
                    help="largest sign period to test")
    _add_output_flags(sp)

    sp = sub.add_parser("modp", help="residue kernel automaton mod p^r")
    _add_descriptor(sp)
    sp.add_argument("--p", type=int, required=True, help="prime modulus base")
    sp.add_argument("--r", type=int, default=1, help="power of p (default 1)")
    sp.add_argument("--base", type=int,
                    help="kernel digit base q (default: p)")
    sp.add_argument("--max-states", type=int)
    sp.add_argument("--depth", type=int, help="kernel depth budget")
    sp.add_argument("--fingerprint-length", type=int)
    _add_output_flags(sp, extra=("--dot",))

    sp = sub.add_parser("diagonal",
                        help="rational diagonal witness of a branch")
    _add_descriptor(sp)
    sp.add_argument("--order", type=int, help="verification order")
    sp.add_argument("--square", action="store_true",
                    help="lift the Hadamard square (4 variables)")
    _add_output_flags(sp)

    sp = sub.add_parser("euler", help="exponential-integral bench I(z)")
    sp.add_argument("--z", type=float, required=True)
    sp.add_argument("--nodes", type=int, help="Gauss-Laguerre node count")
    sp.add_argument("--tolerance", type=float)
    sp.add_argument("--terms", type=int, help="branch-formula series terms")
    _add_output_flags(sp)

    sp = sub.add_parser("optics", help="plate-stack identity check")
    _add_descriptor(sp)
    sp.add_argument("--plates", required=True,
                    help='JSON [[weight, index], ...] or @file')
    sp.add_argument("--terms", type=int)
    _add_output_flags(sp)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = load_defaults()
        if args.show_config:
            print(json.dumps(cfg.as_dict(), indent=2))
            return 0
        if args.command is None:
            parser.print_usage(sys.stderr)
            return 2
        handler, table = _COMMANDS[args.command]
        data = handler(args, cfg)
        if getattr(args, "dot", False):
            print(_dot_from_data(data))
        elif args.json:
            print(json.dumps(data, indent=2))
        else:
            print(table(data))
        return 0
    except GradeforgeError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.exit_code
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
