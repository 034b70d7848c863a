"""Command-line front end: ``effint <subcommand> ...``.

Exit status is 0 on success, 2 for infeasible, out-of-regime or malformed
input, and 1 for anything unexpected.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from pathlib import Path

from . import census, constraints, genus1, recursion, series, target
from .errors import EffintError
from .target import DiscreteData, rational_to_json

EXIT_OK, EXIT_INTERNAL, EXIT_INPUT = 0, 1, 2


class InputProblem(Exception):
    """Computation finished but the input is infeasible; carries the report."""

    def __init__(self, payload):
        super().__init__("infeasible input")
        self.payload = payload


def _ints(text: str | None) -> tuple[int, ...]:
    if text is None or text.strip() == "":
        return ()
    try:
        return tuple(int(x) for x in text.split(","))
    except ValueError:
        raise EffintError(f"expected comma-separated integers, got {text!r}") from None


def _range(text: str) -> range:
    lo, sep, hi = text.partition("..")
    try:
        return range(int(lo), int(hi if sep else lo) + 1)
    except ValueError:
        raise EffintError(f"expected a range like 2..12, got {text!r}") from None


def _rational(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise EffintError(f"bad rational {text!r}") from None


def _insertions(text: str | None) -> list:
    if not text:
        return []
    return [None if x.strip() in ("", "1") else x.strip() for x in text.split(",")]


def load_target_arg(spec: str) -> target.TargetSpec:
    if spec == "-":
        return target.load_target(sys.stdin.read())
    path = Path(spec)
    if path.is_file():
        return target.load_target(path.read_text())
    if spec in target.PRESETS:
        return target.PRESETS[spec]()
    raise EffintError(f"target {spec!r} is neither a file nor a preset ({', '.join(target.PRESETS)})")


def _to_json(obj):
    if isinstance(obj, Fraction):
        return rational_to_json(obj)
    if isinstance(obj, dict):
        return {str(k): _to_json(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_to_json(v) for v in obj]
    return obj


def _table(rows: list[list], header: list[str]) -> str:
    cells = [header] + [[str(c) for c in row] for row in rows]
    widths = [max(len(r[i]) for r in cells) for i in range(len(header))]
    lines = ["  ".join(c.ljust(w) for c, w in zip(r, widths)).rstrip() for r in cells]
    lines.insert(1, "  ".join("-" * w for w in widths))
    return "\n".join(lines)


def _data(args, tgt) -> DiscreteData:
    beta = _ints(args.beta) or (0,) * tgt.ambient.curve_rank
    contacts = _ints(args.contacts)
    orders = _ints(getattr(args, "orders", None)) or None
    return DiscreteData(args.genus, beta, contacts, orders, args.log_degree)


# -- subcommands --------------------------------------------------------------


def cmd_analyze(args):
    tgt = load_target_arg(args.target)
    data = _data(args, tgt)
    degrees = [2 * recursion.codim(recursion.monomial(a)) for a in _insertions(args.insertions)]
    report = constraints.analyze(data, tgt, degrees)
    payload = {"target": tgt.name, "report": report.as_dict()}
    rows = [[k, v if not isinstance(v, list) else ",".join(v) or "-"] for k, v in report.as_dict().items()]
    text = _table(rows, ["quantity", "value"])
    if not report.feasible:
        raise InputProblem((payload, text))
    return payload, text


def cmd_census(args):
    tgt = load_target_arg(args.target)
    genera = _range(args.genus_range)
    rows, counts, entries = [], {}, []
    for g in genera:
        found = census.enumerate_basic(tgt, g)
        counts[str(g)] = len(found)
        for b in found:
            entries.append(b.as_dict())
            rows.append([g, ",".join(map(str, b.beta)), b.t, b.n, "yes" if b.mixed else ""])
    payload = {"target": tgt.name, "counts": counts, "classes": entries}
    text = _table(rows, ["g", "beta", "t", "n", "mixed"])
    text += "\n\n" + _table([[g, c] for g, c in counts.items()], ["g", "count"])
    return payload, text


def _model(args, tgt):
    norm = _rational(args.normalization) if args.normalization else Fraction(1, 24)
    return genus1.build_genus1(tgt, norm)


def cmd_genus1(args):
    tgt = load_target_arg(args.target)
    model = _model(args, tgt)
    ins = [x for x in _insertions(args.insertions) if x is not None]
    value = genus1.genus1_invariant(model, args.k, ins)
    alpha = model.ring.one
    for x in ins:
        alpha = alpha * model.ring.parse(x)
    cls = model.psi_min**args.k * alpha * model.red_cycle
    payload = {
        "target": tgt.name,
        "k": args.k,
        "insertions": ins,
        "value": value,
        "class": str(cls),
        "red_cycle": str(model.red_cycle),
        "vir_cycle": str(model.vir_cycle),
        "normalization": model.ring.normalization,
    }
    text = "\n".join(
        [f"value      {value}", f"class      {cls}", f"red_cycle  {model.red_cycle}", f"vir_cycle  {model.vir_cycle}"]
    )
    return payload, text


def cmd_reduce(args):
    tgt = load_target_arg(args.target)
    data = _data(args, tgt)
    token = recursion.Token.from_data(tgt, data, _insertions(args.insertions))
    model = _model(args, tgt) if data.g == 1 else None
    result = recursion.reduce_to_basic(tgt, token, args.k, model=model)
    payload = {"token": str(token), "k": args.k, "result": result.as_dict()}
    text = f"{token} k={args.k}\n= {result}\n\ntrace:\n" + "\n".join("  " + line for line in result.trace)
    return payload, text


def cmd_roots(args):
    r_hat, d_hat, a, b = target.normalize_target(args.r, args.d, args.ell)
    payload = {"normalized": {"r": r_hat, "d": d_hat, "a": a, "b": b}}
    lines = [f"normalized  r={r_hat} d={d_hat} (a, b)=({a}, {b})"]
    contacts = _ints(args.contacts)
    if contacts:
        orders = _ints(args.orders) or (1,) * len(contacts)
        cs, rs, rhos, ages = target.lift_contacts(contacts, orders, args.ell)
        back = target.push_contacts(cs, rs, orders, args.ell)[0]
        payload["lift"] = {"contacts": cs, "orders": rs, "rho": rhos, "ages": list(ages), "pushed_back": back}
        lines.append(f"lift        contacts={cs} orders={rs} rho={rhos} ages={[str(x) for x in ages]}")
        lines.append(f"push back   {back}")
    factor = recursion.rescale_roots(Fraction(1), args.k, args.ell)
    payload["rescale_factor"] = factor
    lines.append(f"rescale     ell^(1+k) = {factor}")
    if args.value is not None:
        v = _rational(args.value)
        payload["rescaled_value"] = recursion.rescale_roots(v, args.k, args.ell)
        lines.append(f"value       {v} -> {payload['rescaled_value']}")
    return payload, "\n".join(lines)


def cmd_thresholds(args):
    fam = args.family
    if fam == "pn-hypersurface":
        entries = constraints.hypersurface_exceptions(args.n_max)
        payload = {"family": fam, "exceptions": [e.as_dict() for e in entries]}
        rows = [[e.degrees[0], e.n, "yes" if e.in_regime else "no (dim < 4)"] for e in entries]
        return payload, _table(rows, ["d", "N", "in regime"])
    if fam == "pn-hypersurface-table":
        rows = constraints.summarize_table(constraints.hypersurface_table(args.n_max, args.n_max), args.n_max)
        payload = {"family": fam, "rows": [{"d": d, "n_first": a, "n_last": b} for d, a, b in rows]}
        return payload, _table([[d, f"{a}..{b}"] for d, a, b in rows], ["d", "N"])
    if fam == "pn-ci":
        found = constraints.fano_exceptions(args.n_max)
        payload = {"family": fam, "exceptions": [list(ds) for ds in found]}
        return payload, _table([[",".join(map(str, ds))] for ds in found], ["degrees"])
    raise EffintError(f"unknown family {fam!r}")


def cmd_check_pushforward(args):
    order = args.order if args.order is not None else series.default_order()
    ok = recursion.pushforward_min_check(args.m, order)
    payload = {"m": args.m, "order": order, "holds": ok}
    return payload, f"push-forward identity for m={args.m} to order {order}: {'holds' if ok else 'FAILS'}"


# -- parser -------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="effint", description="Effective invariants of punctured R-maps.")
    p.add_argument("--format", choices=("table", "json"), default="table")
    # also accepted after the subcommand
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("table", "json"), default=argparse.SUPPRESS)
    sub = p.add_subparsers(dest="command", required=True)

    def with_target(sp):
        sp.add_argument("--target", required=True, help="JSON file, '-' for stdin, or a preset name")

    def with_data(sp):
        sp.add_argument("--genus", type=int, required=True)
        sp.add_argument("--beta", help="comma-separated curve class")
        sp.add_argument("--contacts", default="")
        sp.add_argument("--orders", default=None)
        sp.add_argument("--log-degree", type=int, default=None)
        sp.add_argument("--insertions", default=None, help="comma-separated monomials per marking")

    sp = sub.add_parser("analyze", parents=[common])
    with_target(sp)
    with_data(sp)
    sp.set_defaults(func=cmd_analyze)

    sp = sub.add_parser("census", parents=[common])
    with_target(sp)
    sp.add_argument("--genus-range", required=True)
    sp.set_defaults(func=cmd_census)

    sp = sub.add_parser("genus1", parents=[common])
    with_target(sp)
    sp.add_argument("--k", type=int, default=0)
    sp.add_argument("--insertions", default=None)
    sp.add_argument("--normalization", default=None)
    sp.set_defaults(func=cmd_genus1)

    sp = sub.add_parser("reduce", parents=[common])
    with_target(sp)
    with_data(sp)
    sp.add_argument("--k", type=int, default=0)
    sp.add_argument("--normalization", default=None)
    sp.set_defaults(func=cmd_reduce)

    sp = sub.add_parser("roots", parents=[common])
    sp.add_argument("--r", type=int, default=1)
    sp.add_argument("--d", type=int, default=1)
    sp.add_argument("--ell", type=int, required=True)
    sp.add_argument("--contacts", default="")
    sp.add_argument("--orders", default=None)
    sp.add_argument("--k", type=int, default=0)
    sp.add_argument("--value", default=None)
    sp.set_defaults(func=cmd_roots)

    sp = sub.add_parser("thresholds", parents=[common])
    sp.add_argument(
        "--family", required=True, choices=("pn-hypersurface", "pn-hypersurface-table", "pn-ci")
    )
    sp.add_argument("--n-max", type=int, default=60)
    sp.set_defaults(func=cmd_thresholds)

    sp = sub.add_parser("check-pushforward", parents=[common])
    sp.add_argument("--m", type=int, required=True)
    sp.add_argument("--order", type=int, default=None)
    sp.set_defaults(func=cmd_check_pushforward)
    return p


def _emit(fmt: str, payload, text: str, stream):
    if fmt == "json":
        stream.write(json.dumps(_to_json(payload), sort_keys=True, indent=2) + "\n")
    else:
        stream.write(text + "\n")


def _glue_negative_lists(argv: list[str]) -> list[str]:
    """Turn ``--contacts -2,-2`` into ``--contacts=-2,-2`` so argparse accepts it."""
    out, i = [], 0
    while i < len(argv):
        a = argv[i]
        nxt = argv[i + 1] if i + 1 < len(argv) else ""
        if a.startswith("--") and "=" not in a and len(nxt) > 1 and nxt[0] == "-" and nxt[1].isdigit():
            out.append(f"{a}={nxt}")
            i += 2
        else:
            out.append(a)
            i += 1
    return out


def run(argv=None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    argv = _glue_negative_lists(list(sys.argv[1:] if argv is None else argv))
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_INPUT
    try:
        payload, text = args.func(args)
    except InputProblem as problem:
        payload, text = problem.payload
        _emit(args.format, payload, text, stdout)
        return EXIT_INPUT
    except EffintError as exc:
        stderr.write(f"effint: error: {exc}\n")
        return EXIT_INPUT
    except Exception as exc:  # noqa: BLE001
        stderr.write(f"effint: internal error: {type(exc).__name__}: {exc}\n")
        return EXIT_INTERNAL
    _emit(args.format, payload, text, stdout)
    return EXIT_OK


def main():
    sys.exit(run())
