"""Command-line front end over the computational modules.

Every subcommand builds a JSON-able payload, which the --format switch
renders as text, json or csv; payloads are cached content-addressed
under (command, parameters, engine version).  Exit codes: 0 success,
2 usage error, 3 validation error or a report with axiom violations.
"""

from __future__ import annotations

import argparse
import io
import json
import sys
from csv import writer as csv_writer
from fractions import Fraction

from . import division, kaction, qcanon, signword
from .cache import cache_key, default_cache_dir, load_payload, store_payload
from .cherbloc import blocks as cher_blocks
from .cherbloc import crystal_string_lengths, hom_refl_triv, mp_crystal
from .posethier import (
    check_family_axioms,
    check_hierarchy,
    check_splitting_axioms,
    family_dag,
    multipartition_poset,
    parabolic_poset,
    partition_poset,
)
from .young import ChargedParams, parse_multipartition

__all__ = ["build_parser", "main"]


class SignWordParser(argparse.ArgumentParser):
    """Parser that keeps sign words like -+ or --+ out of option parsing.

    A token over the alphabet {+,-} with at least one '+', or three or
    more '-', is always a positional; a word of exactly two minuses must
    be passed after the -- separator.  Tokens like -1/2 or -1,0 (negative
    fractions, charge lists) are values, not options.
    """

    def _parse_optional(self, arg_string):
        chars = set(arg_string)
        if chars and chars <= {"+", "-"}:
            if "+" in chars or len(arg_string) >= 3:
                return None
        if len(arg_string) > 1 and arg_string[0] == "-" and arg_string[1].isdigit():
            return None
        return super()._parse_optional(arg_string)


def _parse_kappa(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise ValueError(f"kappa must be a rational p/q, got {text!r}") from exc


def _parse_charges(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(part) for part in text.split(","))
    except ValueError as exc:
        raise ValueError(
            f"charges must be comma-separated integers, got {text!r}") from exc


def _parse_mp(text: str) -> tuple:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ValueError(
            f"multipartition must be JSON like [[2,1],[1]], got {text!r}"
        ) from exc
    return parse_multipartition(data)


def _mp_json(lam) -> list:
    return [list(comp) for comp in lam]


# ------------------------------------------------------------ payloads

def _payload_resolve(args) -> dict:
    terms = division.min_projective_resolution(args.word)
    return {"t": args.word, "terms": [dict(sorted(term.items())) for term in terms]}


def _payload_ext(args) -> dict:
    table = division.ext_standard_simple(args.t, args.s)
    return {str(deg): mult for deg, mult in sorted(table.items())}


def _payload_homs(args) -> dict:
    return {"t": args.t, "s": args.s, "dim": division.hom_standards(args.t, args.s)}


def _assemble_tables(n: int) -> dict:
    dt = division.decomp_tables(n)
    order: list[str] = []
    spans = []
    for w in sorted(dt.blocks):
        bt = dt.blocks[w]
        spans.append((len(order), bt))
        order.extend(bt.order)
    size = len(order)

    def blockdiag(field: str) -> list[list[int]]:
        out = [[0] * size for _ in range(size)]
        for off, bt in spans:
            mat = getattr(bt, field)
            for i, rw in enumerate(mat):
                for j, v in enumerate(rw):
                    out[off + i][off + j] = v
        return out

    return {"n": n, "order": order, "M": blockdiag("M"),
            "Minv": blockdiag("Minv"), "B": blockdiag("B")}


def _payload_decomp(args) -> dict:
    if args.n < 0:
        raise ValueError(f"word length must be non-negative, got {args.n}")
    return _assemble_tables(args.n)


def _payload_tilting(args) -> dict:
    if args.n < 1:
        raise ValueError(f"word length must be positive, got {args.n}")
    tables = _assemble_tables(args.n)
    order = tables["order"]
    return {
        "n": args.n,
        "order": order,
        "B": tables["B"],
        "ext_degree": {s: division.tilt_ext_degree(s) for s in order},
        "socle": {s: division.socle_label(s) for s in order},
    }


def _payload_canonical(args) -> dict:
    if args.n < 0:
        raise ValueError(f"word length must be non-negative, got {args.n}")
    cb = qcanon.canonical_basis(args.n)
    return {
        t: {u: str(coeff) for u, coeff in sorted(vec.items())}
        for t, vec in sorted(cb.items())
    }


def _payload_act(args) -> list:
    if args.kind == "L":
        table = kaction.decompose_simple_image(args.op, args.word, args.power)
    else:
        table = kaction.decompose_image(args.op, args.kind, args.word, args.power)
    return [[w, m] for w, m in sorted(table.items())]


def _payload_theta(args) -> dict:
    return kaction.theta_block(args.n, args.w)


def _payload_el(args) -> dict:
    structure = division.el_structure(args.word)
    return {"t": structure.t, "labels": list(structure.labels)}


def _payload_crystal(args) -> dict:
    if args.mp is None:
        t = signword.parse_word(args.word)
        rf = signword.reduced_form(t)
        return {
            "word": t,
            "e": signword.crystal_e(t),
            "f": signword.crystal_f(t),
            "h_plus": len(rf.plus_positions),
            "h_minus": len(rf.minus_positions),
        }
    if args.kappa is None or args.charges is None:
        raise ValueError("--mp needs --kappa and --charges")
    lam = _parse_mp(args.mp)
    cp = ChargedParams(_parse_kappa(args.kappa), _parse_charges(args.charges))
    if len(lam) != cp.ell:
        raise ValueError(
            f"multipartition has {len(lam)} components, {cp.ell} charges given")
    up = mp_crystal("e", args.z, lam, cp)
    down = mp_crystal("f", args.z, lam, cp)
    return {
        "multipartition": _mp_json(lam),
        "z": args.z % cp.q,
        "e": None if up is None else _mp_json(up),
        "f": None if down is None else _mp_json(down),
        "string": list(crystal_string_lengths(lam, cp, args.z)),
    }


def _payload_blocks(args) -> list:
    cp = ChargedParams(_parse_kappa(args.kappa), _parse_charges(args.charges))
    return [[_mp_json(lam) for lam in cls] for cls in cher_blocks(args.n, cp)]


def _payload_refl_triv(args) -> dict:
    cp = ChargedParams(_parse_kappa(args.kappa), _parse_charges(args.charges))
    return {
        "n": args.n,
        "kappa": str(cp.kappa),
        "charges": list(cp.charges),
        "dim": hom_refl_triv(args.n, cp),
    }


def _payload_cup(args) -> dict:
    t = signword.parse_word(args.t)
    s = signword.parse_word(args.s)
    D = division.recover_division(t, s)
    if D is None:
        return {"t": t, "s": s, "found": False}
    return {
        "t": t,
        "s": s,
        "found": True,
        "degree": division.division_degree(t, D),
        "pairs": sorted([a, b] for a, b in D.pairs),
        "fixed_plus": sorted(D.fixed_plus),
        "fixed_minus": sorted(D.fixed_minus),
        "ascii": division.render_cup_diagram(t, D),
    }


def _payload_hier_check(args) -> dict:
    if args.poset == "partitions":
        ps = partition_poset(args.modulus, args.residue, args.max_size)
        params = {"modulus": args.modulus, "residue": args.residue,
                  "max_size": args.max_size}
    elif args.poset == "multipartitions":
        if args.kappa is None or args.charges is None:
            raise ValueError("multipartitions need --kappa and --charges")
        ps = multipartition_poset(
            _parse_kappa(args.kappa), _parse_charges(args.charges),
            args.max_size, args.z)
        params = {"kappa": args.kappa, "charges": list(_parse_charges(args.charges)),
                  "max_size": args.max_size, "z": args.z}
    else:
        if args.sizes is None:
            raise ValueError("parabolic needs --sizes")
        sizes = _parse_charges(args.sizes)
        ps = parabolic_poset(sizes, args.lo, args.hi, args.modulus, args.residue)
        params = {"sizes": list(sizes), "lo": args.lo, "hi": args.hi,
                  "modulus": args.modulus, "residue": args.residue}
    report = {
        "kind": ps.kind,
        "params": params,
        "side": args.side,
        "elements": len(ps.elements),
        "families": len(ps.families),
        "family": check_family_axioms(ps),
        "splitting": check_splitting_axioms(ps, side=args.side),
        "hierarchy": check_hierarchy(ps, side=args.side),
        "dag": family_dag(ps),
    }
    report["violation_count"] = (
        report["family"]["violation_count"]
        + report["splitting"]["violation_count"]
        + report["hierarchy"]["violation_count"]
    )
    return report


# ------------------------------------------------------------ text rendering

_SUBSCRIPTS = str.maketrans("0123456789", "₀₁₂₃₄₅₆₇₈₉")


def _term_text(term: dict, wrap: str) -> str:
    parts = []
    for w, m in sorted(term.items()):
        parts.append(f"{wrap}({w})" if m == 1 else f"{m}*{wrap}({w})")
    return " + ".join(parts) if parts else "0"


def _text_resolve(payload) -> str:
    return "\n".join(
        f"P{str(i).translate(_SUBSCRIPTS)} = {_term_text(term, 'P')}"
        for i, term in enumerate(payload["terms"]))


def _text_ext(payload) -> str:
    if not payload:
        return "Ext = 0"
    return "\n".join(f"Ext^{d} = {m}" for d, m in payload.items())


def _text_homs(payload) -> str:
    return str(payload["dim"])


def _matrix_text(order_rows, order_cols, matrix) -> str:
    width = max([len(w) for w in order_rows + order_cols] + [2])
    head = " " * (width + 1) + " ".join(f"{w:>{width}}" for w in order_cols)
    lines = [head]
    for w, rw in zip(order_rows, matrix):
        lines.append(f"{w:>{width}} " + " ".join(f"{v:>{width}}" for v in rw))
    return "\n".join(lines)


def _text_decomp(payload) -> str:
    out = [f"n = {payload['n']}"]
    for field in ("M", "Minv", "B"):
        out.append(f"{field}:")
        out.append(_matrix_text(payload["order"], payload["order"], payload[field]))
    return "\n".join(out)


def _text_tilting(payload) -> str:
    out = [f"n = {payload['n']}"]
    for s in payload["order"]:
        out.append(f"T({s}): ext_degree={payload['ext_degree'][s]} "
                   f"socle={payload['socle'][s]}")
    out.append("B:")
    out.append(_matrix_text(payload["order"], payload["order"], payload["B"]))
    return "\n".join(out)


def _text_canonical(payload) -> str:
    lines = []
    for t, vec in payload.items():
        parts = []
        for u, coeff in vec.items():
            parts.append(f"v({u})" if coeff == "1" else f"({coeff})*v({u})")
        lines.append(f"b({t}) = " + " + ".join(parts))
    return "\n".join(lines)


def _text_act(payload) -> str:
    if not payload:
        return "0"
    return "\n".join(f"{w} x {m}" for w, m in payload)


def _text_theta(payload) -> str:
    head = f"theta n={payload['n']} w={payload['w']} -> {-payload['w']}"
    return head + "\n" + _matrix_text(
        payload["target_order"], payload["source_order"], payload["matrix"])


def _text_el(payload) -> str:
    if not payload["labels"]:
        return f"EL({payload['t']}) = 0"
    return f"EL({payload['t']}) = " + " + ".join(
        f"L({w})" for w in payload["labels"])


def _text_crystal(payload) -> str:
    if "word" in payload:
        return "\n".join([
            f"word: {payload['word']}",
            f"e: {payload['e'] or 'none'}",
            f"f: {payload['f'] or 'none'}",
            f"h+: {payload['h_plus']}  h-: {payload['h_minus']}",
        ])
    return "\n".join([
        f"multipartition: {json.dumps(payload['multipartition'])}",
        f"z: {payload['z']}",
        f"e: {json.dumps(payload['e']) if payload['e'] is not None else 'none'}",
        f"f: {json.dumps(payload['f']) if payload['f'] is not None else 'none'}",
        f"string: e^{payload['string'][0]} f^{payload['string'][1]}",
    ])


def _text_blocks(payload) -> str:
    lines = []
    for i, cls in enumerate(payload):
        members = " ".join(json.dumps(lam) for lam in cls)
        lines.append(f"block {i}: {members}")
    return "\n".join(lines)


def _text_refl_triv(payload) -> str:
    return str(payload["dim"])


def _text_cup(payload) -> str:
    if not payload["found"]:
        return f"no division {payload['t']} -> {payload['s']}"
    return (f"{payload['t']} -> {payload['s']}  degree {payload['degree']}\n"
            + payload["ascii"])


def _text_hier_check(payload) -> str:
    lines = [
        f"kind: {payload['kind']}",
        f"side: {payload['side']}",
        f"elements: {payload['elements']}  families: {payload['families']}",
        f"family violations: {payload['family']['violation_count']}",
        f"splitting violations: {payload['splitting']['violation_count']}",
        f"hierarchy nodes: {payload['hierarchy']['nodes']}  "
        f"violations: {payload['hierarchy']['violation_count']}",
        f"family graph acyclic: {payload['dag']['acyclic']}",
    ]
    if payload["dag"]["cycle"]:
        lines.append("cycle: " + " -> ".join(payload["dag"]["cycle"]))
    for section in ("family", "splitting", "hierarchy"):
        for witness in payload[section]["violations"]:
            lines.append(f"[{section}] " + json.dumps(witness))
    return "\n".join(lines)


# ------------------------------------------------------------ csv rendering

def _csv(rows) -> str:
    buf = io.StringIO()
    w = csv_writer(buf, lineterminator="\n")
    for row in rows:
        w.writerow(row)
    return buf.getvalue().rstrip("\n")


def _csv_resolve(payload) -> str:
    rows = [("degree", "word", "multiplicity")]
    for i, term in enumerate(payload["terms"]):
        for word, mult in term.items():
            rows.append((i, word, mult))
    return _csv(rows)


def _csv_ext(payload) -> str:
    return _csv([("degree", "multiplicity")] + [(d, m) for d, m in payload.items()])


def _csv_homs(payload) -> str:
    return _csv([("t", "s", "dim"), (payload["t"], payload["s"], payload["dim"])])


def _csv_matrix(order_rows, order_cols, matrix) -> str:
    rows = [["word"] + list(order_cols)]
    for w, rw in zip(order_rows, matrix):
        rows.append([w] + list(rw))
    return _csv(rows)


def _csv_decomp(payload) -> str:
    return _csv_matrix(payload["order"], payload["order"], payload["Minv"])


def _csv_tilting(payload) -> str:
    rows = [("word", "ext_degree", "socle")]
    for s in payload["order"]:
        rows.append((s, payload["ext_degree"][s], payload["socle"][s]))
    return _csv(rows)


def _csv_canonical(payload) -> str:
    rows = [("t", "u", "coefficient")]
    for t, vec in payload.items():
        for u, coeff in vec.items():
            rows.append((t, u, coeff))
    return _csv(rows)


def _csv_act(payload) -> str:
    return _csv([("word", "multiplicity")] + [tuple(r) for r in payload])


def _csv_theta(payload) -> str:
    return _csv_matrix(payload["target_order"], payload["source_order"],
                       payload["matrix"])


def _csv_el(payload) -> str:
    return _csv([("label",)] + [(w,) for w in payload["labels"]])


def _csv_crystal(payload) -> str:
    keys = [k for k in payload.keys()]
    rows = [("key", "value")]
    for k in keys:
        v = payload[k]
        rows.append((k, json.dumps(v) if isinstance(v, (list, dict)) else v))
    return _csv(rows)


def _csv_blocks(payload) -> str:
    rows = [("block", "multipartition")]
    for i, cls in enumerate(payload):
        for lam in cls:
            rows.append((i, json.dumps(lam)))
    return _csv(rows)


def _csv_refl_triv(payload) -> str:
    return _csv([("n", "kappa", "charges", "dim"),
                 (payload["n"], payload["kappa"],
                  json.dumps(payload["charges"]), payload["dim"])])


def _csv_cup(payload) -> str:
    rows = [("kind", "a", "b")]
    if payload["found"]:
        for a, b in payload["pairs"]:
            rows.append(("pair", a, b))
        for p in payload["fixed_plus"]:
            rows.append(("plus", p, ""))
        for p in payload["fixed_minus"]:
            rows.append(("minus", p, ""))
    return _csv(rows)


def _csv_hier_check(payload) -> str:
    rows = [("section", "key", "value"),
            ("poset", "kind", payload["kind"]),
            ("poset", "side", payload["side"]),
            ("poset", "elements", payload["elements"]),
            ("poset", "families", payload["families"]),
            ("family", "violations", payload["family"]["violation_count"]),
            ("splitting", "violations", payload["splitting"]["violation_count"]),
            ("hierarchy", "nodes", payload["hierarchy"]["nodes"]),
            ("hierarchy", "violations", payload["hierarchy"]["violation_count"]),
            ("dag", "acyclic", payload["dag"]["acyclic"])]
    for section in ("family", "splitting", "hierarchy"):
        for witness in payload[section]["violations"]:
            rows.append((section, "witness", json.dumps(witness)))
    return _csv(rows)


# ------------------------------------------------------------ figures

def _figure_cup(payload, path):
    from .figures import cup_figure

    cup_figure(payload, path)


def _figure_decomp(payload, path):
    from .figures import matrix_figure

    matrix_figure(payload["Minv"], payload["order"], payload["order"],
                  f"decomposition matrix, n = {payload['n']}", path)


def _figure_tilting(payload, path):
    from .figures import matrix_figure

    matrix_figure(payload["B"], payload["order"], payload["order"],
                  f"tilting table, n = {payload['n']}", path)


def _figure_theta(payload, path):
    from .figures import matrix_figure

    matrix_figure(payload["matrix"], payload["target_order"],
                  payload["source_order"],
                  f"theta block n = {payload['n']}, w = {payload['w']}", path)


def _figure_hier_check(payload, path):
    from .figures import hierarchy_figure

    hierarchy_figure(payload["hierarchy"]["tree"], path)


_COMMANDS = {
    "resolve": (_payload_resolve, _text_resolve, _csv_resolve, None),
    "ext": (_payload_ext, _text_ext, _csv_ext, None),
    "homs": (_payload_homs, _text_homs, _csv_homs, None),
    "decomp": (_payload_decomp, _text_decomp, _csv_decomp, _figure_decomp),
    "tilting": (_payload_tilting, _text_tilting, _csv_tilting, _figure_tilting),
    "canonical": (_payload_canonical, _text_canonical, _csv_canonical, None),
    "act": (_payload_act, _text_act, _csv_act, None),
    "theta": (_payload_theta, _text_theta, _csv_theta, _figure_theta),
    "el": (_payload_el, _text_el, _csv_el, None),
    "crystal": (_payload_crystal, _text_crystal, _csv_crystal, None),
    "blocks": (_payload_blocks, _text_blocks, _csv_blocks, None),
    "refl-triv": (_payload_refl_triv, _text_refl_triv, _csv_refl_triv, None),
    "hier-check": (_payload_hier_check, _text_hier_check, _csv_hier_check,
                   _figure_hier_check),
    "cup": (_payload_cup, _text_cup, _csv_cup, _figure_cup),
}

_FIGURE_COMMANDS = {name for name, spec in _COMMANDS.items() if spec[3]}


# ------------------------------------------------------------ parser

def build_parser() -> argparse.ArgumentParser:
    parser = SignWordParser(
        prog="basiccat",
        description="Exact combinatorics of basic highest-weight "
                    "categorifications: resolutions, Ext tables, canonical "
                    "bases, reflections, poset axiom checks and block "
                    "decompositions.")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "json", "csv"),
                        default="text", help="output format (default text)")
    common.add_argument("--cache-dir", default=None, metavar="DIR",
                        help="cache directory (default ~/.cache/basiccat)")
    common.add_argument("--no-cache", action="store_true",
                        help="compute without reading or writing the cache")
    fig = argparse.ArgumentParser(add_help=False)
    fig.add_argument("--figure", default=None, metavar="PATH",
                     help="also render a figure to PATH")

    sub = parser.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("resolve", parents=[common],
                        help="minimal projective resolution of a standard")
    sp.add_argument("word", help="sign word, e.g. +-")

    sp = sub.add_parser("ext", parents=[common],
                        help="Ext groups from a standard to a simple")
    sp.add_argument("t")
    sp.add_argument("s")

    sp = sub.add_parser("homs", parents=[common],
                        help="Hom dimension between standards")
    sp.add_argument("t")
    sp.add_argument("s")

    sp = sub.add_parser("decomp", parents=[common, fig],
                        help="character/decomposition/tilting tables")
    sp.add_argument("-n", type=int, required=True, help="word length")

    sp = sub.add_parser("tilting", parents=[common, fig],
                        help="tilting table, Ext degrees and socle labels")
    sp.add_argument("-n", type=int, required=True)

    sp = sub.add_parser("canonical", parents=[common],
                        help="canonical basis in the q-tensor power")
    sp.add_argument("-n", type=int, required=True)

    sp = sub.add_parser("act", parents=[common],
                        help="decompose e/f images of a class")
    sp.add_argument("word")
    sp.add_argument("--kind", choices=("P", "T", "L"), required=True,
                    help="projective, tilting or simple")
    sp.add_argument("--op", choices=("e", "f"), required=True)
    sp.add_argument("--power", type=int, default=1, metavar="K",
                    help="divided power exponent (default 1)")

    sp = sub.add_parser("theta", parents=[common, fig],
                        help="reflection matrix on one weight block")
    sp.add_argument("-n", type=int, required=True)
    sp.add_argument("-w", type=int, required=True, help="source weight")

    sp = sub.add_parser("el", parents=[common],
                        help="simple constituents of E on a simple class")
    sp.add_argument("word")

    sp = sub.add_parser("crystal", parents=[common],
                        help="crystal operators on a word or multipartition")
    sp.add_argument("word", nargs="?", default=None)
    sp.add_argument("--mp", default=None, metavar="JSON",
                    help='multipartition, e.g. "[[2,1],[1]]"')
    sp.add_argument("--z", type=int, default=0, help="residue class")
    sp.add_argument("--kappa", default=None, metavar="P/Q")
    sp.add_argument("--charges", default=None, metavar="A,B,...")

    sp = sub.add_parser("blocks", parents=[common],
                        help="block decomposition of multipartitions of n")
    sp.add_argument("-n", type=int, required=True)
    sp.add_argument("--kappa", required=True, metavar="P/Q")
    sp.add_argument("--charges", required=True, metavar="A,B,...")

    sp = sub.add_parser("refl-triv", parents=[common],
                        help="Hom dimension from the reflection standard")
    sp.add_argument("-n", type=int, required=True)
    sp.add_argument("--kappa", required=True, metavar="P/Q")
    sp.add_argument("--charges", required=True, metavar="A,B,...")

    sp = sub.add_parser("hier-check", parents=[common, fig],
                        help="family/splitting/hierarchy axiom report")
    sp.add_argument("--poset", required=True,
                    choices=("partitions", "multipartitions", "parabolic"))
    sp.add_argument("--side", choices=("primal", "dual"), default="primal")
    sp.add_argument("--modulus", type=int, default=0, metavar="N")
    sp.add_argument("--residue", type=int, default=0, metavar="R")
    sp.add_argument("--max-size", type=int, default=8)
    sp.add_argument("--kappa", default=None, metavar="P/Q")
    sp.add_argument("--charges", default=None, metavar="A,B,...")
    sp.add_argument("--z", type=int, default=0)
    sp.add_argument("--sizes", default=None, metavar="M1,M2,...",
                    help="parabolic block sizes")
    sp.add_argument("--lo", type=int, default=0)
    sp.add_argument("--hi", type=int, default=4)

    sp = sub.add_parser("cup", parents=[common, fig],
                        help="cup diagram of the division t -> s")
    sp.add_argument("t")
    sp.add_argument("s")

    return parser


def _cache_params(args) -> dict:
    skip = {"command", "format", "cache_dir", "no_cache", "figure"}
    return {k: v for k, v in sorted(vars(args).items()) if k not in skip}


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 2

    if args.command == "crystal" and (args.word is None) == (args.mp is None):
        print("error: crystal needs exactly one of <word> or --mp",
              file=sys.stderr)
        return 2
    if getattr(args, "figure", None) and args.command not in _FIGURE_COMMANDS:
        print(f"error: --figure is not available for {args.command}",
              file=sys.stderr)
        return 2

    build, text_fn, csv_fn, figure_fn = _COMMANDS[args.command]
    params = _cache_params(args)
    key = cache_key(args.command, params)
    cache_dir = args.cache_dir or default_cache_dir()

    payload = None
    if not args.no_cache:
        payload = load_payload(cache_dir, key)
    if payload is None:
        try:
            payload = build(args)
        except ValueError as exc:
            print(f"error: {exc}", file=sys.stderr)
            return 3
        # normalize through JSON so cached and fresh payloads have
        # identical shapes (tuples become lists, keys become strings)
        payload = json.loads(json.dumps(payload))
        if not args.no_cache:
            store_payload(cache_dir, key, args.command, params, payload)

    if args.format == "json":
        print(json.dumps(payload))
    elif args.format == "csv":
        print(csv_fn(payload))
    else:
        print(text_fn(payload))

    if getattr(args, "figure", None):
        figure_fn(payload, args.figure)
        print(f"figure written to {args.figure}", file=sys.stderr)

    if args.command == "hier-check" and payload["violation_count"]:
        return 3
    return 0
