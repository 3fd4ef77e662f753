"""Batch command-line surface over the library.

One binary with subcommand routing; inputs are JSON files (or stdin via
"-"), outputs are byte-stable for fixed inputs and flags.  Exit codes:
0 success, 2 domain errors, 3 budget exhaustion.  Diagnostics go to
stderr only.
"""

from __future__ import annotations

import argparse
import json
import sys

from .coeff_ring import LaurentPoly, param_ring_for
from .completed import (
    EFunction,
    Region,
    TruncatedElement,
    center_test,
    e_function_expand,
    mult_truncated,
    truncated_from_json,
)
from .errors import BudgetError, KacMoodyError
from .hecke_bl import BLElement, commute_Hi_past_Z, mult_bl
from .parahoric import (
    CosetLabel,
    double_coset,
    face_type,
    nonspherical_failure_stream,
    parahoric_product,
    tree_orbit_size,
)
from .root_system import (
    classify_components,
    datum_from_json,
    datum_to_json,
    validate_gcm,
)
from .weyl import (
    all_reduced_words,
    bruhat_leq,
    dominant_representative,
    element_from_word,
    orbit_enumerate,
    weyl_to_json,
)

DEFAULT_ORBIT_CAP = 100_000
DEFAULT_WORD_CAP = 10_000
DEFAULT_TITS_BUDGET = 1_000


def _read_json(path: str):
    if path == "-":
        return json.load(sys.stdin)
    with open(path, "r", encoding="utf-8") as fh:
        return json.load(fh)


def _load_datum(path: str):
    return datum_from_json(_read_json(path))


def _point(text: str):
    return tuple(int(x) for x in text.split(",") if x != "")


def _word(text: str):
    if text.strip() == "" or text.strip() == "e":
        return ()
    return tuple(int(x) for x in text.split(",") if x != "")


def _points(text: str):
    return tuple(_point(part) for part in text.split(";") if part != "")


def _region_from_args(args) -> Region:
    if args.region_gens is None:
        raise KacMoodyError("--region-gens is required for this command")
    return Region.cone(_points(args.region_gens), args.region_height)


def _emit(payload, fmt: str, table_lines):
    # construction order of every payload is canonical, so no key sorting
    if fmt == "json":
        print(json.dumps(payload, separators=(",", ":")))
    else:
        for line in table_lines:
            print(line)


def _element_lines(element: BLElement):
    return [element.render()]


# --- subcommand handlers ---

def _cmd_gcm_validate(args):
    data = _read_json(args.file)
    matrix = data["gcm"] if isinstance(data, dict) else data
    gcm = validate_gcm(matrix)
    _emit({"ok": True, "rank": gcm.n}, args.format, [f"valid GCM of rank {gcm.n}"])
    return 0


def _cmd_realize(args):
    datum = _load_datum(args.file)
    payload = datum_to_json(datum)
    _emit(
        payload,
        args.format,
        [
            f"rank_y {datum.rank_y}",
            "coroots " + "; ".join(",".join(map(str, v)) for v in datum.coroots),
            "roots " + "; ".join(",".join(map(str, v)) for v in datum.roots),
        ],
    )
    return 0


def _cmd_classify(args):
    datum = _load_datum(args.datum)
    report = classify_components(datum)
    payload = [
        {
            "indices": list(c.indices),
            "kind": c.kind,
            **({"kernel": list(c.delta_coeffs)} if c.delta_coeffs else {}),
        }
        for c in report.components
    ]
    lines = [
        f"component {list(c.indices)}: {c.kind}"
        + (f" kernel {list(c.delta_coeffs)}" if c.delta_coeffs else "")
        for c in report.components
    ]
    _emit(payload, args.format, lines)
    return 0


def _cmd_weyl_orbit(args):
    datum = _load_datum(args.datum)
    res = orbit_enumerate(
        datum,
        _point(args.point),
        max_length=args.max_length,
        max_height_drop=args.max_height_drop,
        max_count=args.budget_orbit,
    )
    payload = {"points": [list(p) for p in res.points], "complete": res.complete}
    lines = [",".join(map(str, p)) for p in res.points] + [f"complete: {res.complete}"]
    _emit(payload, args.format, lines)
    return 0


def _cmd_weyl_dominant(args):
    datum = _load_datum(args.datum)
    rep = dominant_representative(datum, _point(args.point), budget=args.budget_tits)
    payload = {
        "status": rep.status,
        "dominant": None if rep.dominant is None else list(rep.dominant),
        "minimizer": None if rep.minimizer is None else list(rep.minimizer.word),
    }
    lines = [f"status: {rep.status}"]
    if rep.dominant is not None:
        lines.append("dominant: " + ",".join(map(str, rep.dominant)))
        lines.append("word: " + ",".join(map(str, rep.minimizer.word)))
    _emit(payload, args.format, lines)
    return 0


def _cmd_weyl_bruhat(args):
    datum = _load_datum(args.datum)
    u = element_from_word(datum, _word(args.left))
    w = element_from_word(datum, _word(args.right))
    ans = bruhat_leq(u, w)
    _emit({"leq": ans}, args.format, [str(ans)])
    return 0


def _cmd_weyl_words(args):
    datum = _load_datum(args.datum)
    w = element_from_word(datum, _word(args.word))
    words = sorted(all_reduced_words(w, cap=args.budget_words))
    payload = [list(x) for x in words]
    _emit(payload, args.format, [",".join(map(str, x)) or "e" for x in words])
    return 0


def _cmd_hecke_mul(args):
    datum = _load_datum(args.datum)
    classes = param_ring_for(datum)
    a = BLElement.from_json(datum, classes, _read_json(args.left))
    b = BLElement.from_json(datum, classes, _read_json(args.right))
    prod = mult_bl(a, b)
    _emit(prod.to_json(), args.format, _element_lines(prod))
    return 0


def _cmd_hecke_commute(args):
    datum = _load_datum(args.datum)
    classes = param_ring_for(datum)
    res = commute_Hi_past_Z(datum, classes, args.index, _point(args.point))
    _emit(res.to_json(), args.format, _element_lines(res))
    return 0


def _cmd_complete_mul(args):
    datum = _load_datum(args.datum)
    classes = param_ring_for(datum)
    a = truncated_from_json(datum, classes, _read_json(args.left))
    b = truncated_from_json(datum, classes, _read_json(args.right))
    target = _region_from_args(args)
    res = mult_truncated(a, b, target, u_cap=args.u_cap)
    _emit(res.to_json(), args.format, _truncated_lines(datum, res))
    return 0


def _truncated_lines(datum, el: TruncatedElement):
    from .root_system import height_between
    from .weyl import IN_TITS_CONE, dominant_representative

    def hdrop(lam):
        rep = dominant_representative(datum, lam)
        if rep.status != IN_TITS_CONE:
            return -1
        return height_between(datum, lam, rep.dominant)

    names = param_ring_for(datum).names()
    lines = []
    for (lam, w), p in sorted(
        el.coeffs.items(), key=lambda kv: (hdrop(kv[0][0]), kv[0][0], kv[0][1].word)
    ):
        word = ",".join(map(str, w.word)) or "e"
        lines.append(f"{','.join(map(str, lam))} | {word} | {p.render(names)}")
    return lines or ["0"]


def _cmd_complete_efun(args):
    datum = _load_datum(args.datum)
    classes = param_ring_for(datum)
    data = _read_json(args.function)
    coeffs = tuple(
        (
            tuple(entry["lambda"]),
            classes.one()
            if "coeff" not in entry
            else LaurentPoly.from_json(classes.nclasses, entry["coeff"]),
        )
        for entry in data
    )
    fun = EFunction(datum, classes, coeffs)
    res = e_function_expand(fun, _region_from_args(args))
    _emit(res.to_json(), args.format, _truncated_lines(datum, res))
    return 0


def _cmd_complete_center(args):
    datum = _load_datum(args.datum)
    classes = param_ring_for(datum)
    a = truncated_from_json(datum, classes, _read_json(args.element))
    z_probes = None if args.probes is None else _points(args.probes)
    verdict = center_test(a, z_probes=z_probes, u_cap=args.u_cap)
    payload = {
        "status": verdict.status,
        "detail": verdict.detail,
        "probe": None if verdict.probe is None else verdict.probe.to_json(),
        "coordinate": None
        if verdict.coordinate is None
        else {
            "lambda": list(verdict.coordinate[0]),
            "word": list(verdict.coordinate[1].word),
        },
    }
    lines = [f"status: {verdict.status}"]
    if verdict.detail:
        lines.append(f"detail: {verdict.detail}")
    if verdict.probe is not None:
        lines.append(f"probe: {verdict.probe.render()}")
    _emit(payload, args.format, lines)
    return 0


def _cmd_parahoric_coset(args):
    datum = _load_datum(args.datum)
    face = face_type(datum, _word(args.jzero))
    label, pairs = double_coset(face, _point(args.point), element_from_word(datum, _word(args.word)))
    payload = {
        "label": label.to_json(),
        "coset": [{"lambda": list(p), "word": list(w.word)} for p, w in pairs],
    }
    lines = [f"label: {','.join(map(str, label.lam))} | {','.join(map(str, label.word)) or 'e'}"]
    lines += [
        f"{','.join(map(str, p))} | {','.join(map(str, w.word)) or 'e'}" for p, w in pairs
    ]
    _emit(payload, args.format, lines)
    return 0


def _cmd_parahoric_product(args):
    datum = _load_datum(args.datum)
    face = face_type(datum, _word(args.jzero))
    d1 = json.loads(args.d1)
    d2 = json.loads(args.d2)
    l1 = CosetLabel(tuple(d1["lambda"]), tuple(d1["word"]))
    l2 = CosetLabel(tuple(d2["lambda"]), tuple(d2["word"]))
    constants = parahoric_product(face, l1, l2)
    names = param_ring_for(datum).names()
    items = sorted(constants.items(), key=lambda kv: (kv[0].lam, kv[0].word))
    payload = {
        "d1": l1.to_json(),
        "d2": l2.to_json(),
        "constants": [
            {"label": lbl.to_json(), "coeff": poly.to_json()} for lbl, poly in items
        ],
    }
    lines = [
        f"{','.join(map(str, lbl.lam))} | {','.join(map(str, lbl.word)) or 'e'} | {poly.render(names)}"
        for lbl, poly in items
    ]
    _emit(payload, args.format, lines)
    return 0


def _cmd_parahoric_failure(args):
    datum = _load_datum(args.datum)
    face = face_type(datum, _word(args.jzero))
    stream = nonspherical_failure_stream(face, args.count)
    payload = {
        "witness": weyl_to_json(stream.witness),
        "face_point": list(stream.face_interior_point),
        "elements": [e.to_json() for e in stream.elements],
    }
    lines = [f"witness: {','.join(map(str, stream.witness.word)) or 'e'}"]
    lines += [",".join(map(str, e.point)) for e in stream.elements]
    _emit(payload, args.format, lines)
    return 0


def _cmd_parahoric_treecount(args):
    if args.q is not None and args.qprime is not None:
        val = tree_orbit_size(args.length, args.q, args.qprime)
        _emit({"value": val}, args.format, [str(val)])
    else:
        poly = tree_orbit_size(args.length)
        _emit({"poly": poly.to_json()}, args.format, [poly.render(("q", "q'"))])
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="kmhecke", description=__doc__)
    parser.add_argument("--format", choices=("table", "json"), default="table")
    sub = parser.add_subparsers(dest="command", required=True)

    def with_datum(p):
        p.add_argument("--datum", required=True, help="root datum JSON file or -")
        return p

    g = sub.add_parser("gcm").add_subparsers(dest="sub", required=True)
    v = g.add_parser("validate")
    v.add_argument("file")
    v.set_defaults(fn=_cmd_gcm_validate)

    r = sub.add_parser("realize")
    r.add_argument("file")
    r.set_defaults(fn=_cmd_realize)

    c = sub.add_parser("classify")
    with_datum(c)
    c.set_defaults(fn=_cmd_classify)

    w = sub.add_parser("weyl").add_subparsers(dest="sub", required=True)
    wo = with_datum(w.add_parser("orbit"))
    wo.add_argument("--point", required=True)
    wo.add_argument("--budget-orbit", type=int, default=DEFAULT_ORBIT_CAP)
    wo.add_argument("--max-length", type=int, default=None)
    wo.add_argument("--max-height-drop", type=int, default=None)
    wo.set_defaults(fn=_cmd_weyl_orbit)
    wd = with_datum(w.add_parser("dominant"))
    wd.add_argument("--point", required=True)
    wd.add_argument("--budget-tits", type=int, default=DEFAULT_TITS_BUDGET)
    wd.set_defaults(fn=_cmd_weyl_dominant)
    wb = with_datum(w.add_parser("bruhat"))
    wb.add_argument("--left", required=True)
    wb.add_argument("--right", required=True)
    wb.set_defaults(fn=_cmd_weyl_bruhat)
    ww = with_datum(w.add_parser("words"))
    ww.add_argument("--word", required=True)
    ww.add_argument("--budget-words", type=int, default=DEFAULT_WORD_CAP)
    ww.set_defaults(fn=_cmd_weyl_words)

    h = sub.add_parser("hecke").add_subparsers(dest="sub", required=True)
    hm = with_datum(h.add_parser("mul"))
    hm.add_argument("left")
    hm.add_argument("right")
    hm.set_defaults(fn=_cmd_hecke_mul)
    hc = with_datum(h.add_parser("commute"))
    hc.add_argument("--index", type=int, required=True)
    hc.add_argument("--point", required=True)
    hc.set_defaults(fn=_cmd_hecke_commute)

    k = sub.add_parser("complete").add_subparsers(dest="sub", required=True)
    km = with_datum(k.add_parser("mul"))
    km.add_argument("left")
    km.add_argument("right")
    km.add_argument("--region-gens", default=None)
    km.add_argument("--region-height", type=int, default=0)
    km.add_argument("--u-cap", type=int, default=8)
    km.set_defaults(fn=_cmd_complete_mul)
    ke = with_datum(k.add_parser("efun"))
    ke.add_argument("function")
    ke.add_argument("--region-gens", default=None)
    ke.add_argument("--region-height", type=int, default=0)
    ke.set_defaults(fn=_cmd_complete_efun)
    kc = with_datum(k.add_parser("center"))
    kc.add_argument("element")
    kc.add_argument("--probes", default=None)
    kc.add_argument("--u-cap", type=int, default=8)
    kc.set_defaults(fn=_cmd_complete_center)

    p = sub.add_parser("parahoric").add_subparsers(dest="sub", required=True)
    pc = with_datum(p.add_parser("coset"))
    pc.add_argument("--jzero", required=True)
    pc.add_argument("--point", required=True)
    pc.add_argument("--word", default="")
    pc.set_defaults(fn=_cmd_parahoric_coset)
    pp = with_datum(p.add_parser("product"))
    pp.add_argument("--jzero", required=True)
    pp.add_argument("--d1", required=True)
    pp.add_argument("--d2", required=True)
    pp.set_defaults(fn=_cmd_parahoric_product)
    pf = with_datum(p.add_parser("failure"))
    pf.add_argument("--jzero", required=True)
    pf.add_argument("--count", type=int, required=True)
    pf.set_defaults(fn=_cmd_parahoric_failure)
    pt = p.add_parser("treecount")
    pt.add_argument("--length", type=int, required=True)
    pt.add_argument("--q", type=int, default=None)
    pt.add_argument("--qprime", type=int, default=None)
    pt.set_defaults(fn=_cmd_parahoric_treecount)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except BudgetError as exc:
        print(f"budget exhausted: {exc}", file=sys.stderr)
        return 3
    except KacMoodyError as exc:
        print(f"{type(exc).__name__}: {exc}", file=sys.stderr)
        return 2
    except (json.JSONDecodeError, KeyError, ValueError, OSError) as exc:
        print(f"ParseError: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
