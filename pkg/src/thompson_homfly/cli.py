"""Command line entry point ``thl``.

Exit codes: 0 success, 2 bad input, 3 element not in the oriented subgroup,
4 a Gram matrix failed positivity inside r >= k + 2, 5 internal error.
"""

from __future__ import annotations

import argparse
import datetime
import json
import logging
import random
import sys
import warnings
from pathlib import Path

from .forest import ParseError, invert, multiply, reduce
from .gram import PSD_TOL, OutOfRangeWarning, PhiTable, element_gram, random_families, spectrum, tangle_gram
from .homfly import (
    DegenerateParameters,
    OpenDiagramError,
    default_engine,
    delta_num,
    evaluate,
    homfly,
    homfly_pd,
    normalize,
    pd_from_knot_atlas,
)
from .signs import NotOriented, enumerate_oriented, first_sign_mismatch, is_oriented, leaf_signs
from .tangles import (
    BoundaryMismatch,
    DiagramError,
    build_link,
    build_unoriented_link,
    component_count,
    from_dict,
    random_tangle_family,
    to_dict,
)
from .validation import (
    check_convention,
    check_family,
    check_leaves,
    check_normalization,
    check_params,
    check_params_list,
    check_tolerance,
    parse_element,
)

EXIT_OK, EXIT_PARSE, EXIT_NOT_ORIENTED, EXIT_POSITIVITY, EXIT_INTERNAL = 0, 2, 3, 4, 5

log = logging.getLogger("thl")


def _shared(p: argparse.ArgumentParser) -> None:
    p.add_argument("--r", type=int, default=None, help="root of unity order (s = exp(i pi / r))")
    p.add_argument("--k", type=int, default=None, help="a = s^(-2k)")
    p.add_argument("--tol", type=float, default=PSD_TOL, help="PSD tolerance on the minimum eigenvalue")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--convention", default="standard", choices=["standard", "mirror"])
    p.add_argument("--normalization", default="std", choices=["std", "loop"])
    p.add_argument("--deterministic", action="store_true", help="omit the timestamp field")
    p.add_argument("--out", type=Path, default=None, help="write JSON here instead of stdout")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="thl", description="Thompson group links and HOMFLYPT positivity")
    sub = ap.add_subparsers(dest="command", required=True)

    el = sub.add_parser("element", help="parse, reduce, multiply, invert or membership-test elements")
    el.add_argument("verb", choices=["parse", "reduce", "multiply", "invert", "orient-check"])
    el.add_argument("element")
    el.add_argument("other", nargs="?")
    _shared(el)

    ln = sub.add_parser("link", help="emit the diagram L(g) as PD JSON")
    ln.add_argument("element")
    ln.add_argument("--unoriented", action="store_true")
    ln.add_argument("--svg", type=Path, default=None)
    _shared(ln)

    hf = sub.add_parser("homfly", help="HOMFLYPT of an element's link or of a PD code")
    hf.add_argument("element", nargs="?")
    hf.add_argument("--pd", default=None, help="PD as JSON text or a file: [[i,j,k,l],...] or a diagram object")
    _shared(hf)

    gr = sub.add_parser("gram", help="Gram matrix spectra")
    gr.add_argument("family", nargs="?", type=Path, help="JSON list of elements (or diagrams with --tangles)")
    gr.add_argument("--enumerated", type=int, default=None, help="use every oriented element with at most this many leaves")
    gr.add_argument("--sweep", nargs="+", default=None, help="parameter pairs r,k")
    gr.add_argument("--tangles", action="store_true", help="tangle families and the pairing")
    gr.add_argument("--random-tangles", type=int, default=0, help="sample this many tangles in V_(+++---)")
    gr.add_argument("--families", type=int, default=0, help="also report this many random sub-families")
    gr.add_argument("--family-size", type=int, default=8)
    gr.add_argument("--max-size", type=int, default=12, help="family cap for files (0 disables)")
    _shared(gr)

    en = sub.add_parser("enumerate", help="list oriented reduced elements")
    en.add_argument("--leaves", type=int, required=True)
    _shared(en)
    return ap


def _emit(args, payload: dict) -> None:
    if not args.deterministic:
        payload["generated_at"] = datetime.datetime.now(datetime.timezone.utc).isoformat()
    text = json.dumps(payload, indent=2, sort_keys=True) + "\n"
    if args.out:
        args.out.write_text(text)
    else:
        sys.stdout.write(text)


def _element_payload(g) -> dict:
    return {
        "element": g.to_dict(),
        "leaves": g.leaves,
        "reduced": g.reduced,
        "oriented": is_oriented(g),
        "leaf_signs": {"plus": leaf_signs(g.plus), "minus": leaf_signs(g.minus)},
    }


def cmd_element(args) -> int:
    g = parse_element(args.element)
    if args.verb == "parse":
        out = _element_payload(g)
    elif args.verb == "reduce":
        out = _element_payload(reduce(g))
    elif args.verb == "invert":
        out = _element_payload(invert(g))
    elif args.verb == "multiply":
        if args.other is None:
            raise ValueError("multiply needs a second element")
        out = _element_payload(multiply(g, parse_element(args.other)))
    else:
        ok = is_oriented(g)
        out = _element_payload(g)
        out["oriented"] = ok
        out["first_mismatch"] = first_sign_mismatch(g)
    _emit(args, out)
    return EXIT_OK


def cmd_link(args) -> int:
    g = parse_element(args.element)
    d = build_unoriented_link(g, args.convention) if args.unoriented else build_link(g, args.convention)
    out = {"element": g.to_dict(), "diagram": to_dict(d), "crossings": d.crossings, "oriented": not args.unoriented}
    if not args.unoriented:
        out["components"] = component_count(d)
    if args.svg:
        from .svg import diagram_svg, tree_pair_svg

        args.svg.write_text(tree_pair_svg(g) if d.crossings == 0 else diagram_svg(d))
    _emit(args, out)
    return EXIT_OK


def _load_pd(text: str):
    path = Path(text)
    if not text.lstrip().startswith(("[", "{")) and path.exists():
        text = path.read_text()
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"bad PD JSON: {exc.msg}", exc.pos) from None
    if isinstance(data, dict):
        return from_dict(data)
    return pd_from_knot_atlas(data)


def _params(args):
    if args.r is None and args.k is None:
        return None
    if args.r is None or args.k is None:
        raise ValueError("--r and --k go together")
    return check_params(args.r, args.k)


def cmd_homfly(args) -> int:
    p = _params(args)
    engine = default_engine()
    out: dict = {"convention": args.convention, "normalization": args.normalization}
    g = None
    if args.pd is not None:
        obj = _load_pd(args.pd)
        if isinstance(obj, list):
            poly = homfly_pd(obj, 0, engine)
            if args.convention == "mirror":
                poly = poly.substitute_mirror()
        else:
            poly = homfly(obj, engine, args.convention)
    elif args.element is not None:
        g = parse_element(args.element)
        out["element"] = g.to_dict()
        poly = homfly(build_link(g, args.convention), engine)
    else:
        raise ValueError("give an element or --pd")
    shown = normalize(poly, args.normalization)
    out["polynomial"] = shown.to_dict()
    out["text"] = str(shown)
    if p is not None:
        v = evaluate(shown, p)
        out["params"] = p.to_dict()
        out["value"] = [v.real, v.imag]
        if g is not None:
            if 2 * p.k % p.r == 0:
                raise DegenerateParameters(f"delta = 0 at r={p.r}, k={p.k}")
            f = evaluate(poly, p) / delta_num(p) ** (g.leaves - 1)
            out["phi"] = [f.real, f.imag]
    _emit(args, out)
    return EXIT_OK


def _read_family(path: Path) -> list:
    text = path.read_text()
    try:
        data = json.loads(text)
    except json.JSONDecodeError:
        data = [line for line in text.splitlines() if line.strip() and not line.startswith("#")]
    if isinstance(data, dict) and "family" in data:
        data = data["family"]
    if not isinstance(data, list):
        raise ParseError("family file must hold a list", 0)
    return data


def cmd_gram(args) -> int:
    tol = check_tolerance(args.tol)
    if args.sweep:
        plist = check_params_list(args.sweep)
    else:
        p = _params(args)
        plist = [p or check_params(5, 1)]
    rng = random.Random(args.seed)
    reports = []
    if args.tangles:
        if args.random_tangles:
            fam = random_tangle_family(rng, size=args.random_tangles)
        elif args.family:
            fam = [from_dict(x) for x in _read_family(args.family)]
        else:
            raise ValueError("--tangles needs a family file or --random-tangles")
        for p in plist:
            reports.append(spectrum(tangle_gram(fam, p, args.normalization, args.convention), tol).to_dict())
        family_desc = {"tangles": len(fam)}
    else:
        if args.enumerated is not None:
            fam = enumerate_oriented(check_leaves(args.enumerated))
            cap = None
        elif args.family:
            cap = args.max_size or None
            fam = check_family(_read_family(args.family), oriented=True, max_size=cap)
        else:
            raise ValueError("give a family file or --enumerated N")
        table = PhiTable(args.convention)
        subs = random_families(fam, args.families, args.family_size, rng) if args.families else []
        for p in plist:
            if not p.in_stated_range:
                log.warning("r=%d, k=%d lies outside r >= k + 2; verdict is flagged", p.r, p.k)
            try:
                with warnings.catch_warnings():
                    warnings.simplefilter("ignore", OutOfRangeWarning)
                    g = element_gram(fam, p, args.convention, table, max_size=cap)
                    subspecs = [element_gram(s, p, args.convention, table, max_size=None) for s in subs]
            except DegenerateParameters:
                reports.append({"params": p.to_dict(), "verdict": "undefined", "flags": ["delta_zero"]})
                continue
            rep = spectrum(g, tol).to_dict()
            if subs:
                worst = min(spectrum(x, tol).min_eig for x in subspecs)
                rep["subfamilies"] = {"count": len(subs), "max_size": args.family_size, "min_eig": worst}
            reports.append(rep)
        family_desc = {"elements": len(fam)}
    out = {"family": family_desc, "reports": reports}
    _emit(args, out)
    for rep in reports:
        if rep.get("verdict") == "indefinite" and "out_of_stated_range" not in rep.get("flags", []):
            return EXIT_POSITIVITY
    return EXIT_OK


def cmd_enumerate(args) -> int:
    n = check_leaves(args.leaves)
    els = enumerate_oriented(n)
    _emit(args, {"leaves": n, "count": len(els), "elements": [g.to_dict() for g in els]})
    return EXIT_OK


COMMANDS = {
    "element": cmd_element,
    "link": cmd_link,
    "homfly": cmd_homfly,
    "gram": cmd_gram,
    "enumerate": cmd_enumerate,
}


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    logging.basicConfig(level=logging.WARNING, format="%(levelname)s %(name)s: %(message)s")
    try:
        check_convention(args.convention)
        check_normalization(args.normalization)
        check_tolerance(args.tol)
        return COMMANDS[args.command](args)
    except NotOriented as exc:
        print(f"thl: {exc}", file=sys.stderr)
        return EXIT_NOT_ORIENTED
    except (ParseError, BoundaryMismatch, OpenDiagramError, DiagramError, DegenerateParameters, ValueError, OSError) as exc:
        print(f"thl: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except Exception as exc:  # noqa: BLE001 - last-resort exit code
        log.exception("internal error")
        print(f"thl: internal error: {exc}", file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
