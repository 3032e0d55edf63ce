"""Command-line interface.

Exit codes: 0 success or affirmative answer, 1 parse or I/O error,
2 invalid brace, 3 negative decision, 4 theorem violation.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path

from .brace import SkewBrace
from .enumeration import census
from .errors import BraceError, InvarianceViolation, ParseError, SkewBraceError, UnknownOrder
from .fileformat import digest, format_brace, gamma_digest, read_brace
from .groups import center
from .isoclinism import classify, is_isoclinic, theorem_invariance_report, verify_isoclinism
from .properties import is_biskew, is_inner, is_lambda_homomorphic
from .structure import annihilator, centralizer_of_gamma_image, corners, derived_ideal, kernel_gamma

EXIT_OK, EXIT_PARSE, EXIT_INVALID, EXIT_NEGATIVE, EXIT_VIOLATION = 0, 1, 2, 3, 4

log = logging.getLogger("skewbrace")


class CliError(Exception):
    def __init__(self, code: int, message: str):
        super().__init__(message)
        self.code = code


def _load(path: str) -> SkewBrace:
    try:
        return read_brace(path)
    except (OSError, ParseError, UnicodeDecodeError) as exc:
        raise CliError(EXIT_PARSE, f"{path}: {exc}") from exc
    except BraceError as exc:
        raise CliError(EXIT_INVALID, f"{path}: invalid skew brace: {exc}") from exc


def _load_dir(directory: str) -> tuple[list[SkewBrace], list[str]]:
    d = Path(directory)
    manifest = d / "manifest.json"
    if manifest.exists():
        entries = json.loads(manifest.read_text(encoding="utf-8"))["braces"]
        files = [(e["id"], d / e["file"]) for e in entries]
    else:
        files = [(p.stem, p) for p in sorted(d.glob("*.brace"))]
    if not files:
        raise CliError(EXIT_PARSE, f"{directory}: no brace files found")
    braces = [_load(str(p)) for _, p in files]
    return braces, [i for i, _ in files]


def _emit(args, payload: dict, text: list[str]) -> None:
    if args.format == "json":
        out = json.dumps(payload, indent=2, sort_keys=True)
    else:
        out = "\n".join(text)
    if getattr(args, "out", None) and args.command in ("classify", "theorem"):
        Path(args.out).write_text(json.dumps(payload, indent=2, sort_keys=True) + "\n", encoding="utf-8")
    print(out)


def _fmt_set(s) -> str:
    return "{" + ", ".join(map(str, sorted(s))) + "}"


def cmd_validate(args) -> int:
    B = _load(args.path)
    payload = {"valid": True, "order": B.order, "gamma_digest": gamma_digest(B),
               "gamma": [list(g) for g in B.gamma]}
    text = [f"valid skew brace of order {B.order}", f"gamma digest {gamma_digest(B)}"]
    text += [f"gamma({x}) = [{','.join(map(str, g))}]" for x, g in enumerate(B.gamma)]
    _emit(args, payload, text)
    return EXIT_OK


def cmd_analyze(args) -> int:
    B = _load(args.path)
    Z = center(B.add)
    K = kernel_gamma(B)
    C = centralizer_of_gamma_image(B)
    A = annihilator(B)
    D = derived_ideal(B)
    Q = corners(B).quotient
    inner, witnesses = is_inner(B)
    preds = {"bi_skew": is_biskew(B), "lambda_homomorphic": is_lambda_homomorphic(B), "inner": inner}
    payload = {
        "order": B.order,
        "center_size": len(Z),
        "kernel_gamma_size": len(K),
        "centralizer_gamma_size": len(C),
        "annihilator": list(A.elements),
        "derived_ideal": list(D.elements),
        "quotient_order": Q.order,
        "predicates": preds,
        "inner_witnesses": witnesses if inner else None,
    }
    text = [
        f"order {B.order}",
        f"|Z(B,.)| = {len(Z)}",
        f"|ker gamma| = {len(K)}",
        f"|C_B(gamma(B))| = {len(C)}",
        f"Ann = {_fmt_set(A.elements)}",
        f"B' = {_fmt_set(D.elements)}",
        f"|B/Ann| = {Q.order}",
        f"bi-skew = {str(preds['bi_skew']).lower()}",
        f"lambda-homomorphic = {str(preds['lambda_homomorphic']).lower()}",
        f"inner = {str(inner).lower()}" + (f" witnesses {witnesses}" if inner else ""),
    ]
    _emit(args, payload, text)
    return EXIT_OK


def cmd_isoclinic(args) -> int:
    B1, B2 = _load(args.path_a), _load(args.path_b)
    w = is_isoclinic(B1, B2)
    if w is None:
        _emit(args, {"isoclinic": False}, ["not isoclinic"])
        return EXIT_NEGATIVE
    ok, why = verify_isoclinism(B1, B2, w)
    if not ok:
        raise CliError(EXIT_VIOLATION, f"internal error: witness failed verification: {why}")
    payload = {"isoclinic": True, **w.to_dict(B1, B2)}
    _emit(args, payload, ["isoclinic", f"xi = {list(w.xi)}", f"theta = {list(w.theta)}"])
    return EXIT_OK


def _parse_orders(specs: list[str]) -> list[int]:
    orders: list[int] = []
    for spec in specs:
        if "-" in spec:
            lo, hi = spec.split("-", 1)
            orders.extend(range(int(lo), int(hi) + 1))
        else:
            orders.append(int(spec))
    return orders


def cmd_census(args) -> int:
    try:
        orders = _parse_orders(args.orders)
    except ValueError as exc:
        raise CliError(EXIT_PARSE, f"bad order specification: {exc}") from exc
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    entries = []
    for n in orders:
        try:
            braces = census(n, cap=args.cap, jobs=args.jobs)
        except UnknownOrder as exc:
            raise CliError(EXIT_PARSE, str(exc)) from exc
        for B in braces:
            fname = f"{len(entries):04d}.brace"
            (out / fname).write_text(format_brace(B, [f"# id {B.name}"]), encoding="utf-8")
            entries.append({"id": B.name, "file": fname, "order": B.order,
                            "additive_group": B.name.split("#")[0], "digest": digest(B)})
    manifest = {"format": "skewbrace v1", "orders": orders, "braces": entries}
    (out / "manifest.json").write_text(json.dumps(manifest, indent=2) + "\n", encoding="utf-8")
    counts = {n: sum(e["order"] == n for e in entries) for n in orders}
    _emit(args, manifest, [f"order {n}: {c} braces" for n, c in counts.items()]
          + [f"wrote {len(entries)} files to {out}"])
    return EXIT_OK


def cmd_classify(args) -> int:
    braces, ids = _load_dir(args.dir)
    cl = classify(braces, jobs=args.jobs)
    payload = cl.to_dict(ids)
    text = [f"{len(cl.classes)} isoclinism classes over {len(braces)} braces"]
    text += [f"class {c['id']}: {' '.join(c['members'])}" for c in payload["classes"]]
    _emit(args, payload, text)
    return EXIT_OK


def cmd_theorem(args) -> int:
    braces, ids = _load_dir(args.dir)
    try:
        report = theorem_invariance_report(braces, ids=ids, jobs=args.jobs)
    except InvarianceViolation as exc:
        dump = json.dumps(exc.report, indent=2, sort_keys=True)
        if args.out:
            Path(args.out).write_text(dump + "\n", encoding="utf-8")
        print(dump)
        print(f"THEOREM VIOLATION: {exc}", file=sys.stderr)
        return EXIT_VIOLATION
    s = report["summary"]
    text = [
        f"{report['braces']} braces, {s['classes']} isoclinism classes, {s['witness_pairs']} witness pairs",
        f"violations: {s['violations']}",
        f"multiplicative commutator failures: {s['multiplicative_commutator_failures']}",
        f"pairs commuting only with the additive square: {s['additive_square_only_pairs']}",
        "bi-skew, lambda-homomorphic and inner are constant on every class",
    ]
    _emit(args, report, text)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--jobs", type=int, default=1, help="worker processes (output order is unaffected)")
    common.add_argument("--cap", type=int, default=None, help="order cap (default: $SKEWBRACE_CAP or 64)")
    common.add_argument("--format", choices=("text", "json"), default="text")
    common.add_argument("-v", "--verbose", action="store_true")

    parser = argparse.ArgumentParser(prog="skewbrace", description="Finite skew braces and isoclinism.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", parents=[common], help="validate a brace file")
    p.add_argument("path")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("analyze", parents=[common], help="annihilator, derived ideal and predicates")
    p.add_argument("path")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("isoclinic", parents=[common], help="decide isoclinism of two braces")
    p.add_argument("path_a")
    p.add_argument("path_b")
    p.set_defaults(func=cmd_isoclinic)

    p = sub.add_parser("census", parents=[common], help="write all braces of the given orders")
    p.add_argument("orders", nargs="+", help="orders or ranges such as 1-8")
    p.add_argument("--out", required=True, help="output directory")
    p.set_defaults(func=cmd_census)

    for name, func, helptext in (("classify", cmd_classify, "partition a directory into isoclinism classes"),
                                 ("theorem", cmd_theorem, "check invariance of the three predicates")):
        p = sub.add_parser(name, parents=[common], help=helptext)
        p.add_argument("dir")
        p.add_argument("--out", help="also write the JSON report here")
        p.set_defaults(func=func)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.func(args)
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.code
    except SkewBraceError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
