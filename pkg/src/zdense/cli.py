"""Command-line front end: decide, construct, verify, gallery."""
from __future__ import annotations

import argparse
import json
import sys
from importlib import resources
from pathlib import Path

from jsonschema import ValidationError

from . import __version__
from .errors import ZdenseError
from .serialize import dumps, sha256_bytes, spec_from_json

EXIT_ERROR = 3
EXAMPLES = ("ex1", "ex3", "ex4", "sec8", "ex5", "q-sqrt2", "cubic")
MIN_PRECISION, MAX_PRECISION = 10, 200


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _positive(kind):
    def conv(text):
        try:
            v = kind(float(text)) if kind is int and "e" in text.lower() else kind(text)
        except ValueError:
            raise argparse.ArgumentTypeError(f"not a number: {text!r}")
        if v <= 0:
            raise argparse.ArgumentTypeError(f"must be positive: {text!r}")
        return v

    return conv


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--seed", type=int, default=0, help="seed for every random choice (default 0)")
    common.add_argument("--format", choices=("json", "text"), default="json")

    parser = _Parser(prog="zdense", description=__doc__, parents=[common])
    parser.add_argument("--version", action="version", version=f"zdense {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    d = sub.add_parser("decide", parents=[common], help="decide existence for a group spec")
    d.add_argument("spec", help="group spec JSON file")
    d.add_argument("--field", required=True, help="R, C, Q5 (or Qp:5), F5((t)) ...")
    d.add_argument("--strict-paper", action="store_true", help="apply the weight-space argument only to (2,-1,-1)")

    c = sub.add_parser("construct", parents=[common], help="number-field construction of generators")
    c.add_argument("--poly", required=True, help='monic integer polynomial, e.g. "x^3-x-1"')
    c.add_argument("--coeff-bound", type=_positive(int), default=10)
    c.add_argument("--precision", type=_positive(int), default=30, help="decimal digits (default 30)")
    c.add_argument("--exp-bound", type=_positive(int), default=20)
    c.add_argument("--assume-monogenic", action="store_true")
    c.add_argument("-o", "--output", default="gens.json")

    v = sub.add_parser("verify", parents=[common], help="discreteness and density evidence for generators")
    v.add_argument("gens", help="generator file (construct output or a generator set)")
    v.add_argument("--spec", help="group spec to compare against")
    v.add_argument("--word-len", type=_positive(int), default=6)
    v.add_argument("--ball", type=_positive(float), default=10.0)
    v.add_argument("--exp-bound", type=_positive(int), default=20)
    v.add_argument("--cap", type=_positive(int), default=10_000_000)
    v.add_argument("--variant", choices=("auto", "full", "cocompact"), default="auto")

    g = sub.add_parser("gallery", parents=[common], help="run one of the worked examples")
    g.add_argument("--example", required=True, choices=EXAMPLES)
    g.add_argument("-p", type=_positive(int), default=2, help="prime for ex1/ex3/ex4")
    g.add_argument("--horizon", type=_positive(int), help="truncation horizon for ex1/ex3/ex4")
    g.add_argument("--samples", type=_positive(int), default=200, help="sample size for ex4")
    return parser


# ---------------------------------------------------------------- commands


def _envelope(command: str, input_bytes: bytes, bounds: dict, args, result: dict) -> dict:
    return {
        "tool": "zdense",
        "version": __version__,
        "command": command,
        "input_sha256": sha256_bytes(input_bytes),
        "bounds": {**bounds, "seed": args.seed},
        "result": result,
    }


def _packaged_spec(name: str) -> bytes:
    return resources.files("zdense").joinpath("specs").joinpath(f"{name}.json").read_bytes()


def _decide_doc(raw: bytes, field_text: str, strict: bool, args, command="decide"):
    from .decision import decide
    from .group_spec import FieldDesc

    doc = json.loads(raw)
    spec = spec_from_json(doc)
    field = FieldDesc.parse(field_text)
    verdict = decide(spec, field, strict_paper=strict)
    result = {"spec": doc.get("name"), "field": str(field), **verdict.to_json()}
    bounds = {"strict_paper": strict}
    return _envelope(command, raw + field_text.encode(), bounds, args, result), verdict.exit_code


def cmd_decide(args):
    raw = Path(args.spec).read_bytes()
    return _decide_doc(raw, args.field, args.strict_paper, args)


def _construct_doc(poly_text: str, coeff_bound: int, precision: int, exp_bound: int):
    from . import poly as P
    from .number_construct import construct, construction_to_json

    coeffs = P.parse_poly(poly_text)
    cg, emb, closure = construct(coeffs, coeff_bound, precision, exp_bound)
    return cg, emb, construction_to_json(cg, emb, closure)


def cmd_construct(args):
    from . import poly as P

    if not MIN_PRECISION <= args.precision <= MAX_PRECISION:
        raise UsageError(f"--precision must lie in [{MIN_PRECISION}, {MAX_PRECISION}]")
    coeffs = P.parse_poly(args.poly)
    bad = P.index_may_be_nontrivial(coeffs)
    if bad and not args.assume_monogenic:
        raise UsageError(
            f"Z[theta] may not be the full ring of integers (primes {bad}); pass --assume-monogenic to proceed"
        )
    cg, emb, doc = _construct_doc(args.poly, args.coeff_bound, args.precision, args.exp_bound)
    bounds = {"coeff_bound": args.coeff_bound, "precision": args.precision, "exp_bound": args.exp_bound,
              "assume_monogenic": args.assume_monogenic}
    doc["provenance"] = {"version": __version__, "bounds": bounds}
    Path(args.output).write_text(dumps(doc))
    result = {
        "output": args.output,
        "field": {k: doc["field"][k] for k in ("poly", "degree", "r1", "r2", "r")},
        "units": doc["units"],
        "m": doc["m"],
        "identified_as": doc.get("identified_as"),
        "det_abs": doc["det_abs"],
        "torus_closure": doc.get("torus_closure"),
        "cocompact": bool(doc.get("cocompact")),
        "index_primes": bad,
    }
    return _envelope("construct", args.poly.encode(), bounds, args, result), 0


def _verify_gens(gens, spec, L, R, exp_bound, cap, seed):
    from .verify import MATRIX2, density_check, discreteness_margin, pingpong_certificate, projection_injectivity

    out = {"margin": discreteness_margin(gens, L, R, cap).to_json()}
    ok = out["margin"]["min_distance"] == "inf" or out["margin"]["min_distance"] > 1e-9
    if gens.kind == MATRIX2:
        if gens.exact and len(gens) == 2:
            pp = pingpong_certificate(*gens.exact)
            out["pingpong"] = pp.to_json()
            ok = ok and pp.certified
    else:
        dens = density_check(gens, spec, exp_bound)
        out["density"] = dens.to_json()
        ok = ok and dens.passed
        if gens.meta.get("free_words"):
            inj = projection_injectivity(gens, exhaustive_length=min(L, 5), sample_length=max(L, 8),
                                         sample_size=2000, seed=seed)
            out["injectivity"] = inj.to_json()
            ok = ok and inj.ok
    out["passed"] = ok
    return out, ok


def cmd_verify(args):
    from .verify import GeneratorSet, from_construction_doc

    raw = Path(args.gens).read_bytes()
    doc = json.loads(raw)
    gens = from_construction_doc(doc, args.variant) if "field" in doc else GeneratorSet.from_json(doc)
    spec = None
    if args.spec:
        spec_raw = Path(args.spec).read_bytes()
        spec = spec_from_json(json.loads(spec_raw))
        raw += spec_raw
    result, ok = _verify_gens(gens, spec, args.word_len, args.ball, args.exp_bound, args.cap, args.seed)
    bounds = {"word_len": args.word_len, "ball": args.ball, "exp_bound": args.exp_bound, "cap": args.cap,
              "variant": args.variant}
    return _envelope("verify", raw, bounds, args, result), 0 if ok else 1


def cmd_gallery(args):
    from .laurent_witt.gallery import ex1_frobenius_coset_scan, ex3_scan, ex4_ppower_scan

    ex, p = args.example, args.p
    if ex in ("sec8", "ex5"):
        field = "R" if ex == "sec8" else "C"
        env, code = _decide_doc(_packaged_spec(ex), field, False, args, command="gallery")
        env["bounds"]["example"] = ex
        if ex == "ex5":
            _, strict_code = _decide_doc(_packaged_spec(ex), field, True, args)
            env["result"]["strict_paper_status"] = {0: "Exists", 1: "NotExists", 2: "Unknown"}[strict_code]
        return env, 0
    if ex in ("q-sqrt2", "cubic"):
        from .verify import from_construction_doc

        poly_text = "x^2-2" if ex == "q-sqrt2" else "x^3-x-1"
        _, _, doc = _construct_doc(poly_text, 10, 30, 20)
        gens = from_construction_doc(doc)
        L = 6 if ex == "q-sqrt2" else 4
        ver, ok = _verify_gens(gens, None, L, 10.0, 20, 10_000_000, args.seed)
        result = {"construction": {k: doc.get(k) for k in ("field", "units", "m", "det_abs", "identified_as",
                                                             "torus_closure")},
                  "verification": ver}
        bounds = {"example": ex, "word_len": L, "ball": 10.0, "coeff_bound": 10, "precision": 30}
        return _envelope("gallery", poly_text.encode(), bounds, args, result), 0 if ok else 1
    if ex == "ex1":
        N = args.horizon or 3 * p
        result = ex1_frobenius_coset_scan(p, N)
    elif ex == "ex3":
        N = args.horizon or 16
        result = ex3_scan(p, N)
    else:
        N = args.horizon or 8
        result = ex4_ppower_scan(p, N, args.samples, args.seed)
    bounds = {"example": ex, "p": p, "horizon": N}
    if ex == "ex4":
        bounds["samples"] = args.samples
    key = f"{ex}:{p}:{N}".encode()
    return _envelope("gallery", key, bounds, args, result), 0 if result["verified"] else 1


COMMANDS = {"decide": cmd_decide, "construct": cmd_construct, "verify": cmd_verify, "gallery": cmd_gallery}


# ---------------------------------------------------------------- rendering


def _text(obj, indent=0) -> list[str]:
    pad = "  " * indent
    lines = []
    if isinstance(obj, dict):
        for k in sorted(obj):
            v = obj[k]
            if isinstance(v, (dict, list)) and v:
                lines.append(f"{pad}{k}:")
                lines.extend(_text(v, indent + 1))
            else:
                lines.append(f"{pad}{k}: {json.dumps(v, ensure_ascii=False)}")
    elif isinstance(obj, list):
        for v in obj:
            if isinstance(v, (dict, list)) and v:
                lines.append(f"{pad}-")
                lines.extend(_text(v, indent + 1))
            else:
                lines.append(f"{pad}- {json.dumps(v, ensure_ascii=False)}")
    else:
        lines.append(f"{pad}{json.dumps(obj, ensure_ascii=False)}")
    return lines


def render(env: dict, fmt: str) -> str:
    if fmt == "json":
        return dumps(env)
    res = env["result"]
    head = [f"zdense {env['version']} {env['command']}", f"input sha256: {env['input_sha256']}"]
    if "status" in res:
        head.append(f"status: {res['status']}")
        head.append("citations: " + ", ".join(res["citations"]))
        for c in res["conditions"]:
            head.append(f"  [{'pass' if c['pass'] else 'FAIL'}] {c['name']}")
    return "\n".join(head + ["bounds:"] + _text(env["bounds"], 1) + ["result:"] + _text(res, 1)) + "\n"


def run(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
        env, code = COMMANDS[args.command](args)
    except UsageError as e:
        print(f"zdense: usage error: {e}", file=sys.stderr)
        return EXIT_ERROR
    except (ZdenseError, ValueError, OSError, ValidationError) as e:
        print(f"zdense: error: {type(e).__name__}: {e}", file=sys.stderr)
        return EXIT_ERROR
    sys.stdout.write(render(env, args.format))
    return code


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
