"""Command-line front end.

Exit codes: 0 success, 1 failed verification or decoding, 2 invalid
parameters, 3 I/O error or malformed descriptor.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path

from . import descriptor
from .constructions import ConstructionParams, construct, enumerate_lengths
from .errors import (
    GrsDualError,
    InconsistentWord,
    InternalVerificationFailed,
    MalformedDescriptor,
    NotSelfDual,
    TooManyErasures,
)
from .field import FieldContext, build_field, field_of_order
from .grs import GrsCode, encode, erasure_decode, generator_matches, is_self_dual, mds_check
from .linalg import rank
from .mobius import MobiusTransform, remove_infinity, transport
from .selfdual import pless_exists

log = logging.getLogger("grsdual")

EXIT_OK, EXIT_FAILED, EXIT_PARAMS, EXIT_IO = 0, 1, 2, 3


class UsageError(Exception):
    pass


def _emit(obj, out: str | None, lines: bool = False) -> None:
    if lines:
        text = "".join(descriptor.dumps(o) for o in obj)
    else:
        text = descriptor.dumps(obj)
    if out:
        if lines:
            path = Path(out)
            tmp = path.with_name(f".{path.name}.tmp")
            tmp.write_text(text, encoding="utf-8")
            tmp.replace(path)
        else:
            descriptor.write_json_atomic(out, obj)
    else:
        sys.stdout.write(text)


def _load_code(args) -> GrsCode:
    path = args.code or args.input
    if not path:
        raise UsageError("a code descriptor is required (positional path or --in)")
    return descriptor.code_from_json(descriptor.read_json(path))


# -- element parsing for --g / --g-dlog / message files ----------------------

def _parse_element(field: FieldContext, text: str):
    text = text.strip()
    if ":" in text:
        return field.from_coeffs([int(c) for c in text.split(":")])
    return field(int(text))


def _parse_dlog(field: FieldContext, text: str):
    text = text.strip().replace(" ", "")
    if text == "0":
        return field.zero
    if text == "1":
        return field.one
    for prefix in ("w^", "ω^"):
        if text.startswith(prefix):
            return field.power_of_omega(int(text[len(prefix):]))
    if text in ("w", "ω"):
        return field.omega
    raise UsageError(f"cannot parse {text!r}; expected 0, 1 or w^i")


def _parse_transform(field: FieldContext, args) -> MobiusTransform:
    if args.g and args.g_dlog:
        raise UsageError("use either --g or --g-dlog, not both")
    if args.g:
        parts = args.g[0].split(",") if len(args.g) == 1 else list(args.g)
        entries = [_parse_element(field, s) for s in parts]
    elif args.g_dlog:
        entries = [_parse_dlog(field, s) for s in args.g_dlog.split(",")]
    else:
        raise UsageError("a transform is required (--g or --g-dlog)")
    if len(entries) != 4:
        raise UsageError(f"a transform has four entries a,b,c,d; got {len(entries)}")
    return MobiusTransform(field, *entries)


def _read_vector(field: FieldContext, path: str, key: str) -> list:
    """Vector from a JSON file ({key: [coeffs | null, ...]}) or whitespace-separated hex codes."""
    raw = Path(path).read_text(encoding="utf-8")
    try:
        data = json.loads(raw)
    except json.JSONDecodeError:
        out = []
        for tok in raw.split():
            out.append(None if tok in ("-", "?") else field.from_code(int(tok, 16)))
        return out
    if isinstance(data, dict):
        data = data.get(key)
    if not isinstance(data, list):
        raise MalformedDescriptor(f"expected a list under {key!r}")
    out = []
    for item in data:
        if item is None:
            out.append(None)
        elif isinstance(item, list):
            out.append(field.from_coeffs(item))
        else:
            out.append(field(int(item)))
    return out


# -- subcommands ---------------------------------------------------------------

def cmd_field(args) -> int:
    if args.q is not None:
        f = field_of_order(args.q)
    elif args.p is not None:
        f = build_field(args.p, args.m or 1)
    else:
        raise UsageError("field needs --q or --p [--m]")
    _emit({**f.to_json(), "q": f.q, "omega": f.omega.coeffs}, args.out)
    return EXIT_OK


def cmd_construct(args) -> int:
    missing = [n for n in ("q", "theorem", "case", "nprime", "t") if getattr(args, n) is None]
    if missing:
        raise UsageError("construct needs " + ", ".join("--" + m for m in missing))
    params = ConstructionParams.for_field(args.q, args.theorem, args.case, args.nprime, args.t)
    code = construct(params)
    log.info("constructed [%d, %d] code over GF(%d)", code.n, code.k, code.field.q)
    _emit(descriptor.code_to_json(code, include_matrix=not args.no_matrix), args.out)
    return EXIT_OK


def verification_report(code: GrsCode, mds_mode: str = "auto", seed: int = 0) -> dict:
    sd = is_self_dual(code)
    rank_ok = rank(code.field, code.generator) == code.k
    report = {
        "n": code.n,
        "k": code.k,
        "design_distance": code.n - code.k + 1,
        "generator_consistent": generator_matches(code),
        "rank_ok": rank_ok,
        "self_dual": {"verdict": sd.ok, "reason": sd.reason,
                      "witness": list(sd.witness) if sd.witness else None},
    }
    if mds_mode == "skip":
        report["mds"] = {"mode": "skip", "verdict": None, "samples": 0, "seed": None}
    else:
        report["mds"] = mds_check(code, mode=mds_mode, seed=seed).to_json()
    if code.n % 2 == 0:
        report["pless"] = pless_exists(code.field.q, code.n)
    verdicts = [report["generator_consistent"], rank_ok, sd.ok]
    if mds_mode != "skip":
        verdicts.append(report["mds"]["verdict"])
    report["passed"] = all(verdicts)
    return report


def cmd_verify(args) -> int:
    code = _load_code(args)
    report = verification_report(code, args.mds, args.seed)
    _emit(report, args.out)
    return EXIT_OK if report["passed"] else EXIT_FAILED


def cmd_enumerate(args) -> int:
    if args.q is None or args.max_n is None:
        raise UsageError("enumerate needs --q and --max-n")
    _emit([w.to_json() for w in enumerate_lengths(args.q, args.max_n)], args.out, lines=True)
    return EXIT_OK


def _write_certificate(cert, args) -> None:
    include = not args.no_matrix
    _emit(descriptor.code_to_json(cert.transported, include_matrix=include), args.out)
    cert_path = args.cert or (args.out + ".cert.json" if args.out else None)
    if cert_path:
        descriptor.write_json_atomic(cert_path, cert.to_json(include_matrix=include))


def cmd_mobius(args) -> int:
    code = _load_code(args)
    g = _parse_transform(code.field, args)
    _write_certificate(transport(code, g), args)
    return EXIT_OK


def cmd_remove_infinity(args) -> int:
    code = _load_code(args)
    _write_certificate(remove_infinity(code), args)
    return EXIT_OK


def cmd_encode(args) -> int:
    code = _load_code_positional(args)
    msg = _read_vector(code.field, args.input, "message")
    if any(x is None for x in msg):
        raise UsageError("message may not contain erasures")
    word = encode(code, msg)
    _emit({"word": [x.coeffs for x in word]}, args.out)
    return EXIT_OK


def cmd_decode(args) -> int:
    code = _load_code_positional(args)
    word = _read_vector(code.field, args.input, "word")
    msg = erasure_decode(code, word)
    _emit({"message": [x.coeffs for x in msg]}, args.out)
    return EXIT_OK


def _load_code_positional(args) -> GrsCode:
    if not args.code:
        raise UsageError("a code descriptor path is required")
    if not args.input:
        raise UsageError("--in is required")
    return descriptor.code_from_json(descriptor.read_json(args.code))


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="grsdual", description="MDS self-dual GRS codes")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("field", help="print the canonical field descriptor")
    p.add_argument("--q", type=int)
    p.add_argument("--p", type=int)
    p.add_argument("--m", type=int)
    p.add_argument("--out")
    p.set_defaults(func=cmd_field)

    p = sub.add_parser("construct", help="build a self-dual code from theorem parameters")
    p.add_argument("--q", type=int)
    p.add_argument("--theorem", type=int, choices=(1, 2))
    p.add_argument("--case", choices=("i", "ii", "iii"))
    p.add_argument("--nprime", type=int)
    p.add_argument("--t", type=int)
    p.add_argument("--out")
    p.add_argument("--no-matrix", action="store_true")
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("verify", help="certify self-duality and the MDS property of a descriptor")
    p.add_argument("code", nargs="?")
    p.add_argument("--in", dest="input")
    p.add_argument("--out")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--mds", choices=("auto", "exhaustive", "bruteforce", "sampled", "skip"), default="auto")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("enumerate", help="list the lengths reached by the constructions")
    p.add_argument("--q", type=int)
    p.add_argument("--max-n", type=int)
    p.add_argument("--out")
    p.set_defaults(func=cmd_enumerate)

    for name, func, helptext in (
        ("mobius", cmd_mobius, "transport a self-dual code by a Möbius transform"),
        ("remove-infinity", cmd_remove_infinity, "move an extended self-dual code to finite points"),
    ):
        p = sub.add_parser(name, help=helptext)
        p.add_argument("code", nargs="?")
        p.add_argument("--in", dest="input")
        p.add_argument("--out")
        p.add_argument("--cert")
        p.add_argument("--no-matrix", action="store_true")
        if name == "mobius":
            p.add_argument("--g", action="append")
            p.add_argument("--g-dlog")
        p.set_defaults(func=func)

    for name, func in (("encode", cmd_encode), ("decode", cmd_decode)):
        p = sub.add_parser(name, help=f"{name} with a code descriptor")
        p.add_argument("code", nargs="?")
        p.add_argument("--in", dest="input")
        p.add_argument("--out")
        p.set_defaults(func=func)
    return parser


def run(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(message)s")
    try:
        return args.func(args)
    except (OSError, json.JSONDecodeError, MalformedDescriptor) as exc:
        print(f"grsdual: {exc}", file=sys.stderr)
        return EXIT_IO
    except (InconsistentWord, TooManyErasures, InternalVerificationFailed, NotSelfDual) as exc:
        print(f"grsdual: {exc}", file=sys.stderr)
        return EXIT_FAILED
    except (UsageError, GrsDualError, ValueError) as exc:
        print(f"grsdual: {exc}", file=sys.stderr)
        return EXIT_PARAMS


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
