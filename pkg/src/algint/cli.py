"""Command line interface.

Subcommands: reduce (Hermite stage only), decompose (full additive
decomposition), integrate (antiderivative or certified failure), telescope,
verify (recheck a telescoper/certificate pair), corpus (run a JSONL problem
file, optionally in parallel).

Exit codes: 0 success, 2 expression syntax errors, 3 domain and
precondition violations, 4 certified-search failures (no suitable basis or
no update candidate), 5 telescoping order cap exceeded.

Structured output is JSON with sorted keys and no timing data, so repeated
runs are byte-identical; text output is free to include timings.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from concurrent.futures import ProcessPoolExecutor

from .errors import (
    AlgintError,
    ExprSyntaxError,
    MaxOrderExceeded,
    SuitabilityFailure,
    UpdateCandidatesExhausted,
)
from .hermite import lazy_hermite_reduce
from .parsing import build_curve, build_element, field_for, parse_expression
from .polyred import additive_decompose
from .rings import QT, T_POLY
from .telescoper import telescope, verify_telescoper

SCHEMA_RESULT = "algint.result/1"
SCHEMA_CORPUS = "algint.corpus/1"


def _field_name(field):
    return "QQ(t)" if field == QT else "QQ"


def _setup(args, force_t=False):
    field = field_for([args.curve, args.integrand], force_t=force_t)
    curve = build_curve(args.curve, field)
    f = build_element(args.integrand, curve)
    return field, curve, f


def _cmd_reduce(args):
    field, curve, f = _setup(args)
    res = lazy_hermite_reduce(f)
    rem = res.remainder
    return field, {
        "g": str(res.g_part),
        "remainder": {
            "d": str(rem.d),
            "e": str(rem.basis.e),
            "coeffs": [str(c) for c in rem.nums],
        },
        "basis": [str(w) for w in res.basis.elements],
        "adjoined": [str(w) for w in res.adjoined],
    }


def _cmd_decompose(args):
    field, curve, f = _setup(args)
    dec = additive_decompose(f)
    return field, {
        "g": str(dec.g),
        "integrable": dec.integrable,
        "pole_part": {"d": str(dec.d), "coeffs": [str(c) for c in dec.p_nums]},
        "infinity_part": {
            "a": str(dec.a),
            "coeffs": [str(c) for c in dec.q_nums],
        },
        "u": str(dec.u),
        "basis": [str(w) for w in dec.basis.elements],
        "infinity_basis": [str(v) for v in dec.inf_basis.elements],
    }


def _cmd_integrate(args):
    field, curve, f = _setup(args)
    dec = additive_decompose(f)
    anti = dec.antiderivative()
    return field, {
        "integrable": dec.integrable,
        "antiderivative": None if anti is None else str(anti),
        "remainder": None if dec.integrable else str(dec.remainder_element()),
    }


def _cmd_telescope(args):
    field, curve, f = _setup(args, force_t=True)
    tele = telescope(f, max_order=args.max_order)
    return field, {
        "order": tele.order,
        "coefficients": [str(c) for c in tele.coeffs],
        "certificate": str(tele.certificate),
        "ranks": list(tele.ranks),
        "verified": True,
    }


def _parse_coeffs(text):
    names = {"t": QT.of(T_POLY.gen)}
    return tuple(
        parse_expression(piece.strip(), names, QT.from_int)
        for piece in text.split(",")
    )


def _cmd_verify(args):
    field, curve, f = _setup(args, force_t=True)
    coeffs = _parse_coeffs(args.telescoper)
    cert = build_element(args.certificate, curve)
    ok = verify_telescoper(f, coeffs, cert)
    return field, {"verified": ok}


def _operator_text(coeffs):
    terms = []
    for i in range(len(coeffs) - 1, -1, -1):
        c = str(coeffs[i])
        if c == "0":
            continue
        if i == 0:
            terms.append(c if _is_atom(c) else f"({c})")
        else:
            base = "Dt" if i == 1 else f"Dt^{i}"
            terms.append(base if c == "1" else f"({c})*{base}")
    return " + ".join(terms) if terms else "0"


def _is_atom(s):
    return all(ch not in s for ch in "+- ")


def _print_text(mode, payload, elapsed):
    if mode == "reduce":
        print(f"g = {payload['g']}")
        rem = payload["remainder"]
        print(f"remainder coeffs (over basis, denominator d*e): {rem['coeffs']}")
        print(f"d = {rem['d']}")
        print(f"e = {rem['e']}")
        print(f"basis: {payload['basis']}")
        if payload["adjoined"]:
            print(f"adjoined integral elements: {payload['adjoined']}")
    elif mode == "decompose":
        print(f"g = {payload['g']}")
        print(f"integrable: {'yes' if payload['integrable'] else 'no'}")
        print(f"pole part: d = {payload['pole_part']['d']}, coeffs = {payload['pole_part']['coeffs']}")
        print(f"infinity part: a = {payload['infinity_part']['a']}, coeffs = {payload['infinity_part']['coeffs']}")
        print(f"u = {payload['u']}")
        print(f"basis: {payload['basis']}")
        print(f"infinity basis: {payload['infinity_basis']}")
    elif mode == "integrate":
        if payload["integrable"]:
            print("integrable: yes")
            print(f"antiderivative = {payload['antiderivative']}")
        else:
            print("integrable: no")
            print(f"minimal remainder = {payload['remainder']}")
    elif mode == "telescope":
        print(f"order: {payload['order']}")
        print(f"L = {_operator_text(payload['coefficients'])}")
        print(f"certificate = {payload['certificate']}")
        print("verified: yes")
    elif mode == "verify":
        print(f"verified: {'yes' if payload['verified'] else 'no'}")
    print(f"elapsed: {elapsed:.3f}s")


def _emit(args, mode, field, payload, elapsed):
    if args.format == "structured":
        doc = {
            "schema": SCHEMA_RESULT,
            "mode": mode,
            "input": {
                "curve": args.curve,
                "integrand": getattr(args, "integrand", None),
                "field": _field_name(field),
            },
            "result": payload,
            "seed": args.seed,
        }
        print(json.dumps(doc, sort_keys=True, indent=2))
    else:
        _print_text(mode, payload, elapsed)


# -- corpus running


def run_record(record, max_order_default=20):
    """Run one corpus record; never raises, reports errors in the result."""
    name = record.get("name", "<unnamed>")
    mode = record.get("mode", "integrate")
    out = {"name": name, "mode": mode, "status": "ok", "error": None}
    try:
        field = field_for(
            [record.get("curve", ""), record.get("integrand", "")],
            force_t=(mode == "telescope"),
        )
        curve = build_curve(record["curve"], field)
        f = build_element(record["integrand"], curve)
        if mode == "telescope":
            tele = telescope(
                f, max_order=int(record.get("max_order", max_order_default))
            )
            out["result"] = {
                "order": tele.order,
                "coefficients": [str(c) for c in tele.coeffs],
                "certificate": str(tele.certificate),
                "verified": True,
            }
            expected = record.get("expect", {})
            if "order" in expected and expected["order"] != tele.order:
                out["status"] = "mismatch"
                out["error"] = (
                    f"expected order {expected['order']}, got {tele.order}"
                )
        elif mode in ("integrate", "decompose"):
            dec = additive_decompose(f)
            anti = dec.antiderivative()
            if anti is not None and anti.dx() != f:
                out["status"] = "error"
                out["error"] = "antiderivative check failed"
                return out
            out["result"] = {
                "integrable": dec.integrable,
                "antiderivative": None if anti is None else str(anti),
            }
            expected = record.get("expect", {})
            if (
                "integrable" in expected
                and expected["integrable"] != dec.integrable
            ):
                out["status"] = "mismatch"
                out["error"] = (
                    f"expected integrable={expected['integrable']}, "
                    f"got {dec.integrable}"
                )
        else:
            out["status"] = "error"
            out["error"] = f"unknown mode {mode!r}"
    except AlgintError as exc:
        out["status"] = "error"
        out["error"] = f"{type(exc).__name__}: {exc}"
    return out


def _cmd_corpus(args):
    with open(args.path, "r", encoding="utf-8") as fh:
        records = [
            json.loads(line) for line in fh if line.strip() and not line.startswith("#")
        ]
    if args.jobs > 1:
        with ProcessPoolExecutor(max_workers=args.jobs) as pool:
            results = list(pool.map(run_record, records))
    else:
        results = [run_record(r) for r in records]
    ok = sum(1 for r in results if r["status"] == "ok")
    summary = {
        "total": len(results),
        "ok": ok,
        "mismatch": sum(1 for r in results if r["status"] == "mismatch"),
        "error": sum(1 for r in results if r["status"] == "error"),
    }
    if args.format == "structured":
        doc = {
            "schema": SCHEMA_CORPUS,
            "entries": results,
            "summary": summary,
            "seed": args.seed,
        }
        print(json.dumps(doc, sort_keys=True, indent=2))
    else:
        width = max((len(r["name"]) for r in results), default=4)
        for r in results:
            line = f"{r['name']:<{width}}  {r['mode']:<10} {r['status']}"
            if r["error"]:
                line += f"  ({r['error']})"
            print(line)
        print(
            f"{summary['ok']}/{summary['total']} ok, "
            f"{summary['mismatch']} mismatched, {summary['error']} errored"
        )
    return 0 if ok == len(results) else 1


def _add_common(sub, integrand=True):
    sub.add_argument("--curve", required=True, help="defining polynomial in x, y (and t)")
    if integrand:
        sub.add_argument("--integrand", required=True, help="expression in x, y (and t)")
    sub.add_argument(
        "--format", choices=["text", "structured"], default="text",
        help="structured output is deterministic JSON",
    )
    sub.add_argument(
        "--seed", type=int, default=None,
        help="echoed in structured output; the pipeline itself is deterministic",
    )


def build_parser():
    parser = argparse.ArgumentParser(
        prog="algint",
        description="Exact integration and creative telescoping for algebraic functions",
    )
    subs = parser.add_subparsers(dest="command", required=True)
    for name in ("reduce", "decompose", "integrate"):
        sp = subs.add_parser(name)
        _add_common(sp)
    sp = subs.add_parser("telescope")
    _add_common(sp)
    sp.add_argument("--max-order", type=int, default=20)
    sp = subs.add_parser("verify")
    _add_common(sp)
    sp.add_argument(
        "--telescoper", required=True,
        help="comma-separated coefficients in t, constant term first",
    )
    sp.add_argument("--certificate", required=True)
    sp = subs.add_parser("corpus")
    sp.add_argument("path")
    sp.add_argument("--jobs", type=int, default=1)
    sp.add_argument(
        "--format", choices=["text", "structured"], default="text"
    )
    sp.add_argument("--seed", type=int, default=None)
    return parser


_DISPATCH = {
    "reduce": _cmd_reduce,
    "decompose": _cmd_decompose,
    "integrate": _cmd_integrate,
    "telescope": _cmd_telescope,
    "verify": _cmd_verify,
}


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        if args.command == "corpus":
            return _cmd_corpus(args)
        start = time.monotonic()
        field, payload = _DISPATCH[args.command](args)
        _emit(args, args.command, field, payload, time.monotonic() - start)
        return 0
    except ExprSyntaxError as exc:
        print(f"syntax error: {exc}", file=sys.stderr)
        return 2
    except (SuitabilityFailure, UpdateCandidatesExhausted) as exc:
        print(f"{type(exc).__name__}: {exc}", file=sys.stderr)
        return 4
    except MaxOrderExceeded as exc:
        print(f"{type(exc).__name__}: {exc}", file=sys.stderr)
        return 5
    except AlgintError as exc:
        print(f"{type(exc).__name__}: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
