"""Command-line front end.

    python -m subfieldlattice --poly "x^4+1"
    python -m subfieldlattice --poly "x^18+9*x^9+27" --mode starting-group --format json
    python -m subfieldlattice --mode simulate --group-spec c2^3-regular

Exit codes: 0 success, 1 input error, 2 budget abort.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from collections import Counter
from fractions import Fraction

from .cyclescan import InspectionConfig, PrimeBudgetExceeded
from .fieldsearch import (
    ReducibleInput,
    SearchConfig,
    field_search,
    simulate_from_group,
    starting_group,
)
from .groups import parse_group_spec
from .lllcore import PrecisionCeiling, PrincipalConfig
from .permblocks import BlockSystem, BudgetExceeded, format_perm
from .polyarith import IntPoly, RecombinationBudgetExceeded, format_poly, parse_poly
from .subfieldkit import EmbeddingFailed, SubfieldRecord, is_embedding, square_class
from .wreathmeet import SearchBudgetExceeded

SCHEMA = "subfieldlattice/1"

BUDGET_ERRORS = (PrecisionCeiling, BudgetExceeded, SearchBudgetExceeded, RecombinationBudgetExceeded,
                 PrimeBudgetExceeded, EmbeddingFailed)


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="subfieldlattice", description="Subfields and Galois starting groups of number fields.")
    src = ap.add_mutually_exclusive_group()
    src.add_argument("--poly", help="polynomial in x, or a coefficient list with the constant term first")
    src.add_argument("--poly-file", help="file holding the polynomial")
    ap.add_argument("--mode", default="subfields", choices=["subfields", "generating-only", "starting-group", "simulate"])
    ap.add_argument("--group-spec", help="group for --mode simulate, e.g. c2^3-regular, A5reg, wr:S2,S3")
    ap.add_argument("--max-prime", type=int, default=1 << 16, help="largest prime tried during inspection")
    ap.add_argument("--precision-cap", type=int, default=4096, help="largest p-adic precision for lattice reduction")
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--format", default="text", choices=["text", "json"])
    ap.add_argument("--timings", action="store_true", help="include wall-clock phases in json output")
    ap.add_argument("--verbose", "-v", action="store_true")
    return ap


# ---------------------------------------------------------------------------
# serialization


def _frac(x) -> str:
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def record_to_dict(rec: SubfieldRecord) -> dict:
    d = {
        "degree": rec.degree,
        "g": list(rec.g.coeffs),
        "g_text": format_poly(rec.g.coeffs),
        "h": [_frac(c) for c in rec.h],
        "blocks": rec.blocks.one_based(),
        "principal": bool(rec.principal_proven),
    }
    if rec.degree >= 2:
        d["square_class"] = square_class(rec.g)
    return d


def record_from_dict(d: dict) -> SubfieldRecord:
    blocks = BlockSystem(tuple(tuple(x - 1 for x in b) for b in d["blocks"]))
    return SubfieldRecord(IntPoly(d["g"]), tuple(Fraction(c) for c in d["h"]), blocks, d.get("principal", False))


def read_result(text: str) -> tuple[IntPoly, list[SubfieldRecord]]:
    """Parse json output and revalidate every embedding g(h) = 0 mod f."""
    doc = json.loads(text)
    if doc.get("schema") != SCHEMA:
        raise ValueError("unknown schema")
    f = IntPoly(doc["input"]["coeffs"])
    recs = [record_from_dict(d) for d in doc.get("subfields", [])]
    for r in recs:
        if not is_embedding(f, r.g, r.h):
            raise ValueError(f"g(h) is not zero modulo f for {format_poly(r.g.coeffs)}")
    return f, recs


def _trace_json(trace):
    out = []
    for e in trace:
        out.append({k: e[k] for k in sorted(e)})
    return out


def _group_json(G) -> dict:
    return {"degree": G.degree, "order": G.order(), "generators": [format_perm(g) for g in G.generators]}


def search_document(f: IntPoly, text: str, mode: str, seed: int, res, sg=None, timings=False) -> dict:
    ins = res.inspection
    doc = {
        "schema": SCHEMA,
        "input": {"poly": text, "coeffs": list(f.coeffs), "degree": f.degree, "mode": mode, "seed": seed},
        "inspection": {
            "possible_block_sizes": sorted(ins.possible_block_sizes),
            "order_divisor": ins.order_divisor,
            "parity": "even" if ins.group_is_even else "unknown",
            "lll_prime": ins.lll_prime,
            "splitting_prime": ins.splitting_prime,
        },
        "lll_calls": res.lll_calls,
        "trace": _trace_json(res.trace),
        "subfields": [record_to_dict(r) for r in res.subfields],
        "generating_set": sorted(r.degree for r in res.subfields if r.principal_proven),
        "group": _group_json(res.group),
    }
    if sg is not None:
        doc["starting_group"] = {
            "wreath_order": sg.wreath_order,
            "refinements": sg.refinements,
            "group": _group_json(sg.group),
            "descent_plan": sg.descent_plan,
        }
    if timings:
        doc["timings"] = {k: round(v, 4) for k, v in sorted(res.timings.items())}
    return doc


# ---------------------------------------------------------------------------
# text rendering


def format_qpoly(coeffs) -> str:
    """Rational polynomial with exact fractions, highest degree first."""
    den = 1
    for c in coeffs:
        den = den * c.denominator // math.gcd(den, c.denominator)
    body = format_poly([int(c * den) for c in coeffs])
    return body if den == 1 else f"({body})/{den}"


def render_text(doc: dict, res=None, verbose=False) -> str:
    lines = [f"polynomial: {format_poly(doc['input']['coeffs'])}"]
    ins = doc["inspection"]
    lines.append(f"possible block sizes: {', '.join(map(str, ins['possible_block_sizes'])) or 'none'}")
    lines.append(f"order divisor: {ins['order_divisor']}  parity: {ins['parity']}")
    if ins["lll_prime"]:
        lines.append(f"primes: lll {ins['lll_prime']}, splitting {ins['splitting_prime']}")
    lines.append(f"LLL calls: {doc['lll_calls']}")
    if verbose:
        for e in doc["trace"]:
            extra = f" -> {e['result']}" if "result" in e else ""
            prec = f" prec {e['lll_precisions']}" if "lll_precisions" in e else ""
            lines.append(f"  factor {e['factor']} (deg {e['degree']}): {e['verdict']} [{e['reason']}]{extra}{prec}")
    subs = doc["subfields"]
    if not subs:
        lines.append("no subfields")
    else:
        lines.append(f"subfields: {len(subs)}")
        for s in subs:
            flag = " principal" if s["principal"] else ""
            lines.append(f"  degree {s['degree']}: g = {s['g_text']}{flag}")
            h = format_qpoly([Fraction(c) for c in s["h"]])
            lines.append(f"    h = {h}")
            if verbose:
                blocks = "".join("{" + ",".join(map(str, b)) + "}" for b in s["blocks"])
                lines.append(f"    blocks = {blocks}")
    lines.append(f"group order: {doc['group']['order']}")
    if "starting_group" in doc:
        sg = doc["starting_group"]
        lines.append(f"wreath intersection order: {sg['wreath_order']}")
        for r in sg["refinements"]:
            lines.append(f"  square class descent via degrees {r['subfield_degrees']}: {r['order_before']} -> {r['order_after']}")
        lines.append(f"starting group order: {sg['group']['order']}")
        for g in sg["group"]["generators"]:
            lines.append(f"  {g}")
    if "timings" in doc:
        for k, v in doc["timings"].items():
            lines.append(f"time {k}: {v:.3f}s")
    return "\n".join(lines) + "\n"


def simulate_document(spec: str, seed: int, r) -> dict:
    sizes = Counter(B.block_size for B in r.systems)
    return {
        "schema": SCHEMA,
        "input": {"group_spec": spec, "mode": "simulate", "seed": seed},
        "possible_block_sizes": sorted(r.possible_block_sizes),
        "order_divisor": r.order_divisor,
        "frobenius": format_perm(r.frobenius),
        "oracle_calls": r.oracle_calls,
        "calls_after_pq_rule": r.calls_after_pq_rule,
        "block_systems": {str(k): sizes[k] for k in sorted(sizes)},
        "group": _group_json(r.group),
        "trace": _trace_json(r.trace),
    }


def render_simulation(doc: dict, verbose=False) -> str:
    lines = [f"group: {doc['input']['group_spec']}", f"frobenius: {doc['frobenius']}",
             f"oracle calls: {doc['oracle_calls']}",
             "block systems: " + (", ".join(f"{v} of size {k}" for k, v in doc["block_systems"].items()) or "none"),
             f"group order: {doc['group']['order']}"]
    if verbose:
        for e in doc["trace"]:
            lines.append(f"  factor {e['factor']}: {e['verdict']} [{e['reason']}] {e.get('result', '')}".rstrip())
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------


def _read_poly(args) -> tuple[IntPoly, str]:
    if args.poly is not None:
        text = args.poly
    elif args.poly_file:
        with open(args.poly_file) as fh:
            text = fh.read().strip()
    else:
        raise ValueError("one of --poly or --poly-file is required")
    return parse_poly(text), text


def run_cli(argv=None, out=None) -> int:
    out = out or sys.stdout
    args = build_parser().parse_args(argv)
    dump = (lambda d: json.dumps(d, indent=2, sort_keys=True) + "\n")
    try:
        if args.mode == "simulate":
            if not args.group_spec:
                raise ValueError("--mode simulate needs --group-spec")
            G = parse_group_spec(args.group_spec)
            r = simulate_from_group(G, seed=args.seed)
            doc = simulate_document(args.group_spec, args.seed, r)
            out.write(dump(doc) if args.format == "json" else render_simulation(doc, args.verbose))
            return 0
        f, text = _read_poly(args)
        cfg = SearchConfig(
            inspection=InspectionConfig(prime_limit=args.max_prime),
            principal=PrincipalConfig(precision_cap=args.precision_cap),
            seed=args.seed,
            all_subfields=args.mode != "generating-only",
        )
        sg = None
        if args.mode == "starting-group":
            sg = starting_group(f, cfg)
            res = sg.search
        else:
            res = field_search(f, cfg)
        doc = search_document(f, text, args.mode, args.seed, res, sg, args.timings or args.format == "text")
        out.write(dump(doc) if args.format == "json" else render_text(doc, res, args.verbose))
        return 0
    except BUDGET_ERRORS as e:
        print(f"budget abort: {e}", file=sys.stderr)
        return 2
    except (ValueError, ReducibleInput, OSError) as e:
        print(f"input error: {e}", file=sys.stderr)
        return 1


def main() -> None:
    sys.exit(run_cli())
