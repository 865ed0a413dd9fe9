"""Command-line front end.

    hodgecalc <subcommand> [--input FILE] [--stratum i,j,...] [--rays N]
              [--scales LO..HI] [--seed S] [--format json|text]
              [--output FILE] ...

The input is a problem document (JSON file path, '-' for stdin, or
'builtin:NAME' for a bundled fixture).  Exit codes: 0 on success/PASS, 1 on
a failed check, 2 on input errors.
"""

from __future__ import annotations

import argparse
import os
import sys
import time
from fractions import Fraction

from .errors import HodgecalcError, ParseError, SchemaError, UnknownSubcommand
from .report import Report, digest_text, exact_entry, frac_to_decimal, render_report
from .schemas import ProblemDocument, parse_problem

SUBCOMMANDS = (
    "validate", "weight-filtration", "sl2", "bigrading", "rwfp", "metric-poly",
    "chern", "limit-check", "factorize", "monomial-map", "stratum-map",
    "refine", "compat", "curvature", "horizontal", "schur", "segre",
    "multiplier-ideal",
)

_NEEDS_INPUT = {name: True for name in SUBCOMMANDS}
for name in ("schur", "segre"):
    _NEEDS_INPUT[name] = False


def _parse_stratum(text):
    if not text:
        return None
    try:
        return [int(tok) - 1 for tok in text.split(",") if tok.strip()]
    except ValueError as exc:
        raise SchemaError(f"bad --stratum value {text!r}") from exc


def _parse_scales(text):
    if not text:
        return None
    try:
        lo_s, hi_s = text.split("..")

        def decade(s):
            if "e" in s:
                base, exp = s.split("e")
                return int(exp) if base in ("1", "") else None
            v = Fraction(s)
            e = 0
            while v >= 10:
                v /= 10
                e += 1
            return e if v == 1 else None
        lo, hi = decade(lo_s), decade(hi_s)
        if lo is None or hi is None or lo > hi:
            raise ValueError("scales must look like 1e1..1e8")
        return [Fraction(10) ** e for e in range(lo, hi + 1)]
    except (ValueError, TypeError) as exc:
        raise SchemaError(f"bad --scales value {text!r}: {exc}") from exc


def _expect_kind(doc: ProblemDocument, kind: str, command: str):
    if doc.kind != kind:
        raise SchemaError(f"{command} needs a {kind!r} document, got {doc.kind!r}")


def _poly_entry(poly, prefix="x"):
    return {"polynomial": poly.to_string(prefix),
            "terms": poly.to_json()["terms"]}


def dispatch(doc, subcommand: str, flags) -> Report:
    """Route one subcommand to the engine and assemble a report."""
    if subcommand not in SUBCOMMANDS:
        raise UnknownSubcommand(f"unknown subcommand {subcommand!r}")
    seed = flags.get("seed", 0)
    digest = digest_text(doc.canonical_json()) if doc is not None else digest_text(subcommand)
    report = Report(subcommand, digest, seed)
    f, g = report.findings, report.flags
    stratum = flags.get("stratum")

    if subcommand == "validate":
        if doc.kind == "orbit":
            from .lmhs import verify_polarized_lmhs
            rep = verify_polarized_lmhs(doc.obj)
            f["checks"] = [{"name": c.name, "passed": c.passed,
                            **({"detail": c.detail} if c.detail else {})}
                           for c in rep.checks]
            g["valid"] = rep.all_passed
        elif doc.kind == "phs":
            doc.obj.validate()
            f["pieces"] = {f"{p},{q}": m.rows for (p, q), m in doc.obj.pieces.items()}
            g["valid"] = True
        else:
            f["note"] = f"document of kind {doc.kind} parsed"
            g["valid"] = True
        return report

    if subcommand == "weight-filtration":
        _expect_kind(doc, "orbit", subcommand)
        from .weightfilt import weight_filtration
        spec = doc.obj
        n = spec.n_sum(set(stratum) if stratum else None)
        wf = weight_filtration(n, spec.weight)
        f["gradedDims"] = list(wf.graded_dims)
        f["levels"] = {str(k): wf.level(k).rows for k in range(2 * spec.weight + 1)}
        g["computed"] = True
        return report

    if subcommand == "sl2":
        _expect_kind(doc, "orbit", subcommand)
        from .weightfilt import complete_sl2, grading_element, weight_filtration
        spec = doc.obj
        n = spec.n_sum(set(stratum) if stratum else None)
        wf = weight_filtration(n, spec.weight)
        y = grading_element(n, wf)
        triple = complete_sl2(n, y, weight=spec.weight)
        f["gradingElement"] = y.to_json()
        f["raising"] = triple.n_plus.to_json()
        g["brackets"] = triple.check()
        return report

    if subcommand == "bigrading":
        _expect_kind(doc, "orbit", subcommand)
        wf, bi = doc.obj.lmhs()
        f["pieces"] = {f"{p},{q}": m.rows for (p, q), m in sorted(bi.pieces.items())}
        g["rSplit"] = bi.r_split
        g["effective"] = bi.effective
        return report

    if subcommand == "rwfp":
        _expect_kind(doc, "orbit", subcommand)
        from .weightfilt import relative_weight_filtration_check
        spec = doc.obj
        results = {}
        ok = True
        for a in range(spec.num_params):
            for b in range(spec.num_params):
                if a == b:
                    continue
                rep = relative_weight_filtration_check(
                    spec.nilpotents[a], spec.nilpotents[b], spec.weight)
                results[f"{a + 1},{b + 1}"] = rep.holds
                ok = ok and rep.holds
        f["pairs"] = results
        g["holds"] = ok
        return report

    if subcommand == "metric-poly":
        _expect_kind(doc, "orbit", subcommand)
        from .orbit import hodge_metric_polynomial
        p = hodge_metric_polynomial(doc.obj)
        f.update(_poly_entry(p.p))
        f["normalization"] = exact_entry(p.normalization)
        f["degree"] = p.degree
        g["computed"] = True
        return report

    if subcommand == "chern":
        _expect_kind(doc, "orbit", subcommand)
        from .orbit import chern_form_at, hodge_metric_polynomial
        import random
        p = hodge_metric_polynomial(doc.obj)
        rng = random.Random(seed)
        points = [tuple(Fraction(1) for _ in range(p.num_vars))]
        for _ in range(max(0, flags.get("rays", 3) - 1)):
            points.append(tuple(Fraction(rng.randint(1, 12), rng.randint(1, 4))
                                for _ in range(p.num_vars)))
        out = []
        all_psd = True
        for x in points:
            s = chern_form_at(p, x)
            out.append({"x": [str(v) for v in x],
                        "G": [[str(s.g[i, j].real_or_raise())
                               for j in range(s.g.cols)] for i in range(s.g.rows)],
                        "psd": s.psd, "rank": s.rank})
            all_psd = all_psd and s.psd
        f["samples"] = out
        g["psd"] = all_psd
        return report

    if subcommand == "limit-check":
        _expect_kind(doc, "orbit", subcommand)
        from .orbit import restriction_limit_check
        if not stratum:
            raise SchemaError("limit-check needs --stratum")
        rays = None
        if flags.get("rays"):
            from .orbit import default_rays
            rays = default_rays(stratum, flags["rays"], seed)
        lr = restriction_limit_check(
            doc.obj, stratum, seed=seed, scales=flags.get("scales"), rays=rays)
        f["scales"] = [str(s) for s in lr.scales]
        f["rays"] = [[str(c) for c in ray] for ray in lr.rays]
        f["deviations"] = [[{"exact": str(d), "decimal": frac_to_decimal(d)}
                            for d in per_ray] for per_ray in lr.deviations]
        f["finalMaxDeviation"] = exact_entry(lr.final_max_deviation)
        f["exactZero"] = lr.exact_zero
        g["eventuallyDecreasing"] = lr.eventually_decreasing
        g["withinTolerance"] = lr.final_max_deviation <= Fraction(1, 10 ** 6)
        return report

    if subcommand == "factorize":
        _expect_kind(doc, "orbit", subcommand)
        from .orbit import hodge_metric_polynomial, stratum_factorization
        if not stratum:
            raise SchemaError("factorize needs --stratum")
        p = hodge_metric_polynomial(doc.obj)
        fac = stratum_factorization(p, stratum, doc.obj)
        f["leading"] = fac.leading.to_string("x")
        f["subsetFactor"] = fac.p_i.to_string("x")
        f["complementFactor"] = fac.p_ic.to_string("x")
        f["remainder"] = fac.remainder.to_string("x")
        f["subsetDegree"] = fac.deg_bound
        g["factors"] = True
        return report

    if subcommand == "monomial-map":
        from .monomial import monomial_map, nonnegative_generators
        if doc.kind == "orbit":
            mm = monomial_map(doc.obj)
        elif doc.kind == "subspace":
            rays = nonnegative_generators(doc.obj.row_list(), doc.obj.cols)
            from .monomial import MonomialMap
            mm = MonomialMap(tuple(sorted((tuple(int(x) for x in r) for r in rays),
                                          reverse=True)),
                             tuple(range(doc.obj.cols)))
        else:
            raise SchemaError("monomial-map needs an orbit or subspace document")
        f.update(mm.to_json())
        g["computed"] = True
        return report

    if subcommand == "stratum-map":
        _expect_kind(doc, "orbit", subcommand)
        from .monomial import stratum_monomial_map
        if stratum is None:
            raise SchemaError("stratum-map needs --stratum")
        mm = stratum_monomial_map(doc.obj, stratum)
        f.update(mm.to_json())
        g["computed"] = True
        return report

    if subcommand == "refine":
        from .monomial import connected_refinement, monomial_map, MonomialMap
        if doc.kind == "orbit":
            mm = monomial_map(doc.obj)
        elif doc.kind == "subspace":
            exps = tuple(tuple(int(x.real_or_raise()) for x in doc.obj.row(i))
                         for i in range(doc.obj.rows))
            mm = MonomialMap(exps, tuple(range(doc.obj.cols)))
        else:
            raise SchemaError("refine needs an orbit or subspace document")
        ref = connected_refinement(mm)
        f["invariantFactors"] = list(ref.invariant_factors)
        f["covering"] = ref.eta.to_json()
        f["refined"] = ref.refined.to_json()
        g["saturated"] = True
        return report

    if subcommand == "compat":
        _expect_kind(doc, "orbit", subcommand)
        from .monomial import compatibility_check
        spec = doc.obj
        k = spec.num_params
        results = {}
        ok = True
        from itertools import combinations
        for r in range(1, k):
            for small in combinations(range(k), r):
                for extra in range(1, k - r + 1):
                    for add in combinations([j for j in range(k) if j not in small], extra):
                        large = tuple(sorted(small + add))
                        rep = compatibility_check(spec, small, large)
                        key = (",".join(str(i + 1) for i in small) + " < "
                               + ",".join(str(i + 1) for i in large))
                        results[key] = rep.passed
                        ok = ok and rep.passed
        f["pairs"] = results
        g["compatible"] = ok
        return report

    if subcommand == "curvature":
        _expect_kind(doc, "model", subcommand)
        from .normpos import (curvature_from_model, flat_directions,
                              strong_semipositivity_check)
        model = doc.obj
        theta = curvature_from_model(model)
        rep = strong_semipositivity_check([theta], seed=seed)
        f["rankE"] = model.rank_e
        f["dimT"] = model.dim_t
        f["sampledMinima"] = [exact_entry(m) for m in rep.sampled_minima]
        e0 = [1] + [0] * (model.rank_e - 1)
        _, dim = flat_directions(model, e0)
        f["flatDirectionsAtFirstBasisVector"] = dim
        g["semiPositive"] = all(rep.semi_positive)
        g["stronglySemiPositiveOnSample"] = rep.strongly_semi_positive
        return report

    if subcommand == "horizontal":
        _expect_kind(doc, "phs", subcommand)
        from .horizontal import (bisectional_curvature, graded_end_algebra,
                                 sectional_quartic, top_block)
        import random
        from .rationals import GaussianRational, ZERO
        ge = graded_end_algebra(doc.obj)
        f["pieceDims"] = {str(p): ge.piece_dim(p) for p in sorted(ge.pieces)}
        rng = random.Random(seed)
        gm1 = ge.pieces.get(-1)
        samples = []
        all_neg = True
        for _ in range(3):
            coeffs = [GaussianRational(Fraction(rng.randint(-3, 3)),
                                       Fraction(rng.randint(-3, 3)))
                      for _ in range(gm1.rows)]
            v = [ZERO] * (doc.obj.dim ** 2)
            for c, i in zip(coeffs, range(gm1.rows)):
                v = [a + c * b for a, b in zip(v, gm1.row(i))]
            xi = ge.unflatten(v)
            if xi.is_zero():
                continue
            val = bisectional_curvature(ge, xi, xi)
            q = sectional_quartic(ge, xi)
            samples.append({"selfBisectional": exact_entry(val),
                            "quartic": exact_entry(q.value)})
            all_neg = all_neg and val < 0
        f["samples"] = samples
        g["negativeSelfCurvature"] = all_neg
        return report

    if subcommand == "schur":
        from .chern import schur_polynomial
        partition = flags.get("partition") or []
        rank_ = flags.get("rank") or max(partition, default=1) or 1
        sym = schur_polynomial(partition, rank_)
        f["partition"] = list(partition)
        f["rank"] = rank_
        f["symbol"] = str(sym)
        g["computed"] = True
        return report

    if subcommand == "segre":
        from .chern import segre_polynomial
        degree = flags.get("degree", 1)
        rank_ = flags.get("rank", 2)
        sym = segre_polynomial(degree, rank_)
        f["degree"] = degree
        f["rank"] = rank_
        f["symbol"] = str(sym)
        g["computed"] = True
        return report

    if subcommand == "multiplier-ideal":
        from .multiplier import multiplier_ideal_monomials
        if doc is not None and doc.kind == "alpha":
            alpha, bound = doc.obj
        elif flags.get("alpha"):
            alpha = [Fraction(a) for a in flags["alpha"].split(",")]
            bound = flags.get("degree", 24)
        else:
            raise SchemaError("multiplier-ideal needs an alpha document or --alpha")
        ideal = multiplier_ideal_monomials(alpha, bound)
        f["alpha"] = [str(a) for a in alpha]
        f["generators"] = [list(b) for b in ideal.generators]
        f["monomials"] = list(ideal.monomial_strings())
        f["truncated"] = ideal.truncated
        g["computed"] = True
        return report

    raise UnknownSubcommand(f"unhandled subcommand {subcommand!r}")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hodgecalc",
        description="Exact calculators for degenerating Hodge structures")
    parser.add_argument("subcommand", help="one of: " + ", ".join(SUBCOMMANDS))
    parser.add_argument("--input", help="problem document: path, '-', or builtin:NAME")
    parser.add_argument("--stratum", help="comma-separated 1-based variable indices")
    parser.add_argument("--rays", type=int, help="number of sample rays/points")
    parser.add_argument("--scales", help="geometric scale range, e.g. 1e1..1e8")
    parser.add_argument("--seed", type=int, default=None)
    parser.add_argument("--format", choices=("json", "text"), default="text")
    parser.add_argument("--output", help="write the report to a file")
    parser.add_argument("--partition", help="comma-separated partition for schur")
    parser.add_argument("--degree", type=int, help="degree for segre/multiplier-ideal")
    parser.add_argument("--rank", type=int, help="bundle rank for schur/segre")
    parser.add_argument("--alpha", help="comma-separated weights for multiplier-ideal")
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code not in (0, None) else 0
    seed = args.seed
    if seed is None:
        seed = int(os.environ.get("HODGECALC_SEED", "0"))
    flags = {
        "seed": seed,
        "stratum": _parse_stratum(args.stratum) if args.stratum else None,
        "rays": args.rays,
        "scales": _parse_scales(args.scales) if args.scales else None,
        "degree": args.degree,
        "rank": args.rank,
        "alpha": args.alpha,
        "partition": ([int(x) for x in args.partition.split(",")]
                      if args.partition else None),
    }
    flags = {k: v for k, v in flags.items() if v is not None}
    flags.setdefault("seed", seed)
    try:
        if args.subcommand not in SUBCOMMANDS:
            raise UnknownSubcommand(
                f"unknown subcommand {args.subcommand!r}; expected one of "
                + ", ".join(SUBCOMMANDS))
        doc = None
        if args.input:
            doc = parse_problem(args.input)
        elif _NEEDS_INPUT[args.subcommand] and args.subcommand != "multiplier-ideal":
            raise SchemaError(f"{args.subcommand} needs --input")
        start = time.perf_counter()
        report = dispatch(doc, args.subcommand, flags)
        report.timings["total"] = time.perf_counter() - start
    except (ParseError, SchemaError, UnknownSubcommand) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except HodgecalcError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    text = render_report(report, args.format)
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0 if report.passed else 1


if __name__ == "__main__":
    raise SystemExit(main())
