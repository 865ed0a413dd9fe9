"""Hodge-metric polynomials of nilpotent orbits and their Chern forms.

In the coordinates x_j = -log|t_j| the metric of the canonically extended
determinant line bundle is a homogeneous polynomial P(x), positive on the
open positive orthant; its log-Hessian with a sign flip is the Chern form,
and the leading part in any subset of the variables factors through the
corresponding boundary stratum.  All evaluation is exact.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
import random

from .errors import DegenerateDet, NoFactorization, NotEffective, NotPolarized, ZeroAtPoint
from .lmhs import (
    PolarizedOrbitSpec, associated_graded_orbit, hermitian_sign,
    stratum_hodge_numbers, verify_polarized_lmhs,
)
from .matrices import Mat
from .polynomials import MultiPoly, poly_mat_det
from .rationals import GaussianRational, ZERO


# ---------------------------------------------------------------------------
# Metric matrix and metric polynomial
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class MetricMatrix:
    """Hermitian-matrix-valued polynomial of the Hodge metric on a frame of
    the top filtration level, block-diagonal over the string levels."""

    blocks: tuple          # (level i, frame basis Mat, matrix of MultiPoly)
    num_vars: int

    def full(self):
        size = sum(b[1].rows for b in self.blocks)
        zero = MultiPoly.zero(self.num_vars)
        out = [[zero] * size for _ in range(size)]
        off = 0
        for _, frame, mat in self.blocks:
            m = frame.rows
            for a in range(m):
                for b in range(m):
                    out[off + a][off + b] = mat[a][b]
            off += m
        return out

    def determinant(self) -> MultiPoly:
        acc = MultiPoly.const(self.num_vars, 1)
        for _, _, mat in self.blocks:
            acc = acc * poly_mat_det(mat)
        return acc


@dataclass(frozen=True)
class MetricPolynomial:
    """Normalized metric polynomial with its scaling record."""

    p: MultiPoly
    normalization: Fraction    # raw leading coefficient that was divided out
    num_vars: int
    degree: int

    def __str__(self):
        return self.p.to_string("x")


def _require_valid(spec: PolarizedOrbitSpec):
    report = verify_polarized_lmhs(spec)
    if not report.all_passed:
        names = ", ".join(c.name for c in report.failed())
        raise NotPolarized(f"orbit fails validation: {names}")


def hodge_metric_matrix(spec: PolarizedOrbitSpec, *, validate: bool = True) -> MetricMatrix:
    """Exact Hermitian metric on the canonical frame of the top flag level.

    Block i is  sign(i) * Q((sum_j x_j N_j)^i u_a, conj u_b)  on a canonical
    basis of I^{weight, i}; physical positive constants (2^i/i! and powers of
    1/4pi^2 from the cut-off coordinates) are divided out and recorded only
    through the sign unit.
    """
    if validate:
        _require_valid(spec)
    wf, bi = spec.lmhs()
    if not bi.effective:
        raise NotEffective("bigrading has pieces outside the effective range")
    n, k, d = spec.weight, spec.num_params, spec.dim
    blocks = []
    for i in range(0, n + 1):
        frame = bi.piece(n, i)
        if frame.rows == 0:
            continue
        unit = hermitian_sign(n, i, i)
        mat = []
        for a in range(frame.rows):
            # poly-vector (sum_j x_j N_j)^i u_a
            vec = [MultiPoly.const(k, frame[a, c]) for c in range(d)]
            for _ in range(i):
                nxt = [MultiPoly.zero(k) for _ in range(d)]
                for j, nj in enumerate(spec.nilpotents):
                    xj = MultiPoly.variable(k, j)
                    for r in range(d):
                        acc = nxt[r]
                        row = nj.row(r)
                        for c in range(d):
                            if row[c] and vec[c]:
                                acc = acc + (vec[c] * xj).scale(row[c])
                        nxt[r] = acc
                vec = nxt
            row_out = []
            for b in range(frame.rows):
                acc = MultiPoly.zero(k)
                vb = [x.conj() for x in frame.row(b)]
                for r in range(d):
                    if not vec[r]:
                        continue
                    qrow = spec.q.row(r)
                    coef = ZERO
                    for c in range(d):
                        if qrow[c] and vb[c]:
                            coef = coef + qrow[c] * vb[c]
                    if coef:
                        acc = acc + vec[r].scale(coef)
                row_out.append(acc.scale(unit))
            mat.append(row_out)
        # Hermitian sanity
        for a in range(frame.rows):
            for b in range(frame.rows):
                if mat[a][b].conj() != mat[b][a]:
                    raise NotPolarized("metric block is not Hermitian")
        blocks.append((i, frame, mat))
    if sum(b[1].rows for b in blocks) != spec.flag[0].rows:
        raise NotEffective("frame does not exhaust the top flag level")
    return MetricMatrix(tuple(blocks), k)


def hodge_metric_polynomial(spec: PolarizedOrbitSpec, *, validate: bool = True) -> MetricPolynomial:
    """Product of the block determinants, normalized to leading coefficient 1."""
    mm = hodge_metric_matrix(spec, validate=validate)
    raw = mm.determinant()
    for i, frame, mat in mm.blocks:
        if i > 0 and poly_mat_det(mat).is_zero():
            raise DegenerateDet(f"block at level {i} has vanishing determinant")
    if raw.is_zero():
        raise DegenerateDet("metric determinant vanishes identically")
    if not raw.is_real():
        raise DegenerateDet("metric determinant is not a real polynomial")
    lead = raw.leading_coefficient()
    if lead <= 0:
        raise DegenerateDet("leading coefficient is not positive")
    p = raw.scale(Fraction(1, 1) / lead)
    expected = sum(i * frame.rows for i, frame, _ in mm.blocks)
    if not p.is_homogeneous() or (p.terms and p.total_degree() != expected):
        raise DegenerateDet("metric polynomial has unexpected degree structure")
    return MetricPolynomial(p, Fraction(lead), mm.num_vars, expected)


# ---------------------------------------------------------------------------
# Chern form samples
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ChernSample:
    """Exact value of -Hess(log P) at a positive rational point."""

    x: tuple
    g: Mat
    psd: bool
    rank: int


def chern_form_at(p, x) -> ChernSample:
    """G_ij = (dP_i dP_j - P dP_ij) / P^2 evaluated exactly at x."""
    poly = p.p if isinstance(p, MetricPolynomial) else p
    xs = [Fraction(v) for v in x]
    val = poly.evaluate(xs)
    if isinstance(val, GaussianRational):
        val = val.real_or_raise()
    if val == 0:
        raise ZeroAtPoint(f"polynomial vanishes at {xs}")
    k = poly.num_vars
    firsts = [poly.partial_derivative(j) for j in range(k)]
    fvals = [f.evaluate(xs) for f in firsts]
    entries = []
    for i in range(k):
        for j in range(k):
            second = firsts[i].partial_derivative(j).evaluate(xs)
            entries.append(Fraction(fvals[i] * fvals[j] - val * second, val * val))
    g = Mat(k, k, entries)
    from .lmhs import hermitian_psd_status
    psd, rk, _ = hermitian_psd_status(g)
    return ChernSample(tuple(xs), g, psd, rk)


# ---------------------------------------------------------------------------
# Stratum factorization
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class StratumFactorization:
    subset: tuple
    leading: MultiPoly
    p_i: MultiPoly          # variables in the subset only
    p_ic: MultiPoly         # variables in the complement only
    remainder: MultiPoly
    stratum_poly: MultiPoly  # complement metric polynomial on its own variables
    deg_bound: int


def _split_exponent(exp, subset):
    ei = tuple(e if j in subset else 0 for j, e in enumerate(exp))
    ec = tuple(0 if j in subset else e for j, e in enumerate(exp))
    return ei, ec


def stratum_metric_polynomial(spec: PolarizedOrbitSpec, subset, *, rule: str = "echelon") -> MultiPoly:
    """Metric polynomial of the boundary stratum, in the complement variables.

    Product over the primitive graded pieces of the stratum degeneration,
    normalized to leading coefficient 1.
    """
    complement = [j for j in range(spec.num_params) if j not in set(subset)]
    acc = MultiPoly.const(len(complement), 1)
    for piece in associated_graded_orbit(spec, subset, rule=rule):
        acc = acc * hodge_metric_polynomial(piece.orbit, validate=False).p
    lead = acc.leading_coefficient()
    if lead <= 0:
        raise DegenerateDet("stratum polynomial has non-positive leading coefficient")
    return acc.scale(1 / lead)


def stratum_factorization(p: MetricPolynomial, subset, spec: PolarizedOrbitSpec) -> StratumFactorization:
    """Split P into its subset-leading part P_I * P_{I^c} plus lower terms."""
    subset = sorted(set(subset))
    k = p.num_vars
    if not subset or len(subset) >= k:
        raise ValueError("subset must be a nonempty proper subset of the variables")
    weights = [1 if j in subset else 0 for j in range(k)]
    leading = p.p.leading_part_by_weight(weights)
    remainder = p.p - leading
    deg_i = leading.weighted_degree(weights)
    if remainder and remainder.weighted_degree(weights) >= deg_i:
        raise NoFactorization("remainder is not lower order in the subset degree")

    # group by subset-exponent pattern, check one common complement factor
    groups = {}
    for exp, c in leading.terms.items():
        ei, ec = _split_exponent(exp, set(subset))
        groups.setdefault(ei, {})[ec] = c
    patterns = sorted(groups)
    ref = MultiPoly(k, groups[patterns[0]])
    ref_lead = ref.leading_coefficient()
    p_i_terms = {}
    for ei in patterns:
        g = MultiPoly(k, groups[ei])
        lam = g.leading_coefficient() / ref_lead
        if g != ref.scale(lam):
            raise NoFactorization(
                "leading part does not factor into subset and complement parts")
        p_i_terms[ei] = lam
    p_i = MultiPoly(k, p_i_terms)
    p_ic = ref
    if p_i * p_ic != leading:
        raise NoFactorization("internal error: factor product mismatch")

    # degree bound from the stratum Hodge numbers
    hs = stratum_hodge_numbers(spec, subset)
    bound = sum(j * h for j, h in hs.items())
    if deg_i != bound:
        raise NoFactorization(
            f"subset degree {deg_i} does not match stratum Hodge numbers ({bound})")

    # the complement factor is the stratum metric polynomial, up to a
    # positive constant
    complement = [j for j in range(k) if j not in set(subset)]
    mapping = {j: complement.index(j) for j in complement}
    p_ic_small = p_ic.rename_vars(len(complement), mapping)
    stratum = stratum_metric_polynomial(spec, subset)
    lead_small = p_ic_small.leading_coefficient()
    if lead_small <= 0:
        raise NoFactorization("complement factor has non-positive leading coefficient")
    if p_ic_small.scale(1 / lead_small) != stratum:
        raise NoFactorization(
            "complement factor does not match the stratum metric polynomial")
    return StratumFactorization(tuple(subset), leading, p_i, p_ic, remainder,
                                stratum, bound)


# ---------------------------------------------------------------------------
# Restriction limits
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class LimitReport:
    subset: tuple
    base: tuple
    scales: tuple
    rays: tuple
    deviations: tuple    # per ray: tuple of Fractions, one per scale
    eventually_decreasing: bool
    final_max_deviation: Fraction
    exact_zero: bool
    passed: bool


def _is_eventually_decreasing(devs) -> bool:
    if not devs:
        return False
    m = max(range(len(devs)), key=lambda i: devs[i])
    tail = devs[m:]
    return all(a >= b for a, b in zip(tail, tail[1:]))


def default_rays(subset, count: int, seed: int):
    """Positive rational directions over the subset: basis, all-ones, seeded."""
    rng = random.Random(seed)
    m = len(subset)
    rays = []
    for i in range(m):
        rays.append(tuple(Fraction(1) if j == i else Fraction(1, 2) for j in range(m)))
    rays.append(tuple(Fraction(1) for _ in range(m)))
    while len(rays) < count:
        rays.append(tuple(Fraction(rng.randint(1, 9), rng.randint(1, 9)) for _ in range(m)))
    # dedupe, preserve order
    seen, out = set(), []
    for r in rays:
        if r not in seen:
            seen.add(r)
            out.append(r)
    while len(out) < count:
        out.append(tuple(Fraction(rng.randint(1, 19), rng.randint(1, 9)) for _ in range(m)))
    return tuple(out[:max(count, 1)])


def restriction_limit_check(spec: PolarizedOrbitSpec, subset, *, rays=None,
                            scales=None, base=None, seed: int = 0,
                            tolerance: Fraction = Fraction(1, 10 ** 6)) -> LimitReport:
    """Compare the complement block of the Chern form against the stratum form
    along rays going to infinity in the subset variables."""
    subset = sorted(set(subset))
    k = spec.num_params
    complement = [j for j in range(k) if j not in subset]
    if not subset or not complement:
        raise ValueError("subset must be a nonempty proper subset")
    p = hodge_metric_polynomial(spec)
    stratum = stratum_metric_polynomial(spec, subset)
    if scales is None:
        scales = tuple(Fraction(10) ** e for e in range(1, 9))
    scales = tuple(Fraction(s) for s in scales)
    if sorted(scales) != list(scales):
        raise ValueError("scales must be increasing")
    if rays is None:
        rays = default_rays(subset, 5, seed)
    base = tuple(Fraction(b) for b in (base or [1] * len(complement)))

    g_limit = chern_form_at(stratum, base).g

    all_devs = []
    exact_zero = True
    for ray in rays:
        devs = []
        for s in scales:
            x = [Fraction(0)] * k
            for pos, j in enumerate(complement):
                x[j] = base[pos]
            for pos, j in enumerate(subset):
                x[j] = s * Fraction(ray[pos])
            sample = chern_form_at(p, x)
            worst = Fraction(0)
            for a, ja in enumerate(complement):
                for b, jb in enumerate(complement):
                    diff = sample.g[ja, jb].real_or_raise() - g_limit[a, b].real_or_raise()
                    denom = max(Fraction(1), abs(g_limit[a, b].real_or_raise()))
                    worst = max(worst, abs(diff) / denom)
            devs.append(worst)
            if worst != 0:
                exact_zero = False
        all_devs.append(tuple(devs))
    final_max = max(d[-1] for d in all_devs)
    decreasing = all(_is_eventually_decreasing(list(d)) for d in all_devs)
    passed = decreasing and final_max <= tolerance
    return LimitReport(tuple(subset), base, scales, tuple(rays), tuple(all_devs),
                       decreasing, final_max, exact_zero, passed)


# ---------------------------------------------------------------------------
# Extreme monomials
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class PermutationMonomialReport:
    permutation: tuple
    exponents: tuple
    present: bool
    hull_ok: bool


def permutation_monomial_check(spec: PolarizedOrbitSpec, permutation) -> PermutationMonomialReport:
    """Exponents of the chain monomial of a variable ordering, its presence in
    P, and the convex-hull bound on all monomials of P."""
    k = spec.num_params
    perm = list(permutation)
    if sorted(perm) != list(range(k)):
        raise ValueError("permutation must reorder 0..k-1")
    p = hodge_metric_polynomial(spec)
    prev = {}
    exps = [0] * k
    for i in range(1, k + 1):
        cur = stratum_hodge_numbers(spec, perm[:i])
        ell = sum(j * (cur.get(j, 0) - prev.get(j, 0))
                  for j in set(cur) | set(prev))
        exps[perm[i - 1]] = ell
        prev = cur
    present = p.p.coefficient(tuple(exps)) != 0

    # convex hull of all chain monomials contains every monomial of P
    from itertools import permutations as _perms
    from .cones import hull_contains
    points = []
    for sigma in _perms(range(k)):
        prev = {}
        e = [0] * k
        for i in range(1, k + 1):
            cur = stratum_hodge_numbers(spec, list(sigma[:i]))
            e[sigma[i - 1]] = sum(j * (cur.get(j, 0) - prev.get(j, 0))
                                  for j in set(cur) | set(prev))
            prev = cur
        points.append(tuple(e))
    hull_ok = all(hull_contains(points, exp) for exp in p.p.terms)
    return PermutationMonomialReport(tuple(perm), tuple(exps), present, hull_ok)
