"""Monomial maps separating the fibers of nilpotent-orbit period maps.

A tuple of commuting nilpotents has a rational relation space R; monomials
t^B with B in the non-negative part of R-perp are constant on orbit fibers,
and extreme rays of that cone give a canonical generating set.  Along a
boundary stratum the same construction applies with the relation condition
"sum b_j N_j lies in W_{-1} of the stratum cone acting on endomorphisms".
The saturation refinement factors a monomial map through a finite covering
so that its fibers become connected at the lattice level.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .cones import nonnegative_extreme_rays, _scale_primitive
from .errors import NoSolution
from .lmhs import PolarizedOrbitSpec
from .matrices import (
    Mat, kernel_basis, smith_normal_form, sub_canonical, sub_zero,
)
from .rationals import ZERO
from .weightfilt import weight_filtration_centered


# ---------------------------------------------------------------------------
# Relation spaces
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class RelationSpace:
    """Kernel and cokernel data of a -> sum a_i N_i."""

    basis: tuple        # rows spanning {a : sum a_i N_i = 0}
    orth_basis: tuple   # rows spanning the orthogonal complement

    @property
    def dim(self) -> int:
        return len(self.basis)


def _vec_rows_to_space(vecs, ambient):
    if not vecs:
        return sub_zero(ambient)
    return sub_canonical(Mat.from_rows([list(v) for v in vecs]))


def relation_space(nilpotents) -> RelationSpace:
    """Exact kernel of the flattening map a -> sum a_i N_i."""
    k = len(nilpotents)
    if k == 0:
        return RelationSpace((), ())
    d = nilpotents[0].rows
    cols = Mat.from_rows([[n.vec()[i] for n in nilpotents]
                          for i in range(d * d)])
    kern = kernel_basis(cols)
    basis = _vec_rows_to_space(kern, k)
    orth = _orth_complement(basis, k)
    return RelationSpace(tuple(basis.row_list()), tuple(orth.row_list()))


def _orth_complement(space: Mat, ambient: int) -> Mat:
    if space.rows == 0:
        return Mat.identity(ambient)
    kern = kernel_basis(space)
    return _vec_rows_to_space(kern, ambient)


# ---------------------------------------------------------------------------
# Monomial maps
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class MonomialMap:
    """Rows of `exponents` are the defining monomials in variables
    t_{j+1} for j in `variables` (global indices)."""

    exponents: tuple     # tuple of integer tuples
    variables: tuple     # global variable indices (0-based)

    @property
    def target_dim(self) -> int:
        return len(self.exponents)

    def monomial_strings(self):
        out = []
        for row in self.exponents:
            factors = []
            for e, j in zip(row, self.variables):
                if e == 1:
                    factors.append(f"t{j + 1}")
                elif e:
                    factors.append(f"t{j + 1}^{e}")
            out.append("*".join(factors) if factors else "1")
        return tuple(out)

    def to_json(self):
        return {"exponents": [list(r) for r in self.exponents],
                "variables": [j + 1 for j in self.variables],
                "monomials": list(self.monomial_strings())}


def nonnegative_generators(orth_rows, ambient: int):
    """Primitive non-negative integer generators of span(orth) ∩ orthant."""
    return nonnegative_extreme_rays(orth_rows, ambient)


def monomial_map(spec: PolarizedOrbitSpec) -> MonomialMap:
    """Monomials separating the fibers of the full orbit."""
    rs = relation_space(spec.nilpotents)
    k = spec.num_params
    rays = nonnegative_generators([list(r) for r in rs.orth_basis], k) \
        if rs.orth_basis else tuple()
    return MonomialMap(tuple(sorted((tuple(int(x) for x in r) for r in rays),
                                    reverse=True)),
                       tuple(range(k)))


def _ad_matrix(n: Mat) -> Mat:
    """Matrix of ad(n) = [n, .] acting on row-major flattened endomorphisms."""
    d = n.rows
    rows = []
    for i in range(d):
        for j in range(d):
            row = [ZERO] * (d * d)
            for k_ in range(d):
                row[k_ * d + j] = row[k_ * d + j] + n[i, k_]
                row[i * d + k_] = row[i * d + k_] - n[k_, j]
            rows.append(row)
    return Mat.from_rows(rows)


def w_minus1_end(n_cone: Mat) -> Mat:
    """Level -1 of the centered weight filtration of ad(n_cone) on End(V)."""
    ad = _ad_matrix(n_cone)
    centered = weight_filtration_centered(ad)
    s = max(centered)
    if -1 < -s:
        return sub_zero(ad.rows)
    if -1 > s:
        return Mat.identity(ad.rows)
    return centered[-1]


def stratum_relation_rows(spec: PolarizedOrbitSpec, subset):
    """Basis of {b over the complement : sum b_j N_j in W_-1(N_subset) End(V)}."""
    subset = sorted(set(subset))
    complement = [j for j in range(spec.num_params) if j not in subset]
    d = spec.dim
    n_cone = spec.n_sum(subset)
    w = w_minus1_end(n_cone)
    # unknowns: (b over complement, c over w-basis);
    # equation: sum b_j vec(N_j) - sum c_r w_r = 0
    cols = []
    for j in complement:
        cols.append(list(spec.nilpotents[j].vec()))
    for r in range(w.rows):
        cols.append([-x for x in w.row(r)])
    if not cols:
        return [], complement
    m = Mat.from_rows(cols).transpose()
    kern = kernel_basis(m)
    b_rows = [list(v[:len(complement)]) for v in kern]
    space = _vec_rows_to_space([r for r in b_rows if any(r)], len(complement))
    return space.row_list(), complement


def stratum_monomial_map(spec: PolarizedOrbitSpec, subset) -> MonomialMap:
    """Monomials in the complement variables separating stratum fibers."""
    rel_rows, complement = stratum_relation_rows(spec, subset)
    space = _vec_rows_to_space(rel_rows, len(complement))
    orth = _orth_complement(space, len(complement))
    rays = nonnegative_generators(orth.row_list(), len(complement)) \
        if orth.rows else tuple()
    return MonomialMap(tuple(sorted((tuple(int(x) for x in r) for r in rays),
                                    reverse=True)),
                       tuple(complement))


@dataclass(frozen=True)
class CompatibilityReport:
    subset_small: tuple
    subset_large: tuple
    generators: tuple      # integer relation vectors over the small complement
    verdicts: tuple        # bool per generator
    passed: bool


def compatibility_check(spec: PolarizedOrbitSpec, small, large) -> CompatibilityReport:
    """Check that stratum relations persist into deeper strata.

    For every relation generator of the small stratum, its truncation to the
    large stratum's complement must satisfy the W_-1 condition of the large
    cone.
    """
    small = sorted(set(small))
    large = sorted(set(large))
    if not set(small) < set(large):
        raise ValueError("need a strictly nested pair of strata")
    rel_rows, complement = stratum_relation_rows(spec, small)
    gens = tuple(_scale_primitive([Fraction(x.re) for x in row]) for row in rel_rows)
    w = w_minus1_end(spec.n_sum(large))
    large_c = [j for j in range(spec.num_params) if j not in set(large)]
    verdicts = []
    d = spec.dim
    for g in gens:
        total = Mat.zeros(d, d)
        for coeff, j in zip(g, complement):
            if coeff and j in large_c:
                total = total + spec.nilpotents[j].scale(Fraction(coeff))
        from .matrices import sub_contains_vec
        verdicts.append(sub_contains_vec(w, list(total.vec())))
    return CompatibilityReport(tuple(small), tuple(large), gens,
                               tuple(verdicts), all(verdicts))


# ---------------------------------------------------------------------------
# Saturation refinement
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SaturationRefinement:
    eta: Mat                 # k x k exponent matrix of the covering
    refined: MonomialMap     # exponents of the connected-fiber map
    invariant_factors: tuple


def connected_refinement(m: MonomialMap) -> SaturationRefinement:
    """Factor t^E through a finite monomial covering so the image lattice is
    saturated.

    With E = U^-1 D V^-1 (Smith form), the refined exponents replace each
    elementary divisor by 1 and the covering collects them; the quotient of
    the saturation by the image lattice is the direct sum of Z/d_i with the
    d_i > 1.
    """
    if not m.exponents:
        k = len(m.variables)
        return SaturationRefinement(Mat.identity(k), m, tuple())
    e = Mat.from_rows([[Fraction(x) for x in row] for row in m.exponents])
    snf = smith_normal_form(e)
    from .weightfilt import _invert
    u_inv = _invert(snf.u)
    v_inv = _invert(snf.v)
    nr, nc = e.rows, e.cols
    d_hat = Mat.from_rows([[Fraction(1) if (i == j and snf.d[i, i]) else Fraction(0)
                            for j in range(nc)] for i in range(nr)])
    a_tilde = u_inv @ d_hat @ v_inv
    diag = [snf.d[i, i] if i < min(nr, nc) and snf.d[i, i] else Fraction(1)
            for i in range(nc)]
    b = snf.v @ Mat.diag(diag) @ v_inv
    if a_tilde @ b != e:
        raise NoSolution("internal error: refinement diagram does not commute")
    refined_rows = []
    for i in range(nr):
        row = []
        for j in range(nc):
            val = a_tilde[i, j].real_or_raise()
            if val.denominator != 1:
                raise NoSolution("internal error: refined exponents not integral")
            row.append(int(val))
        refined_rows.append(tuple(row))
    eta_ok = all(b[i, j].real_or_raise().denominator == 1
                 for i in range(nc) for j in range(nc))
    if not eta_ok:
        raise NoSolution("internal error: covering exponents not integral")
    factors = tuple(int(f) for f in snf.invariant_factors if f > 1)
    # saturation check: the refined lattice has trivial elementary divisors
    snf2 = smith_normal_form(a_tilde)
    if any(f != 1 for f in snf2.invariant_factors):
        raise NoSolution("internal error: refined lattice is not saturated")
    return SaturationRefinement(b, MonomialMap(tuple(refined_rows), m.variables),
                                factors)


# ---------------------------------------------------------------------------
# Boundary positivity
# ---------------------------------------------------------------------------

def strata_boundary_positivity(spec: PolarizedOrbitSpec, index: int, subset=None) -> bool:
    """True iff the index-th direction stays independent at the stratum.

    With I the stratum containing the normal direction, checks that N_index
    does not fall into W_-1 of the residual cone N_{I minus index} together
    with the span of the other residual nilpotents.
    """
    if subset is None:
        subset = {index}
    subset = sorted(set(subset))
    if index not in subset:
        raise ValueError("the normal direction must belong to the stratum")
    rest = [j for j in subset if j != index]
    d = spec.dim
    n_rest = spec.n_sum(rest)
    w = w_minus1_end(n_rest)
    rows = [list(w.row(i)) for i in range(w.rows)]
    for j in rest:
        rows.append(list(spec.nilpotents[j].vec()))
    target = list(spec.nilpotents[index].vec())
    if not rows:
        return any(target)
    space = sub_canonical(Mat.from_rows(rows))
    from .matrices import sub_contains_vec
    return not sub_contains_vec(space, target)
