"""Pointwise curvature models with the norm-positivity property.

A model is a linear map A : E (x) T -> G between Hermitian spaces with
standard inner products in the given frames; the induced curvature form is
Theta(e, xi) = |A(e (x) xi)|^2, automatically Nakano semi-positive because
its matrix is a Gram matrix.  Symmetric powers are handled inside the
tensor power (an isometric embedding), keeping every norm rational.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product
import random

from .errors import DimensionMismatch, NotUnit
from .lmhs import hermitian_psd_status
from .matrices import Mat, kernel_basis, rank
from .polynomials import MultiPoly, poly_mat_det
from .rationals import GaussianRational, ZERO, ONE, as_gauss


@dataclass(frozen=True)
class NormPositivityModel:
    """A : E (x) T -> G as a (rank_g) x (rank_e * dim_t) matrix.

    Column index convention: (alpha, i) -> alpha * dim_t + i with alpha the
    fiber index and i the tangent index.
    """

    dim_t: int
    rank_e: int
    rank_g: int
    a: Mat
    unitary_frame: bool = True

    def __post_init__(self):
        if self.a.rows != self.rank_g or self.a.cols != self.rank_e * self.dim_t:
            raise DimensionMismatch("model matrix shape mismatch")

    def col(self, alpha: int, i: int) -> int:
        return alpha * self.dim_t + i

    def apply(self, e, xi):
        """A(e (x) xi) for vectors e in E, xi in T."""
        e = [as_gauss(x) for x in e]
        xi = [as_gauss(x) for x in xi]
        tensor = [ZERO] * (self.rank_e * self.dim_t)
        for alpha, ea in enumerate(e):
            if ea:
                for i, xv in enumerate(xi):
                    if xv:
                        tensor[self.col(alpha, i)] = ea * xv
        return self.a.mat_vec(tensor)

    def apply_tensor(self, tensor):
        return self.a.mat_vec(tensor)

    def to_json(self):
        return {"dimT": self.dim_t, "rankE": self.rank_e, "rankG": self.rank_g,
                "A": self.a.to_json()}

    @classmethod
    def from_json(cls, data) -> "NormPositivityModel":
        return cls(int(data["dimT"]), int(data["rankE"]), int(data["rankG"]),
                   Mat.from_json(data["A"]))


@dataclass(frozen=True)
class CurvatureTensor:
    """Theta^alpha_{beta-bar i j-bar} stored as the Nakano matrix on E (x) T."""

    rank_e: int
    dim_t: int
    nakano: Mat

    def theta(self, alpha: int, beta: int, i: int, j: int) -> GaussianRational:
        return self.nakano[alpha * self.dim_t + i, beta * self.dim_t + j]

    def value(self, e, xi) -> Fraction:
        """The real curvature form on a decomposable pair."""
        e = [as_gauss(x) for x in e]
        xi = [as_gauss(x) for x in xi]
        acc = ZERO
        for a in range(self.rank_e):
            for b in range(self.rank_e):
                for i in range(self.dim_t):
                    for j in range(self.dim_t):
                        t = self.theta(a, b, i, j)
                        if t:
                            acc = acc + t * e[a] * e[b].conj() * xi[i] * xi[j].conj()
        return acc.real_or_raise()

    def horizontal_form(self, e) -> Mat:
        """The Hermitian form Theta(e, ., .) on T."""
        e = [as_gauss(x) for x in e]
        entries = []
        for i in range(self.dim_t):
            for j in range(self.dim_t):
                acc = ZERO
                for a in range(self.rank_e):
                    for b in range(self.rank_e):
                        t = self.theta(a, b, i, j)
                        if t:
                            acc = acc + t * e[a] * e[b].conj()
                entries.append(acc)
        return Mat(self.dim_t, self.dim_t, entries)

    def trace_form(self) -> Mat:
        """The first Chern form as a Hermitian matrix on T."""
        entries = []
        for i in range(self.dim_t):
            for j in range(self.dim_t):
                acc = ZERO
                for a in range(self.rank_e):
                    t = self.theta(a, a, i, j)
                    if t:
                        acc = acc + t
                entries.append(acc)
        return Mat(self.dim_t, self.dim_t, entries)


def curvature_from_model(model: NormPositivityModel) -> CurvatureTensor:
    """Nakano matrix A* A; a Gram matrix, hence exactly PSD."""
    nak = model.a.conj_transpose() @ model.a
    return CurvatureTensor(model.rank_e, model.dim_t, nak)


# ---------------------------------------------------------------------------
# Symmetric powers via the tensor-power embedding
# ---------------------------------------------------------------------------

def sym_power_model(model: NormPositivityModel, k: int) -> NormPositivityModel:
    """Curvature model of the k-th tensor power, restricting to the symmetric
    summand.

    One summand of the target per tensor slot, kept as a direct sum exactly
    as in the product functoriality (A (x) Id) (+) (Id (x) A): collapsing the
    slots into one copy of E^(k-1) (x) G would distort the Gram matrix.  The
    symmetric power sits inside the tensor power isometrically, so evaluating
    on symmetrized vectors gives its curvature; rank_e of the output is
    rank_e ** k.
    """
    if k < 1:
        raise ValueError("power must be >= 1")
    if k == 1:
        return model
    r, t, g = model.rank_e, model.dim_t, model.rank_g
    re_k = r ** k
    block = (r ** (k - 1)) * g
    rg_k = k * block
    entries = {}
    for alphas in product(range(r), repeat=k):
        a_idx = 0
        for a in alphas:
            a_idx = a_idx * r + a
        for i in range(t):
            col = a_idx * t + i
            for pos in range(k):
                rest = alphas[:pos] + alphas[pos + 1:]
                rest_idx = 0
                for a in rest:
                    rest_idx = rest_idx * r + a
                for gamma in range(g):
                    row = pos * block + rest_idx * g + gamma
                    val = model.a[gamma, model.col(alphas[pos], i)]
                    if val:
                        entries[(row, col)] = entries.get((row, col), ZERO) + val
    flat = [entries.get((i, j), ZERO) for i in range(rg_k) for j in range(re_k * t)]
    return NormPositivityModel(t, re_k, rg_k, Mat(rg_k, re_k * t, flat))


def sym_vector(indices, rank_e: int):
    """The symmetrization of e_{i1} (x) ... (x) e_{ik} inside the tensor power.

    Returns (vector, squared norm); both exact.
    """
    from itertools import permutations
    k = len(indices)
    dim = rank_e ** k
    v = [ZERO] * dim
    perms = list(permutations(indices))
    coeff = GaussianRational(Fraction(1, len(perms)))
    for p in perms:
        idx = 0
        for a in p:
            idx = idx * rank_e + a
        v[idx] = v[idx] + coeff
    norm2 = sum((x.abs2() for x in v), Fraction(0))
    return v, norm2


def sym_subspace_basis(rank_e: int, k: int):
    """Rows spanning the symmetric tensors inside the k-th tensor power."""
    from itertools import combinations_with_replacement
    rows = []
    for combo in combinations_with_replacement(range(rank_e), k):
        v, _ = sym_vector(combo, rank_e)
        rows.append([x for x in v])
    return Mat.from_rows(rows)


# ---------------------------------------------------------------------------
# Projectivized Chern form
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ProjectivizedForm:
    horizontal: Mat
    vertical: Mat
    psd: bool
    positive_definite: bool
    horizontal_kernel_dim: int

    def full(self) -> Mat:
        h, v = self.horizontal, self.vertical
        n = h.rows + v.rows
        entries = []
        for i in range(n):
            for j in range(n):
                if i < h.rows and j < h.rows:
                    entries.append(h[i, j])
                elif i >= h.rows and j >= h.rows:
                    entries.append(v[i - h.rows, j - h.rows])
                else:
                    entries.append(ZERO)
        return Mat(n, n, entries)


def projectivized_chern_form(model: NormPositivityModel, e, *,
                             fiber_subspace: Mat | None = None) -> ProjectivizedForm:
    """Curvature of the tautological bundle at (x, [e]) for a unit vector e.

    The horizontal block is Theta(e, ., .); the vertical block is the
    Fubini-Study form restricted transverse to the scaling direction (cross
    terms vanish in the normalized pointwise frame).  `fiber_subspace`
    restricts the vertical directions, e.g. to the symmetric tensors when
    the model is a tensor-power embedding of a symmetric power.
    """
    e = [as_gauss(x) for x in e]
    if len(e) != model.rank_e:
        raise DimensionMismatch("fiber vector has wrong length")
    norm2 = sum((x.abs2() for x in e), Fraction(0))
    if norm2 != 1:
        raise NotUnit(f"fiber vector has squared norm {norm2}, expected 1")
    theta = curvature_from_model(model)
    horizontal = theta.horizontal_form(e)

    ambient = (fiber_subspace if fiber_subspace is not None
               else Mat.identity(model.rank_e))
    # directions in the fiber subspace orthogonal to e
    rows = []
    for i in range(ambient.rows):
        rows.append([x for x in ambient.row(i)])
    conj_e = Mat.from_rows([[x.conj() for x in e]])
    # inner product <w, e> = sum w_i conj(e_i); kernel within the subspace
    prods = Mat.from_rows([[sum((w * c for w, c in zip(rows[i], conj_e.row(0))), ZERO)]
                           for i in range(len(rows))]).transpose()
    coeffs = kernel_basis(prods)
    basis = []
    for ctuple in coeffs:
        v = [ZERO] * model.rank_e
        for c, i in zip(ctuple, range(len(rows))):
            if c:
                v = [x + c * y for x, y in zip(v, rows[i])]
        basis.append(v)
    # Fubini-Study matrix I - e e* restricted to the chosen basis
    fs = []
    for u in basis:
        row = []
        for w in basis:
            inner = sum((a * b.conj() for a, b in zip(u, w)), ZERO)
            ue = sum((a * b.conj() for a, b in zip(u, e)), ZERO)
            we = sum((a * b.conj() for a, b in zip(w, e)), ZERO)
            row.append(inner - ue * we.conj())
        fs.append(row)
    vertical = Mat.from_rows(fs) if fs else Mat.zeros(0, 0)

    hpsd, hrank, hpd = hermitian_psd_status(horizontal)
    if vertical.rows:
        vpsd, vrank, vpd = hermitian_psd_status(vertical)
    else:
        vpsd, vrank, vpd = True, 0, True
    psd = hpsd and vpsd
    pd = hpd and vpd
    return ProjectivizedForm(horizontal, vertical, psd, pd,
                             model.dim_t - hrank)


def flat_directions(model: NormPositivityModel, e):
    """Basis of {xi in T : A(e (x) xi) = 0} and its dimension."""
    e = [as_gauss(x) for x in e]
    cols = []
    for i in range(model.dim_t):
        xi = [ZERO] * model.dim_t
        xi[i] = ONE
        cols.append(list(model.apply(e, xi)))
    m = Mat.from_rows(cols).transpose()
    basis = kernel_basis(m)
    return basis, len(basis)


def quotient_curvature_at(theta_e: CurvatureTensor, inclusion: Mat, beta_mats,
                          q_vec, xi) -> Fraction:
    """Curvature of a quotient: the sub-bundle value plus the second
    fundamental form's norm; always >= the first term."""
    jq = inclusion.mat_vec(q_vec)
    base = theta_e.value(jq, xi)
    xi = [as_gauss(x) for x in xi]
    if len(beta_mats) != theta_e.dim_t:
        raise DimensionMismatch("need one second-fundamental-form matrix per direction")
    dim_s = beta_mats[0].cols if beta_mats else 0
    acc = ZERO
    for i, bi in enumerate(beta_mats):
        for j, bj in enumerate(beta_mats):
            if not (xi[i] and xi[j]):
                continue
            u = bi.conj_transpose().mat_vec(q_vec)
            w = bj.conj_transpose().mat_vec(q_vec)
            inner = sum((a * b.conj() for a, b in zip(u, w)), ZERO)
            acc = acc + inner * xi[i] * xi[j].conj()
    correction = acc.real_or_raise()
    if correction < 0:
        raise DimensionMismatch("internal error: correction term not a norm")
    return base + correction


# ---------------------------------------------------------------------------
# Chern-form norms
# ---------------------------------------------------------------------------

def chern_form_norm(model: NormPositivityModel, q: int, subspace_rows) -> Fraction:
    """The q-th Chern form evaluated on a q-dimensional subspace of T.

    Computed as the norm of the q x q minors of the E-valued matrix of A
    restricted to the subspace; entries multiply as polynomials in the fiber
    coordinates and the symmetric-power norm is the permanent one.
    """
    rows = [list(r) for r in subspace_rows]
    if len(rows) != q:
        raise DimensionMismatch(f"need {q} spanning vectors, got {len(rows)}")
    if q == 0:
        return Fraction(1)
    # E-valued matrix: entry (gamma, column c) is a linear polynomial in the
    # fiber coordinates
    cols = []
    for r in rows:
        xi = [as_gauss(x) for x in r]
        col = []
        for gamma in range(model.rank_g):
            p = MultiPoly.zero(model.rank_e)
            for alpha in range(model.rank_e):
                coef = ZERO
                for i in range(model.dim_t):
                    a = model.a[gamma, model.col(alpha, i)]
                    if a and xi[i]:
                        coef = coef + a * xi[i]
                if coef:
                    p = p + MultiPoly.variable(model.rank_e, alpha).scale(coef)
            col.append(p)
        cols.append(col)
    total = Fraction(0)
    from itertools import combinations
    from math import factorial
    for gammas in combinations(range(model.rank_g), q):
        minor = [[cols[c][gamma] for c in range(q)] for gamma in gammas]
        d = poly_mat_det(minor)
        for exp, coef in d.terms.items():
            weight = Fraction(1)
            for e_ in exp:
                weight *= factorial(e_)
            weight /= factorial(q)
            c2 = coef.abs2() if isinstance(coef, GaussianRational) else coef * coef
            total += c2 * weight
    return total


def trace_form_power_vanishes(model: NormPositivityModel, q: int) -> bool:
    """True iff the q-th power of the first Chern form vanishes on every
    q-dimensional subspace, i.e. the trace form has rank < q."""
    trace = curvature_from_model(model).trace_form()
    return rank(trace) < q


def tangent_to_hom_rank(model: NormPositivityModel) -> int:
    """Rank of A viewed as T -> Hom(E, G)."""
    cols = []
    for i in range(model.dim_t):
        col = []
        for gamma in range(model.rank_g):
            for alpha in range(model.rank_e):
                col.append(model.a[gamma, model.col(alpha, i)])
        cols.append(col)
    return rank(Mat.from_rows(cols))


# ---------------------------------------------------------------------------
# Semipositivity reports
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SemipositivityReport:
    semi_positive: tuple      # bool per sample (Nakano matrix PSD)
    sampled_minima: tuple     # Fraction per sample over seeded decomposables
    trace_positive: tuple     # bool per sample (trace form positive definite)
    strongly_semi_positive: bool


def strong_semipositivity_check(samples, *, seed: int = 0, draws: int = 25) -> SemipositivityReport:
    """Check each curvature sample for semi-positivity and the sampled
    strong-positivity witness."""
    rng = random.Random(seed)
    semis, minima, traces = [], [], []
    for sample in samples:
        psd, _, _ = hermitian_psd_status(sample.nakano)
        semis.append(psd)
        worst = None
        for _ in range(draws):
            e = [GaussianRational(Fraction(rng.randint(-3, 3)),
                                  Fraction(rng.randint(-3, 3)))
                 for _ in range(sample.rank_e)]
            xi = [GaussianRational(Fraction(rng.randint(-3, 3)),
                                   Fraction(rng.randint(-3, 3)))
                  for _ in range(sample.dim_t)]
            if not any(e) or not any(xi):
                continue
            val = sample.value(e, xi)
            scale = (sum((x.abs2() for x in e), Fraction(0))
                     * sum((x.abs2() for x in xi), Fraction(0)))
            if scale:
                val = val / scale
            if worst is None or val < worst:
                worst = val
        minima.append(worst if worst is not None else Fraction(0))
        _, _, pd = hermitian_psd_status(sample.trace_form())
        traces.append(pd)
    strongly = all(semis) and any(traces)
    return SemipositivityReport(tuple(semis), tuple(minima), tuple(traces), strongly)
