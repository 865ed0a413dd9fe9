"""Mixed Hodge structures attached to commuting nilpotents.

The central object is a polarized orbit: (V, Q, N_1..N_k, F) with commuting
Q-skew nilpotents and a Hodge filtration such that (W(sum N_i), F) is an
R-split mixed Hodge structure polarized in the graded sense.  Everything is
exact: V = Q^d, F has Gaussian-rational bases, and positivity checks are
pivoted LDL decompositions.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import NotMHS
from .matrices import (
    Mat, coords_in_basis, is_nilpotent, kernel_basis, rank, rref,
    sub_canonical, sub_conj, sub_contains, sub_dim, sub_equal, sub_full,
    sub_image, sub_intersect, sub_sum_ambient, sub_zero,
)
from .rationals import GaussianRational, ZERO, i_power
from .weightfilt import WeightFiltration, grading_element, weight_filtration

# Global orientation of the positivity convention for polarizing forms: the
# Hermitian form  - i^(p-q) * Q(u, N^i conj v) = - i^(p-q) (-1)^i Q(N^i u, conj v)
# is required to be positive definite on each primitive (p, q) piece sitting
# i steps above the middle weight.  The single pure-structure orientation
# - i^(p-q) Q(u, conj v) > 0 is pinned by the bundled fixtures (it agrees
# with the Hodge metric -Q(C u, conj v) used for endomorphism algebras).
def hermitian_sign(p: int, q: int, level: int = 0) -> GaussianRational:
    """The positivity unit multiplying Q(N^level u, conj v) on a primitive
    (p, q) piece of the graded at `level` steps above the middle weight."""
    unit = i_power(p - q)
    if level % 2:
        unit = -unit
    return -unit


# ---------------------------------------------------------------------------
# Flags
# ---------------------------------------------------------------------------

def flag_levels(flag, weight: int, ambient: int):
    """Normalize a decreasing flag given as [F^n, ..., F^0] to a dict p -> Mat."""
    levels = {}
    if any(f.cols != ambient for f in flag if f.rows):
        raise ValueError("flag bases must live in the ambient space")
    mats = [sub_canonical(f) if f.rows else sub_zero(ambient) for f in flag]
    if len(mats) != weight + 1:
        raise ValueError(f"flag must list F^{weight}..F^0 ({weight + 1} levels)")
    for i, f in enumerate(mats):
        levels[weight - i] = f
    return levels


def flag_level(levels: dict, p: int, weight: int, ambient: int) -> Mat:
    if p > weight:
        return sub_zero(ambient)
    if p < 0:
        return sub_full(ambient)
    return levels[p]


# ---------------------------------------------------------------------------
# Deligne bigrading
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class DeligneBigrading:
    """The canonical (p, q)-decomposition of an R-splittable MHS.

    pieces maps (p, q) to a canonical basis matrix of I^{p,q}; the range of
    indices actually probed is recorded so effectivity can be tested.
    """

    weight: int
    ambient: int
    pieces: dict
    r_split: bool
    effective: bool

    def piece(self, p: int, q: int) -> Mat:
        return self.pieces.get((p, q), sub_zero(self.ambient))

    def grading_subspace(self, k: int) -> Mat:
        """V_k = direct sum of I^{p,q} with p+q = k."""
        return sub_sum_ambient(
            [m for (p, q), m in self.pieces.items() if p + q == k], self.ambient)

    def grading_matrix(self) -> Mat:
        """The semisimple operator acting by p+q on I^{p,q}."""
        rows, vals = [], []
        for (p, q) in sorted(self.pieces):
            m = self.pieces[(p, q)]
            for i in range(m.rows):
                rows.append(list(m.row(i)))
                vals.append(Fraction(p + q))
        t = Mat.from_rows(rows).transpose()
        from .weightfilt import _invert
        return t @ Mat.diag(vals) @ _invert(t)

    def hodge_numbers(self) -> dict:
        return {(p, q): m.rows for (p, q), m in self.pieces.items() if m.rows}


def deligne_bigrading(wf: WeightFiltration, flag, *, require_mhs: bool = True) -> DeligneBigrading:
    """Compute I^{p,q} from the standard closed formula.

    I^{p,q} = F^p ∩ W_{p+q} ∩ ( conj(F^q) ∩ W_{p+q} + sum_{j>=1} conj(F^{q-j}) ∩ W_{p+q-j-1} ).
    Raises NotMHS when the pieces fail to decompose the space.
    """
    n = wf.weight
    d = wf.ambient
    levels = flag_levels(flag, n, d)

    def f_level(p):
        return flag_level(levels, p, n, d)

    pieces = {}
    lo, hi = -n - 1, 2 * n + 1   # probe well beyond the effective window
    for p in range(lo, hi + 1):
        for q in range(lo, hi + 1):
            k = p + q
            if k < 0 or k > 2 * n:
                continue
            wk = wf.level(k)
            fbar_sum = sub_conj(f_level(q))
            inner = sub_intersect(fbar_sum, wk)
            extra = [inner]
            for j in range(1, 2 * n + 2):
                if k - j - 1 < 0:
                    break
                term = sub_intersect(sub_conj(f_level(q - j)), wf.level(k - j - 1))
                extra.append(term)
            rhs = sub_sum_ambient(extra, d)
            piece = sub_intersect(sub_intersect(f_level(p), wk), rhs)
            if sub_dim(piece):
                pieces[(p, q)] = piece

    total = sum(m.rows for m in pieces.values())
    stacked_rows = [r for m in pieces.values() for r in m.row_list()]
    direct = total == d and (not stacked_rows or rref(Mat.from_rows(stacked_rows))[2] == d)
    if not direct:
        if require_mhs:
            raise NotMHS(
                f"Deligne pieces have total dimension {total} with rank "
                f"{rref(Mat.from_rows(stacked_rows))[2] if stacked_rows else 0}, ambient {d}")

    # compatibility with W and F
    for k in range(0, 2 * n + 1):
        span = sub_sum_ambient([m for (p, q), m in pieces.items() if p + q <= k], d)
        if not sub_equal(span, wf.level(k)):
            if require_mhs:
                raise NotMHS(f"W_{k} is not the span of I^(p,q) with p+q <= {k}")
    for p in range(0, n + 1):
        span = sub_sum_ambient([m for (pp, q), m in pieces.items() if pp >= p], d)
        if not sub_equal(span, f_level(p)):
            if require_mhs:
                raise NotMHS(f"F^{p} is not the span of I^(p',q) with p' >= {p}")

    r_split = all(sub_equal(sub_conj(m), pieces.get((q, p), sub_zero(d)))
                  for (p, q), m in pieces.items())
    effective = all(0 <= p <= n and 0 <= q <= n for (p, q) in pieces)
    return DeligneBigrading(n, d, pieces, r_split, effective)


# ---------------------------------------------------------------------------
# Polarized orbit specs
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class PolarizedOrbitSpec:
    """A several-parameter degeneration: (dim, weight, Q, N_1..N_k, F)."""

    dim: int
    weight: int
    q: Mat
    nilpotents: tuple
    flag: tuple          # [F^n basis, ..., F^0 basis]

    @property
    def num_params(self) -> int:
        return len(self.nilpotents)

    def n_sum(self, subset=None) -> Mat:
        total = Mat.zeros(self.dim, self.dim)
        for i, n in enumerate(self.nilpotents):
            if subset is None or i in subset:
                total = total + n
        return total

    def lmhs(self):
        """Weight filtration of the full cone and the Deligne bigrading."""
        wf = weight_filtration(self.n_sum(), self.weight)
        bi = deligne_bigrading(wf, self.flag)
        return wf, bi

    def to_json(self):
        return {
            "dim": self.dim,
            "weight": self.weight,
            "Q": self.q.to_json(),
            "nilpotents": [n.to_json() for n in self.nilpotents],
            "F": [f.to_json() for f in self.flag],
        }

    @classmethod
    def from_json(cls, data) -> "PolarizedOrbitSpec":
        return cls(
            dim=int(data["dim"]),
            weight=int(data["weight"]),
            q=Mat.from_json(data["Q"]),
            nilpotents=tuple(Mat.from_json(n) for n in data["nilpotents"]),
            flag=tuple(Mat.from_json(f) if f else Mat.zeros(0, int(data["dim"]))
                       for f in data["F"]),
        )


def q_pairing(q: Mat, u, v) -> GaussianRational:
    """Q(u, v) for column vectors given as sequences."""
    acc = ZERO
    for i, ui in enumerate(u):
        if ui:
            row = q.row(i)
            for j, vj in enumerate(v):
                if vj and row[j]:
                    acc = acc + ui * row[j] * vj
    return acc


def hermitian_psd_status(h: Mat):
    """(is_psd, rank, is_pd) of a Hermitian matrix by exact pivoted LDL."""
    n = h.rows
    a = [[h[i, j] for j in range(n)] for i in range(n)]
    for i in range(n):
        if not a[i][i].is_real:
            raise ValueError("matrix is not Hermitian")
    active = list(range(n))
    rk = 0
    while active:
        pivot = None
        for i in active:
            di = a[i][i].re
            if di < 0:
                return False, rk, False
            if di > 0 and pivot is None:
                pivot = i
        if pivot is None:
            # all remaining diagonal entries are zero: PSD iff the block is zero
            for i in active:
                for j in active:
                    if a[i][j]:
                        return False, rk, False
            return True, rk, rk == n
        rk += 1
        p = a[pivot][pivot]
        rest = [i for i in active if i != pivot]
        for i in rest:
            for j in rest:
                a[i][j] = a[i][j] - a[i][pivot] * a[pivot][j] / p
        active = rest
    return True, rk, rk == n


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    detail: str = ""


@dataclass(frozen=True)
class LmhsReport:
    checks: tuple

    @property
    def all_passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def failed(self):
        return [c for c in self.checks if not c.passed]


def primitive_subspace(bi: DeligneBigrading, n_total: Mat, i: int) -> Mat:
    """Primitive part of the graded piece of weight n+i, realized inside the
    canonical grading subspace V_{n+i} (valid because N respects the grading)."""
    n = bi.weight
    vk = bi.grading_subspace(n + i)
    if vk.rows == 0:
        return vk
    power = Mat.identity(bi.ambient)
    for _ in range(i + 1):
        power = power @ n_total
    rows = [list(power.mat_vec(vk.row(r))) for r in range(vk.rows)]
    coeffs = kernel_basis(Mat.from_rows(rows).transpose())
    prim_rows = []
    for c in coeffs:
        v = [ZERO] * bi.ambient
        for coef, r in zip(c, range(vk.rows)):
            if coef:
                v = [a + coef * b for a, b in zip(v, vk.row(r))]
        prim_rows.append(v)
    if not prim_rows:
        return sub_zero(bi.ambient)
    return sub_canonical(Mat.from_rows(prim_rows))


def verify_polarized_lmhs(spec: PolarizedOrbitSpec) -> LmhsReport:
    """Run every structural check; failures are reported, not raised."""
    checks = []
    d, n = spec.dim, spec.weight

    sym = spec.q.transpose() == (spec.q if n % 2 == 0 else -spec.q)
    nondeg = rank(spec.q) == d
    checks.append(CheckResult("q-form symmetry", sym,
                              f"(-1)^{n}-symmetric expected"))
    checks.append(CheckResult("q-form nondegenerate", nondeg))

    for idx, nmat in enumerate(spec.nilpotents):
        checks.append(CheckResult(f"nilpotent[{idx}] is nilpotent", is_nilpotent(nmat)))
        skew = (nmat.transpose() @ spec.q + spec.q @ nmat).is_zero()
        checks.append(CheckResult(f"nilpotent[{idx}] infinitesimally q-skew", skew))
        real = nmat.is_real()
        checks.append(CheckResult(f"nilpotent[{idx}] rational", real))
    for a in range(len(spec.nilpotents)):
        for b in range(a + 1, len(spec.nilpotents)):
            checks.append(CheckResult(
                f"nilpotents[{a},{b}] commute",
                spec.nilpotents[a].commutes_with(spec.nilpotents[b])))

    levels = flag_levels(spec.flag, n, d)
    decreasing = all(sub_contains(levels[p], levels[p + 1]) for p in range(n))
    checks.append(CheckResult("flag decreasing", decreasing))
    checks.append(CheckResult("flag fills V at F^0", sub_dim(levels[0]) == d))

    stable = True
    for idx, nmat in enumerate(spec.nilpotents):
        for p in range(1, n + 1):
            img = sub_image(nmat, levels[p])
            if not sub_contains(levels[p - 1], img):
                stable = False
    checks.append(CheckResult("N F^p inside F^(p-1)", stable))

    if not all(c.passed for c in checks):
        return LmhsReport(tuple(checks))

    try:
        wf, bi = spec.lmhs()
    except Exception as exc:  # report, don't raise
        checks.append(CheckResult("limiting MHS exists", False, str(exc)))
        return LmhsReport(tuple(checks))
    checks.append(CheckResult("limiting MHS exists", True))
    checks.append(CheckResult("R-split", bi.r_split))
    checks.append(CheckResult("effective", bi.effective))
    if not (bi.r_split and bi.effective):
        return LmhsReport(tuple(checks))

    n_total = spec.n_sum()
    power = Mat.identity(d)
    powers = [power]
    for _ in range(n + 1):
        powers.append(powers[-1] @ n_total)
    for i in range(0, n + 1):
        prim = primitive_subspace(bi, n_total, i)
        if prim.rows == 0:
            continue
        gram = Mat.from_rows([
            [q_pairing(spec.q, powers[i].mat_vec(prim.row(a)), prim.row(b))
             for b in range(prim.rows)] for a in range(prim.rows)])
        nd = rank(gram) == prim.rows
        checks.append(CheckResult(f"Q_{i} nondegenerate on primitive weight {n + i}", nd))
        # positivity piece by piece
        for (p, q_), m in sorted(bi.pieces.items()):
            if p + q_ != n + i:
                continue
            pm = sub_intersect(m, prim)
            if pm.rows == 0:
                continue
            unit = hermitian_sign(p, q_, i)
            block = Mat.from_rows([
                [unit * q_pairing(spec.q, powers[i].mat_vec(pm.row(a)),
                                  [x.conj() for x in pm.row(b)])
                 for b in range(pm.rows)] for a in range(pm.rows)])
            try:
                psd, rk, pd = hermitian_psd_status(block)
            except ValueError:
                psd = pd = False
                rk = -1
            checks.append(CheckResult(
                f"Hodge-Riemann positivity on primitive ({p},{q_})",
                bool(pd), f"rank {rk} of {pm.rows}"))
    return LmhsReport(tuple(checks))


# ---------------------------------------------------------------------------
# Associated graded orbits along a stratum
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class StratumPiece:
    """One primitive graded piece of a stratum degeneration, as its own orbit.

    `level` is the shift i (the piece sits in graded weight n+i before the
    Tate untwist); `orbit` carries the untwisted weight n-i, the twisted
    pairing, the induced nilpotents of the remaining directions, and the
    induced filtration, all in the coordinates of `basis` (rows inside the
    ambient space)."""

    level: int
    basis: Mat
    orbit: PolarizedOrbitSpec


def associated_graded_orbit(spec: PolarizedOrbitSpec, subset, *, rule: str = "echelon"):
    """Primitive graded pieces of W(N_I) with their induced orbit data.

    The splitting is the deterministic echelon grading element of N_I; on
    each graded piece the surviving directions j outside I act through the
    ad-weight-zero components, and the filtration is the projected one.
    """
    subset = sorted(set(subset))
    k = spec.num_params
    if any(i < 0 or i >= k for i in subset):
        raise ValueError("stratum index out of range")
    if not subset:
        return [StratumPiece(0, sub_full(spec.dim), spec)]
    d, n = spec.dim, spec.weight
    n_i = spec.n_sum(subset)
    wf = weight_filtration(n_i, n)
    y = grading_element(n_i, wf, rule=rule)
    from .weightfilt import integer_eigen_decomposition
    eig = integer_eigen_decomposition(y)
    # projector decomposition of the identity
    rows, labels = [], []
    for kk in sorted(eig):
        for r in range(eig[kk].rows):
            rows.append(list(eig[kk].row(r)))
            labels.append(kk)
    t = Mat.from_rows(rows).transpose()
    from .weightfilt import _invert
    t_inv = _invert(t)
    projectors = {kk: t @ Mat.diag([Fraction(1) if lab == kk else Fraction(0)
                                    for lab in labels]) @ t_inv
                  for kk in sorted(eig)}

    complement = [j for j in range(k) if j not in subset]
    levels = flag_levels(spec.flag, n, d)
    pieces = []
    powers = [Mat.identity(d)]
    for _ in range(n + 2):
        powers.append(powers[-1] @ n_i)

    for i in range(0, n + 1):
        kk = n + i
        if kk not in eig:
            continue
        vk = eig[kk]
        # primitive part: kernel of N_I^(i+1) inside V_k
        rows = [list(powers[i + 1].mat_vec(vk.row(r))) for r in range(vk.rows)]
        coeffs = kernel_basis(Mat.from_rows(rows).transpose())
        prim_rows = []
        for c in coeffs:
            v = [ZERO] * d
            for coef, r in zip(c, range(vk.rows)):
                if coef:
                    v = [a + coef * b for a, b in zip(v, vk.row(r))]
            prim_rows.append(v)
        if not prim_rows:
            continue
        prim = sub_canonical(Mat.from_rows(prim_rows))
        pd = prim.rows

        def coords(v):
            c = coords_in_basis(prim, v)
            if c is None:
                raise NotMHS("projection left the primitive subspace")
            return list(c)

        proj_k = projectors[kk]
        # induced nilpotents: ad-weight-zero parts restricted to the piece
        induced = []
        for j in complement:
            nj0 = proj_k @ spec.nilpotents[j] @ proj_k
            cols = [coords(nj0.mat_vec(prim.row(r))) for r in range(pd)]
            induced.append(Mat.from_rows(cols).transpose())
        # twisted pairing
        sign = Fraction(-1) ** i
        gram = Mat.from_rows([
            [q_pairing(spec.q, powers[i].mat_vec(prim.row(a)), prim.row(b)) * sign
             for b in range(pd)] for a in range(pd)])
        # induced filtration, untwisted by i
        piece_weight = n - i
        flag_rows = []
        for p_prime in range(piece_weight, -1, -1):
            fp = flag_level(levels, p_prime + i, n, d)
            inter = sub_intersect(fp, wf.level(kk))
            proj_rows = [list(proj_k.mat_vec(inter.row(r))) for r in range(inter.rows)]
            if proj_rows:
                projected = sub_canonical(Mat.from_rows(proj_rows))
            else:
                projected = sub_zero(d)
            inside = sub_intersect(projected, prim)
            if inside.rows:
                flag_rows.append(Mat.from_rows(
                    [coords(inside.row(r)) for r in range(inside.rows)]))
            else:
                flag_rows.append(Mat.zeros(0, pd))
        orbit = PolarizedOrbitSpec(
            dim=pd, weight=piece_weight, q=gram,
            nilpotents=tuple(induced), flag=tuple(flag_rows))
        pieces.append(StratumPiece(i, prim, orbit))
    return pieces


def stratum_hodge_numbers(spec: PolarizedOrbitSpec, subset) -> dict:
    """j -> h^(n-j,0) of the limiting structure along the stratum `subset`."""
    n = spec.weight
    if not sorted(set(subset)):
        top = spec.flag[0]
        return {0: top.rows}
    out = {}
    for piece in associated_graded_orbit(spec, subset):
        top = piece.orbit.flag[0]
        if top.rows:
            out[piece.level] = out.get(piece.level, 0) + top.rows
    return out
