"""Weight filtrations of nilpotent endomorphisms and their sl2 completions.

Index conventions: the increasing filtration of a nilpotent N acting on a
space of Hodge-theoretic weight n runs over 0..2n ("Hodge" indexing); the
underlying construction is centered at 0 ("representation" indexing) and the
two are related by a shift of n.  Bracket identities for triples are always
checked in the centered normalization.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import NoSolution, NotCommuting
from .matrices import (
    Mat, Quotient, kernel_space, column_space, kernel_basis,
    nilpotency_index, rref, solve, sub_canonical, sub_contains, sub_dim,
    sub_equal, sub_full, sub_image, sub_intersect, sub_sum_ambient, sub_zero,
)
from .rationals import GaussianRational, ZERO, ONE


# ---------------------------------------------------------------------------
# Weight filtration
# ---------------------------------------------------------------------------

def weight_filtration_centered(n: Mat) -> dict:
    """Centered weight filtration of a nilpotent matrix.

    Returns a dict k -> basis matrix for -s..s where s = nilpotency index - 1;
    outside that range the filtration is 0 below and full above.  Uses the
    descending recursion

        W_k = ker N^(k+1) + N W_(k+2)   (k >= 0),
        W_k = N W_(k+2)                 (k < 0),

    equivalent to the closed form  W_k = sum_a im(N^a) ∩ ker(N^(a+k+1)),
    which stands as the independent oracle in the test suite.
    """
    d = n.rows
    s = nilpotency_index(n) - 1
    kernels = {}
    p = Mat.identity(d)
    for j in range(1, s + 2):
        p = p @ n
        kernels[j] = kernel_space(p)
    out = {}
    above = sub_full(d)     # W_(k+2)
    prev = sub_full(d)      # W_(k+1)
    for k in range(s, -s - 1, -1):
        image = sub_image(n, above)
        if k >= 0:
            ker_part = kernels.get(k + 1, sub_full(d)) if k + 1 <= s + 1 else sub_full(d)
            out[k] = sub_sum_ambient([ker_part, image], d)
        else:
            out[k] = image
        above = prev
        prev = out[k]
    return out


def weight_filtration_centered_by_intersections(n: Mat) -> dict:
    """Closed-form variant W_k = sum_a im(N^a) ∩ ker(N^(a+k+1)); kept as an
    independent second route for uniqueness testing."""
    d = n.rows
    s = nilpotency_index(n) - 1
    powers = [Mat.identity(d)]
    for _ in range(s + 1):
        powers.append(powers[-1] @ n)
    images = [column_space(p) for p in powers]
    kernels = {j: kernel_space(powers[j]) for j in range(1, s + 2)}

    def ker(j):
        if j <= 0:
            return sub_zero(d)
        if j > s:
            return sub_full(d)
        return kernels[j]

    out = {}
    for k in range(-s, s + 1):
        pieces = []
        for a in range(0, s + 1):
            pieces.append(sub_intersect(images[a], ker(a + k + 1)))
        out[k] = sub_sum_ambient(pieces, d)
    return out


@dataclass(frozen=True)
class WeightFiltration:
    """Increasing filtration W_0 ⊆ ... ⊆ W_{2n} with its graded dimensions."""

    weight: int
    subspaces: tuple      # length 2n+1, canonical basis matrices
    graded_dims: tuple

    @property
    def ambient(self) -> int:
        return self.subspaces[-1].cols

    def level(self, k: int) -> Mat:
        """W_k with the out-of-range conventions W_{<0}=0, W_{>2n}=V."""
        if k < 0:
            return sub_zero(self.ambient)
        if k >= len(self.subspaces):
            return self.subspaces[-1]
        return self.subspaces[k]


def weight_filtration(n: Mat, weight: int) -> WeightFiltration:
    """The unique weight filtration of the nilpotent n, in Hodge indexing."""
    centered = weight_filtration_centered(n)
    s = max(centered) if centered else 0
    if s > weight:
        raise ValueError(
            f"nilpotent of string length {s} does not fit weight {weight}")
    d = n.rows
    subspaces = []
    for k in range(0, 2 * weight + 1):
        c = k - weight
        if c < -s:
            subspaces.append(sub_zero(d))
        elif c > s:
            subspaces.append(sub_full(d))
        else:
            subspaces.append(centered[c])
    if sub_dim(subspaces[-1]) != d:
        raise NoSolution("internal error: top filtration level is not V")
    graded = tuple(sub_dim(subspaces[k]) - (sub_dim(subspaces[k - 1]) if k else 0)
                   for k in range(len(subspaces)))
    wf = WeightFiltration(weight, tuple(subspaces), graded)
    _check_weight_filtration(n, wf)
    return wf


def _check_weight_filtration(n: Mat, wf: WeightFiltration):
    """Postconditions: N W_k ⊆ W_{k-2} and Hard Lefschetz isomorphisms."""
    nw = wf.weight
    for k in range(0, 2 * nw + 1):
        img = sub_image(n, wf.level(k))
        if not sub_contains(wf.level(k - 2), img):
            raise NoSolution("internal error: N does not shift the filtration by -2")
    for k in range(1, nw + 1):
        top = Quotient(wf.level(nw + k), wf.level(nw + k - 1))
        bot = Quotient(wf.level(nw - k), wf.level(nw - k - 1))
        if top.dim != bot.dim:
            raise NoSolution("internal error: graded dimensions not symmetric")
        if top.dim:
            nk = Mat.identity(n.rows)
            for _ in range(k):
                nk = nk @ n
            rows = [list(bot.project_vec(nk.mat_vec(top.comp.row(i))))
                    for i in range(top.dim)]
            if rref(Mat.from_rows(rows))[2] != top.dim:
                raise NoSolution("internal error: Hard Lefschetz map not bijective")


# ---------------------------------------------------------------------------
# Grading elements and sl2 triples
# ---------------------------------------------------------------------------

def _complement_from_candidates(sub: Mat, candidates) -> list:
    """Greedy echelon complement of `sub` drawn from an ordered candidate list."""
    base = [list(r) for r in sub.row_list()]
    chosen = []
    for cand in candidates:
        trial = base + chosen + [list(cand)]
        if rref(Mat.from_rows(trial))[2] > len(base) + len(chosen):
            chosen.append(list(cand))
    return chosen


def grading_element(n: Mat, wf: WeightFiltration, rule: str = "echelon") -> Mat:
    """A semisimple Y with eigenspaces splitting wf and [Y, n] = -2n.

    Construction: lift the primitive subspace of each graded piece (echelon
    representatives, corrected so the appropriate power of n kills the lift
    exactly), then propagate down the strings by n.  `rule` selects the
    deterministic complement choice; "reversed" flips the candidate order and
    exists to let tests confirm that reported invariants do not depend on the
    splitting.
    """
    if rule not in ("echelon", "reversed"):
        raise ValueError(f"unknown splitting rule {rule!r}")
    d = n.rows
    nw = wf.weight
    s = max((abs(k - nw) for k in range(2 * nw + 1) if wf.graded_dims[k]), default=0)
    powers = [Mat.identity(d)]
    for _ in range(2 * nw + 2):
        powers.append(powers[-1] @ n)

    spaces = {m: [] for m in range(-s, s + 1)}   # centered weight -> vectors
    for m in range(s, -1, -1):
        wk = wf.level(nw + m)
        wk1 = wf.level(nw + m - 1)
        if wk.rows == 0:
            continue
        # primitive candidates: v in W_{n+m} whose class is killed by n^(m+1),
        # i.e. n^(m+1) v lands in W_{n-m-3}
        low = wf.level(nw - m - 3)
        qlow = Quotient(sub_full(d), low)
        cond_rows = []
        for i in range(wk.rows):
            img = powers[m + 1].mat_vec(wk.row(i))
            cond_rows.append(list(qlow.project_vec(img)) if qlow.dim else [])
        if qlow.dim:
            coeffs = kernel_basis(Mat.from_rows(cond_rows).transpose())
        else:
            coeffs = [tuple(ONE if i == j else ZERO for j in range(wk.rows))
                      for i in range(wk.rows)]
        prim_rows = []
        for c in coeffs:
            v = [ZERO] * d
            for coef, i in zip(c, range(wk.rows)):
                if coef:
                    v = [a + coef * b for a, b in zip(v, wk.row(i))]
            prim_rows.append(v)
        if not prim_rows:
            prim_cand = sub_zero(d)
        else:
            prim_cand = sub_canonical(Mat.from_rows(prim_rows))
        candidates = prim_cand.row_list()
        if rule == "reversed":
            candidates = candidates[::-1]
        lifts = _complement_from_candidates(sub_intersect(prim_cand, wk1), candidates)
        for v in lifts:
            w = powers[m + 1].mat_vec(v)
            if any(w):
                u = _solve_in_subspace(powers[m + 1], wk1, w)
                v = [a - b for a, b in zip(v, u)]
                if any(powers[m + 1].mat_vec(v)):
                    raise NoSolution("internal error: primitive correction failed")
            spaces[m].append(tuple(v))
            cur = tuple(v)
            for j in range(1, m + 1):
                cur = n.mat_vec(cur)
                spaces[m - 2 * j].append(cur)

    basis_rows = []
    eigvals = []
    for m in range(s, -s - 1, -1):
        for v in spaces.get(m, []):
            basis_rows.append(list(v))
            eigvals.append(m + nw)
    t = Mat.from_rows(basis_rows).transpose()
    if rref(t)[2] != d:
        raise NoSolution("internal error: string basis does not span")
    t_inv = _invert(t)
    y = t @ Mat.diag([Fraction(e) for e in eigvals]) @ t_inv
    if not (y @ n - n @ y + n.scale(2)).is_zero():
        raise NoSolution("internal error: [Y,N] != -2N")
    _check_grading(y, wf)
    return y


def _solve_in_subspace(m: Mat, sub: Mat, target):
    """Some u in the row space `sub` with m @ u = target."""
    if sub.rows == 0:
        raise NoSolution("no solution in the zero subspace")
    cols = Mat.from_rows([list(m.mat_vec(sub.row(i))) for i in range(sub.rows)]).transpose()
    c = solve(cols, target)
    if c is None:
        raise NoSolution("primitive-lift correction has no solution")
    u = [ZERO] * m.cols
    for coef, i in zip(c, range(sub.rows)):
        if coef:
            u = [a + coef * b for a, b in zip(u, sub.row(i))]
    return u


def _invert(m: Mat) -> Mat:
    if m.rows != m.cols:
        raise ValueError("inverse of non-square matrix")
    aug = Mat.from_rows([list(m.row(i)) + list(Mat.identity(m.rows).row(i))
                         for i in range(m.rows)])
    red, piv, r = rref(aug)
    if r != m.rows or any(p >= m.rows for p in piv[:m.rows]):
        raise NoSolution("matrix is singular")
    return Mat.from_rows([list(red.row(i))[m.rows:] for i in range(m.rows)])


def _check_grading(y: Mat, wf: WeightFiltration):
    nw = wf.weight
    d = y.rows
    total = 0
    for k in range(0, 2 * nw + 1):
        eig = kernel_space(y - Mat.identity(d).scale(Fraction(k)))
        total += sub_dim(eig)
        if not sub_contains(wf.level(k), eig):
            raise NoSolution("internal error: eigenspace not inside W_k")
        if sub_dim(eig) != wf.graded_dims[k]:
            raise NoSolution("internal error: eigenspace dimension mismatch")
    if total != d:
        raise NoSolution("internal error: Y is not semisimple with the right spectrum")


@dataclass(frozen=True)
class Sl2Triple:
    """Raising/grading/lowering matrices in the centered normalization.

    Brackets: [y, n_minus] = -2 n_minus, [y, n_plus] = 2 n_plus,
    [n_plus, n_minus] = y.
    """

    n_plus: Mat
    y: Mat
    n_minus: Mat

    def check(self) -> bool:
        ok1 = (self.y @ self.n_minus - self.n_minus @ self.y + self.n_minus.scale(2)).is_zero()
        ok2 = (self.y @ self.n_plus - self.n_plus @ self.y - self.n_plus.scale(2)).is_zero()
        ok3 = (self.n_plus @ self.n_minus - self.n_minus @ self.n_plus - self.y).is_zero()
        return ok1 and ok2 and ok3


def complete_sl2(n: Mat, y: Mat, weight: int = 0) -> Sl2Triple:
    """Solve the linear system [y, X] = 2X, [X, n] = y for the unique raising
    operator.

    `y` may be given in Hodge indexing (pass the weight to recenter) or
    already centered (weight=0).  The system is solved in the eigenbasis of
    y, where the first equation just restricts the support of X to the
    ad-weight-2 block; this changes nothing about which system is solved.
    """
    d = n.rows
    yc = y - Mat.identity(d).scale(Fraction(weight))
    spaces = integer_eigen_decomposition(yc)
    basis_rows, labels = [], []
    for k in sorted(spaces):
        for i in range(spaces[k].rows):
            basis_rows.append(list(spaces[k].row(i)))
            labels.append(k)
    t = Mat.from_rows(basis_rows).transpose()
    t_inv = _invert(t)
    n_t = t_inv @ n @ t
    # sanity: n must lower the weight by exactly 2
    for i in range(d):
        for j in range(d):
            if n_t[i, j] and labels[i] - labels[j] != -2:
                raise NoSolution("no raising operator: y does not grade n by -2")
    # unknowns: entries with weight difference +2
    positions = [(i, j) for i in range(d) for j in range(d)
                 if labels[i] - labels[j] == 2]
    index = {pos: c for c, pos in enumerate(positions)}
    rows, rhs = [], []
    for i in range(d):
        for j in range(d):
            if labels[i] != labels[j]:
                continue
            # (X n_t - n_t X)_{ij} = diag(labels)_{ij}
            row = [ZERO] * len(positions)
            for k in range(d):
                if (i, k) in index and n_t[k, j]:
                    row[index[(i, k)]] = row[index[(i, k)]] + n_t[k, j]
                if (k, j) in index and n_t[i, k]:
                    row[index[(k, j)]] = row[index[(k, j)]] - n_t[i, k]
            rows.append(row)
            rhs.append(GaussianRational(Fraction(labels[i])) if i == j else ZERO)
    if positions:
        sol = solve(Mat.from_rows(rows), rhs)
        if sol is None:
            raise NoSolution("no raising operator: y is not a grading element for n")
    else:
        if any(labels):
            raise NoSolution("no raising operator: y is not a grading element for n")
        sol = []
    x_t = [[ZERO] * d for _ in range(d)]
    for (i, j), c in index.items():
        x_t[i][j] = sol[c]
    n_plus = t @ Mat.from_rows(x_t) @ t_inv
    triple = Sl2Triple(n_plus, yc, n)
    if not triple.check():
        raise NoSolution("internal error: bracket relations failed")
    return triple


# ---------------------------------------------------------------------------
# Eigenspace decompositions and the relative weight filtration
# ---------------------------------------------------------------------------

def _divisors(n: int):
    n = abs(n)
    small, large = [], []
    t = 1
    while t * t <= n:
        if n % t == 0:
            small.append(t)
            if t != n // t:
                large.append(n // t)
        t += 1
    return small + large[::-1]


def integer_eigen_decomposition(y: Mat) -> dict:
    """Eigenspaces of a semisimple matrix with integer eigenvalues.

    Returns k -> basis matrix; raises if eigenspaces do not fill the space.
    A bounded window around zero is probed first (gradings always land
    there); the fallback derives candidates from the rational-root bound on
    the characteristic polynomial.
    """
    d = y.rows
    probe = {}
    total = 0
    for k in range(-2 * d, 2 * d + 1):
        eig = kernel_space(y - Mat.identity(d).scale(Fraction(k)))
        if sub_dim(eig):
            probe[k] = eig
            total += sub_dim(eig)
        if total == d:
            return probe
    from .polynomials import MultiPoly, poly_mat_det
    entries = []
    for i in range(d):
        row = []
        for j in range(d):
            if i == j:
                row.append(MultiPoly(1, {(1,): 1}) - MultiPoly.const(1, y[i, j]))
            else:
                row.append(MultiPoly.const(1, ZERO - y[i, j]))
        entries.append(row)
    charpoly = poly_mat_det(entries)
    candidates = {0}
    lowest = None
    for (e,), c in sorted(charpoly.terms.items()):
        lowest = c
        break
    if lowest is not None:
        val = lowest.re if hasattr(lowest, "re") else lowest
        num = abs(val.numerator)
        if num:
            for t in _divisors(num):
                candidates.update({t, -t})
    spaces = {}
    total = 0
    for k in sorted(candidates):
        eig = kernel_space(y - Mat.identity(d).scale(Fraction(k)))
        if sub_dim(eig):
            spaces[k] = eig
            total += sub_dim(eig)
    if total != d:
        raise NoSolution("matrix is not semisimple with integer eigenvalues")
    return spaces


def y_eigen_decomposition(n2: Mat, y: Mat) -> dict:
    """ad-eigencomponents of n2 with respect to a semisimple y.

    Returns m -> component with [y, component] = m * component; components
    sum to n2 exactly.
    """
    d = y.rows
    spaces = integer_eigen_decomposition(y)
    basis_rows = []
    labels = []
    for k in sorted(spaces):
        for i in range(spaces[k].rows):
            basis_rows.append(list(spaces[k].row(i)))
            labels.append(k)
    t = Mat.from_rows(basis_rows).transpose()
    t_inv = _invert(t)
    projectors = {}
    for k in sorted(spaces):
        sel = Mat.diag([Fraction(1) if lab == k else Fraction(0) for lab in labels])
        projectors[k] = t @ sel @ t_inv
    comps = {}
    for k2 in sorted(spaces):
        for k1 in sorted(spaces):
            m = k2 - k1
            piece = projectors[k2] @ n2 @ projectors[k1]
            if not piece.is_zero():
                comps[m] = comps.get(m, Mat.zeros(d, d)) + piece
    total = Mat.zeros(d, d)
    for piece in comps.values():
        total = total + piece
    if total != n2:
        raise NoSolution("internal error: eigencomponents do not sum back")
    for m, piece in comps.items():
        if not (y @ piece - piece @ y - piece.scale(Fraction(m))).is_zero():
            raise NoSolution("internal error: component has wrong ad-weight")
    return comps


@dataclass(frozen=True)
class RwfpReport:
    """Comparison of the two natural filtrations on each graded piece."""

    holds: bool
    details: tuple   # (graded index m, level m', lhs dim, rhs dim, equal)


def relative_weight_filtration_check(na: Mat, nb: Mat, weight: int) -> RwfpReport:
    """Compare the filtration induced by W(na+nb) on Gr W(na) with the
    weight filtration of the induced endomorphism, both centered at 0 per
    graded piece."""
    if not na.commutes_with(nb):
        raise NotCommuting("the two nilpotents do not commute")
    wa = weight_filtration(na, weight)
    wab = weight_filtration(na + nb, weight)
    d = na.rows
    details = []
    holds = True
    for m in range(0, 2 * weight + 1):
        q = Quotient(wa.level(m), wa.level(m - 1))
        if q.dim == 0:
            continue
        nbar = q.induced_map(nb)
        rhs_centered = weight_filtration_centered(nbar) if not nbar.is_zero() else {0: sub_full(q.dim)}
        smax = max(abs(k) for k in rhs_centered) if rhs_centered else 0
        span = max(smax, 2 * weight)
        for mp in range(-span, span + 1):
            lhs = q.project_sub(sub_intersect(wab.level(m + mp), wa.level(m)))
            if mp < -smax:
                rhs = sub_zero(q.dim)
            elif mp > smax:
                rhs = sub_full(q.dim)
            else:
                rhs = rhs_centered.get(mp, sub_zero(q.dim) if mp < 0 else sub_full(q.dim))
            eq = sub_equal(lhs, rhs)
            holds = holds and eq
            details.append((m, mp, sub_dim(lhs), sub_dim(rhs), eq))
    return RwfpReport(holds, tuple(details))
