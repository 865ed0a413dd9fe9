"""Curvature of the horizontal distribution through the endomorphism algebra.

At a polarized Hodge structure the form-preserving endomorphisms carry a
grading by Hodge type; the (-1)-graded piece models horizontal tangent
directions, its curvature is a difference of two norms, and on commuting
directions only the negative one survives.  Everything is computed with the
exact Hodge metric Tr(X Y*).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import NotPolarized, ZeroVector
from .lmhs import hermitian_psd_status
from .matrices import Mat, kernel_basis, rank, rref, sub_canonical, sub_zero
from .rationals import GaussianRational, ZERO, ONE, i_power
from .weightfilt import _invert


@dataclass(frozen=True)
class PolarizedHS:
    """A pure polarized structure: bases of the (p, q) pieces plus the form."""

    dim: int
    weight: int
    q: Mat
    pieces: dict           # (p, q) -> basis Mat (rows)

    def weil_matrix(self) -> Mat:
        """The operator acting by i^(p-q) on each piece."""
        rows, units = [], []
        for (p, qq) in sorted(self.pieces):
            m = self.pieces[(p, qq)]
            for r in range(m.rows):
                rows.append(list(m.row(r)))
                units.append(i_power(p - qq))
        t = Mat.from_rows(rows).transpose()
        return t @ Mat.diag(units) @ _invert(t)

    def metric_matrix(self) -> Mat:
        """Gram H of the Hodge metric h(u, v) = -Q(Cu, conj v), so that
        h(u, v) = sum_{ab} H[a, b] u_a conj(v_b); positive definite by the
        second bilinear relation in the package orientation."""
        c = self.weil_matrix()
        return (c.transpose() @ self.q).scale(GaussianRational(-1))

    def validate(self):
        d = self.dim
        total_rows = [r for m in self.pieces.values() for r in m.row_list()]
        if sum(m.rows for m in self.pieces.values()) != d or \
                rref(Mat.from_rows(total_rows))[2] != d:
            raise NotPolarized("Hodge pieces do not decompose the space")
        for (p, qq), m in self.pieces.items():
            if p + qq != self.weight:
                raise NotPolarized("piece of wrong total weight")
            other = self.pieces.get((qq, p))
            if other is None or sub_canonical(m.conj()) != sub_canonical(other):
                raise NotPolarized("conjugation symmetry fails")
        h = self.metric_matrix()
        if h.conj_transpose() != h:
            raise NotPolarized("metric is not Hermitian")
        _, _, pd = hermitian_psd_status(h)
        if not pd:
            raise NotPolarized("metric is not positive definite")


def _block(vals, r0, c0, sub: Mat, out_rows, out_cols):
    for i in range(sub.rows):
        for j in range(sub.cols):
            vals[(r0 + i) * out_cols + (c0 + j)] = sub[i, j]


def phs_weight1(genus: int, omega: Mat | None = None) -> PolarizedHS:
    """Weight-one structure from a normalized period matrix (default i*I)."""
    g = genus
    if omega is None:
        omega = Mat.identity(g).scale(GaussianRational(0, 1))
    d = 2 * g
    vals = [ZERO] * (d * d)
    _block(vals, 0, g, Mat.identity(g), d, d)
    _block(vals, g, 0, Mat.identity(g).scale(GaussianRational(-1)), d, d)
    q = Mat(d, d, vals)
    rows10 = []
    for c in range(g):
        v = [omega[r, c] for r in range(g)] + [ONE if r == c else ZERO for r in range(g)]
        rows10.append(v)
    v10 = Mat.from_rows(rows10)
    v01 = v10.conj()
    phs = PolarizedHS(d, 1, q, {(1, 0): v10, (0, 1): v01})
    phs.validate()
    return phs


def phs_weight2(h20: int, h11: int, omega: Mat | None = None) -> PolarizedHS:
    """Weight-two structure in the standard normal form Q = diag(I, -I, I)."""
    if omega is None:
        omega = Mat.identity(h20)
    d = 2 * h20 + h11
    vals = [ZERO] * (d * d)
    _block(vals, 0, 0, Mat.identity(h20), d, d)
    _block(vals, h20, h20, Mat.identity(h11).scale(GaussianRational(-1)), d, d)
    _block(vals, h20 + h11, h20 + h11, Mat.identity(h20), d, d)
    q = Mat(d, d, vals)
    ii = GaussianRational(0, 1)
    rows20 = []
    for c in range(h20):
        v = ([omega[r, c] for r in range(h20)] + [ZERO] * h11
             + [ii * omega[r, c] for r in range(h20)])
        rows20.append(v)
    v20 = Mat.from_rows(rows20)
    rows11 = []
    for c in range(h11):
        v = [ZERO] * h20 + [ONE if r == c else ZERO for r in range(h11)] + [ZERO] * h20
        rows11.append(v)
    v11 = Mat.from_rows(rows11)
    phs = PolarizedHS(d, 2, q, {(2, 0): v20, (1, 1): v11, (0, 2): v20.conj()})
    phs.validate()
    return phs


# ---------------------------------------------------------------------------
# The graded endomorphism algebra
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class GradedEnd:
    """Graded pieces of the form-preserving endomorphisms, with metric data."""

    phs: PolarizedHS
    pieces: dict          # p -> basis Mat (rows are flattened endomorphisms)
    metric: Mat           # Hodge metric Gram on V (for adjoints)

    def piece_dim(self, p: int) -> int:
        m = self.pieces.get(p)
        return m.rows if m is not None else 0

    def unflatten(self, vec) -> Mat:
        d = self.phs.dim
        return Mat(d, d, list(vec))

    def adjoint(self, x: Mat) -> Mat:
        """Metric adjoint on V: h(Xu, v) = h(u, X* v)."""
        h = self.metric
        ht = h.transpose()
        return _invert(ht) @ x.conj_transpose() @ ht

    def inner(self, x: Mat, y: Mat) -> GaussianRational:
        """Hodge inner product Tr(X Y*) on endomorphisms."""
        return (x @ self.adjoint(y)).trace()

    def norm2(self, x: Mat) -> Fraction:
        return self.inner(x, x).real_or_raise()


def graded_end_algebra(phs: PolarizedHS) -> GradedEnd:
    """Compute the graded pieces of {X : Q(Xu, v) + Q(u, Xv) = 0}."""
    phs.validate()
    d = phs.dim
    n = phs.weight
    # form-preserving condition: Q(Xu, v) + Q(u, Xv) = 0 for basis u, v;
    # condition_{ij} = sum_k X_{ki} Q_{kj} + Q_{ik} X_{kj}
    rows = []
    for i in range(d):
        for j in range(d):
            row = [ZERO] * (d * d)
            for k in range(d):
                row[k * d + i] = row[k * d + i] + phs.q[k, j]
                row[k * d + j] = row[k * d + j] + phs.q[i, k]
            rows.append(row)
    lie = kernel_basis(Mat.from_rows(rows))
    lie_space = sub_canonical(Mat.from_rows([list(v) for v in lie])) if lie \
        else sub_zero(d * d)

    # graded condition: X maps each (r, s) piece into (r+p, s-p)
    pieces = {}
    for p in range(-n, n + 1):
        cond_rows = []
        for (r, s), basis in phs.pieces.items():
            target = phs.pieces.get((r + p, s - p))
            tgt_rows = target.row_list() if target is not None else []
            # complement test: the image must have zero coefficients on the
            # other pieces; build a projector annihilating the target
            others = [m for key, m in phs.pieces.items() if key != (r + p, s - p)]
            other_rows = [row for m in others for row in m.row_list()]
            if not other_rows:
                continue
            other_mat = Mat.from_rows(other_rows)
            full = Mat.from_rows((tgt_rows or []) + other_rows)
            finv = _invert(full.transpose())
            # coefficients on the "others" block of X v for v in basis
            offset = len(tgt_rows)
            for bi in range(basis.rows):
                v = basis.row(bi)
                for oi in range(len(other_rows)):
                    row = [ZERO] * (d * d)
                    # coefficient = sum_c finv[offset+oi, c] * (Xv)_c
                    for c in range(d):
                        coef = finv[offset + oi, c]
                        if coef:
                            for k in range(d):
                                if v[k]:
                                    row[c * d + k] = row[c * d + k] + coef * v[k]
                    cond_rows.append(row)
        if cond_rows:
            m = Mat.from_rows([list(lie_space.row(i)) for i in range(lie_space.rows)])
            # solve within the Lie algebra coordinates
            cond = Mat.from_rows(cond_rows)
            comb = cond @ m.transpose()
            coeffs = kernel_basis(comb)
        else:
            coeffs = [tuple(ONE if i == j else ZERO for j in range(lie_space.rows))
                      for i in range(lie_space.rows)]
        piece_rows = []
        for ctuple in coeffs:
            v = [ZERO] * (d * d)
            for c, i in zip(ctuple, range(lie_space.rows)):
                if c:
                    v = [a + c * b for a, b in zip(v, lie_space.row(i))]
            if any(v):
                piece_rows.append(v)
        if piece_rows:
            pieces[p] = sub_canonical(Mat.from_rows(piece_rows))
    total = sum(m.rows for m in pieces.values())
    if total != lie_space.rows:
        raise NotPolarized(
            f"graded pieces have dimension {total}, algebra has {lie_space.rows}")
    return GradedEnd(phs, pieces, phs.metric_matrix())


def bracket(x: Mat, y: Mat) -> Mat:
    return x @ y - y @ x


def bisectional_curvature(ge: GradedEnd, eta: Mat, xi: Mat) -> Fraction:
    """|[xi, eta]|^2 - |[xi*, eta]|^2 in the Hodge metric."""
    plus = ge.norm2(bracket(xi, eta))
    minus = ge.norm2(bracket(ge.adjoint(xi), eta))
    return plus - minus


def kernel_dimension(ge: GradedEnd, xi: Mat) -> int:
    """dim ker of the lowering adjoint on the (-1) piece, computed as the
    corank of bracketing with xi from the 0 piece into the (-1) piece."""
    g0 = ge.pieces.get(0)
    gm1 = ge.pieces.get(-1)
    if gm1 is None:
        return 0
    dim_m1 = gm1.rows
    if g0 is None or g0.rows == 0:
        return dim_m1
    images = []
    for i in range(g0.rows):
        x = ge.unflatten(g0.row(i))
        images.append(list(bracket(xi, x).vec()))
    return dim_m1 - rank(Mat.from_rows(images))


@dataclass(frozen=True)
class QuarticReport:
    value: Fraction              # |ad*_xi(xi)|^2 / |xi|^4
    norm2: Fraction              # |xi|^2
    raw: Fraction                # |ad*_xi(xi)|^2
    block_traces: dict           # p -> (sum lambda^2, sum lambda^4)


def principal_value_traces(ge: GradedEnd, xi: Mat):
    """Per-level traces of (A* A) and (A* A)^2 for the blocks of xi.

    Levels p run over the independent upper range ceil((n+1)/2) .. n where
    the block maps the (p, q) piece to (p-1, q+1).
    """
    phs = ge.phs
    n = phs.weight
    h = ge.metric
    out = {}
    for p in range((n + 2) // 2, n + 1):
        src = phs.pieces.get((p, n - p))
        dst = phs.pieces.get((p - 1, n - p + 1))
        if src is None or dst is None:
            continue
        # matrix of xi restricted: coordinates of xi(src_i) in dst basis
        full_rows = [list(r) for key in sorted(phs.pieces) for r in phs.pieces[key].row_list()]
        keys = [key for key in sorted(phs.pieces) for _ in range(phs.pieces[key].rows)]
        full = Mat.from_rows(full_rows)
        finv = _invert(full.transpose())
        dst_positions = [i for i, key in enumerate(keys) if key == (p - 1, n - p + 1)]
        cols = []
        for i in range(src.rows):
            img = xi.mat_vec(src.row(i))
            coords = finv.mat_vec(img)
            cols.append([coords[pos] for pos in dst_positions])
        a = Mat.from_rows(cols).transpose()
        # metric Grams on source and target
        def gram(basis):
            return Mat.from_rows([
                [sum((h[r_, c_] * basis[i, r_] * basis[j, c_].conj()
                      for r_ in range(phs.dim) for c_ in range(phs.dim)
                      if basis[i, r_] and basis[j, c_]), ZERO)
                 for j in range(basis.rows)] for i in range(basis.rows)])
        g_src = gram(src)
        g_dst = gram(dst)
        a_star = _invert(g_src.transpose()) @ a.conj_transpose() @ g_dst.transpose()
        m1 = a_star @ a
        sum_l2 = m1.trace().real_or_raise()
        sum_l4 = (m1 @ m1).trace().real_or_raise()
        out[p] = (sum_l2, sum_l4)
    return out


def sectional_quartic(ge: GradedEnd, xi: Mat) -> QuarticReport:
    norm2 = ge.norm2(xi)
    if norm2 == 0:
        raise ZeroVector("sectional curvature of the zero direction")
    raw = ge.norm2(bracket(ge.adjoint(xi), xi))
    traces = principal_value_traces(ge, xi)
    return QuarticReport(raw / (norm2 * norm2), norm2, raw, traces)


def top_block(ge: GradedEnd, xi: Mat) -> Mat:
    """Matrix of xi restricted to the top piece map V^{n,0} -> V^{n-1,1},
    with columns indexed by the source basis."""
    phs = ge.phs
    n = phs.weight
    src = phs.pieces[(n, 0)]
    dst = phs.pieces[(n - 1, 1)]
    full_rows = [list(r) for key in sorted(phs.pieces)
                 for r in phs.pieces[key].row_list()]
    keys = [key for key in sorted(phs.pieces) for _ in range(phs.pieces[key].rows)]
    finv = _invert(Mat.from_rows(full_rows).transpose())
    positions = [i for i, key in enumerate(keys) if key == (n - 1, 1)]
    cols = []
    for i in range(src.rows):
        coords = finv.mat_vec(xi.mat_vec(src.row(i)))
        cols.append([coords[pos] for pos in positions])
    return Mat.from_rows(cols).transpose()


def direction_with_block(ge: GradedEnd, target: Mat) -> Mat:
    """The unique horizontal direction whose top block equals `target`.

    Solves within the (-1)-graded piece; raises when the block is not
    attainable (the block map is injective on the piece, so the solution is
    unique when it exists)."""
    from .matrices import solve
    gm1 = ge.pieces.get(-1)
    if gm1 is None or gm1.rows == 0:
        raise ZeroVector("the (-1) piece is trivial")
    cols = []
    for i in range(gm1.rows):
        xi = ge.unflatten(gm1.row(i))
        cols.append(list(top_block(ge, xi).vec()))
    m = Mat.from_rows(cols).transpose()
    c = solve(m, list(target.vec()))
    if c is None:
        raise ZeroVector("no horizontal direction has the requested block")
    v = [ZERO] * (ge.phs.dim ** 2)
    for coef, i in zip(c, range(gm1.rows)):
        if coef:
            v = [a + coef * b for a, b in zip(v, gm1.row(i))]
    out = ge.unflatten(v)
    if top_block(ge, out) != target:
        raise ZeroVector("internal error: block solve failed")
    return out
