"""Dense exact matrices over the Gaussian rationals, plus subspace calculus.

Subspaces of a fixed ambient space are represented by matrices whose rows
form a basis; the canonical representative is the reduced row echelon form,
so two subspaces are equal iff their canonical matrices are equal.

Pivoting is always leftmost-column, smallest-row-index: every operation is
deterministic.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import NoSolution, NotNilpotent
from .rationals import GaussianRational, as_gauss, ZERO, ONE


class Mat:
    """Immutable dense matrix with GaussianRational entries."""

    __slots__ = ("rows", "cols", "entries")

    def __init__(self, rows: int, cols: int, entries):
        object.__setattr__(self, "rows", rows)
        object.__setattr__(self, "cols", cols)
        ent = tuple(as_gauss(e) for e in entries)
        if len(ent) != rows * cols:
            raise ValueError("entry count does not match shape")
        object.__setattr__(self, "entries", ent)

    def __setattr__(self, *a):
        raise AttributeError("Mat is immutable")

    # -- constructors -------------------------------------------------------

    @classmethod
    def from_rows(cls, rows) -> "Mat":
        rows = [list(r) for r in rows]
        n = len(rows)
        m = len(rows[0]) if rows else 0
        if any(len(r) != m for r in rows):
            raise ValueError("ragged rows")
        return cls(n, m, [e for r in rows for e in r])

    @classmethod
    def identity(cls, n: int) -> "Mat":
        return cls(n, n, [ONE if i == j else ZERO for i in range(n) for j in range(n)])

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "Mat":
        return cls(rows, cols, [ZERO] * (rows * cols))

    @classmethod
    def diag(cls, values) -> "Mat":
        values = list(values)
        n = len(values)
        return cls(n, n, [as_gauss(values[i]) if i == j else ZERO
                          for i in range(n) for j in range(n)])

    # -- access --------------------------------------------------------------

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i * self.cols + j]

    def row(self, i: int):
        return self.entries[i * self.cols:(i + 1) * self.cols]

    def col(self, j: int):
        return tuple(self.entries[i * self.cols + j] for i in range(self.rows))

    def row_list(self):
        return [list(self.row(i)) for i in range(self.rows)]

    # -- algebra --------------------------------------------------------------

    def __add__(self, other: "Mat") -> "Mat":
        self._same_shape(other)
        return Mat(self.rows, self.cols,
                   [a + b for a, b in zip(self.entries, other.entries)])

    def __sub__(self, other: "Mat") -> "Mat":
        self._same_shape(other)
        return Mat(self.rows, self.cols,
                   [a - b for a, b in zip(self.entries, other.entries)])

    def __neg__(self) -> "Mat":
        return Mat(self.rows, self.cols, [-a for a in self.entries])

    def __matmul__(self, other: "Mat") -> "Mat":
        if self.cols != other.rows:
            raise ValueError("shape mismatch in matrix product")
        out = []
        for i in range(self.rows):
            ri = self.row(i)
            for j in range(other.cols):
                acc = ZERO
                for k in range(self.cols):
                    a = ri[k]
                    if a:
                        b = other.entries[k * other.cols + j]
                        if b:
                            acc = acc + a * b
                out.append(acc)
        return Mat(self.rows, other.cols, out)

    def scale(self, c) -> "Mat":
        c = as_gauss(c)
        return Mat(self.rows, self.cols, [c * a for a in self.entries])

    def __pow__(self, n: int) -> "Mat":
        if self.rows != self.cols:
            raise ValueError("power of non-square matrix")
        out = Mat.identity(self.rows)
        base = self
        while n:
            if n & 1:
                out = out @ base
            base = base @ base if n > 1 else base
            n >>= 1
        return out

    def transpose(self) -> "Mat":
        return Mat(self.cols, self.rows,
                   [self.entries[i * self.cols + j]
                    for j in range(self.cols) for i in range(self.rows)])

    def conj(self) -> "Mat":
        return Mat(self.rows, self.cols, [a.conj() for a in self.entries])

    def conj_transpose(self) -> "Mat":
        return self.transpose().conj()

    def trace(self) -> GaussianRational:
        return sum((self[i, i] for i in range(min(self.rows, self.cols))), ZERO)

    def vec(self):
        """Row-major flattening as a tuple."""
        return self.entries

    def mat_vec(self, v):
        """Matrix times column vector (v a sequence)."""
        v = [as_gauss(x) for x in v]
        if len(v) != self.cols:
            raise ValueError("vector length mismatch")
        return tuple(sum((self[i, k] * v[k] for k in range(self.cols)
                          if v[k]), ZERO) for i in range(self.rows))

    def is_zero(self) -> bool:
        return all(not e for e in self.entries)

    def is_real(self) -> bool:
        return all(e.is_real for e in self.entries)

    def commutes_with(self, other: "Mat") -> bool:
        return (self @ other - other @ self).is_zero()

    def __eq__(self, other):
        return (isinstance(other, Mat) and self.rows == other.rows
                and self.cols == other.cols and self.entries == other.entries)

    def __hash__(self):
        return hash((self.rows, self.cols, self.entries))

    def __repr__(self):
        body = "; ".join(" ".join(str(e) for e in self.row(i))
                         for i in range(self.rows))
        return f"Mat[{body}]"

    def _same_shape(self, other):
        if self.rows != other.rows or self.cols != other.cols:
            raise ValueError("shape mismatch")

    # -- serialization -------------------------------------------------------

    def to_json(self):
        return [[e.to_json() for e in self.row(i)] for i in range(self.rows)]

    @classmethod
    def from_json(cls, data) -> "Mat":
        return cls.from_rows([[GaussianRational.from_json(e) for e in row]
                              for row in data])


# ---------------------------------------------------------------------------
# Elimination
# ---------------------------------------------------------------------------

def rref(m: Mat):
    """Reduced row echelon form.

    Returns (reduced, pivot_cols, rank).  Pivot selection is leftmost column
    first, then smallest row index.
    """
    a = m.row_list()
    nr, nc = m.rows, m.cols
    pivots = []
    pr = 0
    for pc in range(nc):
        sel = None
        for r in range(pr, nr):
            if a[r][pc]:
                sel = r
                break
        if sel is None:
            continue
        a[pr], a[sel] = a[sel], a[pr]
        inv = ONE / a[pr][pc]
        a[pr] = [inv * x for x in a[pr]]
        for r in range(nr):
            if r != pr and a[r][pc]:
                f = a[r][pc]
                a[r] = [x - f * y for x, y in zip(a[r], a[pr])]
        pivots.append(pc)
        pr += 1
        if pr == nr:
            break
    return Mat.from_rows(a) if nr else m, tuple(pivots), len(pivots)


def kernel_basis(m: Mat):
    """Basis of the right null space {v : m @ v = 0}.

    Free variables are taken in increasing column order, so the result is
    deterministic.
    """
    red, pivots, rank = rref(m)
    pivset = set(pivots)
    free = [c for c in range(m.cols) if c not in pivset]
    basis = []
    for fc in free:
        v = [ZERO] * m.cols
        v[fc] = ONE
        for r, pc in enumerate(pivots):
            v[pc] = -red[r, fc]
        basis.append(tuple(v))
    return basis


def solve(m: Mat, b):
    """One exact solution of m @ x = b, or None if inconsistent.

    Free variables are set to zero (deterministic particular solution).
    """
    b = [as_gauss(x) for x in b]
    aug = Mat.from_rows([list(m.row(i)) + [b[i]] for i in range(m.rows)])
    red, pivots, rank = rref(aug)
    if m.cols in pivots:
        return None
    x = [ZERO] * m.cols
    for r, pc in enumerate(pivots):
        x[pc] = red[r, m.cols]
    return tuple(x)


def det(m: Mat) -> GaussianRational:
    """Exact determinant by fraction-full Gaussian elimination."""
    if m.rows != m.cols:
        raise ValueError("determinant of non-square matrix")
    a = m.row_list()
    n = m.rows
    out = ONE
    for c in range(n):
        sel = None
        for r in range(c, n):
            if a[r][c]:
                sel = r
                break
        if sel is None:
            return ZERO
        if sel != c:
            a[c], a[sel] = a[sel], a[c]
            out = -out
        out = out * a[c][c]
        inv = ONE / a[c][c]
        for r in range(c + 1, n):
            if a[r][c]:
                f = a[r][c] * inv
                a[r] = [x - f * y for x, y in zip(a[r], a[c])]
    return out


def rank(m: Mat) -> int:
    return rref(m)[2]


# ---------------------------------------------------------------------------
# Subspaces (row-space representation)
# ---------------------------------------------------------------------------

def sub_canonical(basis: Mat) -> Mat:
    """Canonical (rref, zero rows dropped) basis matrix of a row space."""
    red, pivots, r = rref(basis)
    return Mat.from_rows([list(red.row(i)) for i in range(r)]) if r else Mat.zeros(0, basis.cols)


def sub_zero(ambient: int) -> Mat:
    return Mat.zeros(0, ambient)


def sub_full(ambient: int) -> Mat:
    return Mat.identity(ambient)


def sub_dim(s: Mat) -> int:
    return s.rows


def sub_sum(*spaces: Mat) -> Mat:
    spaces = [s for s in spaces if s.rows]
    if not spaces:
        raise ValueError("sum of no spaces needs an ambient dimension")
    stacked = Mat.from_rows([r for s in spaces for r in s.row_list()])
    return sub_canonical(stacked)


def sub_sum_ambient(spaces, ambient: int) -> Mat:
    spaces = [s for s in spaces if s.rows]
    if not spaces:
        return sub_zero(ambient)
    return sub_sum(*spaces)


def sub_contains_vec(s: Mat, v) -> bool:
    if not any(as_gauss(x) for x in v):
        return True
    if s.rows == 0:
        return False
    return solve(s.transpose(), v) is not None


def sub_contains(s: Mat, t: Mat) -> bool:
    """True iff row space t is contained in row space s."""
    return all(sub_contains_vec(s, t.row(i)) for i in range(t.rows))


def sub_equal(s: Mat, t: Mat) -> bool:
    return sub_canonical(s) == sub_canonical(t)


def sub_intersect(a: Mat, b: Mat) -> Mat:
    ambient = a.cols
    if a.rows == 0 or b.rows == 0:
        return sub_zero(ambient)
    cols = []
    for i in range(a.rows):
        cols.append(list(a.row(i)))
    for i in range(b.rows):
        cols.append([-x for x in b.row(i)])
    m = Mat.from_rows(cols).transpose()  # ambient x (p+q)
    vecs = []
    for k in kernel_basis(m):
        coeffs = k[:a.rows]
        v = [ZERO] * ambient
        for c, i in zip(coeffs, range(a.rows)):
            if c:
                row = a.row(i)
                v = [x + c * y for x, y in zip(v, row)]
        vecs.append(v)
    if not vecs:
        return sub_zero(ambient)
    return sub_canonical(Mat.from_rows(vecs))


def sub_conj(s: Mat) -> Mat:
    return sub_canonical(s.conj())


def sub_image(m: Mat, s: Mat) -> Mat:
    """Image of the row space s under the linear map m (column convention)."""
    if s.rows == 0:
        return sub_zero(m.rows)
    rows = [list(m.mat_vec(s.row(i))) for i in range(s.rows)]
    return sub_canonical(Mat.from_rows(rows))


def column_space(m: Mat) -> Mat:
    return sub_canonical(m.transpose())


def kernel_space(m: Mat) -> Mat:
    ks = kernel_basis(m)
    if not ks:
        return sub_zero(m.cols)
    return sub_canonical(Mat.from_rows([list(v) for v in ks]))


def sub_complement_in(sub: Mat, sup: Mat) -> Mat:
    """Echelon complement of `sub` inside `sup` (sub must lie in sup).

    Greedily extends a basis of sub by canonical basis rows of sup; the
    result is deterministic.
    """
    current = [list(sub.row(i)) for i in range(sub.rows)]
    chosen = []
    base_rank = sub.rows
    sup_c = sub_canonical(sup)
    for i in range(sup_c.rows):
        cand = list(sup_c.row(i))
        trial = current + chosen + [cand]
        if rref(Mat.from_rows(trial))[2] > base_rank + len(chosen):
            chosen.append(cand)
    if not chosen:
        return sub_zero(sup.cols)
    return Mat.from_rows(chosen)


def coords_in_basis(basis: Mat, v):
    """Coordinates of v in the given row basis, or None."""
    if basis.rows == 0:
        return () if not any(as_gauss(x) for x in v) else None
    return solve(basis.transpose(), v)


class Quotient:
    """Quotient space sup/sub with an explicit echelon complement.

    Vectors of the quotient are represented by coordinates in the chosen
    complement basis.
    """

    def __init__(self, sup: Mat, sub: Mat):
        self.sup = sub_canonical(sup)
        self.sub = sub_canonical(sub)
        if not sub_contains(self.sup, self.sub):
            raise ValueError("sub is not contained in sup")
        self.comp = sub_complement_in(self.sub, self.sup)
        self.dim = self.comp.rows
        self.ambient = sup.cols
        if self.dim:
            self._basis = Mat.from_rows(self.comp.row_list() + self.sub.row_list())
        else:
            self._basis = self.sub

    def project_vec(self, v):
        """Class of v (must lie in sup) as complement coordinates."""
        coords = coords_in_basis(self._basis, v)
        if coords is None:
            raise ValueError("vector not in the total space")
        return tuple(coords[: self.dim])

    def project_sub(self, s: Mat) -> Mat:
        """Image in the quotient of a subspace of sup (rows in quotient coords)."""
        if self.dim == 0 or s.rows == 0:
            return Mat.zeros(0, self.dim)
        rows = [list(self.project_vec(s.row(i))) for i in range(s.rows)]
        return sub_canonical(Mat.from_rows(rows))

    def lift_vec(self, coords):
        coords = [as_gauss(c) for c in coords]
        v = [ZERO] * self.ambient
        for c, i in zip(coords, range(self.dim)):
            if c:
                v = [x + c * y for x, y in zip(v, self.comp.row(i))]
        return tuple(v)

    def induced_map(self, m: Mat) -> Mat:
        """Matrix of the endomorphism induced by m (which must preserve sup, sub)."""
        cols = []
        for i in range(self.dim):
            img = m.mat_vec(self.comp.row(i))
            cols.append(self.project_vec(img))
        if self.dim == 0:
            return Mat.zeros(0, 0)
        return Mat.from_rows([list(c) for c in cols]).transpose()


# ---------------------------------------------------------------------------
# Nilpotency
# ---------------------------------------------------------------------------

def nilpotency_index(n: Mat) -> int:
    """Smallest m >= 1 with n**m = 0; raises NotNilpotent otherwise."""
    if n.rows != n.cols:
        raise ValueError("nilpotency of non-square matrix")
    p = Mat.identity(n.rows)
    for m in range(1, n.rows + 1):
        p = p @ n
        if p.is_zero():
            return m
    raise NotNilpotent(f"matrix is not nilpotent (n^{n.rows} != 0)")


def is_nilpotent(n: Mat) -> bool:
    try:
        nilpotency_index(n)
        return True
    except NotNilpotent:
        return False


# ---------------------------------------------------------------------------
# Smith normal form (integer matrices)
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SmithForm:
    """U @ A @ V = D with U, V unimodular and D diagonal, d_i | d_{i+1}."""

    u: Mat
    d: Mat
    v: Mat
    invariant_factors: tuple


def _int_entries(m: Mat):
    out = []
    for e in m.entries:
        if not e.is_real or e.re.denominator != 1:
            raise ValueError("smith_normal_form needs integer entries")
        out.append(int(e.re))
    return out


def smith_normal_form(a: Mat) -> SmithForm:
    nr, nc = a.rows, a.cols
    m = [[v for v in row] for row in
         [list(_int_entries(a)[i * nc:(i + 1) * nc]) for i in range(nr)]]
    u = [[1 if i == j else 0 for j in range(nr)] for i in range(nr)]
    v = [[1 if i == j else 0 for j in range(nc)] for i in range(nc)]

    def row_op(f, t, c):  # row t -= c * row f
        m[t] = [x - c * y for x, y in zip(m[t], m[f])]
        u[t] = [x - c * y for x, y in zip(u[t], u[f])]

    def col_op(f, t, c):  # col t -= c * col f
        for r in m:
            r[t] -= c * r[f]
        for r in v:
            r[t] -= c * r[f]

    def swap_rows(i, j):
        m[i], m[j] = m[j], m[i]
        u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        for r in m:
            r[i], r[j] = r[j], r[i]
        for r in v:
            r[i], r[j] = r[j], r[i]

    t = 0
    limit = min(nr, nc)
    while t < limit:
        # find pivot of minimal absolute value in the trailing block
        best = None
        for i in range(t, nr):
            for j in range(t, nc):
                if m[i][j] != 0 and (best is None or abs(m[i][j]) < abs(m[best[0]][best[1]])):
                    best = (i, j)
        if best is None:
            break
        swap_rows(t, best[0])
        swap_cols(t, best[1])
        dirty = False
        for i in range(t + 1, nr):
            if m[i][t] % m[t][t] != 0:
                dirty = True
            row_op(t, i, m[i][t] // m[t][t])
        for j in range(t + 1, nc):
            if m[t][j] % m[t][t] != 0:
                dirty = True
            col_op(t, j, m[t][j] // m[t][t])
        if dirty or any(m[i][t] for i in range(t + 1, nr)) or any(m[t][j] for j in range(t + 1, nc)):
            continue
        t += 1

    # enforce divisibility chain
    changed = True
    while changed:
        changed = False
        for i in range(limit - 1):
            a_i, a_j = m[i][i], m[i + 1][i + 1]
            if a_j != 0 and a_i != 0 and a_j % a_i != 0:
                # classic trick: add col i+1 to col i then re-reduce the 2x2 block
                for r in m:
                    r[i] += r[i + 1]
                for r in v:
                    r[i] += r[i + 1]
                # re-run elimination from position i
                changed = True
                t = i
                while t < limit:
                    best = None
                    for r_ in range(t, nr):
                        for c_ in range(t, nc):
                            if m[r_][c_] != 0 and (best is None or abs(m[r_][c_]) < abs(m[best[0]][best[1]])):
                                best = (r_, c_)
                    if best is None:
                        break
                    swap_rows(t, best[0])
                    swap_cols(t, best[1])
                    again = False
                    for r_ in range(t + 1, nr):
                        if m[r_][t]:
                            row_op(t, r_, m[r_][t] // m[t][t])
                            if m[r_][t]:
                                again = True
                    for c_ in range(t + 1, nc):
                        if m[t][c_]:
                            col_op(t, c_, m[t][c_] // m[t][t])
                            if m[t][c_]:
                                again = True
                    if again or any(m[r_][t] for r_ in range(t + 1, nr)) or any(m[t][c_] for c_ in range(t + 1, nc)):
                        continue
                    t += 1
                break

    # positive diagonal
    for i in range(limit):
        if m[i][i] < 0:
            for r_ in m:
                r_[i] = -r_[i]
            for r_ in v:
                r_[i] = -r_[i]

    d = Mat.from_rows([[Fraction(m[i][j]) for j in range(nc)] for i in range(nr)])
    u_m = Mat.from_rows([[Fraction(x) for x in row] for row in u])
    v_m = Mat.from_rows([[Fraction(x) for x in row] for row in v])
    factors = tuple(int(m[i][i]) for i in range(limit) if m[i][i] != 0)

    # exact sanity checks
    if (u_m @ a @ v_m) != d:
        raise NoSolution("internal error: UAV != D in Smith normal form")
    for x, y in zip(factors, factors[1:]):
        if y % x != 0:
            raise NoSolution("internal error: divisibility chain failed")
    if det(u_m).abs2() != 1 or det(v_m).abs2() != 1:
        raise NoSolution("internal error: transforms not unimodular")
    return SmithForm(u_m, d, v_m, factors)
