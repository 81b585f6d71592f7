"""Exact linear algebra kernels: Gaussian rationals, rank/nullspace/definiteness
over Q(i), and integer Smith/kernel computations.

Matrices are plain lists (or tuples) of rows.  Everything here is exact; no
floating point enters any decision.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Iterable, Sequence


class GaussianRational:
    """A complex number a + b*i with rational a, b.  Immutable."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        object.__setattr__(self, "re", re if isinstance(re, Fraction) else Fraction(re))
        object.__setattr__(self, "im", im if isinstance(im, Fraction) else Fraction(im))

    def __setattr__(self, name, value):
        raise AttributeError("GaussianRational is immutable")

    def __add__(self, other):
        other = _coerce(other)
        return GaussianRational(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __sub__(self, other):
        other = _coerce(other)
        return GaussianRational(self.re - other.re, self.im - other.im)

    def __rsub__(self, other):
        return _coerce(other) - self

    def __mul__(self, other):
        other = _coerce(other)
        return GaussianRational(
            self.re * other.re - self.im * other.im,
            self.re * other.im + self.im * other.re,
        )

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = _coerce(other)
        d = other.re * other.re + other.im * other.im
        if d == 0:
            raise ZeroDivisionError("division by zero Gaussian rational")
        return GaussianRational(
            (self.re * other.re + self.im * other.im) / d,
            (self.im * other.re - self.re * other.im) / d,
        )

    def __rtruediv__(self, other):
        return _coerce(other) / self

    def __neg__(self):
        return GaussianRational(-self.re, -self.im)

    def conjugate(self):
        return GaussianRational(self.re, -self.im)

    def abs2(self) -> Fraction:
        """Squared modulus, an exact nonnegative rational."""
        return self.re * self.re + self.im * self.im

    def is_zero(self) -> bool:
        return self.re == 0 and self.im == 0

    def is_real(self) -> bool:
        return self.im == 0

    def __bool__(self):
        return not self.is_zero()

    def __eq__(self, other):
        if isinstance(other, GaussianRational):
            return self.re == other.re and self.im == other.im
        if isinstance(other, (int, Fraction)):
            return self.im == 0 and self.re == other
        return NotImplemented

    def __hash__(self):
        if self.im == 0:
            return hash(self.re)
        return hash((self.re, self.im))

    def __repr__(self):
        if self.im == 0:
            return f"Qi({self.re})"
        return f"Qi({self.re}, {self.im})"


def _coerce(x) -> GaussianRational:
    if isinstance(x, GaussianRational):
        return x
    if isinstance(x, (int, Fraction)):
        return GaussianRational(x)
    raise TypeError(f"cannot coerce {type(x).__name__} into GaussianRational")


def Qi(re=0, im=0) -> GaussianRational:
    """Shorthand constructor; accepts ints, Fractions or 'a/b' strings."""
    if isinstance(re, str):
        re = Fraction(re)
    if isinstance(im, str):
        im = Fraction(im)
    return GaussianRational(re, im)


QI_ZERO = GaussianRational(0)
QI_ONE = GaussianRational(1)
QI_I = GaussianRational(0, 1)

Matrix = list  # rows of GaussianRational (or Fraction/int in the real helpers)


def mat(rows: Iterable[Iterable]) -> list[list[GaussianRational]]:
    return [[_coerce(x) for x in row] for row in rows]


def zeros(n: int, m: int) -> list[list[GaussianRational]]:
    return [[QI_ZERO] * m for _ in range(n)]


def eye(n: int) -> list[list[GaussianRational]]:
    return [[QI_ONE if i == j else QI_ZERO for j in range(n)] for i in range(n)]


def mat_mul(a: Sequence[Sequence], b: Sequence[Sequence]) -> list[list[GaussianRational]]:
    if a and b and len(a[0]) != len(b):
        raise ValueError("matrix dimension mismatch in product")
    bt = list(zip(*b)) if b else []
    return [[_dot_plain(row, col) for col in bt] for row in a]


def _dot_plain(xs, ys) -> GaussianRational:
    acc = QI_ZERO
    for x, y in zip(xs, ys):
        acc = acc + _coerce(x) * _coerce(y)
    return acc


def mat_add(a, b):
    return [[_coerce(x) + _coerce(y) for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def mat_sub(a, b):
    return [[_coerce(x) - _coerce(y) for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def mat_scale(c, a):
    c = _coerce(c)
    return [[c * _coerce(x) for x in row] for row in a]


def mat_neg(a):
    return [[-_coerce(x) for x in row] for row in a]


def conj_transpose(a):
    return [[_coerce(a[i][j]).conjugate() for i in range(len(a))] for j in range(len(a[0]))] if a else []


def transpose(a):
    return [list(col) for col in zip(*a)] if a else []


def trace(a) -> GaussianRational:
    return sum((_coerce(a[i][i]) for i in range(len(a))), QI_ZERO)


def bracket(a, b):
    """Matrix commutator [a, b] = ab - ba."""
    return mat_sub(mat_mul(a, b), mat_mul(b, a))


def mat_eq(a, b) -> bool:
    return len(a) == len(b) and all(
        len(ra) == len(rb) and all(_coerce(x) == _coerce(y) for x, y in zip(ra, rb))
        for ra, rb in zip(a, b)
    )


def is_zero_matrix(a) -> bool:
    return all(_coerce(x).is_zero() for row in a for x in row)


def rank(a: Sequence[Sequence]) -> int:
    """Exact rank over Q(i) by Gaussian elimination with division."""
    rows = [[_coerce(x) for x in row] for row in a]
    if not rows:
        return 0
    ncols = len(rows[0])
    r = 0
    for c in range(ncols):
        piv = None
        for i in range(r, len(rows)):
            if not rows[i][c].is_zero():
                piv = i
                break
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = QI_ONE / rows[r][c]
        rows[r] = [inv * x for x in rows[r]]
        for i in range(len(rows)):
            if i != r and not rows[i][c].is_zero():
                f = rows[i][c]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        r += 1
        if r == len(rows):
            break
    return r


def rref(a: Sequence[Sequence]):
    """Reduced row echelon form; returns (rows, pivot_columns)."""
    rows = [[_coerce(x) for x in row] for row in a]
    pivots: list[int] = []
    if not rows:
        return rows, pivots
    ncols = len(rows[0])
    r = 0
    for c in range(ncols):
        piv = None
        for i in range(r, len(rows)):
            if not rows[i][c].is_zero():
                piv = i
                break
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = QI_ONE / rows[r][c]
        rows[r] = [inv * x for x in rows[r]]
        for i in range(len(rows)):
            if i != r and not rows[i][c].is_zero():
                f = rows[i][c]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    return rows, pivots


def nullspace(a: Sequence[Sequence]) -> list[list[GaussianRational]]:
    """Basis of the right kernel {x : a x = 0} over Q(i)."""
    if not a:
        return []
    ncols = len(a[0])
    rows, pivots = rref(a)
    pivot_set = set(pivots)
    free = [c for c in range(ncols) if c not in pivot_set]
    basis = []
    for fc in free:
        v = [QI_ZERO] * ncols
        v[fc] = QI_ONE
        for r, pc in enumerate(pivots):
            v[pc] = -rows[r][fc]
        basis.append(v)
    return basis


def solve(a: Sequence[Sequence], b: Sequence[Sequence]):
    """Solve a X = b for square invertible a over Q(i); returns X or raises."""
    n = len(a)
    aug = [[_coerce(x) for x in row_a] + [_coerce(y) for y in row_b] for row_a, row_b in zip(a, b)]
    width = len(b[0])
    for c in range(n):
        piv = None
        for i in range(c, n):
            if not aug[i][c].is_zero():
                piv = i
                break
        if piv is None:
            raise ValueError("singular matrix in solve")
        aug[c], aug[piv] = aug[piv], aug[c]
        inv = QI_ONE / aug[c][c]
        aug[c] = [inv * x for x in aug[c]]
        for i in range(n):
            if i != c and not aug[i][c].is_zero():
                f = aug[i][c]
                aug[i] = [x - f * y for x, y in zip(aug[i], aug[c])]
    return [row[n:n + width] for row in aug]


def det(a: Sequence[Sequence]) -> GaussianRational:
    """Exact determinant over Q(i) by fraction elimination."""
    n = len(a)
    rows = [[_coerce(x) for x in row] for row in a]
    sign = QI_ONE
    acc = QI_ONE
    for c in range(n):
        piv = None
        for i in range(c, n):
            if not rows[i][c].is_zero():
                piv = i
                break
        if piv is None:
            return QI_ZERO
        if piv != c:
            rows[c], rows[piv] = rows[piv], rows[c]
            sign = -sign
        acc = acc * rows[c][c]
        inv = QI_ONE / rows[c][c]
        for i in range(c + 1, n):
            if not rows[i][c].is_zero():
                f = rows[i][c] * inv
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[c])]
    return sign * acc


def hermitian_leading_minors(g: Sequence[Sequence]) -> list[Fraction]:
    """Leading principal minors of a Hermitian matrix, as exact rationals.

    Raises if the input is not Hermitian (minors of a Hermitian matrix are
    real, which the computation double-checks).
    """
    n = len(g)
    for i in range(n):
        for j in range(n):
            if _coerce(g[i][j]) != _coerce(g[j][i]).conjugate():
                raise ValueError("matrix is not Hermitian")
    minors = []
    for s in range(1, n + 1):
        d = det([row[:s] for row in g[:s]])
        if not d.is_real():
            raise ValueError("non-real minor on a Hermitian matrix")
        minors.append(d.re)
    return minors


def hermitian_definiteness(g: Sequence[Sequence]) -> str:
    """Classify a Hermitian form: 'positive', 'negative', 'degenerate' or 'indefinite'.

    Sylvester: positive definite iff all leading minors > 0; negative definite
    iff they alternate starting negative.  A zero determinant means the form is
    degenerate; a zero intermediate minor on a nondegenerate form is indefinite.

    One unpivoted elimination pass produces every leading minor (the running
    pivot product); a zero pivot already rules definiteness out, and a single
    full determinant then separates degenerate from indefinite.
    """
    n = len(g)
    work = []
    for i in range(n):
        row = [_coerce(x) for x in g[i]]
        work.append(row)
    for i in range(n):
        for j in range(n):
            if work[i][j] != work[j][i].conjugate():
                raise ValueError("matrix is not Hermitian")
    if n == 0:
        return "positive"  # empty form, vacuously definite either way
    minors: list[Fraction] = []
    prev = Fraction(1)
    for s in range(n):
        piv = work[s][s]
        if not piv.is_real():
            raise ValueError("non-real pivot on a Hermitian matrix")
        if piv.is_zero():
            return "degenerate" if det(g).is_zero() else "indefinite"
        prev = prev * piv.re
        minors.append(prev)
        inv = QI_ONE / piv
        for i in range(s + 1, n):
            f = work[i][s] * inv
            if not f.is_zero():
                wi, ws = work[i], work[s]
                for j in range(s, n):
                    wi[j] = wi[j] - f * ws[j]
    if all(m > 0 for m in minors):
        return "positive"
    if all((m < 0 if s % 2 == 1 else m > 0) for s, m in zip(range(1, n + 1), minors)):
        return "negative"
    return "indefinite"


# ---------------------------------------------------------------------------
# Integer linear algebra: fraction-free rank, Smith normal form, kernels.
# ---------------------------------------------------------------------------


def rank_int(a: Sequence[Sequence[int]]) -> int:
    """Rank of an integer matrix via fraction-free (Bareiss-style) elimination."""
    rows = [list(map(int, row)) for row in a]
    if not rows:
        return 0
    ncols = len(rows[0])
    r = 0
    for c in range(ncols):
        piv = None
        for i in range(r, len(rows)):
            if rows[i][c] != 0:
                piv = i
                break
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        prow = rows[r]
        pval = prow[c]
        for i in range(r + 1, len(rows)):
            if rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [pval * x - f * y for x, y in zip(rows[i], prow)]
                g = 0
                for x in rows[i]:
                    g = gcd(g, x)
                if g > 1:
                    rows[i] = [x // g for x in rows[i]]
        r += 1
        if r == len(rows):
            break
    return r


def clear_denominators(rows: Sequence[Sequence[Fraction]]) -> list[list[int]]:
    """Scale each row by the lcm of its denominators (rank-preserving)."""
    out = []
    for row in rows:
        fr = [x if isinstance(x, Fraction) else Fraction(x) for x in row]
        l = 1
        for x in fr:
            l = l * x.denominator // gcd(l, x.denominator)
        out.append([int(x * l) for x in fr])
    return out


def rank_rational(rows: Sequence[Sequence[Fraction]]) -> int:
    return rank_int(clear_denominators(rows))


def smith_normal_form(a: Sequence[Sequence[int]]):
    """Smith normal form of an integer matrix.

    Returns (d, u, v) with u a v = d, u and v unimodular and d diagonal with
    d[i][i] dividing d[i+1][i+1].
    """
    m = [list(map(int, row)) for row in a]
    nr = len(m)
    nc = len(m[0]) if nr else 0
    u = [[int(i == j) for j in range(nr)] for i in range(nr)]
    v = [[int(i == j) for j in range(nc)] for i in range(nc)]

    def row_op(i, j, q):  # row_i -= q * row_j
        m[i] = [x - q * y for x, y in zip(m[i], m[j])]
        u[i] = [x - q * y for x, y in zip(u[i], u[j])]

    def col_op(i, j, q):  # col_i -= q * col_j
        for row in m:
            row[i] -= q * row[j]
        for row in v:
            row[i] -= q * row[j]

    def swap_rows(i, j):
        m[i], m[j] = m[j], m[i]
        u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        for row in m:
            row[i], row[j] = row[j], row[i]
        for row in v:
            row[i], row[j] = row[j], row[i]

    for s in range(min(nr, nc)):
        while True:
            # Move a minimal nonzero entry of the trailing block to (s, s).
            best = None
            for i in range(s, nr):
                for j in range(s, nc):
                    if m[i][j] != 0 and (best is None or abs(m[i][j]) < abs(m[best[0]][best[1]])):
                        best = (i, j)
            if best is None:
                break
            if best[0] != s:
                swap_rows(s, best[0])
            if best[1] != s:
                swap_cols(s, best[1])
            dirty = False
            for i in range(s + 1, nr):
                if m[i][s] != 0:
                    row_op(i, s, m[i][s] // m[s][s])
                    if m[i][s] != 0:
                        dirty = True
            for j in range(s + 1, nc):
                if m[s][j] != 0:
                    col_op(j, s, m[s][j] // m[s][s])
                    if m[s][j] != 0:
                        dirty = True
            if dirty:
                continue
            # Enforce divisibility of the trailing block by the pivot.
            offender = None
            for i in range(s + 1, nr):
                for j in range(s + 1, nc):
                    if m[i][j] % m[s][s] != 0:
                        offender = i
                        break
                if offender is not None:
                    break
            if offender is None:
                break
            row_op(s, offender, -1)
        if s < min(nr, nc) and m[s][s] < 0:
            m[s] = [-x for x in m[s]]
            u[s] = [-x for x in u[s]]
    return m, u, v


def smith_invariant_factors(a: Sequence[Sequence[int]]) -> list[int]:
    d, _, _ = smith_normal_form(a)
    out = []
    for i in range(min(len(d), len(d[0]) if d else 0)):
        if d[i][i] != 0:
            out.append(d[i][i])
    return out


def integer_kernel(a: Sequence[Sequence[int]]) -> list[list[int]]:
    """Basis of the integer kernel {x in Z^n : a x = 0} (columns of V past the rank)."""
    if not a:
        return []
    d, _, v = smith_normal_form(a)
    nc = len(a[0])
    r = len(smith_invariant_factors(a))
    return [[v[i][j] for i in range(nc)] for j in range(r, nc)]


def lattices_equal(basis_a: Sequence[Sequence[int]], basis_b: Sequence[Sequence[int]]) -> bool:
    """Whether two integer row-span lattices coincide, by Hermite form comparison."""
    return hermite_normal_form(basis_a) == hermite_normal_form(basis_b)


def hermite_normal_form(rows_in: Sequence[Sequence[int]]) -> list[list[int]]:
    """Canonical row-style Hermite normal form (zero rows dropped)."""
    rows = [list(map(int, r)) for r in rows_in]
    if not rows:
        return []
    nr, nc = len(rows), len(rows[0])
    piv = 0
    for c in range(nc):
        # Euclid within column c until at most one row below piv has a nonzero.
        while True:
            nz = [i for i in range(piv, nr) if rows[i][c] != 0]
            if len(nz) <= 1:
                break
            nz.sort(key=lambda i: abs(rows[i][c]))
            base = nz[0]
            for i in nz[1:]:
                q = rows[i][c] // rows[base][c]
                rows[i] = [x - q * y for x, y in zip(rows[i], rows[base])]
        nz = [i for i in range(piv, nr) if rows[i][c] != 0]
        if not nz:
            continue
        rows[piv], rows[nz[0]] = rows[nz[0]], rows[piv]
        if rows[piv][c] < 0:
            rows[piv] = [-x for x in rows[piv]]
        for i in range(nr):
            if i != piv and rows[i][c] != 0:
                q = rows[i][c] // rows[piv][c]
                rows[i] = [x - q * y for x, y in zip(rows[i], rows[piv])]
        piv += 1
    return rows[:piv]
