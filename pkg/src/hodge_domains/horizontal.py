"""Classification of real 2-planes in the first-level horizontal fiber: the
bracket 2-form, isotropy, regularity, the rank-(1,n,1) criterion, stabilizer
dimension counts, and the embedded rank-(1,2,1) subdomain.

A horizontal vector is a tuple of matrices A_i from block i to block i+1.
The bracket 2-form takes two horizontal vectors to the level-two piece,
component i being B_{i+1} A_i - A_{i+1} B_i.  For ranks (1,n,1), writing
u = (v1, v2) with v1 the first component column and v2 the transpose of the
second, this is literally the complex symplectic scalar  t(v1) w2 - t(v2) w1.

A real 2-plane S = span_R(u, w) is isotropic when the form vanishes on it and
regular when v -> (s -> bracket(v, s)) maps the horizontal fiber onto all
real-linear maps S -> (level-two piece); regularity is decided by an exact
real rank computation.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Iterable, Optional

from .exactla import (
    GaussianRational,
    Qi,
    QI_ZERO,
    is_zero_matrix,
    mat_mul,
    mat_sub,
    rank,
    rank_rational,
)
from .hodge import HodgeNumbers
from .pi2 import Pi2Class, class_of_root
from .rootcalc import bridge_root, entry_level, parabolic_from_ranks, sparse_bracket


class NotApplicableError(ValueError):
    """The construction requires a middle block of rank at least 2."""


def _coerce_matrix(rows, nr, nc):
    out = tuple(
        tuple(x if isinstance(x, GaussianRational) else Qi(x) for x in row) for row in rows
    )
    if len(out) != nr or any(len(r) != nc for r in out):
        raise ValueError(f"expected a {nr}x{nc} component")
    return out


@dataclass(frozen=True)
class HorizontalVector:
    """components[i] maps block i to block i+1 (an r_{i+1} x r_i matrix)."""

    ranks: HodgeNumbers
    components: tuple

    def __post_init__(self):
        r = self.ranks.ranks
        if len(self.components) != self.ranks.k:
            raise ValueError(f"expected {self.ranks.k} components")
        comps = tuple(
            _coerce_matrix(mx, r[i + 1], r[i]) for i, mx in enumerate(self.components)
        )
        object.__setattr__(self, "components", comps)

    def is_zero(self) -> bool:
        return all(is_zero_matrix(mx) for mx in self.components)

    def scale(self, c) -> "HorizontalVector":
        c = c if isinstance(c, GaussianRational) else Qi(c)
        return HorizontalVector(
            self.ranks,
            tuple(tuple(tuple(c * x for x in row) for row in mx) for mx in self.components),
        )

    def __add__(self, other: "HorizontalVector") -> "HorizontalVector":
        if self.ranks != other.ranks:
            raise ValueError("rank mismatch")
        return HorizontalVector(
            self.ranks,
            tuple(
                tuple(tuple(a + b for a, b in zip(ra, rb)) for ra, rb in zip(ma, mb))
                for ma, mb in zip(self.components, other.components)
            ),
        )

    def flatten(self) -> list[GaussianRational]:
        return [x for mx in self.components for row in mx for x in row]

    def real_flatten(self) -> list[Fraction]:
        out = []
        for x in self.flatten():
            out.append(x.re)
            out.append(x.im)
        return out


def horizontal_zero(ranks: HodgeNumbers) -> HorizontalVector:
    r = ranks.ranks
    return HorizontalVector(
        ranks,
        tuple(
            tuple(tuple(QI_ZERO for _ in range(r[i])) for _ in range(r[i + 1]))
            for i in range(ranks.k)
        ),
    )


@lru_cache(maxsize=None)
def horizontal_positions(ranks: HodgeNumbers) -> tuple[tuple[int, int, int], ...]:
    """Coordinate positions (component, row, col) of the horizontal fiber."""
    r = ranks.ranks
    return tuple(
        (i, row, col)
        for i in range(ranks.k)
        for row in range(r[i + 1])
        for col in range(r[i])
    )


def horizontal_basis_vector(ranks: HodgeNumbers, pos: tuple[int, int, int]) -> HorizontalVector:
    i, row, col = pos
    base = horizontal_zero(ranks)
    comps = [list(map(list, mx)) for mx in base.components]
    comps[i][row][col] = Qi(1)
    return HorizontalVector(ranks, tuple(tuple(map(tuple, mx)) for mx in comps))


def model_vector(n: int, v1: Iterable, v2: Iterable) -> HorizontalVector:
    """The rank-(1,n,1) model: v1, v2 in C^n give components (column v1, row t(v2))."""
    ranks = HodgeNumbers((1, n, 1))
    v1 = [x if isinstance(x, GaussianRational) else Qi(x) for x in v1]
    v2 = [x if isinstance(x, GaussianRational) else Qi(x) for x in v2]
    if len(v1) != n or len(v2) != n:
        raise ValueError(f"model vectors must have length {n}")
    a0 = tuple((x,) for x in v1)
    a1 = (tuple(v2),)
    return HorizontalVector(ranks, (a0, a1))


@dataclass(frozen=True)
class TwoPlane:
    """An oriented real 2-plane spanned by R-independent horizontal vectors."""

    u: HorizontalVector
    w: HorizontalVector
    orientation: int = 1

    def __post_init__(self):
        if self.u.ranks != self.w.ranks:
            raise ValueError("rank mismatch between spanning vectors")
        if self.orientation not in (1, -1):
            raise ValueError("orientation must be +1 or -1")
        if rank_rational([self.u.real_flatten(), self.w.real_flatten()]) != 2:
            raise ValueError("spanning vectors are linearly dependent over R")

    @property
    def ranks(self) -> HodgeNumbers:
        return self.u.ranks


def dtheta_bracket(u: HorizontalVector, w: HorizontalVector) -> tuple:
    """The level-two component of the commutator: entry i is
    w_{i+1} u_i - u_{i+1} w_i, an r_{i+2} x r_i matrix."""
    if u.ranks != w.ranks:
        raise ValueError("rank mismatch")
    a, b = u.components, w.components
    out = []
    for i in range(u.ranks.k - 1):
        lhs = mat_mul(list(map(list, b[i + 1])), list(map(list, a[i])))
        rhs = mat_mul(list(map(list, a[i + 1])), list(map(list, b[i])))
        out.append(tuple(tuple(row) for row in mat_sub(lhs, rhs)))
    return tuple(out)


def model_symplectic_form(u: HorizontalVector, w: HorizontalVector) -> GaussianRational:
    """The rank-(1,n,1) specialization: the scalar t(v1) w2 - t(v2) w1."""
    if u.ranks.ranks != w.ranks.ranks or len(u.ranks.ranks) != 3 or u.ranks.ranks[0] != 1 or u.ranks.ranks[2] != 1:
        raise ValueError("the symplectic scalar lives in the (1, n, 1) model")
    n = u.ranks.ranks[1]
    v1 = [u.components[0][r][0] for r in range(n)]
    v2 = list(u.components[1][0])
    w1 = [w.components[0][r][0] for r in range(n)]
    w2 = list(w.components[1][0])
    acc = QI_ZERO
    for i in range(n):
        acc = acc + v1[i] * w2[i] - v2[i] * w1[i]
    return acc


def is_isotropic(plane: TwoPlane) -> bool:
    """Whether the bracket 2-form vanishes on the plane (bilinearity and
    antisymmetry make the single spanning pair sufficient)."""
    return all(is_zero_matrix(list(map(list, mx))) for mx in dtheta_bracket(plane.u, plane.w))


def complex_independent(u: HorizontalVector, w: HorizontalVector) -> bool:
    return rank([u.flatten(), w.flatten()]) == 2


def is_complex_line(plane: TwoPlane) -> bool:
    return not complex_independent(plane.u, plane.w)


def _bracket_with_basis(ranks: HodgeNumbers, s_components, i: int, row: int, col: int):
    """Flattened level-two image of the bracket of the basis vector at
    (component i, entry (row, col)) against a fixed horizontal vector s.

    Only components i-1 and i of the image are nonzero: component i is the
    matrix s_{i+1} E_{row,col} (a column slice of s_{i+1}) and component i-1
    is -E_{row,col} s_{i-1} (a row slice of s_{i-1})."""
    r = ranks.ranks
    k = ranks.k
    offsets = []
    total = 0
    for j in range(k - 1):
        offsets.append(total)
        total += r[j] * r[j + 2]
    out = [QI_ZERO] * total
    if i <= k - 2:
        sp = s_components[i + 1]  # r_{i+2} x r_{i+1}
        base = offsets[i]
        for x in range(r[i + 2]):
            idx = base + x * r[i] + col
            out[idx] = out[idx] + sp[x][row]
    if i >= 1:
        sm = s_components[i - 1]  # r_i x r_{i-1}
        base = offsets[i - 1]
        for y in range(r[i - 1]):
            idx = base + row * r[i - 1] + y
            out[idx] = out[idx] - sm[col][y]
    return out


def is_regular(plane: TwoPlane) -> bool:
    """Exact real surjectivity test for v -> (s -> bracket(v, s)) restricted
    to the plane.

    The target is the space of real-linear maps S -> (level-two piece); its
    real dimension is 4 * sum_i r_i r_{i+2}.  The matrix is assembled over the
    complex basis of the horizontal fiber together with its i-multiples (the
    bracket being complex-linear in v) and the rank is computed exactly over Q.
    """
    ranks = plane.ranks
    r = ranks.ranks
    t = sum(r[i] * r[i + 2] for i in range(ranks.k - 1))
    if t == 0:
        return True
    target_dim = 4 * t
    ucomp, wcomp = plane.u.components, plane.w.components
    rows: list[list[Fraction]] = [[] for _ in range(target_dim)]
    for i, rr, cc in horizontal_positions(ranks):
        flat = _bracket_with_basis(ranks, ucomp, i, rr, cc)
        flat += _bracket_with_basis(ranks, wcomp, i, rr, cc)
        # column for e, then for i*e
        for k, z in enumerate(flat):
            rows[2 * k].append(z.re)
            rows[2 * k].append(-z.im)
            rows[2 * k + 1].append(z.im)
            rows[2 * k + 1].append(z.re)
    return rank_rational(rows) == target_dim


def gl2_transform(plane: TwoPlane, a: Fraction, b: Fraction, c: Fraction, d: Fraction) -> TwoPlane:
    """Change the oriented spanning pair by a GL(2,R) matrix [[a, b], [c, d]]."""
    det = a * d - b * c
    if det == 0:
        raise ValueError("transformation is singular")
    u2 = plane.u.scale(Qi(a)) + plane.w.scale(Qi(c))
    w2 = plane.u.scale(Qi(b)) + plane.w.scale(Qi(d))
    orientation = plane.orientation if det > 0 else -plane.orientation
    return TwoPlane(u2, w2, orientation)


# ---------------------------------------------------------------------------
# Seeded verification suite for the rank-(1,n,1) criterion.
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Pu2nReport:
    n: int
    samples: int
    mismatches: int  # regular vs complex-independence disagreements
    found_regular_isotropic: bool
    regular_count: int
    isotropic_count: int
    isotropic_noncomplex_count: int  # isotropic planes that are not complex lines


def _sample_model_plane(n: int, rng: random.Random, half_zero: bool = False) -> TwoPlane:
    """A random exact-rational plane; with half_zero the second components are
    zero, a stratum on which the symplectic scalar vanishes identically."""
    while True:
        den = Fraction(1, rng.choice((1, 1, 2, 3)))
        vecs = []
        for _ in range(2):
            v1 = [Qi(rng.randint(-3, 3) * den, rng.randint(-3, 3) * den) for _ in range(n)]
            if half_zero:
                v2 = [QI_ZERO] * n
            else:
                v2 = [Qi(rng.randint(-3, 3) * den, rng.randint(-3, 3) * den) for _ in range(n)]
            vecs.append(model_vector(n, v1, v2))
        try:
            return TwoPlane(vecs[0], vecs[1])
        except ValueError:
            continue  # dependent pair, resample


def verify_pu2n_criterion(
    n: int,
    samples: int,
    seed: int,
    record: Optional[Callable[[dict], None]] = None,
) -> Pu2nReport:
    """Seeded check of the regularity criterion in the rank-(1,n,1) model.

    Asserts is_regular == complex-linear independence sample by sample and
    counts regular isotropic planes.  Every eighth sample is drawn from the
    second-half-zero stratum, on which the symplectic scalar vanishes, so
    isotropic planes appear at a stable rate.  For n = 1 the report
    additionally counts isotropic samples that fail to be complex lines
    (there must be none).
    """
    if n < 1:
        raise ValueError("n must be at least 1")
    mismatches = 0
    regular_count = 0
    isotropic_count = 0
    noncomplex_iso = 0
    found_reg_iso = False
    for idx in range(samples):
        rng = random.Random(seed * 1_000_003 + idx)
        plane = _sample_model_plane(n, rng, half_zero=(idx % 8 == 7))
        reg = is_regular(plane)
        iso = is_isotropic(plane)
        line = is_complex_line(plane)
        if reg != (not line):
            mismatches += 1
        if reg:
            regular_count += 1
        if iso:
            isotropic_count += 1
            if not line:
                noncomplex_iso += 1
        if reg and iso:
            found_reg_iso = True
        if record is not None:
            record(
                {
                    "seed": seed * 1_000_003 + idx,
                    "isotropic": iso,
                    "regular": reg,
                    "complex_line": line,
                }
            )
    return Pu2nReport(
        n=n,
        samples=samples,
        mismatches=mismatches,
        found_regular_isotropic=found_reg_iso,
        regular_count=regular_count,
        isotropic_count=isotropic_count,
        isotropic_noncomplex_count=noncomplex_iso,
    )


# ---------------------------------------------------------------------------
# Stabilizers of isotropic tuples under the complex symplectic group.
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class StabilizerDimensions:
    n: int
    k: int
    stab_dim: int
    orbit_dim: int


def stabilizer_dimension(n: int, k: int) -> StabilizerDimensions:
    """Complex dimensions of the stabilizer of a k-tuple spanning an isotropic
    k-plane in C^(2n), and of its orbit, inside Sp(n, C).

    The stabilizer is topologically Sp(n-k, C) x C^(2k(n-k)) x C^(k(k+1)/2).
    """
    if k < 1 or k > n:
        raise ValueError(f"need 1 <= k <= n, got k={k}, n={n}")
    stab = (n - k) * (2 * (n - k) + 1) + 2 * k * (n - k) + k * (k + 1) // 2
    orbit = n * (2 * n + 1) - stab
    return StabilizerDimensions(n=n, k=k, stab_dim=stab, orbit_dim=orbit)


def isotropic_tuple_orbit_dimension(n: int, k: int) -> int:
    """Independent count: choose the tuple vector by vector; the j-th vector
    (0-based) is constrained by j isotropy conditions in C^(2n)."""
    if k < 1 or k > n:
        raise ValueError(f"need 1 <= k <= n, got k={k}, n={n}")
    total = 0
    for j in range(k):
        total += 2 * n - j
    return total


# ---------------------------------------------------------------------------
# The embedded rank-(1,2,1) subdomain attached to a wide middle block.
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Su22Checks:
    bracket_closed: bool
    sub_hodge_type: bool
    level_minus1_included: bool
    class_matches: bool

    def all_pass(self) -> bool:
        return (
            self.bracket_closed
            and self.sub_hodge_type
            and self.level_minus1_included
            and self.class_matches
        )


@dataclass(frozen=True)
class Su22Embedding:
    ranks: HodgeNumbers
    wall_index: int  # the i of the bridged walls i, i+1
    w_indices: tuple  # 1-based ambient coordinates spanning the 4-dim subspace
    sub_ranks: tuple
    checks: Su22Checks


def su22_embedding(ranks: HodgeNumbers | Iterable[int], i: int) -> Su22Embedding:
    """The 4-coordinate subspace (last of block i, first and last of block
    i+1, first of block i+2) carrying an embedded rank-(1,2,1) structure.

    Verifies by exact bracket computations that the traceless algebra
    supported there closes under bracket, that the induced sub-blocks have
    type (1,2,1), that its first-level raising maps land in the ambient
    first level, and that its top nilradical root has the bridging sphere
    class.  Requires r_{i+1} >= 2; the rank-one case is the open one and is
    reported as not applicable.
    """
    if not isinstance(ranks, HodgeNumbers):
        ranks = HodgeNumbers(tuple(ranks))
    if not 0 <= i <= ranks.k - 2:
        raise ValueError(f"wall index {i} out of range 0..{ranks.k - 2}")
    if ranks.ranks[i + 1] < 2:
        raise NotApplicableError(
            f"middle block rank r_{i + 1} = {ranks.ranks[i + 1]} < 2: no embedded "
            "rank-(1,2,1) structure on distinct coordinates (open case)"
        )
    pd = parabolic_from_ranks(ranks)
    walls = ranks.walls
    # 0-based ambient coordinates: last of block i, first/last of block i+1,
    # first of block i+2.
    c = (walls[i] - 1, walls[i], walls[i + 1] - 1, walls[i + 1])
    block_of = ranks.block_of

    sub_blocks = tuple(block_of[x] for x in c)
    sub_hodge = sub_blocks == (block_of[c[0]],) + (block_of[c[0]] + 1,) * 2 + (block_of[c[0]] + 2,)
    sub_ranks = (1, 2, 1)

    # Bracket closure of the traceless algebra supported on the 4 coordinates.
    wset = set(c)
    basis = []
    for a in c:
        for b in c:
            if a != b:
                basis.append({(a, b): 1})
    for j in range(3):
        basis.append({(c[j], c[j]): 1, (c[j + 1], c[j + 1]): -1})
    closed = True
    for x in basis:
        for y in basis:
            br = sparse_bracket(x, y)
            tr = sum(v for (rr, cc), v in br.items() if rr == cc)
            if tr != 0 or any(rr not in wset or cc not in wset for (rr, cc) in br):
                closed = False

    # The sub level-(-1) raising maps must sit in the ambient level -1.
    raising = [(c[0], c[1]), (c[0], c[2]), (c[1], c[3]), (c[2], c[3])]
    level_ok = all(
        entry_level(block_of, target, source) == -1 for source, target in raising
    )

    top_root = bridge_root(pd, i, i + 1)
    expected = Pi2Class(
        tuple(1 if w in (i, i + 1) else 0 for w in range(ranks.k))
    )
    class_ok = class_of_root(top_root, pd) == expected

    return Su22Embedding(
        ranks=ranks,
        wall_index=i,
        w_indices=tuple(x + 1 for x in c),
        sub_ranks=sub_ranks,
        checks=Su22Checks(
            bracket_closed=closed,
            sub_hodge_type=sub_hodge,
            level_minus1_included=level_ok,
            class_matches=class_ok,
        ),
    )
