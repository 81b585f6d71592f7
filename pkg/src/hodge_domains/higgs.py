"""Pointwise Higgs-field algebra: transversality shape, the commutation
relation, generic ranks, the rank-one vanishing lemma, and the splitting
detector.

A field is a single fiber's worth of data: for each layer i and tangent
direction a, a matrix theta_i^(a) from block i to block i+1.  The commutation
relation says theta_{i+1}^(a) theta_i^(b) is symmetric in (a, b).  Everything
is exact by default; an optional floating rank with tolerance 1e-9 is provided
for large random suites.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional

from .exactla import (
    GaussianRational,
    Qi,
    QI_ZERO,
    is_zero_matrix,
    mat_mul,
    mat_sub,
    nullspace,
    rank,
)
from .hodge import HodgeNumbers

Matrix = tuple  # tuple of row tuples of GaussianRational


class PreconditionError(ValueError):
    """A lemma was invoked outside its hypotheses (reported distinctly)."""


class SamplingExhaustedError(RuntimeError):
    """Rejection sampling failed to hit the requested rank profile."""


def _coerce_matrix(rows, nr, nc) -> Matrix:
    out = tuple(
        tuple(x if isinstance(x, GaussianRational) else Qi(x) for x in row) for row in rows
    )
    if len(out) != nr or any(len(r) != nc for r in out):
        raise ValueError(f"expected a {nr}x{nc} matrix")
    return out


@dataclass(frozen=True)
class HiggsField:
    """theta[i][a] is the matrix of theta_i in direction a+1, shape r_{i+1} x r_i."""

    ranks: HodgeNumbers
    tangent_dim: int
    theta: tuple  # theta[i][a] = Matrix

    def __post_init__(self):
        r = self.ranks.ranks
        if self.tangent_dim < 1:
            raise ValueError("tangent dimension must be at least 1")
        if len(self.theta) != self.ranks.k:
            raise ValueError(f"expected {self.ranks.k} layers of component matrices")
        layers = []
        for i, layer in enumerate(self.theta):
            if len(layer) != self.tangent_dim:
                raise ValueError(f"layer {i}: expected {self.tangent_dim} directions")
            layers.append(
                tuple(_coerce_matrix(mx, r[i + 1], r[i]) for mx in layer)
            )
        object.__setattr__(self, "theta", tuple(layers))

    def component(self, i: int, a: int) -> Matrix:
        """theta_i in direction a (a is 1-based)."""
        return self.theta[i][a - 1]

    def layer_is_zero(self, i: int) -> bool:
        return all(is_zero_matrix(self.theta[i][a]) for a in range(self.tangent_dim))


def zero_layer(ranks: HodgeNumbers, i: int, m_t: int) -> tuple:
    nr, nc = ranks.ranks[i + 1], ranks.ranks[i]
    return tuple(tuple(tuple(QI_ZERO for _ in range(nc)) for _ in range(nr)) for _ in range(m_t))


@dataclass(frozen=True)
class CommutationResult:
    commutes: bool
    first_violation: Optional[tuple]  # (layer i, direction a, direction b)

    def __bool__(self):
        return self.commutes


def check_commutation(h: HiggsField) -> CommutationResult:
    """Whether theta_{i+1}^(a) theta_i^(b) = theta_{i+1}^(b) theta_i^(a) for all
    layers and direction pairs a < b."""
    for i in range(h.ranks.k - 1):
        for a in range(1, h.tangent_dim + 1):
            for b in range(a + 1, h.tangent_dim + 1):
                lhs = mat_mul(list(map(list, h.component(i + 1, a))), list(map(list, h.component(i, b))))
                rhs = mat_mul(list(map(list, h.component(i + 1, b))), list(map(list, h.component(i, a))))
                if not is_zero_matrix(mat_sub(lhs, rhs)):
                    return CommutationResult(False, (i, a, b))
    return CommutationResult(True, None)


def stacked_matrix(h: HiggsField, i: int) -> list[list[GaussianRational]]:
    """theta_i as one linear map: the directions stacked vertically,
    shape (tangent_dim * r_{i+1}) x r_i."""
    out: list[list[GaussianRational]] = []
    for a in range(1, h.tangent_dim + 1):
        out.extend(list(map(list, h.component(i, a))))
    return out


def pointwise_rank(h: HiggsField, i: int, floating: bool = False, tol: float = 1e-9) -> int:
    """Rank of theta_i as a map into (block i+1) tensor (tangent dual)."""
    if not 0 <= i <= h.ranks.k - 1:
        raise IndexError(f"layer index {i} out of range 0..{h.ranks.k - 1}")
    stacked = stacked_matrix(h, i)
    if floating:
        return _floating_rank(stacked, tol)
    return rank(stacked)


def directional_image_rank(h: HiggsField, i: int) -> int:
    """For a rank-one block i: the dimension of the span of the direction
    columns theta_i^(a) inside block i+1."""
    if h.ranks.ranks[i] != 1:
        raise PreconditionError(f"block {i} must have rank 1")
    cols = [[h.component(i, a)[r][0] for a in range(1, h.tangent_dim + 1)] for r in range(h.ranks.ranks[i + 1])]
    return rank(cols)


def _floating_rank(rows, tol: float) -> int:
    import numpy as np

    if not rows or not rows[0]:
        return 0
    arr = np.array(
        [[complex(Fraction(x.re), Fraction(x.im)) for x in row] for row in rows],
        dtype=complex,
    )
    sv = np.linalg.svd(arr, compute_uv=False)
    return int((sv > tol).sum())


@dataclass(frozen=True)
class LemmaVerdict:
    verdict: str  # 'holds' or 'violated'
    triggered: bool  # whether the rank hypothesis was met
    witness: Optional[tuple]  # (direction a, offending matrix) when violated

    @property
    def holds(self) -> bool:
        return self.verdict == "holds"


def rank_one_lemma_check(h: HiggsField, i: int) -> LemmaVerdict:
    """Verify, for an interior rank-one block i of a commuting field, that
    rank(theta_{i-1}) >= 2 forces theta_i = 0.

    A 'violated' verdict cannot occur for genuinely commuting data; it would
    signal an implementation bug, and the suites treat it as a failure.
    """
    if not 0 < i < h.ranks.k:
        raise PreconditionError(f"index {i} is not interior (need 0 < i < {h.ranks.k})")
    if h.ranks.ranks[i] != 1:
        raise PreconditionError(f"block {i} has rank {h.ranks.ranks[i]}, lemma needs rank 1")
    comm = check_commutation(h)
    if not comm.commutes:
        raise PreconditionError(f"field does not commute (violation at {comm.first_violation})")
    if pointwise_rank(h, i - 1) < 2:
        return LemmaVerdict("holds", triggered=False, witness=None)
    for a in range(1, h.tangent_dim + 1):
        mx = h.component(i, a)
        if not is_zero_matrix(mx):
            return LemmaVerdict("violated", triggered=True, witness=(a, mx))
    return LemmaVerdict("holds", triggered=True, witness=None)


def splitting_detector(h: HiggsField) -> Optional[int]:
    """Least layer i with theta_i identically zero, if any.

    When found, checks explicitly that blocks 0..i and blocks i+1..k are each
    invariant under every direction of the field.
    """
    for i in range(h.ranks.k):
        if h.layer_is_zero(i):
            _verify_split_invariance(h, i)
            return i
    return None


def _verify_split_invariance(h: HiggsField, i: int) -> None:
    m = h.ranks.m
    r = h.ranks.ranks
    starts = [sum(r[:j]) for j in range(len(r) + 1)]
    cut = starts[i + 1]  # first coordinate of the upper half, block order
    for a in range(1, h.tangent_dim + 1):
        endo = [[QI_ZERO] * m for _ in range(m)]
        for j in range(h.ranks.k):
            mx = h.component(j, a)
            for rr in range(r[j + 1]):
                for cc in range(r[j]):
                    endo[starts[j + 1] + rr][starts[j] + cc] = mx[rr][cc]
        lower_leak = any(
            not endo[row][col].is_zero() for row in range(cut, m) for col in range(cut)
        )
        upper_leak = any(
            not endo[row][col].is_zero() for row in range(cut) for col in range(cut, m)
        )
        if lower_leak or upper_leak:
            raise AssertionError("split halves are not invariant under the field")


# ---------------------------------------------------------------------------
# Seeded samplers for commuting fields.
# ---------------------------------------------------------------------------


def _random_matrix(rng: random.Random, nr: int, nc: int, lo: int = -2, hi: int = 2) -> Matrix:
    return tuple(tuple(Qi(rng.randint(lo, hi)) for _ in range(nc)) for _ in range(nr))


def random_commuting_higgs(
    ranks: HodgeNumbers | Iterable[int],
    m_t: int,
    seed: int,
    strategy: str = "pullback",
    target_ranks: Optional[dict] = None,
    max_attempts: int = 500,
) -> HiggsField:
    """A commuting field, deterministic per seed.

    'pullback': theta_i^(a) = c_a * N_i for fixed matrices N_i and scalars c_a,
    which commutes identically.  'nullspace': direction 1 is sampled freely
    (with zero layers drawn at elevated probability so rank targets stay
    reachable), then each further direction is drawn from the exact nullspace
    of the linear commutation system against all earlier directions, so the
    relation holds by construction.  Optional target_ranks {layer: rank} are
    enforced by rejection; exhaustion raises SamplingExhaustedError.
    """
    if not isinstance(ranks, HodgeNumbers):
        ranks = HodgeNumbers(tuple(ranks))
    if m_t < 1:
        raise ValueError("tangent dimension must be at least 1")
    if strategy not in ("pullback", "nullspace"):
        raise ValueError(f"unknown strategy {strategy!r}")
    rng = random.Random(seed)
    for _ in range(max_attempts):
        if strategy == "pullback":
            field = _sample_pullback(ranks, m_t, rng)
        else:
            field = _sample_nullspace(ranks, m_t, rng)
        if target_ranks and any(
            pointwise_rank(field, i) != want for i, want in target_ranks.items()
        ):
            continue
        return field
    raise SamplingExhaustedError(
        f"no commuting field with ranks {target_ranks} found in {max_attempts} attempts"
    )


def _sample_pullback(ranks: HodgeNumbers, m_t: int, rng: random.Random) -> HiggsField:
    r = ranks.ranks
    bases = [_random_matrix(rng, r[i + 1], r[i]) for i in range(ranks.k)]
    scalars = [Qi(rng.randint(-2, 2)) for _ in range(m_t)]
    theta = tuple(
        tuple(
            tuple(tuple(c * x for x in row) for row in bases[i])
            for c in scalars
        )
        for i in range(ranks.k)
    )
    return HiggsField(ranks, m_t, theta)


def _sample_nullspace(ranks: HodgeNumbers, m_t: int, rng: random.Random) -> HiggsField:
    r = ranks.ranks
    k = ranks.k
    first = []
    for i in range(k):
        if rng.random() < 1 / 3:
            first.append(tuple(tuple(QI_ZERO for _ in range(r[i])) for _ in range(r[i + 1])))
        else:
            first.append(_random_matrix(rng, r[i + 1], r[i]))
    directions = [first]
    for _ in range(2, m_t + 1):
        directions.append(_solve_direction(ranks, directions, rng))
    theta = tuple(
        tuple(directions[a][i] for a in range(m_t)) for i in range(k)
    )
    return HiggsField(ranks, m_t, theta)


def _solve_direction(ranks: HodgeNumbers, fixed: list, rng: random.Random):
    """Sample an unknown direction phi with phi_{i+1} f_i = f_{i+1} phi_i
    against every fixed direction f, from the exact nullspace of that linear
    system."""
    r = ranks.ranks
    k = ranks.k
    offsets = []
    total = 0
    for i in range(k):
        offsets.append(total)
        total += r[i + 1] * r[i]

    def var(i, row, col):
        return offsets[i] + row * r[i] + col

    rows: list[list[GaussianRational]] = []
    for f in fixed:
        for i in range(k - 1):
            for u in range(r[i + 2]):
                for v in range(r[i]):
                    row = [QI_ZERO] * total
                    # phi_{i+1}[u][w] * f_i[w][v]  -  f_{i+1}[u][w] * phi_i[w][v]
                    for w in range(r[i + 1]):
                        row[var(i + 1, u, w)] = row[var(i + 1, u, w)] + f[i][w][v]
                        row[var(i, w, v)] = row[var(i, w, v)] - f[i + 1][u][w]
                    rows.append(row)
    if rows:
        basis = nullspace(rows)
    else:
        basis = [[Qi(1) if j == i else QI_ZERO for j in range(total)] for i in range(total)]
    # an empty basis means the system forces this direction to vanish
    vec = [QI_ZERO] * total
    for b in basis:
        c = Qi(rng.randint(-2, 2))
        if not c.is_zero():
            vec = [x + c * y for x, y in zip(vec, b)]
    out = []
    for i in range(k):
        out.append(
            tuple(
                tuple(vec[var(i, row, col)] for col in range(r[i]))
                for row in range(r[i + 1])
            )
        )
    return out


# ---------------------------------------------------------------------------
# JSON wire format.
# ---------------------------------------------------------------------------


def _scalar_to_json(x: GaussianRational) -> list:
    return [[x.re.numerator, x.re.denominator], [x.im.numerator, x.im.denominator]]


def _scalar_from_json(obj) -> GaussianRational:
    (rn, rd), (im_n, im_d) = obj
    return Qi(Fraction(rn, rd), Fraction(im_n, im_d))


def higgs_to_json(h: HiggsField) -> dict:
    return {
        "schema": "hodge-domains/1",
        "ranks": list(h.ranks.ranks),
        "tangent_dim": h.tangent_dim,
        "theta": [
            [[[_scalar_to_json(x) for x in row] for row in mx] for mx in layer]
            for layer in h.theta
        ],
    }


def higgs_from_json(doc: dict) -> HiggsField:
    ranks = HodgeNumbers(tuple(doc["ranks"]))
    theta = tuple(
        tuple(
            tuple(tuple(_scalar_from_json(x) for x in row) for row in mx)
            for mx in layer
        )
        for layer in doc["theta"]
    )
    return HiggsField(ranks, int(doc["tangent_dim"]), theta)


def higgs_dumps(h: HiggsField) -> str:
    return json.dumps(higgs_to_json(h), sort_keys=True)


def higgs_loads(text: str) -> HiggsField:
    return higgs_from_json(json.loads(text))
