"""Flags of C^(p+q), the indefinite Hermitian form, and exact membership and
projection tests for the open period-domain orbit.

Signature coordinates are used throughout: h = diag(+1 x p, -1 x q).  The base
flag places block i on the next unused plus coordinates when i is even and on
the next unused minus coordinates when i is odd, so it lies in the domain by
construction.

Membership: a flag F^0 c F^1 c ... c F^k is in the domain iff for every
-1 <= i <= k-1 the form (-1)^i h is negative definite on the h-orthogonal
complement of F^i inside F^{i+1} (with F^{-1} = 0, so the i = -1 condition is
h > 0 on F^0).  Definiteness is decided exactly by leading principal minors of
Hermitian Gram matrices; a vanishing Gram determinant is reported as a
degeneracy in its own right, distinct from a plain sign rejection.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional

from .exactla import (
    GaussianRational,
    Qi,
    QI_ZERO,
    QI_ONE,
    hermitian_definiteness,
    mat_mul,
    nullspace,
    rank,
    solve,
)
from .hodge import HodgeNumbers

Vector = tuple  # tuple of GaussianRational, length m


class DegenerateComplementError(ValueError):
    """The Hermitian form restricts degenerately to a flag step."""


@dataclass(frozen=True)
class Flag:
    """A flag given by an adapted basis: F^i is the span of the first
    r_0 + ... + r_i basis columns."""

    ranks: HodgeNumbers
    basis: tuple  # m column vectors, each a tuple of GaussianRational

    def __post_init__(self):
        m = self.ranks.m
        cols = tuple(
            tuple(x if isinstance(x, GaussianRational) else Qi(x) for x in col)
            for col in self.basis
        )
        if len(cols) != m or any(len(c) != m for c in cols):
            raise ValueError(f"flag basis must consist of {m} vectors of length {m}")
        object.__setattr__(self, "basis", cols)
        if rank(list(map(list, cols))) != m:
            raise ValueError("flag basis is not linearly independent")

    @property
    def m(self) -> int:
        return self.ranks.m

    def subspace_basis(self, i: int) -> list[Vector]:
        """Basis of F^i (i = -1 gives the zero subspace)."""
        if i < -1 or i > self.ranks.k:
            raise ValueError(f"flag step {i} out of range")
        upto = 0 if i < 0 else sum(self.ranks.ranks[: i + 1])
        return list(self.basis[:upto])


def hodge_flag(ranks: HodgeNumbers) -> Flag:
    """The base flag: standard basis vectors grouped block by block, even
    blocks on plus coordinates and odd blocks on minus coordinates."""
    m = ranks.m
    perm = ranks.block_to_signature()
    cols = []
    for c in range(m):
        col = [QI_ZERO] * m
        col[perm[c]] = QI_ONE
        cols.append(tuple(col))
    return Flag(ranks, tuple(cols))


def hermitian_product(x: Vector, y: Vector, signs: Optional[tuple[int, ...]]) -> GaussianRational:
    """The form sum_c s_c x_c conj(y_c); signs=None means the definite form."""
    acc = QI_ZERO
    if signs is None:
        for a, b in zip(x, y):
            acc = acc + a * b.conjugate()
    else:
        for s, a, b in zip(signs, x, y):
            term = a * b.conjugate()
            acc = acc + (term if s > 0 else -term)
    return acc


def gram_matrix(vectors: Iterable[Vector], signs: Optional[tuple[int, ...]]) -> list[list[GaussianRational]]:
    vs = list(vectors)
    return [[hermitian_product(a, b, signs) for b in vs] for a in vs]


def orthocomplement_step(
    flag: Flag, i: int, signs: Optional[tuple[int, ...]]
) -> list[Vector]:
    """Basis of the orthogonal complement of F^i inside F^{i+1} for the given
    form.  Raises DegenerateComplementError when the form restricts
    degenerately (complement not transverse)."""
    small = flag.subspace_basis(i)
    big = flag.subspace_basis(i + 1)
    if not small:
        return list(big)
    a = [[hermitian_product(g, f, signs) for g in big] for f in small]
    null = nullspace(a)
    expected = len(big) - len(small)
    if len(null) != expected:
        raise DegenerateComplementError(
            f"form degenerates on flag step {i}: complement has dimension "
            f"{len(null)}, expected {expected}"
        )
    out = []
    for coeffs in null:
        vec = [QI_ZERO] * flag.m
        for c, g in zip(coeffs, big):
            if not c.is_zero():
                vec = [acc + c * comp for acc, comp in zip(vec, g)]
        out.append(tuple(vec))
    # Transversality: the complement must meet F^i only in 0 (fails exactly
    # when the form restricts degenerately to F^i).
    if rank([list(v) for v in small] + [list(v) for v in out]) != len(big):
        raise DegenerateComplementError(
            f"form degenerates on flag step {i}: complement meets the subspace"
        )
    return out


@dataclass(frozen=True)
class MembershipResult:
    in_domain: bool
    degenerate: bool
    failing_step: Optional[int]  # the i of the first failing F^i complement

    def __bool__(self):
        return self.in_domain


def flag_in_period_domain(flag: Flag) -> MembershipResult:
    """Exact membership test for the open orbit.

    For each -1 <= i <= k-1 the complement of F^i in F^{i+1} with respect to
    h must carry (-1)^i h negative definite.  Degenerate restrictions are
    flagged separately from sign failures.
    """
    signs = flag.ranks.signature_signs()
    for i in range(-1, flag.ranks.k):
        try:
            comp = orthocomplement_step(flag, i, signs)
        except DegenerateComplementError:
            return MembershipResult(False, True, i)
        g = gram_matrix(comp, signs)
        if i % 2 == 1:  # odd i, including i = -1: sign (-1)^i = -1
            g = [[-x for x in row] for row in g]
        verdict = hermitian_definiteness(g)
        if verdict == "degenerate":
            return MembershipResult(False, True, i)
        if verdict != "negative":
            return MembershipResult(False, False, i)
    return MembershipResult(True, False, None)


def project_to_symmetric_space(flag: Flag, mode: str) -> tuple[Vector, ...]:
    """The p-plane built from the odd-step complements of the flag.

    mode='indefinite' uses h (fibration over the noncompact symmetric space);
    mode='definite' uses the standard form (fibration of the compact dual).
    The i = -1 step contributes F^0 itself.
    """
    if mode not in ("definite", "indefinite"):
        raise ValueError(f"mode must be 'definite' or 'indefinite', got {mode!r}")
    signs = flag.ranks.signature_signs() if mode == "indefinite" else None
    plane: list[Vector] = []
    for i in range(-1, flag.ranks.k):
        if i % 2 == 1:
            comp = orthocomplement_step(flag, i, signs)
            if signs is not None and i >= 0:
                if hermitian_definiteness(gram_matrix(comp, signs)) == "degenerate":
                    raise DegenerateComplementError(
                        f"indefinite form degenerates on the step-{i} complement"
                    )
            plane.extend(comp)
    if len(plane) != flag.ranks.p:
        raise AssertionError("projection produced a plane of the wrong dimension")
    return tuple(plane)


def same_span(a: Iterable[Vector], b: Iterable[Vector]) -> bool:
    """Exact equality of column spans."""
    la, lb = list(map(list, a)), list(map(list, b))
    ra = rank(la)
    rb = rank(lb)
    return ra == rb == rank(la + lb)


# ---------------------------------------------------------------------------
# Domain descriptor.
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class DomainDescriptor:
    ranks: HodgeNumbers
    dim: int  # complex dimension of the flag manifold and of the open orbit
    horizontal_rank: int  # complex rank of the first-level tangent subbundle
    vertical_rank: int  # fiber directions of the symmetric-space fibration
    fiber_factors: tuple  # rank tuples of the two flag-manifold factors of the fiber
    interior_rank_one: bool  # some interior block has rank 1


def describe_domain(ranks: HodgeNumbers) -> DomainDescriptor:
    r = ranks.ranks
    n = len(r)
    dim = sum(r[i] * r[j] for i in range(n) for j in range(i + 1, n))
    horizontal = sum(r[i] * r[i + 1] for i in range(n - 1))
    vertical = sum(
        r[i] * r[j] for i in range(n) for j in range(i + 1, n) if (j - i) % 2 == 0
    )
    evens = tuple(r[i] for i in range(0, n, 2))
    odds = tuple(r[i] for i in range(1, n, 2))
    return DomainDescriptor(
        ranks=ranks,
        dim=dim,
        horizontal_rank=horizontal,
        vertical_rank=vertical,
        fiber_factors=(evens, odds),
        interior_rank_one=ranks.has_interior_rank_one,
    )


# ---------------------------------------------------------------------------
# Seeded constructions: rational flags near the base point and block-diagonal
# rational h-unitaries (Cayley transforms of skew-Hermitian matrices).
# ---------------------------------------------------------------------------


def perturbed_flag(ranks: HodgeNumbers, rng, scale: Fraction = Fraction(1, 16), tries: int = 8) -> Flag:
    """A rational flag near the base flag, guaranteed inside the domain.

    Adds sparse rational perturbations to the base columns and retries with a
    smaller scale until the exact membership test passes.
    """
    base = hodge_flag(ranks)
    m = ranks.m
    for _ in range(tries):
        cols = []
        for col in base.basis:
            new = list(col)
            for _ in range(2):
                c = rng.randrange(m)
                dre = rng.randint(-2, 2)
                dim_ = rng.randint(-2, 2)
                new[c] = new[c] + Qi(dre * scale, dim_ * scale)
            cols.append(tuple(new))
        try:
            flag = Flag(ranks, tuple(cols))
        except ValueError:
            scale = scale / 4
            continue
        if flag_in_period_domain(flag).in_domain:
            return flag
        scale = scale / 4
    raise RuntimeError("could not build an in-domain perturbed flag")


def random_block_unitary(ranks: HodgeNumbers, rng) -> list[list[GaussianRational]]:
    """A rational h-unitary acting block-diagonally in signature coordinates.

    Each block carries a Cayley transform (I - A)(I + A)^{-1} of a random
    skew-Hermitian rational A, hence is exactly unitary for the definite form;
    since h is a constant sign on each block, the assembled matrix is
    h-unitary.
    """
    m = ranks.m
    u = [[QI_ONE if i == j else QI_ZERO for j in range(m)] for i in range(m)]
    perm = ranks.block_to_signature()
    for b in range(ranks.k + 1):
        coords = [perm[c] for c in ranks.block_range(b)]
        s = len(coords)
        bmat = [
            [Qi(Fraction(rng.randint(-2, 2), 4), Fraction(rng.randint(-2, 2), 4)) for _ in range(s)]
            for _ in range(s)
        ]
        a = [[bmat[i][j] - bmat[j][i].conjugate() for j in range(s)] for i in range(s)]
        ident = [[QI_ONE if i == j else QI_ZERO for j in range(s)] for i in range(s)]
        i_plus = [[ident[i][j] + a[i][j] for j in range(s)] for i in range(s)]
        i_minus = [[ident[i][j] - a[i][j] for j in range(s)] for i in range(s)]
        cayley = mat_mul(i_minus, solve(i_plus, ident))
        for bi, gi in enumerate(coords):
            for bj, gj in enumerate(coords):
                u[gi][gj] = cayley[bi][bj]
    return u


def apply_matrix(u: list[list[GaussianRational]], flag: Flag) -> Flag:
    cols = []
    for col in flag.basis:
        new = [QI_ZERO] * flag.m
        for i in range(flag.m):
            acc = QI_ZERO
            for j in range(flag.m):
                acc = acc + u[i][j] * col[j]
            new[i] = acc
        cols.append(tuple(new))
    return Flag(flag.ranks, tuple(cols))


# ---------------------------------------------------------------------------
# JSON wire format: exact rationals as (numerator, denominator) integer pairs.
# ---------------------------------------------------------------------------


def _scalar_to_json(x: GaussianRational) -> list:
    return [[x.re.numerator, x.re.denominator], [x.im.numerator, x.im.denominator]]


def _scalar_from_json(obj) -> GaussianRational:
    (rn, rd), (im_n, im_d) = obj
    return Qi(Fraction(rn, rd), Fraction(im_n, im_d))


def flag_to_json(flag: Flag) -> dict:
    return {
        "schema": "hodge-domains/1",
        "ranks": list(flag.ranks.ranks),
        "basis": [[_scalar_to_json(x) for x in col] for col in flag.basis],
    }


def flag_from_json(doc: dict) -> Flag:
    ranks = HodgeNumbers(tuple(doc["ranks"]))
    basis = tuple(tuple(_scalar_from_json(x) for x in col) for col in doc["basis"])
    return Flag(ranks, basis)


def flag_dumps(flag: Flag) -> str:
    return json.dumps(flag_to_json(flag), sort_keys=True)


def flag_loads(text: str) -> Flag:
    return flag_from_json(json.loads(text))
