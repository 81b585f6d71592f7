"""Second homotopy classes of root 2-spheres in the flag manifold and the
open orbit: coordinates in the wall basis, the projection to the Grassmannian,
kernels, and the generation report for horizontal representatives.

Classes live in Z^k with basis the classes of the wall-root spheres.  Two
relations compute everything: the class of a sum of roots is the sum of the
classes, and adding a block-diagonal (level-0) root does not change the class.
The closed form reads off which of the k walls a root's block interval
crosses; an independent brute-force fixpoint closure of the two relations is
kept alongside it as an oracle.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from .exactla import (
    integer_kernel,
    lattices_equal,
    rank_int,
    smith_invariant_factors,
)
from .hodge import HodgeNumbers
from .rootcalc import (
    ParabolicData,
    RootVector,
    bridge_root,
    parabolic_from_ranks,
    root_sum,
    wall_roots,
)


class OracleInconsistentError(RuntimeError):
    """The relation closure assigned contradictory sphere classes."""


class OracleUnderdeterminedError(RuntimeError):
    """The relation closure left some sphere class unassigned."""


@dataclass(frozen=True)
class Pi2Class:
    """An integer vector in the basis of wall-root sphere classes."""

    coords: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "coords", tuple(int(c) for c in self.coords))

    @property
    def k(self) -> int:
        return len(self.coords)

    def __add__(self, other: "Pi2Class") -> "Pi2Class":
        if self.k != other.k:
            raise ValueError("class dimension mismatch")
        return Pi2Class(tuple(a + b for a, b in zip(self.coords, other.coords)))

    def __neg__(self) -> "Pi2Class":
        return Pi2Class(tuple(-c for c in self.coords))

    def __repr__(self):
        return f"Pi2Class{self.coords}"


def basis_class(k: int, i: int) -> Pi2Class:
    coords = [0] * k
    coords[i] = 1
    return Pi2Class(tuple(coords))


def class_of_root(root: RootVector, pd: ParabolicData) -> Pi2Class:
    """Closed form: coordinate w is 1 iff the root's block interval crosses wall w."""
    if root not in pd.n_roots:
        raise ValueError(f"{root!r} is not a nilradical root for ranks {pd.ranks.ranks}")
    lo = pd.block_of[root.minus_index]
    hi = pd.block_of[root.plus_index]
    k = pd.ranks.k
    return Pi2Class(tuple(1 if lo <= w < hi else 0 for w in range(k)))


def class_closure_oracle(pd: ParabolicData) -> dict:
    """Brute-force closure of the two sphere-class relations over the root poset.

    Seeds the wall roots with the standard basis classes and saturates
    class(a+b) = class(a) + class(b) (a, b, a+b nilradical roots) and
    class(b+g) = class(b) (g a level-0 root) by fixpoint iteration.  Fails
    loudly if the system is inconsistent or underdetermined.
    """
    k = pd.ranks.k
    n_roots = pd.sorted_n_roots()
    v_roots = sorted(pd.v_roots)
    known: dict[RootVector, Pi2Class] = {}
    for i, beta in enumerate(wall_roots(pd)):
        known[beta] = basis_class(k, i)

    sum_relations = []
    n_set = pd.n_roots
    for ia, a in enumerate(n_roots):
        for b in n_roots[ia:]:
            c = root_sum(a, b)
            if c is not None and c in n_set:
                sum_relations.append((a, b, c))
    shift_relations = []
    for b in n_roots:
        for g in v_roots:
            a = root_sum(b, g)
            if a is not None and a in n_set:
                shift_relations.append((b, a))

    changed = True
    while changed:
        changed = False
        for a, b, c in sum_relations:
            if a in known and b in known and c not in known:
                known[c] = known[a] + known[b]
                changed = True
        for b, a in shift_relations:
            if b in known and a not in known:
                known[a] = known[b]
                changed = True
            elif a in known and b not in known:
                known[b] = known[a]
                changed = True

    missing = [r for r in n_roots if r not in known]
    if missing:
        raise OracleUnderdeterminedError(
            f"classes of {missing} not determined by the relations"
        )
    for a, b, c in sum_relations:
        if known[c] != known[a] + known[b]:
            raise OracleInconsistentError(f"additivity fails on {a!r} + {b!r} = {c!r}")
    for b, a in shift_relations:
        if known[a] != known[b]:
            raise OracleInconsistentError(f"level-0 shift changes the class of {b!r}")
    return known


def pi_u_star(c: Pi2Class) -> int:
    """Image degree of a sphere class under the Grassmannian projection:
    the alternating coordinate sum."""
    return sum((-1) ** i * a for i, a in enumerate(c.coords))


@dataclass(frozen=True)
class Pi2Report:
    ranks: HodgeNumbers
    rank_flag_manifold: int  # k
    rank_domain: int  # k - 1
    basis: tuple  # wall roots beta_0 .. beta_{k-1}
    kernel_basis: tuple  # Pi2Class coordinates e_i + e_{i+1}
    kernel_basis_roots: tuple  # the bridge roots beta_{i,i+1}
    kernel_verified: bool


def pi2_report(ranks: HodgeNumbers | Iterable[int]) -> Pi2Report:
    """Ranks and kernel data of the projection on second homotopy.

    The integer span of the reported kernel basis is checked against the exact
    integer kernel of the alternating-sum matrix (Smith/Hermite forms).
    """
    if not isinstance(ranks, HodgeNumbers):
        ranks = HodgeNumbers(tuple(ranks))
    pd = parabolic_from_ranks(ranks)
    k = ranks.k
    betas = tuple(wall_roots(pd))
    kernel_classes = tuple(
        Pi2Class(tuple(1 if w in (i, i + 1) else 0 for w in range(k)))
        for i in range(k - 1)
    )
    bridge = tuple(bridge_root(pd, i, i + 1) for i in range(k - 1))

    proj = [[(-1) ** i for i in range(k)]]
    exact_kernel = integer_kernel(proj)
    claimed = [list(c.coords) for c in kernel_classes]
    verified = (
        all(pi_u_star(c) == 0 for c in kernel_classes)
        and rank_int(claimed) == k - 1
        and (k == 1 or smith_invariant_factors(claimed) == [1] * (k - 1))
        and lattices_equal(claimed, exact_kernel)
    )
    if not verified:
        raise AssertionError("kernel basis does not span the exact integer kernel")

    return Pi2Report(
        ranks=ranks,
        rank_flag_manifold=k,
        rank_domain=k - 1,
        basis=betas,
        kernel_basis=kernel_classes,
        kernel_basis_roots=bridge,
        kernel_verified=verified,
    )


@dataclass(frozen=True)
class GeneratorStatus:
    index: int  # i, for the kernel generator bridging walls i and i+1
    middle_rank: int  # r_{i+1}
    status: str  # 'representable' when r_{i+1} >= 2, else 'unknown'


@dataclass(frozen=True)
class GenerationReport:
    ranks: HodgeNumbers
    per_generator: tuple
    fully_generated: bool
    interior_rank_one: bool


def superhorizontal_generation_report(ranks: HodgeNumbers | Iterable[int]) -> GenerationReport:
    """Which kernel generators admit horizontal sphere representatives.

    Generator i (i = 0..k-2) is representable when the middle block has rank
    r_{i+1} >= 2.  When r_{i+1} = 1 the question is open, so the status is
    'unknown' rather than 'false'.  Full generation is equivalent to no
    interior block having rank 1.
    """
    if not isinstance(ranks, HodgeNumbers):
        ranks = HodgeNumbers(tuple(ranks))
    gens = []
    for i in range(ranks.k - 1):
        middle = ranks.ranks[i + 1]
        status = "representable" if middle >= 2 else "unknown"
        gens.append(GeneratorStatus(index=i, middle_rank=middle, status=status))
    fully = all(g.status == "representable" for g in gens)
    interior_one = ranks.has_interior_rank_one
    if fully == interior_one:
        raise AssertionError("generation report disagrees with the interior-rank-one flag")
    return GenerationReport(
        ranks=ranks,
        per_generator=tuple(gens),
        fully_generated=fully,
        interior_rank_one=interior_one,
    )
