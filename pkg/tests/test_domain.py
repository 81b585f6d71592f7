import random
from fractions import Fraction

import pytest

from conftest import all_rank_tuples
from hodge_domains.exactla import Qi, hermitian_definiteness, mat_mul, conj_transpose
from hodge_domains.hodge import HodgeNumbers
from hodge_domains.domain import (
    DegenerateComplementError,
    Flag,
    apply_matrix,
    describe_domain,
    flag_dumps,
    flag_in_period_domain,
    flag_loads,
    gram_matrix,
    hodge_flag,
    perturbed_flag,
    project_to_symmetric_space,
    random_block_unitary,
    same_span,
)
from hodge_domains.rootcalc import grading, parabolic_from_ranks


# -- descriptors ------------------------------------------------------------


@pytest.mark.parametrize("n", range(1, 9))
def test_describe_domain_1n1(n):
    d = describe_domain(HodgeNumbers((1, n, 1)))
    assert d.dim == 2 * n + 1
    assert d.horizontal_rank == 2 * n
    assert d.vertical_rank == 1


def test_describe_domain_11():
    d = describe_domain(HodgeNumbers((1, 1)))
    assert (d.dim, d.horizontal_rank, d.vertical_rank) == (1, 1, 0)
    assert not d.interior_rank_one  # no interior index at all


def test_describe_domain_232():
    d = describe_domain(HodgeNumbers((2, 3, 2)))
    assert (d.dim, d.horizontal_rank, d.vertical_rank) == (16, 12, 4)
    assert not d.interior_rank_one
    assert d.fiber_factors == ((2, 2), (3,))


def test_describe_domain_consistency_exhaustive_m_le_8():
    for hn in all_rank_tuples(8):
        d = describe_domain(hn)
        assert d.horizontal_rank + d.vertical_rank <= d.dim
        assert (d.horizontal_rank + d.vertical_rank == d.dim) == (hn.k <= 2)


def test_dim_matches_grading_tail():
    for ranks in [(1, 1), (1, 1, 1), (1, 2, 1), (2, 1, 2), (1, 1, 1, 1), (2, 2, 1, 1)]:
        hn = HodgeNumbers(ranks)
        d = describe_domain(hn)
        g = grading(parabolic_from_ranks(hn))
        deep = sum(v for lv, v in g.dim_g.items() if lv <= -2)
        assert d.dim == d.horizontal_rank + deep


def test_invalid_ranks_rejected():
    with pytest.raises(ValueError):
        HodgeNumbers((1,))
    with pytest.raises(ValueError):
        HodgeNumbers((2, 0))


# -- base flags and membership ----------------------------------------------


def test_hodge_flag_11():
    f = hodge_flag(HodgeNumbers((1, 1)))
    assert f.subspace_basis(0) == [(Qi(1), Qi(0))]


def test_hodge_flag_121_signature_layout():
    f = hodge_flag(HodgeNumbers((1, 2, 1)))
    nonzero = [[i for i, x in enumerate(col) if not x.is_zero()] for col in f.basis]
    assert nonzero == [[0], [2], [3], [1]]  # blocks on +,-,-,+ coordinates


def test_base_flag_membership_m_le_8():
    for hn in all_rank_tuples(8):
        assert flag_in_period_domain(hodge_flag(hn)).in_domain


def test_membership_11_cases():
    hn = HodgeNumbers((1, 1))
    in_flag = Flag(hn, ((Qi(1), Qi(0)), (Qi(0), Qi(1))))
    out_flag = Flag(hn, ((Qi(0), Qi(1)), (Qi(1), Qi(0))))
    null_flag = Flag(hn, ((Qi(1), Qi(1)), (Qi(1), Qi(0))))
    assert flag_in_period_domain(in_flag).in_domain
    res_out = flag_in_period_domain(out_flag)
    assert not res_out.in_domain and not res_out.degenerate
    res_null = flag_in_period_domain(null_flag)
    assert not res_null.in_domain and res_null.degenerate


def test_membership_perturbed_flags_stay_inside():
    rng = random.Random(11)
    for ranks in [(1, 1), (1, 1, 1), (1, 2, 1), (2, 1, 2)]:
        hn = HodgeNumbers(ranks)
        for _ in range(10):
            assert flag_in_period_domain(perturbed_flag(hn, rng)).in_domain


def test_membership_invariant_under_block_unitaries():
    rng = random.Random(5)
    cases = 0
    for ranks in [(1, 1), (1, 1, 1), (1, 2, 1), (2, 1, 2), (2, 2, 2)]:
        hn = HodgeNumbers(ranks)
        for _ in range(20):
            flag = perturbed_flag(hn, rng)
            u = random_block_unitary(hn, rng)
            assert flag_in_period_domain(apply_matrix(u, flag)).in_domain
            cases += 1
    # and a flag outside the domain stays outside
    hn = HodgeNumbers((1, 1))
    out_flag = Flag(hn, ((Qi(0), Qi(1)), (Qi(1), Qi(0))))
    for _ in range(10):
        u = random_block_unitary(hn, rng)
        assert not flag_in_period_domain(apply_matrix(u, out_flag)).in_domain
        cases += 1
    assert cases == 110


def test_block_unitary_is_exactly_unitary():
    rng = random.Random(3)
    hn = HodgeNumbers((2, 2, 1))
    u = random_block_unitary(hn, rng)
    prod = mat_mul(conj_transpose(u), u)
    for i in range(hn.m):
        for j in range(hn.m):
            assert prod[i][j] == (Qi(1) if i == j else Qi(0))


def test_flag_validation_rejects_dependent_basis():
    hn = HodgeNumbers((1, 1))
    with pytest.raises(ValueError):
        Flag(hn, ((Qi(1), Qi(0)), (Qi(2), Qi(0))))


# -- projections ------------------------------------------------------------


def test_projection_of_base_flag_both_modes():
    for ranks in [(1, 1), (1, 2, 1), (2, 1, 2), (1, 1, 1, 1)]:
        hn = HodgeNumbers(ranks)
        base = hodge_flag(hn)
        std_plus = [
            tuple(Qi(1) if i == c else Qi(0) for i in range(hn.m)) for c in range(hn.p)
        ]
        for mode in ("definite", "indefinite"):
            plane = project_to_symmetric_space(base, mode)
            assert len(plane) == hn.p
            assert same_span(plane, std_plus)


def test_projection_positive_definite_on_seeded_flags():
    rng = random.Random(77)
    count = 0
    for ranks in [(1, 1), (1, 1, 1), (1, 2, 1), (2, 1, 2), (1, 3, 1)]:
        hn = HodgeNumbers(ranks)
        for _ in range(20):
            flag = perturbed_flag(hn, rng)
            plane = project_to_symmetric_space(flag, "indefinite")
            gram = gram_matrix(plane, hn.signature_signs())
            assert hermitian_definiteness(gram) == "positive"
            count += 1
    assert count == 100


def test_projection_modes_differ_off_center():
    # Explicit rational witness in the (1,1,1) domain where the two
    # fibrations disagree; expected planes computed by hand from the
    # orthogonality equations.
    hn = HodgeNumbers((1, 1, 1))
    flag = Flag(
        hn,
        (
            (Qi(1), Qi(0), Qi(Fraction(1, 2))),
            (Qi(0), Qi(Fraction(1, 4)), Qi(1)),
            (Qi(0), Qi(1), Qi(0)),
        ),
    )
    assert flag_in_period_domain(flag).in_domain
    pi = project_to_symmetric_space(flag, "indefinite")
    pi_u = project_to_symmetric_space(flag, "definite")
    assert not same_span(pi, pi_u)
    expected_pi = [
        (Qi(1), Qi(0), Qi(Fraction(1, 2))),
        (Qi(Fraction(1, 8)), Qi(1), Qi(Fraction(1, 4))),
    ]
    expected_pi_u = [
        (Qi(1), Qi(0), Qi(Fraction(1, 2))),
        (Qi(Fraction(1, 8)), Qi(1), Qi(Fraction(-1, 4))),
    ]
    assert same_span(pi, expected_pi)
    assert same_span(pi_u, expected_pi_u)


def test_projection_degenerate_complement_raises():
    hn = HodgeNumbers((1, 1, 1))
    flag = Flag(
        hn,
        ((Qi(1), Qi(0), Qi(1)), (Qi(0), Qi(1), Qi(0)), (Qi(0), Qi(0), Qi(1))),
    )
    with pytest.raises(DegenerateComplementError):
        project_to_symmetric_space(flag, "indefinite")
    # the definite form never degenerates
    assert len(project_to_symmetric_space(flag, "definite")) == hn.p


def test_projection_rejects_unknown_mode():
    with pytest.raises(ValueError):
        project_to_symmetric_space(hodge_flag(HodgeNumbers((1, 1))), "either")


# -- wire format -------------------------------------------------------------


def test_flag_json_roundtrip_exact():
    rng = random.Random(123)
    for ranks in [(1, 1), (1, 2, 1), (2, 1, 2)]:
        hn = HodgeNumbers(ranks)
        flag = perturbed_flag(hn, rng)
        again = flag_loads(flag_dumps(flag))
        assert again.ranks == flag.ranks
        assert again.basis == flag.basis


def test_flag_json_schema_fields():
    import json

    doc = json.loads(flag_dumps(hodge_flag(HodgeNumbers((1, 1)))))
    assert doc["schema"] == "hodge-domains/1"
    assert doc["ranks"] == [1, 1]
    # scalars are (numerator, denominator) integer pairs for re and im
    assert doc["basis"][0][0] == [[1, 1], [0, 1]]
