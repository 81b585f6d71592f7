import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hodge_domains.exactla import Qi, QI_ZERO, nullspace, rank
from hodge_domains.hodge import HodgeNumbers
from hodge_domains.higgs import (
    HiggsField,
    PreconditionError,
    SamplingExhaustedError,
    check_commutation,
    directional_image_rank,
    higgs_dumps,
    higgs_loads,
    pointwise_rank,
    random_commuting_higgs,
    rank_one_lemma_check,
    splitting_detector,
)


def field_111(theta0_dirs, theta1_dirs):
    return HiggsField(
        HodgeNumbers((1, 1, 1)),
        len(theta0_dirs),
        (
            tuple(((Qi(x),),) for x in theta0_dirs),
            tuple(((Qi(x),),) for x in theta1_dirs),
        ),
    )


# -- commutation --------------------------------------------------------------


def test_commutation_single_direction_trivial():
    h = field_111([3], [5])
    assert check_commutation(h).commutes


def test_commutation_pullback_scalars():
    rng = random.Random(1)
    for _ in range(20):
        h = random_commuting_higgs((1, 2, 2), 3, seed=rng.randint(0, 10**6), strategy="pullback")
        assert check_commutation(h).commutes


def test_commutation_violation_111():
    h = field_111([1, 0], [0, 1])
    res = check_commutation(h)
    assert not res.commutes
    assert res.first_violation == (0, 1, 2)


# -- ranks ---------------------------------------------------------------------


def test_pointwise_rank_zero():
    h = field_111([0, 0], [0, 0])
    assert pointwise_rank(h, 0) == 0


def test_pointwise_rank_stacked_identity():
    h = HiggsField(
        HodgeNumbers((2, 1)),
        2,
        ((((Qi(1), Qi(0)),), ((Qi(0), Qi(1)),)),),
    )
    assert pointwise_rank(h, 0) == 2


def test_pointwise_rank_bound():
    rng = random.Random(9)
    for _ in range(20):
        shape = (rng.randint(1, 3), rng.randint(1, 3), rng.randint(1, 3))
        m_t = rng.randint(1, 3)
        h = random_commuting_higgs(shape, m_t, seed=rng.randint(0, 10**6), strategy="pullback")
        for i in range(2):
            r = shape
            assert pointwise_rank(h, i) <= min(r[i], m_t * r[i + 1])


def test_pointwise_rank_floating_agrees():
    h = random_commuting_higgs((2, 1, 2), 2, seed=4, strategy="nullspace")
    for i in range(2):
        assert pointwise_rank(h, i, floating=True) == pointwise_rank(h, i)


def test_pointwise_rank_index_error():
    h = field_111([1], [1])
    with pytest.raises(IndexError):
        pointwise_rank(h, 2)


# -- the rank-one vanishing lemma ------------------------------------------------


def test_lemma_scalar_field_vacuous():
    # rank theta_0 = 1 < 2: the hypothesis is not triggered.
    h = field_111([1, 2], [3, 6])
    assert check_commutation(h).commutes
    verdict = rank_one_lemma_check(h, 1)
    assert verdict.holds and not verdict.triggered


def test_lemma_triggered_forces_zero_212():
    # Solving the commutation system for theta_1 against a rank-2 theta_0
    # family must leave only the zero solution.
    rng = random.Random(4242)
    solved = 0
    for _ in range(50):
        t0 = [
            [[rng.randint(-2, 2) for _ in range(2)]],  # 1x2, direction 1
            [[rng.randint(-2, 2) for _ in range(2)]],  # direction 2
        ]
        stacked = [t0[0][0], t0[1][0]]
        if rank([[Qi(x) for x in row] for row in stacked]) != 2:
            continue
        # unknowns: theta_1^(1), theta_1^(2), each 2x1; equations from the
        # direction pair (1,2): theta_1^(1) t0^(2) = theta_1^(2) t0^(1)
        rows = []
        for u in range(2):
            for v in range(2):
                row = [QI_ZERO] * 4
                row[u] = Qi(t0[1][0][v])  # theta_1^(1)[u] * t0^(2)[v]
                row[2 + u] = -Qi(t0[0][0][v])
                rows.append(row)
        assert nullspace(rows) == []
        solved += 1
    assert solved >= 20


def test_lemma_on_sampled_fields():
    triggered = 0
    for seed in range(120):
        h = random_commuting_higgs((2, 1, 2), 2, seed=seed, strategy="nullspace")
        verdict = rank_one_lemma_check(h, 1)
        assert verdict.holds
        if verdict.triggered:
            triggered += 1
            assert h.layer_is_zero(1)
    assert triggered > 0


def test_lemma_mirror_statement_sampled():
    # Transposed form: if the direction columns of theta_1 out of the rank-one
    # block span dimension >= 2, then theta_0 vanishes.
    checked = 0
    for seed in range(200):
        h = random_commuting_higgs((3, 1, 3), 2, seed=seed, strategy="nullspace")
        if directional_image_rank(h, 1) >= 2:
            assert h.layer_is_zero(0)
            checked += 1
    assert checked > 0


def test_lemma_mirror_statement_exhaustive_grid():
    import itertools

    hn = HodgeNumbers((2, 1, 2))
    entries = (-1, 0, 1)
    triggered = 0
    for t0 in itertools.product(entries, repeat=4):
        theta0 = (((Qi(t0[0]), Qi(t0[1])),), ((Qi(t0[2]), Qi(t0[3])),))
        for t1 in itertools.product(entries, repeat=4):
            theta1 = (((Qi(t1[0]),), (Qi(t1[1]),)), ((Qi(t1[2]),), (Qi(t1[3]),)))
            h = HiggsField(hn, 2, (theta0, theta1))
            if not check_commutation(h).commutes:
                continue
            if directional_image_rank(h, 1) >= 2:
                triggered += 1
                assert h.layer_is_zero(0)
    assert triggered > 0


def test_lemma_preconditions_reported_distinctly():
    good = field_111([1, 2], [3, 6])
    with pytest.raises(PreconditionError):
        rank_one_lemma_check(good, 0)  # not interior
    wide = random_commuting_higgs((1, 2, 1), 2, seed=0, strategy="pullback")
    with pytest.raises(PreconditionError):
        rank_one_lemma_check(wide, 1)  # middle rank 2, not 1
    bad = field_111([1, 0], [0, 1])
    with pytest.raises(PreconditionError):
        rank_one_lemma_check(bad, 1)  # does not commute


# -- splitting --------------------------------------------------------------------


def test_splitting_generic_nonzero_none():
    h = field_111([1, 2], [3, 6])
    assert splitting_detector(h) is None


def test_splitting_zero_layer_1221():
    hn = HodgeNumbers((1, 2, 2, 1))
    h = random_commuting_higgs(hn, 2, seed=18, strategy="pullback")
    zero1 = tuple(
        tuple(
            tuple(tuple(QI_ZERO for _ in row) for row in mx) for mx in layer
        )
        if i == 1
        else layer
        for i, layer in enumerate(h.theta)
    )
    cut = HiggsField(hn, 2, zero1)
    assert splitting_detector(cut) == 1


def test_splitting_all_zero_field():
    h = field_111([0, 0], [0, 0])
    assert splitting_detector(h) == 0


# -- samplers ---------------------------------------------------------------------


def test_sampler_deterministic_per_seed():
    for strategy in ("pullback", "nullspace"):
        a = random_commuting_higgs((2, 1, 2), 2, seed=99, strategy=strategy)
        b = random_commuting_higgs((2, 1, 2), 2, seed=99, strategy=strategy)
        assert a.theta == b.theta


def test_sampler_nullspace_commutes():
    for seed in range(40):
        h = random_commuting_higgs((2, 2, 1), 3, seed=seed, strategy="nullspace")
        assert check_commutation(h).commutes


def test_sampler_rank_target_212():
    h = random_commuting_higgs((2, 1, 2), 2, seed=5, strategy="nullspace", target_ranks={0: 2})
    assert pointwise_rank(h, 0) == 2
    assert h.layer_is_zero(1)  # forced by the vanishing lemma


def test_sampler_exhaustion():
    with pytest.raises(SamplingExhaustedError):
        random_commuting_higgs((1, 1), 1, seed=0, target_ranks={0: 5}, max_attempts=10)


def test_sampler_rejects_bad_strategy():
    with pytest.raises(ValueError):
        random_commuting_higgs((1, 1), 1, seed=0, strategy="other")


@settings(max_examples=30, deadline=None)
@given(
    st.lists(st.integers(min_value=1, max_value=3), min_size=2, max_size=4),
    st.integers(min_value=1, max_value=3),
    st.integers(min_value=0, max_value=10**6),
    st.sampled_from(("pullback", "nullspace")),
)
def test_sampler_always_commutes_property(ranks, m_t, seed, strategy):
    h = random_commuting_higgs(tuple(ranks), m_t, seed=seed, strategy=strategy)
    assert check_commutation(h).commutes


# -- wire format --------------------------------------------------------------------


def test_higgs_json_roundtrip():
    h = random_commuting_higgs((2, 1, 3), 2, seed=12, strategy="nullspace")
    again = higgs_loads(higgs_dumps(h))
    assert again.ranks == h.ranks
    assert again.tangent_dim == h.tangent_dim
    assert again.theta == h.theta


def test_higgs_json_schema_fields():
    import json

    h = field_111([1], [0])
    doc = json.loads(higgs_dumps(h))
    assert doc["schema"] == "hodge-domains/1"
    assert doc["ranks"] == [1, 1, 1]
    assert doc["tangent_dim"] == 1
    assert doc["theta"][0][0][0][0] == [[1, 1], [0, 1]]
