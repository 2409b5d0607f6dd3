import itertools
from fractions import Fraction

import pytest

from dpierce import (
    HypergraphInstance,
    PQParameters,
    ProjectiveParams,
    TooLarge,
    covering_number,
    fractional_optimum,
    fractional_pair,
    matching_number,
    max_depth,
    naive_oracle,
    pq_check,
    projective_instance,
    to_incidence,
    verify_cover,
    verify_matching,
)
from dpierce.generators import GenConfig, random_d_intervals, random_subforests, random_tree

from helpers import fam, random_abstract_instance


def inst(*edges, mult=None, ground=None):
    pts = set().union(*edges) if edges else {0}
    g = ground if ground is not None else max(pts) + 1
    return HypergraphInstance(
        ground_size=g,
        edges=tuple(frozenset(e) for e in edges),
        multiplicity=tuple(mult) if mult else (),
        provenance="abstract",
    )


FANO = projective_instance(ProjectiveParams(2, 2)).instance
PG32 = projective_instance(ProjectiveParams(3, 2)).instance


# ---------------------------------------------------------------------------
# integral solvers
# ---------------------------------------------------------------------------

def test_two_disjoint_edges():
    i = inst({0, 1}, {2, 3})
    assert covering_number(i).optimum == 2
    assert matching_number(i).optimum == 2


def test_fano_tau_matches_brute_force():
    # independent oracle: no subset of <= 2 points meets all 7 lines
    res = covering_number(FANO)
    assert res.optimum == naive_oracle(FANO, "tau") == 3
    assert verify_cover(FANO, res.witness)


def test_fano_nu():
    res = matching_number(FANO)
    assert res.optimum == naive_oracle(FANO, "nu") == 1


def test_disjoint_unit_intervals_matching():
    n = 7
    f = fam(1, *[[(2 * i, 2 * i + 1)] for i in range(n)])
    assert matching_number(to_incidence(f)).optimum == n


def test_gallai_p2_bound():
    # d=1 family with the (4,2) property: tau = nu <= 3
    f = fam(1, [(0, 10)], [(1, 11)], [(2, 12)], [(20, 21)], [(30, 31)])
    i = to_incidence(f)
    assert pq_check(i, PQParameters(4, 2)).holds
    tau = covering_number(i).optimum
    assert tau == matching_number(i).optimum
    assert tau <= 3


def test_solver_determinism():
    i = random_abstract_instance(99)
    a = covering_number(i)
    b = covering_number(i)
    assert a == b
    assert matching_number(i) == matching_number(i)


# ---------------------------------------------------------------------------
# fractional optimum
# ---------------------------------------------------------------------------

def test_fano_fractional_cover():
    # the uniform weighting 1/3-per-point attains 7/3; the LP must match that
    # value exactly (though it may return a different optimal vertex)
    sol = fractional_optimum(FANO, "cover")
    assert sol.value == Fraction(7, 3)
    assert sum(sol.weights.values()) == Fraction(7, 3)
    for e in FANO.edges:
        assert sum(sol.weights.get(pt, Fraction(0)) for pt in e) >= 1


def test_single_edge_fractional():
    assert fractional_optimum(inst({0, 1}), "cover").value == 1


def test_pg32_fractional():
    assert fractional_optimum(PG32, "cover").value == Fraction(15, 7)


def test_fractional_sides_equal_and_feasible():
    for seed in range(25):
        i = random_abstract_instance(seed)
        cover, matching = fractional_pair(i)
        assert cover.value == matching.value
        for idx, e in enumerate(i.edges):
            assert sum(cover.weights.get(pt, Fraction(0)) for pt in e) >= 1
        used = set().union(*i.edges)
        for pt in used:
            load = sum(w for j, w in matching.weights.items() if pt in i.edges[j])
            assert load <= 1


def test_fractional_bad_side():
    with pytest.raises(ValueError):
        fractional_optimum(FANO, "diagonal")


def test_sandwich_nu_le_fractional_le_tau():
    for seed in range(30):
        i = random_abstract_instance(seed + 1000)
        nu = matching_number(i).optimum
        tau = covering_number(i).optimum
        frac = fractional_optimum(i, "cover").value
        assert Fraction(nu) <= frac <= Fraction(tau)


# ---------------------------------------------------------------------------
# (p,q) checks
# ---------------------------------------------------------------------------

def test_pq_three_disjoint_intervals():
    f = fam(1, [(0, 1)], [(2, 3)], [(4, 5)])
    verdict = pq_check(to_incidence(f), PQParameters(3, 2))
    assert not verdict.holds
    assert verdict.counterexample == frozenset({0, 1, 2})


def test_pq_fano_22():
    assert pq_check(FANO, PQParameters(2, 2)).holds


def test_pq_pg32_33_matches_plain_enumeration():
    # independent oracle: all 455 triples of planes, no pruning
    for combo in itertools.combinations(range(15), 3):
        common = PG32.edges[combo[0]] & PG32.edges[combo[1]] & PG32.edges[combo[2]]
        assert common  # any 3 hyperplanes of PG(3,2) share a point
    verdict = pq_check(PG32, PQParameters(3, 3))
    assert verdict.holds and not verdict.vacuous


def test_pq_vacuous_below_p_edges():
    verdict = pq_check(inst({0}, {1}), PQParameters(5, 2))
    assert verdict.holds and verdict.vacuous


def test_pq_repeated_edges_do_not_count_twice():
    # two copies of one edge plus a disjoint edge: the only 2 distinct edges
    # are disjoint, so (2,2) fails despite the multiset having 3 members
    i = inst({0, 1}, {0, 1}, {2, 3})
    verdict = pq_check(i, PQParameters(2, 2))
    assert not verdict.holds


def test_pq_monotonicity_spot_checks():
    for seed in range(12):
        i = random_abstract_instance(seed + 77, max_points=10, max_edges=7)
        for p, q in ((3, 2), (3, 3), (4, 2)):
            if pq_check(i, PQParameters(p, q)).holds:
                assert pq_check(i, PQParameters(p + 1, q)).holds
                if q > 2:
                    assert pq_check(i, PQParameters(p, q - 1)).holds


# ---------------------------------------------------------------------------
# max depth
# ---------------------------------------------------------------------------

def test_max_depth_examples():
    assert max_depth(FANO) == (3, 0)
    r, _ = max_depth(inst({0}, {1}, {2}))
    assert r == 1
    r, _ = max_depth(inst({0, 1}, mult=[5]))
    assert r == 5


# ---------------------------------------------------------------------------
# oracle and oracle agreement
# ---------------------------------------------------------------------------

def test_naive_oracle_examples():
    assert naive_oracle(FANO, "tau") == 3
    assert naive_oracle(FANO, "nu") == 1
    assert naive_oracle(inst({0, 1}, {2, 3}), "tau") == 2


def test_naive_oracle_guard():
    big = HypergraphInstance(
        ground_size=30, edges=(frozenset({0}),), provenance="abstract"
    )
    with pytest.raises(TooLarge):
        naive_oracle(big, "tau")
    many = HypergraphInstance(
        ground_size=2, edges=(frozenset({0}),) * 15, provenance="abstract"
    )
    with pytest.raises(TooLarge):
        naive_oracle(many, "nu")
    with pytest.raises(ValueError):
        naive_oracle(FANO, "sigma")


def test_solvers_match_oracle_on_mixed_instances():
    for seed in range(40):
        i = random_abstract_instance(seed)
        assert covering_number(i).optimum == naive_oracle(i, "tau")
        assert matching_number(i).optimum == naive_oracle(i, "nu")
    for seed in range(10):
        f = random_d_intervals(GenConfig(seed=seed, n_edges=5, d=2))
        i = to_incidence(f)
        assert covering_number(i).optimum == naive_oracle(i, "tau")
        assert matching_number(i).optimum == naive_oracle(i, "nu")
    for seed in range(10):
        host = random_tree(GenConfig(seed=seed, host_size=8))
        f = random_subforests(host, GenConfig(seed=seed + 1, n_edges=6, d=2, host_size=8))
        i = to_incidence(f)
        assert covering_number(i).optimum == naive_oracle(i, "tau")
        assert matching_number(i).optimum == naive_oracle(i, "nu")


def test_multiplicity_does_not_change_nu_tau():
    base = inst({0, 1}, {1, 2}, {3})
    copied = inst({0, 1}, {1, 2}, {3}, mult=[4, 1, 2])
    assert covering_number(base).optimum == covering_number(copied).optimum
    assert matching_number(base).optimum == matching_number(copied).optimum
    assert fractional_optimum(base, "cover").value == fractional_optimum(copied, "cover").value


def test_witnesses_reverify():
    for seed in range(20):
        i = random_abstract_instance(seed + 500)
        tau = covering_number(i)
        nu = matching_number(i)
        assert verify_cover(i, tau.witness)
        assert verify_matching(i, nu.witness)
        assert not verify_cover(i, frozenset()) or not i.edges
