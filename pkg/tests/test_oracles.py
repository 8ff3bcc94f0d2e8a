"""The oracle lab itself: hom enumeration against naive search, lemma checks."""

import itertools

import pytest

from coalgmin import (
    Morphism,
    check_homomorphism,
    check_greatest_quotient,
    check_least_subobject,
    check_minimal_iff_incoming_epi,
    check_minimization_functorial,
    check_quotient_closure,
    check_simple_subterminal,
    enumerate_homomorphisms,
    random_coalgebra,
    reachable_part,
    simple_quotient,
    underlying,
)
from coalgmin import systems
from coalgmin.errors import SearchBoundExceeded, WeightedWithoutPool
from coalgmin.functors import (
    DfaFunctor,
    LabelledFunctor,
    PowersetFunctor,
    WeightedFunctor,
)
from coalgmin.oracles import HomSearchConfig, kernel_pair_coalgebra, stable_digest


def naive_homs(a, b, pointed=False):
    """Ground truth: every total map, filtered by the law, no pruning."""
    base_a, base_b = underlying(a), underlying(b)
    out = []
    for targets in itertools.product(base_b.states, repeat=len(base_a.states)):
        mapping = dict(zip(base_a.states, targets))
        if pointed and mapping[a.point] != b.point:
            continue
        h = Morphism(a if pointed else base_a, b if pointed else base_b, mapping)
        if check_homomorphism(h):
            out.append(mapping)
    return out


def test_single_loop_has_only_the_identity_endomorphism():
    c = systems.ts_single_loop()
    homs = enumerate_homomorphisms(c.base, c.base)
    assert [h.mapping for h in homs] == [{"q0": "q0"}]


def test_pointed_dfa_search_finds_exactly_the_book_morphism():
    dom, cod = systems.dfa_no_trailing_b(), systems.dfa_merge_target()
    homs = enumerate_homomorphisms(dom, cod, HomSearchConfig(pointed=True))
    assert [h.mapping for h in homs] == [systems.dfa_merge_map()]


def test_branching_system_has_exactly_one_hom_onto_its_quotient():
    c = underlying(systems.ts_branching())
    q = underlying(simple_quotient(c)[0])
    homs = enumerate_homomorphisms(c, q)
    assert len(homs) == 1  # frozen: brute force finds only the projection
    assert homs[0].mapping == {"x": "x", "y": "x", "z": "z"}


def test_weighted_flow_admits_exactly_the_drawn_morphism():
    homs = enumerate_homomorphisms(systems.weighted_flow(), systems.weighted_flow_target())
    assert [h.mapping for h in homs] == [systems.weighted_flow_map()]


@pytest.mark.parametrize(
    "spec,pool",
    [
        (DfaFunctor(("a", "b")), None),
        (PowersetFunctor(), None),
        (LabelledFunctor(("a", "b")), None),
        (WeightedFunctor("natural"), (1, 2)),
        (WeightedFunctor("rational"), (3, -3)),
    ],
    ids=("dfa", "powerset", "labelled", "bag", "rational"),
)
def test_enumeration_matches_naive_search(spec, pool):
    for seed in range(8):
        a = random_coalgebra(spec, 1 + seed % 3, seed, weight_pool=pool, density=0.5, pointed=True)
        b = random_coalgebra(spec, 1 + (seed + 1) % 3, seed + 100, weight_pool=pool, density=0.5, pointed=True)
        for pointed in (False, True):
            fast = [h.mapping for h in enumerate_homomorphisms(a, b, HomSearchConfig(pointed=pointed))]
            assert fast == naive_homs(a, b, pointed=pointed)


def test_search_budget_is_enforced():
    c = random_coalgebra(PowersetFunctor(), 6, 1, density=0.0)  # all maps are homs
    with pytest.raises(SearchBoundExceeded):
        enumerate_homomorphisms(c, c, HomSearchConfig(max_candidates=10))
    big = random_coalgebra(PowersetFunctor(), 13, 1, density=0.2)
    with pytest.raises(SearchBoundExceeded):
        enumerate_homomorphisms(big, big)


def test_enumeration_order_is_deterministic():
    c = random_coalgebra(PowersetFunctor(), 4, 9, density=0.0)
    first = [h.mapping for h in enumerate_homomorphisms(c, c)]
    second = [h.mapping for h in enumerate_homomorphisms(c, c)]
    assert first == second
    assert len(first) == 4 ** 4  # empty structures put no constraint on maps


# -- kernel pairs --------------------------------------------------------------


def test_kernel_pair_projections_are_distinct_homs_for_bag_systems():
    spec = WeightedFunctor("natural")
    c = systems.bag_double_edge()
    merged = random_coalgebra(spec, 5, 11, weight_pool=(1, 2), density=0.6)
    for system in (underlying(c), merged):
        result = kernel_pair_coalgebra(system)
        assert result is not None
        kernel, pr1, pr2 = result
        assert check_homomorphism(pr1) and check_homomorphism(pr2)


def test_kernel_pair_is_refused_for_rational_weights():
    assert kernel_pair_coalgebra(underlying(systems.cancel_fork())) is None


# -- lemma checks ---------------------------------------------------------------


def test_minimal_iff_incoming_epi_on_the_two_cycle():
    r = systems.ts_two_cycle()
    c = systems.ts_cycle_with_feeder()
    report = check_minimal_iff_incoming_epi(r, [r, c])
    assert report.passed


def test_minimal_iff_incoming_epi_flags_the_non_reachable_input():
    c = systems.ts_cycle_with_feeder()
    report = check_minimal_iff_incoming_epi(c, [c])
    assert report.passed
    assert any("not surjective" in w for w in report.witnesses)


def test_minimal_iff_incoming_epi_trivial_singleton():
    from coalgmin import PointedCoalgebra, Coalgebra

    ps = PowersetFunctor()
    c = PointedCoalgebra(Coalgebra(ps, ("x",), {"x": ps.struct(())}), "x")
    assert check_minimal_iff_incoming_epi(c, [c]).passed


def test_subterminal_on_the_branching_quotient():
    c = underlying(systems.ts_branching())
    q = underlying(simple_quotient(c)[0])
    report = check_simple_subterminal(q, [q, c])
    assert report.passed  # at most one hom from each pool member


def test_subterminal_finds_two_endomorphisms_of_the_branching_system():
    c = underlying(systems.ts_branching())
    report = check_simple_subterminal(c, [c])
    assert report.passed
    assert any("endomorphisms" in w for w in report.witnesses)


def test_subterminal_on_the_empty_coalgebra_is_vacuous():
    from coalgmin import Coalgebra

    empty = Coalgebra(PowersetFunctor(), (), {})
    assert check_simple_subterminal(empty, []).passed


def test_subterminal_converse_is_noted_not_failed_for_rationals():
    c = underlying(systems.cancel_fork_loops())
    report = check_simple_subterminal(c, [])
    assert report.passed
    assert any("not applicable" in w for w in report.witnesses)


def test_least_subobject_on_the_feeder_cycle():
    assert check_least_subobject(systems.ts_cycle_with_feeder()).passed


def test_least_subobject_on_reachable_input_sees_only_the_identity():
    report = check_least_subobject(systems.ts_two_cycle())
    assert report.passed
    assert report.instances == 1


def test_greatest_quotient_on_the_branching_system():
    report = check_greatest_quotient(underlying(systems.ts_branching()))
    assert report.passed
    assert report.instances == 2  # discrete + the merging partition


def test_greatest_quotient_on_a_simple_input():
    q = underlying(simple_quotient(systems.ts_branching())[0])
    report = check_greatest_quotient(q)
    assert report.passed


def test_greatest_quotient_covers_the_cancellation_merges():
    report = check_greatest_quotient(underlying(systems.cancel_fork()))
    assert report.passed
    assert report.instances >= 2


def test_functoriality_uses_the_inclusion_and_identity_pairs():
    r, inclusion = reachable_part(systems.ts_cycle_with_feeder())
    report = check_minimization_functorial([inclusion])
    assert report.passed
    ident = Morphism(r, r, {s: s for s in r.states})
    assert check_minimization_functorial([ident]).passed


def test_quotient_closure_finds_the_cancellation_violation():
    report = check_quotient_closure(systems.cancel_fork())
    assert report.passed  # rational weights: violations are recorded, not failed
    assert any("b1,b2" in w for w in report.witnesses)


def test_quotient_closure_passes_on_automata():
    spec = DfaFunctor(("a", "b"))
    for seed in range(15):
        c = random_coalgebra(spec, 1 + seed % 5, seed, density=0.5, pointed=True)
        part, _ = reachable_part(c)
        assert check_quotient_closure(part).passed


# -- generator -----------------------------------------------------------------


def test_random_coalgebra_is_deterministic():
    a = random_coalgebra(PowersetFunctor(), 5, 42, density=0.5, pointed=True)
    b = random_coalgebra(PowersetFunctor(), 5, 42, density=0.5, pointed=True)
    assert a == b
    assert stable_digest(a) == stable_digest(b)


def test_random_coalgebra_density_zero_is_empty_structures():
    c = random_coalgebra(PowersetFunctor(), 4, 3, density=0.0)
    assert all(c.struct_of(s).successors == frozenset() for s in c.states)


def test_random_coalgebra_weighted_needs_a_pool():
    with pytest.raises(WeightedWithoutPool):
        random_coalgebra(WeightedFunctor("rational"), 3, 0)


@pytest.mark.parametrize("seed", range(30))
def test_generated_instances_validate(seed):
    from coalgmin import validate_coalgebra

    c = random_coalgebra(PowersetFunctor(), 6, seed, density=0.5, pointed=True)
    assert validate_coalgebra(c) == []
