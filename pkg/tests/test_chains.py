import itertools

import pytest

from zfpaths.chains import (
    bad_vertices,
    chains_for,
    check_order_lemmas,
    eliminate_bad,
    eliminate_unfavorite,
    extract_chains,
    invalid_links,
    sequentially_realizable,
    unfavorite_vertices,
)
from zfpaths.errors import ContractError, NotForcingSetError, UnsupportedInputError
from zfpaths.forcing import closure, forcing_number, is_forcing_set
from zfpaths.graphs import (
    Graph,
    complete_graph,
    cycle_graph,
    enumerate_connected_subcubic,
    is_induced_path,
    parse_graph6,
    path_graph,
)

# x adjacent to a and c, non-consecutive on the chain (y,a,b,c); w hangs off x
BAD_EXAMPLE = Graph(6, [(0, 1), (1, 2), (2, 3), (4, 1), (4, 3), (4, 5)])

# x=0 heads (0,1,2); a=3 heads (3,4,5); d=6 heads (6,7,8); segment 4-6
# witnesses x unfavorite: x-3, x-7 with 3 < 4 on one chain and 6 < 7 on the other
FIG3_EXAMPLE = Graph(9, [(0, 1), (1, 2), (3, 4), (4, 5), (6, 7), (7, 8), (0, 3), (0, 7), (4, 6)])


def test_extract_single_chain_on_path():
    cs = chains_for(path_graph(4), [0])
    assert [c.seq for c in cs.chains] == [(0, 1, 2, 3)]


def test_extract_lowest_id_tie_break_on_k4():
    cs = chains_for(complete_graph(4), [0, 1, 2])
    assert [c.seq for c in cs.chains] == [(0, 3), (1,), (2,)]
    assert cs.trivial_count() == 2


def test_extract_cycle_chains():
    cs = chains_for(cycle_graph(6), [0, 1])
    assert [c.seq for c in cs.chains] == [(0, 5, 4), (1, 2, 3)]


def test_extract_requires_complete_outcome():
    with pytest.raises(NotForcingSetError):
        extract_chains(closure(cycle_graph(6), [0, 3]))


def test_chain_set_serialization():
    cs = chains_for(complete_graph(4), [0, 1, 2])
    assert cs.to_json() == {"origin": [0, 1, 2], "chains": [[0, 3], [1], [2]]}


def test_chain_order_relation():
    cs = chains_for(path_graph(4), [0])
    chain = cs.chains[0]
    assert chain.before(0, 3)
    assert not chain.before(3, 0)
    assert cs.chain_of(2) is chain


def test_partition_and_induced_path_invariants(rng):
    for n in range(2, 7):
        for g in enumerate_connected_subcubic(n):
            k, wit = forcing_number(g)
            cs = chains_for(g, wit)
            seen = sorted(v for c in cs.chains for v in c.seq)
            assert seen == list(range(g.n))
            assert {c.head for c in cs.chains} == set(wit)
            for c in cs.chains:
                assert is_induced_path(g, c.seq)
            assert not invalid_links(cs)
            if g.edge_count:
                assert cs.trivial_count() <= len(cs.origin) - 1


# -- defect detectors -----------------------------------------------------------


def test_bad_vertices_on_trees_empty(rng):
    for n in range(2, 8):
        for g in enumerate_connected_subcubic(n):
            if g.edge_count != g.n - 1:
                continue
            k, wit = forcing_number(g)
            assert bad_vertices(chains_for(g, wit)) == frozenset()


def test_bad_vertices_k4_single_nontrivial_chain():
    assert bad_vertices(chains_for(complete_graph(4), [0, 1, 2])) == frozenset()


def test_bad_vertex_detected():
    cs = chains_for(BAD_EXAMPLE, [0, 4])
    assert [c.seq for c in cs.chains] == [(0, 1, 2, 3), (4, 5)]
    assert bad_vertices(cs) == {4}


def test_unfavorite_needs_three_nontrivial_chains():
    assert unfavorite_vertices(chains_for(complete_graph(4), [0, 1, 2])) == frozenset()


def test_unfavorite_detected_in_witness_graph():
    cs = chains_for(FIG3_EXAMPLE, [0, 3, 6])
    assert [c.seq for c in cs.chains] == [(0, 1, 2), (3, 4, 5), (6, 7, 8)]
    assert bad_vertices(cs) == frozenset()
    assert unfavorite_vertices(cs) == {0}


def test_unfavorite_empty_without_witness_segment():
    g = Graph(9, [(0, 1), (1, 2), (3, 4), (4, 5), (6, 7), (7, 8), (0, 3), (0, 7)])
    cs = chains_for(g, [0, 3, 6])
    assert unfavorite_vertices(cs) == frozenset()


# -- repairs ---------------------------------------------------------------------


def test_eliminate_bad_fixed_point_returns_same_object():
    cs = chains_for(complete_graph(4), [0, 1, 2])
    assert eliminate_bad(cs) is cs


def test_eliminate_bad_frozen_example():
    g = parse_graph6("EsXo")
    cs = chains_for(g, (0, 1, 2))
    assert bad_vertices(cs) == {1}
    fixed = eliminate_bad(cs)
    assert bad_vertices(fixed) == frozenset()
    assert sorted(fixed.origin) == [0, 2, 3]
    assert [c.seq for c in fixed.chains] == [(0, 1, 4), (2,), (3, 5)]
    assert is_forcing_set(g, fixed.origin)
    # oracle: some size-3 forcing set admits a bad-free extraction
    assert any(
        is_forcing_set(g, s) and not bad_vertices(chains_for(g, s))
        for s in itertools.combinations(range(g.n), 3)
    )


def test_eliminate_bad_requires_three_chains():
    with pytest.raises(UnsupportedInputError):
        eliminate_bad(chains_for(BAD_EXAMPLE, [0, 4]))


def test_eliminate_unfavorite_requires_no_bad():
    g = parse_graph6("EsXo")
    with pytest.raises(ContractError):
        eliminate_unfavorite(chains_for(g, (0, 1, 2)))


def test_eliminate_unfavorite_on_witness_graph():
    cs = chains_for(FIG3_EXAMPLE, [0, 3, 6])
    fixed = eliminate_unfavorite(cs)
    assert unfavorite_vertices(fixed) == frozenset()
    assert bad_vertices(fixed) == frozenset()
    assert [c.seq for c in fixed.chains] == [(3, 0, 1, 2), (4, 5), (6, 7, 8)]
    assert is_forcing_set(FIG3_EXAMPLE, fixed.origin)


def test_repair_may_need_a_different_force_schedule():
    # the rewrite output here contains the link 3->8, which the synchronous
    # run of the new origin cannot realize (8 is forced earlier via 4), yet a
    # one-at-a-time schedule can; repairs are validated by realizability
    g = parse_graph6("I?aQAHWGO")
    cs = chains_for(g, forcing_number(g)[1])
    fixed = eliminate_bad(cs)
    assert bad_vertices(fixed) == frozenset()
    assert [c.seq for c in fixed.chains] == [(0, 4), (2, 9, 7, 1, 6), (5, 3, 8)]
    assert sequentially_realizable(fixed)
    assert invalid_links(fixed) == [(3, 8)]
    assert is_forcing_set(g, fixed.origin)


def test_repair_pipeline_over_corpus():
    # every F=3 graph up to n=7 repairs to a defect-free chain set of the same size
    from zfpaths.drawing import check_parallel_properties

    for n in range(3, 8):
        for g in enumerate_connected_subcubic(n):
            k, wit = forcing_number(g)
            if k != 3:
                continue
            cs = chains_for(g, wit)
            fixed = eliminate_unfavorite(eliminate_bad(cs))
            assert bad_vertices(fixed) == frozenset()
            assert unfavorite_vertices(fixed) == frozenset()
            assert len(fixed.origin) == 3
            assert is_forcing_set(g, fixed.origin)
            assert sequentially_realizable(fixed)
            nontrivial = fixed.nontrivial()
            if len(nontrivial) == 3:
                # a fully non-trivial repaired triple meets the drawing conditions
                a, b, c = (ch.seq for ch in nontrivial)
                assert check_parallel_properties(g, a, b, c) == []


# -- order lemmas ----------------------------------------------------------------


def test_order_lemmas_pass_on_corpus():
    for n in range(1, 7):
        for g in enumerate_connected_subcubic(n):
            k, wit = forcing_number(g)
            report = check_order_lemmas(chains_for(g, wit))
            assert report.passed, report.violations


def test_order_lemmas_single_chain_vacuous():
    report = check_order_lemmas(chains_for(path_graph(5), [0]))
    assert report.passed
    assert report.by_lemma() == {
        "earlier_cross_neighbor": True,
        "no_inverting_pair": True,
        "no_inverting_triple": True,
    }


def test_order_lemmas_k4():
    assert check_order_lemmas(chains_for(complete_graph(4), [0, 1, 2])).passed
