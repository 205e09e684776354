import json
from fractions import Fraction

import pytest

from zfpaths.drawing import (
    StandardDrawing,
    build_parallel_drawing,
    build_standard_drawing,
    check_parallel_properties,
    drawing_from_json_obj,
    drawing_to_json_obj,
    ladder_drawing,
    leftmost_set,
    place_third,
    render,
    search_drawing,
    verify_drawing,
)
from zfpaths.errors import (
    ContractError,
    NotLadderDrawableError,
    UnsupportedInputError,
    UnsupportedSizeError,
)
from zfpaths.forcing import forcing_number, is_forcing_set
from zfpaths.graphs import (
    Graph,
    complete_graph,
    cycle_graph,
    disjoint_union,
    enumerate_connected_subcubic,
    fig8_graph,
    parse_graph6,
    path_graph,
)

# K5 with the row structure of the four-parallel-path drawing:
# rows v1 | v2 | v3 v4 | v5, coordinates adapted to unit row spacing
K5 = complete_graph(5)
K5_ROWS = ((0,), (1,), (2, 3), (4,))
K5_X = {0: Fraction(1), 1: Fraction(1), 2: Fraction(0), 3: Fraction(4), 4: Fraction(-4, 5)}

# ladder-plus-lone-vertex construction with two thick merges: rows are the
# chains (0..6), (7..12) and the lone 13; 12 sits on (4,5), 0 sits on (9,10)
THICK_LADDER = Graph(
    14,
    [(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 6),
     (7, 8), (8, 9), (9, 10), (10, 11), (11, 12),
     (0, 9), (0, 10), (12, 4), (12, 5), (11, 1), (13, 8), (13, 2), (13, 3)],
)


def test_verify_k5_four_row_drawing():
    d = StandardDrawing(rows=K5_ROWS, x=K5_X, host=K5)
    assert verify_drawing(K5, d).ok
    left = leftmost_set(d)
    assert left == {0, 1, 2, 4}
    assert len(left) == 4
    assert is_forcing_set(K5, left)


def test_verify_detects_swapped_pair():
    x = dict(K5_X)
    x[2], x[3] = x[3], x[2]
    d = StandardDrawing(rows=K5_ROWS, x=x, host=K5)
    report = verify_drawing(K5, d)
    assert not report.ok
    assert report.violations


def test_verify_detects_crossing():
    # two segments between two rows in inverted order must cross
    g = Graph(4, [(0, 1), (2, 3), (0, 3), (1, 2)])
    d = StandardDrawing(
        rows=((0, 1), (2, 3)),
        x={0: Fraction(0), 1: Fraction(1), 2: Fraction(0), 3: Fraction(1)},
        host=g,
    )
    report = verify_drawing(g, d)
    assert any("cross" in v for v in report.violations)


def test_verify_one_row_path():
    d = StandardDrawing(
        rows=((0, 1, 2),), x={i: Fraction(i) for i in range(3)}, host=path_graph(3)
    )
    assert verify_drawing(path_graph(3), d).ok


def test_verify_catches_vertex_on_segment():
    # vertex 1 sits exactly on the long segment 0-2
    g = Graph(3, [(0, 2)])
    d = StandardDrawing(
        rows=((0,), (1,), (2,)),
        x={0: Fraction(0), 1: Fraction(0), 2: Fraction(0)},
        host=g,
    )
    report = verify_drawing(g, d)
    assert any("passes through" in v for v in report.violations)


# -- ladder drawings ---------------------------------------------------------


def test_ladder_plain_c4():
    g = Graph(4, [(0, 1), (2, 3), (0, 2), (1, 3)])
    lad = ladder_drawing(g, (0, 1), (2, 3))
    assert lad.segments == ((0, 0), (1, 1))
    assert lad.thick_vertices == ()
    assert [s.index for s in lad.sections] == [1]
    assert lad.sections[0].members == frozenset(range(4))


def test_ladder_thick_merge():
    # u=0 on top has consecutive bottom neighbors 3,4
    g = Graph(6, [(0, 1), (2, 3), (3, 4), (4, 5), (0, 3), (0, 4)])
    lad = ladder_drawing(g, (0, 1), (2, 3, 4, 5))
    assert lad.thick_vertices == ((3, 4),)
    assert lad.thick_edges == ((0, (3, 4)),)
    assert len(lad.segments) == 1


def test_ladder_no_cross_edges():
    g = Graph(4, [(0, 1), (2, 3)])
    lad = ladder_drawing(g, (0, 1), (2, 3))
    assert lad.segments == ()
    assert len(lad.sections) == 1
    assert lad.sections[0].members == frozenset(range(4))


def test_ladder_rejects_inverting_pair():
    # segments 0-3 and 1-2 invert between the rows
    g = Graph(4, [(0, 1), (2, 3), (0, 3), (1, 2)])
    with pytest.raises(NotLadderDrawableError) as exc:
        ladder_drawing(g, (0, 1), (2, 3))
    assert exc.value.violation is not None


def test_ladder_rejects_nonconsecutive_neighbors():
    g = Graph(5, [(0, 1), (2, 3), (3, 4), (0, 2), (0, 4)])
    with pytest.raises(NotLadderDrawableError):
        ladder_drawing(g, (0, 1), (2, 3, 4))


# -- placing the third row ------------------------------------------------------


def test_place_third_lone_vertex_in_section():
    # z = 4 has both neighbors inside the single inner section
    g = Graph(5, [(0, 1), (2, 3), (0, 2), (1, 3), (4, 0), (4, 1)])
    lad = ladder_drawing(g, (0, 1), (2, 3))
    d = place_third(g, lad, (4,))
    assert d.rows == ((4,), (0, 1), (2, 3))
    assert verify_drawing(g, d).ok


def test_place_third_rejects_high_degree_singleton():
    g = Graph(5, [(0, 1), (2, 3), (0, 2), (1, 3), (4, 0), (4, 1), (4, 3)])
    lad = ladder_drawing(g, (0, 1), (2, 3))
    with pytest.raises(ContractError):
        place_third(g, lad, (4,))


def test_place_third_disconnected_row():
    g = Graph(6, [(0, 1), (2, 3), (0, 2), (1, 3), (4, 5)])
    lad = ladder_drawing(g, (0, 1), (2, 3))
    d = place_third(g, lad, (4, 5))
    assert verify_drawing(g, d).ok


def test_parallel_property_scan_flags_violation():
    g = Graph(6, [(0, 1), (2, 3), (0, 3), (1, 2), (4, 5)])
    violations = check_parallel_properties(g, (0, 1), (2, 3), (4, 5))
    assert any(num == 3 for num, _ in violations)


# -- figure 6 / figure 7 construction ---------------------------------------------


def test_thick_ladder_ladder_has_both_thick_merges():
    lad = ladder_drawing(THICK_LADDER, tuple(range(7)), tuple(range(7, 13)))
    assert set(lad.thick_vertices) == {(4, 5), (9, 10)}
    assert set(lad.thick_edges) == {(12, (4, 5)), (0, (9, 10))}


def test_thick_ladder_chain_set_matches_figure():
    from zfpaths.chains import chains_for

    cs = chains_for(THICK_LADDER, [0, 7, 13])
    assert [c.seq for c in cs.chains] == [tuple(range(7)), tuple(range(7, 13)), (13,)]


def test_thick_ladder_thick_split_drawing_verifies():
    from zfpaths.drawing import _place_trivial_third

    lad = ladder_drawing(THICK_LADDER, tuple(range(7)), tuple(range(7, 13)))
    d = _place_trivial_third(THICK_LADDER, lad, 13)
    assert d.rows == ((13,), tuple(range(7)), tuple(range(7, 13)))
    assert verify_drawing(THICK_LADDER, d).ok
    # the thick pairs end up split into distinct coordinates
    assert d.x[4] != d.x[5] and d.x[9] != d.x[10]


def test_thick_ladder_full_pipeline():
    assert forcing_number(THICK_LADDER)[0] == 3
    d = build_standard_drawing(THICK_LADDER)
    assert d.k == 3
    assert verify_drawing(THICK_LADDER, d).ok


# -- full pipeline ------------------------------------------------------------------


def test_build_standard_drawing_k4():
    d = build_standard_drawing(complete_graph(4))
    assert d.k == 3
    assert sorted(len(r) for r in d.rows) == [1, 1, 2]
    assert verify_drawing(complete_graph(4), d).ok


def test_build_standard_drawing_fig8_instance():
    g = fig8_graph([1, 1, 1, 1, 1])
    d = build_standard_drawing(g)
    assert d.k == 3
    assert verify_drawing(g, d).ok


def test_build_standard_drawing_rejects_wrong_f():
    with pytest.raises(UnsupportedInputError):
        build_standard_drawing(path_graph(5))
    with pytest.raises(UnsupportedInputError):
        build_standard_drawing(complete_graph(5))


def test_build_standard_drawing_edgeless():
    d = build_standard_drawing(Graph(3))
    assert d.k == 3
    assert verify_drawing(Graph(3), d).ok


def test_build_standard_drawing_disconnected():
    g = disjoint_union([cycle_graph(4), Graph(1)])
    assert forcing_number(g)[0] == 3
    d = build_standard_drawing(g)
    assert verify_drawing(g, d).ok


@pytest.mark.parametrize(
    "code",
    [
        "HHcAPHP",      # a later midpoint must clear an earlier row-1 anchor
        "IAq_`QASG",
        "KDD@C?c?qO?D",
        "KJICOQ@???g`",
        "I?aQAHWGO",    # repair output needs a non-synchronous schedule
    ],
)
def test_pipeline_regressions_beyond_corpus(code):
    g = parse_graph6(code)
    assert forcing_number(g)[0] == 3
    d = build_standard_drawing(g)
    assert verify_drawing(g, d).ok
    assert is_forcing_set(g, leftmost_set(d))


def test_pipeline_on_small_corpus():
    for n in range(1, 8):
        for g in enumerate_connected_subcubic(n):
            k, _ = forcing_number(g)
            if k != 3:
                continue
            d = build_standard_drawing(g)
            assert d.k == 3
            assert verify_drawing(g, d).ok
            assert is_forcing_set(g, leftmost_set(d))


def test_parallel_drawing_rows_match_forcing_number():
    for g in (path_graph(6), cycle_graph(5), complete_graph(4)):
        k, _ = forcing_number(g)
        d = build_parallel_drawing(g)
        assert d.k == k
        assert is_forcing_set(g, leftmost_set(d))


# -- search -------------------------------------------------------------------------


def test_search_single_row_path():
    d = search_drawing(path_graph(6), 1, budget=2000)
    assert d is not None and d.k == 1


def test_search_k5_reproduces_four_parallel_paths():
    d = search_drawing(K5, 4, budget=100000)
    assert d is not None
    assert d.k == 4
    assert sorted(len(r) for r in d.rows) == [1, 1, 1, 2]
    assert verify_drawing(K5, d).ok
    assert is_forcing_set(K5, leftmost_set(d))


def test_search_k6_advisory_not_found():
    # consistent with non-existence for K6, though the search cannot prove it
    for k in range(1, 7):
        assert search_drawing(complete_graph(6), k, budget=4000) is None


def test_search_three_rows_implies_forcing_bound():
    # any found 3-row drawing bounds the forcing number by 3
    for code in ("Cs", "C~"):
        g = parse_graph6(code)
        d = search_drawing(g, 3, budget=20000)
        if d is not None:
            assert forcing_number(g)[0] <= 3
            assert is_forcing_set(g, leftmost_set(d))


def test_search_size_cap():
    with pytest.raises(UnsupportedSizeError):
        search_drawing(Graph(9), 3)


# -- rendering ------------------------------------------------------------------------


def test_render_svg_path():
    d = build_parallel_drawing(path_graph(3))
    svg = render(d, "svg")
    assert svg.count("<circle") == 3
    assert svg.count("<line") == 2


def test_render_svg_k4():
    d = build_standard_drawing(complete_graph(4))
    svg = render(d, "svg")
    assert svg.count("<circle") == 4
    assert svg.count("<line") == 6


def test_render_dot_has_pinned_positions():
    d = build_parallel_drawing(path_graph(3))
    dot = render(d, "dot")
    assert 'pos="' in dot and dot.strip().startswith("graph")


def test_render_json_round_trip():
    d = build_standard_drawing(complete_graph(4))
    obj = json.loads(render(d, "json"))
    assert set(obj) == {"rows", "x", "edges", "k"}
    back = drawing_from_json_obj(obj)
    assert back == d
    assert drawing_to_json_obj(back) == obj


def test_render_refuses_invalid_drawing():
    bad = StandardDrawing(
        rows=((0, 1), (2, 3)),
        x={0: Fraction(0), 1: Fraction(1), 2: Fraction(0), 3: Fraction(1)},
        host=Graph(4, [(0, 3), (1, 2)]),
    )
    with pytest.raises(ContractError):
        render(bad, "svg")
