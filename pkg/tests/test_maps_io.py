"""Map parsing/serialization, scenario generation, result CSV layout."""

import math

import numpy as np
import pytest

from mrastar import grid as G
from mrastar import maps_io as M
from mrastar import search as S
from mrastar.errors import MapParseError, ScenarioGenerationError

import oracles

MOVINGAI_3X3 = "type octile\nheight 3\nwidth 3\nmap\n...\n...\n...\n"

# trimmed corner of a published Starcraft map: T = trees = blocked
MOVINGAI_MIXED = (
    "type octile\n"
    "height 4\n"
    "width 6\n"
    "map\n"
    "..TT..\n"
    ".@@W..\n"
    "..SG..\n"
    "TT....\n"
)


# ------------------------------------------------------------- movingai


def test_parse_movingai_all_free():
    g = M.parse_movingai_map(MOVINGAI_3X3)
    assert g.extents == (3, 3)
    assert int(g.blocked.sum()) == 0


def test_parse_movingai_glyph_classes():
    g = M.parse_movingai_map(MOVINGAI_MIXED)
    assert g.extents == (6, 4)
    for cell in [(2, 0), (3, 0), (1, 1), (2, 1), (3, 1), (0, 3), (1, 3)]:
        assert not g.is_free(cell)  # T, @, W all block
    for cell in [(0, 0), (2, 2), (3, 2), (5, 3)]:
        assert g.is_free(cell)  # ., S, G all passable
    assert int(g.blocked.sum()) == 7


def test_parse_movingai_row_zero_is_y_zero():
    text = "type octile\nheight 2\nwidth 2\nmap\n.@\n..\n"
    g = M.parse_movingai_map(text)
    assert not g.is_free((1, 0)) and g.is_free((1, 1))


@pytest.mark.parametrize(
    "mutate,line",
    [
        (lambda t: t.replace("type octile", "type hex"), 1),
        (lambda t: t.replace("height 3", "height x"), 2),
        (lambda t: t.replace("width 3", "depth 3"), 3),
        (lambda t: t.replace("map\n", "grid\n"), 4),
        (lambda t: t.replace("...\n...\n...\n", "...\n...\n"), 7),
        (lambda t: t + "...\n", 8),
        (lambda t: t.replace("...\n...\n...\n", "...\n..\n...\n"), 6),
    ],
)
def test_parse_movingai_errors_name_line(mutate, line):
    with pytest.raises(MapParseError) as exc:
        M.parse_movingai_map(mutate(MOVINGAI_3X3))
    assert exc.value.line == line


def test_parse_movingai_unknown_glyph_names_column():
    bad = MOVINGAI_3X3.replace("...\n...\n...\n", "...\n.x.\n...\n")
    with pytest.raises(MapParseError) as exc:
        M.parse_movingai_map(bad)
    assert exc.value.line == 6 and exc.value.col == 2


def test_movingai_roundtrip():
    g = M.parse_movingai_map(MOVINGAI_MIXED)
    text = M.serialize_movingai(g)
    g2 = M.parse_movingai_map(text)
    assert g2.extents == g.extents
    assert np.array_equal(g2.blocked, g.blocked)
    # canonical serialization is a fixpoint
    assert M.serialize_movingai(g2) == text


# ----------------------------------------------------------------- vox3

VOX3_SMALL = "vox3 2 2 1\n..\n..\n"


def test_parse_vox3_small():
    g = M.parse_vox3(VOX3_SMALL)
    assert g.extents == (2, 2, 1)
    assert int(g.blocked.sum()) == 0


def test_parse_vox3_single_block():
    text = "vox3 3 2 2\n.#.\n...\n\n...\n...\n"
    g = M.parse_vox3(text)
    assert not g.is_free((1, 0, 0))
    assert int(g.blocked.sum()) == 1
    assert g.is_free((1, 0, 1))


def test_vox3_roundtrip_both_ways():
    rng = np.random.default_rng(61)
    g = G.GridMap((4, 3, 2), rng.random((2, 3, 4)) < 0.4)
    text = M.serialize_vox3(g)
    g2 = M.parse_vox3(text)
    assert g2.extents == g.extents and np.array_equal(g2.blocked, g.blocked)
    assert M.serialize_vox3(g2) == text
    assert M.parse_vox3(M.serialize_vox3(M.parse_vox3(VOX3_SMALL))).extents == (2, 2, 1)


@pytest.mark.parametrize(
    "text",
    [
        "vox 2 2 1\n..\n..\n",  # bad magic
        "vox3 2 2\n..\n..\n",  # missing dim
        "vox3 2 2 1\n..\n.\n",  # short row
        "vox3 2 2 2\n..\n..\n\n..\n",  # missing row in slice 1
        "vox3 2 2 1\n..\nx.\n",  # bad glyph
        "vox3 2 2 2\n..\n..\n..\n..\n",  # missing blank separator
    ],
)
def test_parse_vox3_errors(text):
    with pytest.raises(MapParseError):
        M.parse_vox3(text)


def test_load_map_dispatch(tmp_path):
    p2 = tmp_path / "tiny.map"
    p2.write_text(MOVINGAI_3X3)
    p3 = tmp_path / "tiny.vox3"
    p3.write_text(VOX3_SMALL)
    assert M.load_map(p2, "movingai").dim == 2
    assert M.load_map(p3, "vox3").dim == 3
    assert M.load_map(p2, "movingai").extents == (3, 3)
    with pytest.raises(ValueError):
        M.load_map(p2, "tiff")


# ------------------------------------------------------------- scenarios


def test_gen_scenarios_deterministic():
    g = M.parse_movingai_map(MOVINGAI_3X3)
    a = M.gen_scenarios(g, 5, seed=9)
    b = M.gen_scenarios(g, 5, seed=9)
    assert a == b
    c = M.gen_scenarios(g, 5, seed=10)
    assert a != c


def test_gen_scenarios_connected_and_distinct():
    rng = np.random.default_rng(62)
    g = G.GridMap((20, 16), rng.random((16, 20)) < 0.3)
    scens = M.gen_scenarios(g, 100, seed=3, map_id="m")
    assert len(scens) == 100
    labels = G.fine_components(g)
    for s in scens:
        assert s.map_id == "m"
        assert s.start != s.goal
        assert g.is_free(s.start) and g.is_free(s.goal)
        assert (
            labels[tuple(reversed(s.start))] == labels[tuple(reversed(s.goal))]
        )
    assert [s.index for s in scens] == list(range(100))


def test_gen_scenarios_two_disconnected_cells():
    blocked = np.ones((3, 3), bool)
    blocked[0, 0] = False
    blocked[2, 2] = False  # free cells (0,0) and (2,2), severed
    g = G.GridMap((3, 3), blocked)
    with pytest.raises(ScenarioGenerationError):
        M.gen_scenarios(g, 1, seed=0, max_attempts=5000)


def test_gen_scenarios_needs_two_free_cells():
    blocked = np.ones((3, 3), bool)
    blocked[1, 1] = False
    g = G.GridMap((3, 3), blocked)
    with pytest.raises(ScenarioGenerationError):
        M.gen_scenarios(g, 1, seed=0)


# ------------------------------------------------------------ results csv


def _bench_rows():
    solved = S.PlanResult(
        status=S.STATUS_SOLVED,
        path=[(0, 0), (1, 1), (2, 2)],
        cost=2 * math.sqrt(2.0),
        expansions=[5, 2, 1],
        generated=11,
        wall_time=0.25,
        winning_queue=1,
        bound=3.0,
    )
    timed_out = S.PlanResult(
        status=S.STATUS_TIMEOUT,
        path=[],
        cost=math.inf,
        expansions=[9],
        generated=40,
        wall_time=1.5,
        winning_queue=None,
    )
    return [
        M.BenchRow.from_result("mapA", "mra", 0, 7, solved),
        M.BenchRow.from_result("mapA", "wa-high", 0, 7, timed_out),
    ]


def test_write_results_csv_layout(tmp_path):
    out = tmp_path / "results.csv"
    M.write_results_csv(_bench_rows(), out)
    lines = out.read_text().strip().split("\n")
    assert lines[0] == (
        "map,algo,scenario,seed,status,time_s,cost,"
        "expansions_total,expansions_per_queue,path_len"
    )
    solved_row = lines[1].split(",")
    assert solved_row[:5] == ["mapA", "mra", "0", "7", "solved"]
    assert solved_row[5] == "0.250000"
    assert solved_row[6] == f"{2 * math.sqrt(2.0):.6f}" and float(solved_row[6]) > 0
    assert solved_row[7] == "8" and solved_row[8] == "5|2|1" and solved_row[9] == "3"
    timeout_row = lines[2].split(",")
    assert timeout_row[4] == "timeout"
    assert timeout_row[6] == ""  # no cost on unsolved rows
    assert timeout_row[8] == "9"


def test_results_csv_sorted_and_stable(tmp_path):
    rows = list(reversed(_bench_rows()))
    a = tmp_path / "a.csv"
    b = tmp_path / "b.csv"
    M.write_results_csv(rows, a)
    M.write_results_csv(_bench_rows(), b)
    assert a.read_text() == b.read_text()
