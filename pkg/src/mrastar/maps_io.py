"""Map file formats, scenario sampling and result CSV output.

Supported formats:

* movingai: the 2D benchmark format with a four-line header (``type
  octile`` / ``height H`` / ``width W`` / ``map``) followed by H rows of
  W glyphs.  ``.``, ``G`` and ``S`` are passable; ``@``, ``O``, ``T``
  and ``W`` are blocked.
* vox3: a 3D text format with header ``vox3 W H D`` followed by D
  slices of H rows of W glyphs (``.`` free, ``#`` blocked), slices
  separated by one blank line.

Serializers emit a canonical form (``.``/``@`` for movingai); parsing a
serialized map always round-trips.
"""

import csv
import math
from dataclasses import dataclass

import numpy as np

from .errors import MapParseError, ScenarioGenerationError
from .grid import Cell, GridMap, fine_components
from .search import PlanResult

MOVINGAI_FREE = frozenset(".GS")
MOVINGAI_BLOCKED = frozenset("@OTW")

RESULTS_CSV_FIELDS = (
    "map",
    "algo",
    "scenario",
    "seed",
    "status",
    "time_s",
    "cost",
    "expansions_total",
    "expansions_per_queue",
    "path_len",
)


def parse_movingai_map(text: str) -> GridMap:
    """Parse the 2D benchmark map format; raises MapParseError with a
    1-based line (and column, for glyph errors) on malformed input."""
    lines = text.splitlines()

    def want(idx: int, what: str) -> str:
        if idx >= len(lines):
            raise MapParseError(f"missing {what}", idx + 1)
        return lines[idx].rstrip("\r")

    header = want(0, "'type octile' header")
    if header.split() != ["type", "octile"]:
        raise MapParseError(f"expected 'type octile', got {header!r}", 1)

    def dim_line(idx: int, name: str) -> int:
        raw = want(idx, f"'{name} N' header")
        parts = raw.split()
        if len(parts) != 2 or parts[0] != name:
            raise MapParseError(f"expected '{name} N', got {raw!r}", idx + 1)
        try:
            value = int(parts[1])
        except ValueError:
            raise MapParseError(f"bad {name} value {parts[1]!r}", idx + 1) from None
        if value < 1:
            raise MapParseError(f"{name} must be positive, got {value}", idx + 1)
        return value

    height = dim_line(1, "height")
    width = dim_line(2, "width")
    if want(3, "'map' header") != "map":
        raise MapParseError(f"expected 'map', got {lines[3]!r}", 4)

    blocked = np.zeros((height, width), dtype=bool)
    for y in range(height):
        row = want(4 + y, f"map row {y + 1} of {height}").rstrip("\r")
        if len(row) != width:
            raise MapParseError(
                f"row has {len(row)} glyphs, expected {width}",
                5 + y,
                min(len(row), width) + 1,
            )
        for x, ch in enumerate(row):
            if ch in MOVINGAI_BLOCKED:
                blocked[y, x] = True
            elif ch not in MOVINGAI_FREE:
                raise MapParseError(f"unknown glyph {ch!r}", 5 + y, x + 1)
    for extra in range(4 + height, len(lines)):
        if lines[extra].strip():
            raise MapParseError("unexpected content after map rows", extra + 1)
    return GridMap((width, height), blocked)


def serialize_movingai(grid: GridMap) -> str:
    if grid.dim != 2:
        raise ValueError("movingai maps are 2D")
    w, h = grid.extents
    rows = ["".join("@" if grid.blocked[y, x] else "." for x in range(w)) for y in range(h)]
    return "\n".join(["type octile", f"height {h}", f"width {w}", "map", *rows]) + "\n"


def parse_vox3(text: str) -> GridMap:
    """Parse the 3D slice format; raises MapParseError on malformed input."""
    lines = [ln.rstrip("\r") for ln in text.splitlines()]
    if not lines:
        raise MapParseError("missing 'vox3 W H D' header", 1)
    parts = lines[0].split()
    if len(parts) != 4 or parts[0] != "vox3":
        raise MapParseError(f"expected 'vox3 W H D', got {lines[0]!r}", 1)
    try:
        w, h, d = (int(p) for p in parts[1:])
    except ValueError:
        raise MapParseError(f"bad dimensions in {lines[0]!r}", 1) from None
    if min(w, h, d) < 1:
        raise MapParseError(f"dimensions must be positive, got {w}x{h}x{d}", 1)

    blocked = np.zeros((d, h, w), dtype=bool)
    idx = 1
    for z in range(d):
        if z > 0:
            if idx >= len(lines) or lines[idx].strip():
                raise MapParseError(f"expected blank line before slice {z + 1}", idx + 1)
            idx += 1
        for y in range(h):
            if idx >= len(lines):
                raise MapParseError(
                    f"missing row {y + 1} of slice {z + 1}", len(lines) + 1
                )
            row = lines[idx]
            if len(row) != w:
                raise MapParseError(
                    f"row has {len(row)} glyphs, expected {w}",
                    idx + 1,
                    min(len(row), w) + 1,
                )
            for x, ch in enumerate(row):
                if ch == "#":
                    blocked[z, y, x] = True
                elif ch != ".":
                    raise MapParseError(f"unknown glyph {ch!r}", idx + 1, x + 1)
            idx += 1
    for extra in range(idx, len(lines)):
        if lines[extra].strip():
            raise MapParseError("unexpected content after last slice", extra + 1)
    return GridMap((w, h, d), blocked)


def serialize_vox3(grid: GridMap) -> str:
    if grid.dim != 3:
        raise ValueError("vox3 maps are 3D")
    w, h, d = grid.extents
    slices = []
    for z in range(d):
        slices.append(
            "\n".join(
                "".join("#" if grid.blocked[z, y, x] else "." for x in range(w))
                for y in range(h)
            )
        )
    return f"vox3 {w} {h} {d}\n" + "\n\n".join(slices) + "\n"


def load_map(path: str, fmt: str) -> GridMap:
    with open(path, encoding="utf-8") as fh:
        text = fh.read()
    if fmt == "movingai":
        return parse_movingai_map(text)
    if fmt == "vox3":
        return parse_vox3(text)
    raise ValueError(f"unknown map format {fmt!r}")


@dataclass(frozen=True)
class Scenario:
    map_id: str
    index: int
    start: Cell
    goal: Cell
    seed: int


def gen_scenarios(
    grid: GridMap,
    count: int,
    seed: int,
    ladder=None,
    map_id: str = "map",
    max_attempts: int = 10**6,
) -> list[Scenario]:
    """Sample `count` start/goal pairs of free cells in the same fine
    connected component, by rejection from a seeded generator.

    The pairs live on the unit lattice (planners that need sublattice
    endpoints reject unsuitable pairs themselves; the ladder argument is
    accepted for interface symmetry but does not constrain sampling).
    Raises ScenarioGenerationError when the attempt budget runs out.
    """
    free = np.flatnonzero(~grid.flat_blocked)
    if len(free) < 2:
        raise ScenarioGenerationError(
            f"map has {len(free)} free cells; need at least 2"
        )
    labels = fine_components(grid).ravel()
    rng = np.random.default_rng(seed)
    out: list[Scenario] = []
    attempts = 0
    chunk = 1024  # draws are batched; the accept/reject order is fixed
    while len(out) < count:
        if attempts >= max_attempts:
            raise ScenarioGenerationError(
                f"found {len(out)}/{count} connected pairs in {attempts} attempts"
            )
        n = min(chunk, max_attempts - attempts)
        draws = rng.integers(0, len(free), size=(n, 2))
        for a, b in draws:
            attempts += 1
            sa, sb = int(free[a]), int(free[b])
            if sa == sb or labels[sa] != labels[sb]:
                continue
            out.append(
                Scenario(map_id, len(out), grid.cell_of(sa), grid.cell_of(sb), seed)
            )
            if len(out) == count:
                break
    return out


@dataclass
class BenchRow:
    """One planner run, as written to the results CSV.

    status extends the planner statuses with "invalid" for runs whose
    input the planner rejected (e.g. endpoints off a required
    sublattice); those carry no cost, expansions or path.
    """

    map_id: str
    algo: str
    scenario: int
    seed: int
    status: str
    time_s: float
    cost: float | None
    expansions: list[int]
    path_len: int

    @classmethod
    def from_result(
        cls, map_id: str, algo: str, scenario: int, seed: int, result: PlanResult
    ) -> "BenchRow":
        solved = result.status == "solved"
        return cls(
            map_id=map_id,
            algo=algo,
            scenario=scenario,
            seed=seed,
            status=result.status,
            time_s=result.wall_time,
            cost=result.cost if solved else None,
            expansions=list(result.expansions),
            path_len=len(result.path),
        )

    @classmethod
    def invalid(cls, map_id: str, algo: str, scenario: int, seed: int) -> "BenchRow":
        return cls(map_id, algo, scenario, seed, "invalid", 0.0, None, [], 0)


def write_results_csv(rows, path: str) -> None:
    """Write bench rows sorted by (map, algo, scenario) so output files
    are deterministic regardless of execution order.  Costs and times
    use six decimals; per-queue expansion counts are |-separated."""
    ordered = sorted(rows, key=lambda r: (r.map_id, r.algo, r.scenario))
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(RESULTS_CSV_FIELDS)
        for r in ordered:
            cost = ""
            if r.cost is not None and math.isfinite(r.cost):
                cost = f"{r.cost:.6f}"
            writer.writerow(
                [
                    r.map_id,
                    r.algo,
                    r.scenario,
                    r.seed,
                    r.status,
                    f"{r.time_s:.6f}",
                    cost,
                    sum(r.expansions),
                    "|".join(str(e) for e in r.expansions),
                    r.path_len,
                ]
            )
