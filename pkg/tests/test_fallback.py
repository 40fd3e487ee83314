"""The pure-Python backend must match the compiled one bit for bit.

MRA_NO_NUMBA is read at import time, so the fallback runs in a
subprocess and reports its results as JSON.
"""

import json
import os
import subprocess
import sys

import pytest

from mrastar import NUMBA_ENABLED
from mrastar import search as S
from mrastar import synthetic as syn

_PROBE = r"""
import json, sys
from mrastar import NUMBA_ENABLED
from mrastar import search as S
from mrastar import synthetic as syn
from mrastar.baselines import dijkstra_optimal

grid, start, goal = syn.corridor_instance(3)
res = S.plan(S.Problem(grid, start, goal, ladder=[1, 7]),
             S.PlannerConfig(policy="dts", seed=7), log_expansions=True)
rnd = syn.random_grid((32, 32), 0.3, seed=9)
print(json.dumps({
    "numba": NUMBA_ENABLED,
    "status": res.status,
    "cost": res.cost.hex(),
    "expansions": res.expansions,
    "generated": res.generated,
    "path": res.path,
    "log_len": len(res.expansion_log),
    "opt": dijkstra_optimal(rnd, (0, 0), (31, 31)).hex(),
}))
"""


def _probe(no_numba: bool) -> dict:
    env = dict(os.environ)
    if no_numba:
        env["MRA_NO_NUMBA"] = "1"
    else:
        env.pop("MRA_NO_NUMBA", None)
    out = subprocess.run(
        [sys.executable, "-c", _PROBE],
        capture_output=True,
        text=True,
        env=env,
        check=True,
    )
    return json.loads(out.stdout)


@pytest.mark.skipif(not NUMBA_ENABLED, reason="compiled backend unavailable")
def test_fallback_backend_bitwise_equivalent():
    fast = _probe(no_numba=False)
    slow = _probe(no_numba=True)
    assert fast["numba"] is True and slow["numba"] is False
    for key in ("status", "cost", "expansions", "generated", "path",
                "log_len", "opt"):
        assert fast[key] == slow[key], key


def test_flag_values(monkeypatch):
    from mrastar import kernels

    monkeypatch.delenv("MRA_NO_NUMBA", raising=False)
    assert not kernels._numba_disabled()
    for truthy in ("1", "true", "yes", "TRUE"):
        monkeypatch.setenv("MRA_NO_NUMBA", truthy)
        assert kernels._numba_disabled()
    for falsy in ("", "0", "false", "no"):
        monkeypatch.setenv("MRA_NO_NUMBA", falsy)
        assert not kernels._numba_disabled()


def test_inprocess_run_matches_subprocess_fallback():
    # guards against env leakage: the in-process backend (whichever it
    # is) agrees with the fallback subprocess on the same query
    grid, start, goal = syn.corridor_instance(3)
    res = S.plan(S.Problem(grid, start, goal, ladder=[1, 7]),
                 S.PlannerConfig(policy="dts", seed=7))
    slow = _probe(no_numba=True)
    assert res.status == slow["status"]
    assert res.cost.hex() == slow["cost"]
    assert res.expansions == slow["expansions"]
