import importlib.util
import json
import os
import subprocess
import sys
from pathlib import Path

import numpy as np
import pytest

from prohd import ProHdConfig, backend_name, generate_random_clouds, hausdorff_via_index, proj_hausdorff
from prohd._accel import USE_NUMBA

SCRIPT = """
import json, sys
from prohd import ProHdConfig, backend_name, generate_random_clouds, hausdorff_via_index, proj_hausdorff
a, b = generate_random_clouds(3000, 2500, 6, 0.1, seed=21)
h = hausdorff_via_index(a, b)
p = proj_hausdorff(a, b, ProHdConfig(alpha=0.02, mode="subset-full", seed=3))
print(json.dumps({"backend": backend_name(), "h": h.value.hex(), "w": [h.witness_a, h.witness_b],
                  "p": p.estimate.hex(), "size": [p.size_a, p.size_b]}))
"""


def run_with(env_flag):
    env = dict(os.environ)
    env.pop("PROHD_DISABLE_NUMBA", None)
    if env_flag:
        env["PROHD_DISABLE_NUMBA"] = "1"
    res = subprocess.run([sys.executable, "-c", SCRIPT], capture_output=True, text=True, env=env, check=True)
    return json.loads(res.stdout)


def test_numpy_fallback_matches_default_backend():
    fallback = run_with(True)
    assert fallback["backend"] == "numpy"
    a, b = generate_random_clouds(3000, 2500, 6, 0.1, seed=21)
    h = hausdorff_via_index(a, b)
    p = proj_hausdorff(a, b, ProHdConfig(alpha=0.02, mode="subset-full", seed=3))
    assert fallback["h"] == h.value.hex() and fallback["w"] == [h.witness_a, h.witness_b]
    assert fallback["p"] == p.estimate.hex() and fallback["size"] == [p.size_a, p.size_b]


def test_backend_name_is_known():
    assert backend_name() in ("numba", "numpy")
    assert np.isfinite(hausdorff_via_index([[0.0]], [[1.0]]).value)


def test_benchmark_script_runs(capsys):
    if not USE_NUMBA:
        pytest.skip("numba backend disabled")
    path = Path(__file__).parent.parent / "benchmarks" / "bench_backends.py"
    spec = importlib.util.spec_from_file_location("bench_backends", path)
    mod = importlib.util.module_from_spec(spec)
    spec.loader.exec_module(mod)
    mod.main(["--n", "300", "--dim", "3", "--repeat", "1"])
    assert "directed_max_sq" in capsys.readouterr().out
