import json
import shutil
import subprocess

import pytest

from prohd import hausdorff_via_index, read_cloud
from prohd.cli import main


@pytest.fixture
def files(tmp_path):
    fa, fb = tmp_path / "a.bin", tmp_path / "b.bin"
    argv = ["gen", "--n-a", "400", "--n-b", "300", "--dim", "3", "--seed", "2", "--out-a", str(fa), "--out-b", str(fb)]
    assert main(argv) == 0
    return fa, fb


def test_gen_writes_clouds(files):
    a, b = (read_cloud(f) for f in files)
    assert (a.n, b.n, a.dim) == (400, 300, 3)
    assert b.points.min() >= 0.1


def test_gen_csv(tmp_path):
    argv = ["gen", "--n-a", "5", "--n-b", "6", "--dim", "2", "--format", "csv",
            "--out-a", str(tmp_path / "a.txt"), "--out-b", str(tmp_path / "b.txt")]
    assert main(argv) == 0
    assert (tmp_path / "a.txt").read_text().startswith("# n=5 dim=2")


@pytest.mark.parametrize("method", ["exact", "prohd", "random", "systematic"])
def test_hd_json(files, capsys, method):
    fa, fb = files
    capsys.readouterr()
    code = main(["hd", "--method", method, "--a", str(fa), "--b", str(fb), "--alpha", "0.1", "--with-exact", "--json"])
    assert code == 0
    out = json.loads(capsys.readouterr().out)
    exact = hausdorff_via_index(read_cloud(fa), read_cloud(fb)).value
    assert out["exact"] == exact
    assert out["method"] == method
    if method == "exact":
        assert out["estimate"] == exact and out["relative_error_percent"] == 0
    if method == "prohd":
        assert out["estimate"] <= out["bound_upper"]
        assert set(out["timings"]) >= {"selection", "index", "query"}


def test_hd_text_output(files, capsys):
    fa, fb = files
    assert main(["hd", "--a", str(fa), "--b", str(fb), "--mode", "subset-full", "--threads", "1"]) == 0
    text = capsys.readouterr().out
    assert "estimate:" in text and "bound_upper:" in text and "threads: 1" in text


def test_bench(tmp_path, capsys):
    conf = tmp_path / "sweep.json"
    conf.write_text(json.dumps({
        "dataset": {"generate": {"n_a": 200, "n_b": 200, "dim": 2}},
        "methods": ["exact", "prohd"],
        "alphas": [0.05, 0.1],
        "repetitions": 2,
    }))
    out = tmp_path / "res.jsonl"
    assert main(["bench", "--config", str(conf), "--out", str(out), "--format", "jsonl"]) == 0
    assert len(out.read_text().splitlines()) == 8


def test_usage_errors(files, tmp_path):
    fa, fb = files
    assert main([]) == 2
    assert main(["hd", "--method", "nope", "--a", str(fa), "--b", str(fb)]) == 2
    assert main(["hd", "--a", str(fa), "--b", str(fb), "--alpha", "2"]) == 2
    (tmp_path / "bad.json").write_text("{not json")
    assert main(["bench", "--config", str(tmp_path / "bad.json"), "--out", str(tmp_path / "r.csv")]) == 2


def test_data_errors(files, tmp_path):
    fa, _ = files
    missing = tmp_path / "nope.bin"
    assert main(["hd", "--a", str(fa), "--b", str(missing)]) == 3
    bad = tmp_path / "bad.bin"
    bad.write_bytes(b"JUNKJUNKJUNKJUNKJUNKJUNK")
    assert main(["hd", "--a", str(fa), "--b", str(bad)]) == 3
    other = tmp_path / "d2.csv"
    other.write_text("1,2\n3,4\n")
    assert main(["hd", "--a", str(fa), "--b", str(other)]) == 3


@pytest.mark.skipif(shutil.which("prohd") is None, reason="console script not installed")
def test_console_script(files):
    fa, fb = files
    res = subprocess.run(["prohd", "hd", "--method", "exact", "--a", str(fa), "--b", str(fb), "--json"],
                         capture_output=True, text=True, check=False)
    assert res.returncode == 0
    assert json.loads(res.stdout)["method"] == "exact"
