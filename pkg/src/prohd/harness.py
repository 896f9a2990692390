"""Experiment plumbing: synthetic clouds, error metric, sweep runner, result files."""

from __future__ import annotations

import csv
import dataclasses
import itertools
import json
import logging
import math
import time
from dataclasses import dataclass
from pathlib import Path
from typing import Any

import numpy as np

from ._accel import threads
from .baselines import SampleSpec, random_sampling_hd, systematic_sampling_hd
from .cloudio import read_cloud
from .errors import DatasetError
from .estimator import MODES, ProHdConfig, proj_hausdorff
from .geometry import PointCloud
from .index import hausdorff_via_index
from .selection import check_alpha

log = logging.getLogger(__name__)

METHODS = ("exact", "prohd", "random", "systematic")


def generate_random_clouds(
    n_a: int, n_b: int, dim: int, offset: float = 0.1, seed: int = 0, shift: str = "b"
) -> tuple[PointCloud, PointCloud]:
    """Two clouds drawn uniformly from the unit cube, ``B`` shifted by ``offset``.

    ``shift="both"`` moves both clouds instead, which only translates the
    pair and leaves every Hausdorff distance unchanged.
    """
    if n_a < 1 or n_b < 1 or dim < 1:
        raise ValueError("n_a, n_b and dim must be positive")
    if shift not in ("b", "both"):
        raise ValueError("shift must be 'b' or 'both'")
    rng = np.random.Generator(np.random.PCG64(seed))
    a = rng.random((n_a, dim))
    b = rng.random((n_b, dim)) + offset
    if shift == "both":
        a += offset
    return PointCloud(a), PointCloud(b)


def relative_error(estimate: float, exact: float) -> float:
    """``|estimate - exact| / exact`` in percent.

    For ``exact == 0`` the result is 0 when the estimate is also 0 and NaN
    (undefined) otherwise.
    """
    if exact == 0:
        return 0.0 if estimate == 0 else math.nan
    return abs(estimate - exact) / exact * 100.0


@dataclass(frozen=True)
class GeneratedDataset:
    n_a: int
    n_b: int
    dim: int
    offset: float = 0.1
    seed: int | None = None
    shift: str = "b"

    def dataset_id(self, seed: int) -> str:
        s = self.seed if self.seed is not None else seed
        return f"uniform-{self.n_a}x{self.n_b}-d{self.dim}-off{self.offset:g}-s{s}"

    def load(self, seed: int) -> tuple[PointCloud, PointCloud]:
        s = self.seed if self.seed is not None else seed
        return generate_random_clouds(self.n_a, self.n_b, self.dim, self.offset, s, self.shift)


@dataclass(frozen=True)
class FileDataset:
    a: str
    b: str

    def dataset_id(self, seed: int) -> str:
        return f"{Path(self.a).name}|{Path(self.b).name}"

    def load(self, seed: int) -> tuple[PointCloud, PointCloud]:
        for p in (self.a, self.b):
            if not Path(p).exists():
                raise FileNotFoundError(f"point file not found: {p}")
        return read_cloud(self.a), read_cloud(self.b)


@dataclass(frozen=True)
class ExperimentConfig:
    """One method on one dataset, repeated with seeds ``seed .. seed + repetitions - 1``.

    ``match_prohd_sizes`` makes the uniform baseline draw exactly as many
    points per cloud as ProHD selects at the same ``alpha``.
    """

    method: str
    dataset: GeneratedDataset | FileDataset
    alpha: float = 0.01
    mode: str = "subset-subset"
    seed: int = 0
    repetitions: int = 1
    threads: int | None = None
    match_prohd_sizes: bool = False

    def __post_init__(self):
        if self.method not in METHODS:
            raise ValueError(f"method must be one of {METHODS}, got {self.method!r}")
        check_alpha(self.alpha)
        if self.mode not in MODES:
            raise ValueError(f"mode must be one of {MODES}, got {self.mode!r}")
        if self.repetitions < 1:
            raise ValueError("repetitions must be at least 1")


PHASES = ("selection", "pca", "index", "query", "bound")


@dataclass
class ExperimentRecord:
    method: str
    dataset_id: str
    n_a: int
    n_b: int
    dim: int
    alpha: float
    mode: str
    seed: int
    estimate: float
    exact_value: float
    relative_error_percent: float | None
    bound_upper: float | None
    size_a: int
    size_b: int
    wall_time_s: float
    time_selection_s: float | None = None
    time_pca_s: float | None = None
    time_index_s: float | None = None
    time_query_s: float | None = None
    time_bound_s: float | None = None


COLUMNS = tuple(f.name for f in dataclasses.fields(ExperimentRecord))
_TYPES = {f.name: f.type for f in dataclasses.fields(ExperimentRecord)}


def _run_method(cfg: ExperimentConfig, a: PointCloud, b: PointCloud, seed: int) -> dict[str, Any]:
    clock = time.perf_counter
    if cfg.method == "prohd":
        t = clock()
        rep = proj_hausdorff(a, b, ProHdConfig(cfg.alpha, cfg.mode, seed=seed))
        wall = clock() - t
        out = dict(
            estimate=rep.estimate,
            bound_upper=rep.bound_upper,
            size_a=rep.size_a,
            size_b=rep.size_b,
            wall_time_s=wall,
        )
        for p in PHASES:
            out[f"time_{p}_s"] = rep.timings.get(p)
        return out
    if cfg.method == "random":
        sizes = None
        if cfg.match_prohd_sizes:
            ref = proj_hausdorff(a, b, ProHdConfig(cfg.alpha, cfg.mode, seed=seed))
            sizes = (ref.size_a, ref.size_b)
        t = clock()
        est = random_sampling_hd(a, b, SampleSpec(cfg.alpha, seed, "uniform"), sizes=sizes)
        wall = clock() - t
    else:
        t = clock()
        est = systematic_sampling_hd(a, b, SampleSpec(cfg.alpha, seed, "systematic"))
        wall = clock() - t
    return dict(estimate=est.estimate, bound_upper=None, size_a=est.size_a, size_b=est.size_b, wall_time_s=wall)


def run_experiment(cfg: ExperimentConfig, exact_cache: dict | None = None) -> list[ExperimentRecord]:
    """Run every repetition of ``cfg`` against an exact reference.

    The reference is computed with the flat index and cached per dataset
    (pass ``exact_cache`` to share it across configs). Wall times cover the
    method call only, not file loading.
    """
    cache = {} if exact_cache is None else exact_cache
    records = []
    with threads(cfg.threads):
        for rep in range(cfg.repetitions):
            seed = cfg.seed + rep
            ds_id = cfg.dataset.dataset_id(seed)
            try:
                a, b = cfg.dataset.load(seed)
            except (OSError, ValueError) as exc:
                raise DatasetError(f"loading dataset {ds_id}: {exc}") from exc

            if ds_id not in cache:
                t = time.perf_counter()
                value = hausdorff_via_index(a, b).value
                cache[ds_id] = (value, time.perf_counter() - t)
            exact, exact_wall = cache[ds_id]

            if cfg.method == "exact":
                out = dict(estimate=exact, bound_upper=None, size_a=a.n, size_b=b.n, wall_time_s=exact_wall)
            else:
                out = _run_method(cfg, a, b, seed)

            err = relative_error(out["estimate"], exact)
            records.append(
                ExperimentRecord(
                    method=cfg.method,
                    dataset_id=ds_id,
                    n_a=a.n,
                    n_b=b.n,
                    dim=a.dim,
                    alpha=cfg.alpha,
                    mode=cfg.mode if cfg.method == "prohd" else "n/a",
                    seed=seed,
                    exact_value=exact,
                    relative_error_percent=None if math.isnan(err) else err,
                    **out,
                )
            )
            log.info("%s %s seed=%d estimate=%.6g exact=%.6g", cfg.method, ds_id, seed, out["estimate"], exact)
    return records


def _as_list(x) -> list:
    return list(x) if isinstance(x, (list, tuple)) else [x]


def _datasets_from(spec: dict) -> list[GeneratedDataset | FileDataset]:
    if "generate" in spec:
        gen = dict(spec["generate"])
        keys = list(gen)
        out = []
        for combo in itertools.product(*(_as_list(gen[k]) for k in keys)):
            out.append(GeneratedDataset(**dict(zip(keys, combo))))
        return out
    if "a" in spec and "b" in spec:
        return [FileDataset(str(spec["a"]), str(spec["b"]))]
    raise ValueError("dataset needs either 'generate' or both 'a' and 'b'")


def expand_sweep(conf: dict) -> list[ExperimentConfig]:
    """Expand a sweep description into individual experiment configs.

    Recognised keys: ``dataset`` or ``datasets``, ``method``/``methods``,
    ``alpha``/``alphas``, ``mode``/``modes``, ``seed``, ``repetitions``,
    ``threads``, ``match_prohd_sizes``. Any list inside ``generate`` is
    expanded as a grid axis.
    """
    ds_specs = conf.get("datasets", [conf["dataset"]] if "dataset" in conf else None)
    if not ds_specs:
        raise ValueError("sweep config needs 'dataset' or 'datasets'")
    datasets = [d for spec in ds_specs for d in _datasets_from(spec)]
    methods = _as_list(conf.get("methods", conf.get("method", "prohd")))
    alphas = _as_list(conf.get("alphas", conf.get("alpha", 0.01)))
    modes = _as_list(conf.get("modes", conf.get("mode", "subset-subset")))
    common = dict(
        seed=int(conf.get("seed", 0)),
        repetitions=int(conf.get("repetitions", 1)),
        threads=conf.get("threads"),
        match_prohd_sizes=bool(conf.get("match_prohd_sizes", False)),
    )
    out = []
    for ds, method, alpha in itertools.product(datasets, methods, alphas):
        for mode in modes if method == "prohd" else modes[:1]:
            out.append(ExperimentConfig(method=method, dataset=ds, alpha=float(alpha), mode=mode, **common))
    return out


def load_sweep(path) -> list[ExperimentConfig]:
    with open(path, encoding="utf-8") as fh:
        return expand_sweep(json.load(fh))


def run_sweep(configs: list[ExperimentConfig]) -> list[ExperimentRecord]:
    cache: dict = {}
    records = []
    for cfg in configs:
        records.extend(run_experiment(cfg, cache))
    return records


def _fmt(v) -> str:
    if v is None:
        return ""
    if isinstance(v, float):
        return format(v, ".17g")
    return str(v)


def emit_results(records: list[ExperimentRecord], path, format: str = "csv") -> Path:
    """Write one row per record, columns in :data:`COLUMNS` order."""
    if not records:
        raise ValueError("no records")
    path = Path(path)
    rows = [dataclasses.asdict(r) for r in records]
    if format == "csv":
        with open(path, "w", newline="", encoding="utf-8") as fh:
            w = csv.writer(fh, lineterminator="\n")
            w.writerow(COLUMNS)
            for row in rows:
                w.writerow([_fmt(row[c]) for c in COLUMNS])
    elif format in ("jsonl", "json-lines"):
        with open(path, "w", encoding="utf-8") as fh:
            for row in rows:
                fh.write(json.dumps({c: row[c] for c in COLUMNS}) + "\n")
    else:
        raise ValueError(f"unknown results format {format!r}")
    return path


def _parse(name: str, raw: str):
    if raw == "":
        return None
    kind = _TYPES[name]
    if kind.startswith("int"):
        return int(raw)
    if kind.startswith("float"):
        return float(raw)
    return raw


def read_results(path, format: str | None = None) -> list[ExperimentRecord]:
    path = Path(path)
    format = format or ("csv" if path.suffix.lower() == ".csv" else "jsonl")
    with open(path, newline="", encoding="utf-8") as fh:
        if format == "csv":
            reader = csv.DictReader(fh)
            return [ExperimentRecord(**{k: _parse(k, v) for k, v in row.items()}) for row in reader]
        return [ExperimentRecord(**json.loads(line)) for line in fh if line.strip()]
