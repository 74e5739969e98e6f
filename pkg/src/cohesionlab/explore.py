"""Simplex scans and local search over discrete distributions.

Three modes: exhaustive enumeration of a discretized simplex
(compositions of a grid resolution), seeded Dirichlet(1) sampling, and
coordinate-pair mass-transfer hill climbing. Measure evaluation is
vectorized over batches of dense probability vectors so large scans
stay cheap.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from itertools import combinations
from math import comb

import numpy as np

from .cohesion import constant_bound
from .dist import JointDistribution, from_dense
from .errors import ScanError
from .maxent import batch_divergence, ipf_project_batch

GRID_POINT_LIMIT = 10**8
DEFAULT_SAMPLES = 100_000
DELTA_START = 0.125
DELTA_MIN = 2.0**-26


@dataclass(frozen=True)
class ScanConfig:
    n: int
    q: int
    mode: str = "random"  # grid | random | search
    resolution: int = 6
    sample_count: int = DEFAULT_SAMPLES
    seed: int = 0
    measures: tuple = ("c1", "c2", "c3")

    def __post_init__(self):
        if self.resolution < 1:
            raise ScanError("resolution must be >= 1")
        if self.sample_count < 1:
            raise ScanError("sample count must be >= 1")
        if self.mode not in ("grid", "random", "search"):
            raise ScanError(f"unknown scan mode {self.mode!r}")
        for m in self.measures:
            parse_measure(m, self.n)

    @property
    def dims(self) -> int:
        return self.q**self.n


def parse_measure(measure: str, n: int) -> tuple[str, int]:
    """'c2' -> ('c', 2); cohesion and divergence orders in 1..n-1."""
    kind, order = measure[:1], measure[1:]
    if kind not in ("c", "d") or not order.isdigit():
        raise ScanError(f"unknown measure id {measure!r}")
    k = int(order)
    if not 1 <= k <= n - 1:
        raise ScanError(f"measure {measure!r}: order outside 1..{n - 1}")
    return kind, k


# ---------------------------------------------------------------------------
# Point streams
# ---------------------------------------------------------------------------

def compositions(total: int, parts: int):
    """All ways of writing `total` as an ordered sum of `parts`
    nonnegative integers, first part descending."""
    if parts == 1:
        yield (total,)
        return
    for head in range(total, -1, -1):
        for rest in compositions(total - head, parts - 1):
            yield (head,) + rest


def grid_count(resolution: int, dims: int) -> int:
    return comb(resolution + dims - 1, dims - 1)


def grid_vectors(cfg: ScanConfig):
    """Stream of dense probability vectors on the grid, deterministic order."""
    count = grid_count(cfg.resolution, cfg.dims)
    if count > GRID_POINT_LIMIT:
        raise ScanError(
            f"grid has {count} points, above the limit {GRID_POINT_LIMIT}"
        )
    r = float(cfg.resolution)
    for parts in compositions(cfg.resolution, cfg.dims):
        yield np.asarray(parts, dtype=float) / r


def grid_enumerate(cfg: ScanConfig):
    """Stream of JointDistributions on the discretized simplex."""
    for vec in grid_vectors(cfg):
        yield from_dense(vec.tolist(), cfg.n, cfg.q)


def sample_matrix(rng: np.random.Generator, count: int, dims: int) -> np.ndarray:
    return rng.dirichlet(np.ones(dims), size=count)


def random_sample(cfg: ScanConfig):
    """Stream of Dirichlet(1) samples, reproducible from the seed."""
    rng = np.random.default_rng(cfg.seed)
    for row in sample_matrix(rng, cfg.sample_count, cfg.dims):
        yield from_dense(row.tolist(), cfg.n, cfg.q)


# ---------------------------------------------------------------------------
# Vectorized measures over dense batches
# ---------------------------------------------------------------------------

def _xlogx_entropy(arr: np.ndarray, axis, base: float) -> np.ndarray:
    with np.errstate(divide="ignore", invalid="ignore"):
        terms = np.where(arr > 0.0, arr * np.log(np.where(arr > 0.0, arr, 1.0)), 0.0)
    return -terms.sum(axis=axis) / math.log(base)


def batch_subset_entropies(P: np.ndarray, n: int, q: int, k: int, base: float) -> np.ndarray:
    """Sum over all k-subsets of marginal entropies; P is (N, q^n)."""
    cube = P.reshape((P.shape[0],) + (q,) * n)
    total = np.zeros(P.shape[0])
    for idx in combinations(range(n), k):
        axes = tuple(ax + 1 for ax in range(n) if ax not in idx)
        marg = cube.sum(axis=axes) if axes else cube
        total += _xlogx_entropy(marg.reshape(P.shape[0], -1), 1, base)
    return total

def batch_cohesion(P: np.ndarray, n: int, q: int, k: int, base: float | None = None) -> np.ndarray:
    """Cohesion-k for each row of a dense (N, q^n) batch."""
    b = float(q if base is None else base)
    joint = _xlogx_entropy(P, 1, b)
    return batch_subset_entropies(P, n, q, k, b) - comb(n - 1, k - 1) * joint


def batch_cohesion_all(P: np.ndarray, n: int, q: int, base: float | None = None) -> np.ndarray:
    """(N, n-1) array with column k-1 holding Cohesion-k per row."""
    b = float(q if base is None else base)
    joint = _xlogx_entropy(P, 1, b)
    cols = []
    for k in range(1, n):
        cols.append(batch_subset_entropies(P, n, q, k, b) - comb(n - 1, k - 1) * joint)
    return np.stack(cols, axis=1)


def batch_measure(P: np.ndarray, n: int, q: int, measure: str,
                  base: float | None = None, tol: float = 1e-10,
                  max_sweeps: int = 10_000) -> np.ndarray:
    kind, k = parse_measure(measure, n)
    b = float(q if base is None else base)
    if kind == "c":
        return batch_cohesion(P, n, q, k, b)
    cube = P.reshape((P.shape[0],) + (q,) * n)
    proj, _, _ = ipf_project_batch(cube, k, tol, max_sweeps)
    return batch_divergence(cube, proj, b)


# ---------------------------------------------------------------------------
# Local search
# ---------------------------------------------------------------------------

@dataclass
class SearchResult:
    distribution: JointDistribution
    value: float
    measure: str
    restarts: int
    evaluations: int
    seed: int


def make_objective(n: int, q: int, measure: str, base: float | None = None):
    kind, k = parse_measure(measure, n)
    b = float(q if base is None else base)
    shape = (1,) + (q,) * n
    if kind == "c":
        axes_sets = [
            tuple(ax + 1 for ax in range(n) if ax not in idx)
            for idx in combinations(range(n), k)
        ]
        coeff = comb(n - 1, k - 1)
        logb = math.log(b)

        def objective(vec: np.ndarray) -> float:
            cube = vec.reshape(shape)
            total = 0.0
            for axes in axes_sets:
                m = cube.sum(axis=axes).ravel()
                nz = m[m > 0.0]
                total -= (nz * np.log(nz)).sum()
            nz = vec[vec > 0.0]
            total += coeff * (nz * np.log(nz)).sum()
            return total / logb

        return objective

    def objective(vec: np.ndarray) -> float:
        cube = vec.reshape(shape)
        proj, _, _ = ipf_project_batch(cube, k, 1e-9, 2000)
        return float(batch_divergence(cube, proj, b)[0])

    return objective


def hill_climb(vec: np.ndarray, objective, delta_start: float = DELTA_START,
               delta_min: float = DELTA_MIN):
    """Coordinate-pair mass transfer: move delta between atom pairs while
    it improves the objective, halving delta down to delta_min."""
    vec = vec.astype(float).copy()
    val = objective(vec)
    dims = vec.shape[0]
    evals = 1
    delta = delta_start
    while delta >= delta_min:
        improved = True
        while improved:
            improved = False
            for i in range(dims):
                if vec[i] <= 0.0:
                    continue
                step = min(delta, vec[i])
                for j in range(dims):
                    if j == i:
                        continue
                    cand = vec.copy()
                    cand[i] -= step
                    cand[j] += step
                    cv = objective(cand)
                    evals += 1
                    if cv > val + 1e-14:
                        vec, val = cand, cv
                        improved = True
                        step = min(delta, vec[i])
                        if step <= 0.0:
                            break
        delta /= 2.0
    return vec, val, evals


def local_search_max(
    cfg: ScanConfig,
    objective: str | None = None,
    restarts: int = 8,
    warm_starts=None,
    base: float | None = None,
    delta_start: float = DELTA_START,
    delta_min: float = DELTA_MIN,
) -> SearchResult:
    """Best distribution over hill-climbing restarts; warm starts (dense
    vectors) are climbed first, then Dirichlet restarts from the seed."""
    measure = objective or cfg.measures[0]
    f = make_objective(cfg.n, cfg.q, measure, base)
    rng = np.random.default_rng(cfg.seed)
    starts = [np.asarray(w, dtype=float) for w in (warm_starts or [])]
    need = max(restarts - len(starts), 0)
    if need:
        starts.extend(sample_matrix(rng, need, cfg.dims))
    best_vec, best_val, total_evals = None, -math.inf, 0
    for start in starts:
        vec, val, evals = hill_climb(start, f, delta_start, delta_min)
        total_evals += evals
        if val > best_val:
            best_vec, best_val = vec, val
    best_vec = np.maximum(best_vec, 0.0)
    best_vec /= best_vec.sum()
    return SearchResult(
        from_dense(best_vec.tolist(), cfg.n, cfg.q),
        best_val,
        measure,
        len(starts),
        total_evals,
        cfg.seed,
    )


# ---------------------------------------------------------------------------
# Scatter emission
# ---------------------------------------------------------------------------

def _metadata_lines(cfg: ScanConfig, extra: dict | None = None) -> list[str]:
    meta = {
        "tool": "cohesionlab-scan",
        "n": cfg.n,
        "q": cfg.q,
        "mode": cfg.mode,
        "resolution": cfg.resolution,
        "samples": cfg.sample_count,
        "seed": cfg.seed,
        "measures": ",".join(cfg.measures),
        "units": "base-q",
    }
    if extra:
        meta.update(extra)
    return [f"# {k}={v}" for k, v in meta.items()]


def emit_scatter(cfg: ScanConfig, out_dir, chunk: int = 4096) -> dict:
    """Write scatter + overlay CSVs for a scan; returns a summary.

    scatter.csv holds one row per scanned point with the requested
    measures in base-q units. Overlay files carry the bound lines:
    adjacent-order rays y = ((n-k)/k) x, the constant ceilings, and the
    divergence-bound diagonal y = x.
    """
    from pathlib import Path

    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    n, q = cfg.n, cfg.q

    if cfg.mode == "grid":
        stream = grid_vectors(cfg)
    elif cfg.mode == "random":
        rng = np.random.default_rng(cfg.seed)

        def _gen():
            left = cfg.sample_count
            while left > 0:
                take = min(chunk, left)
                yield from sample_matrix(rng, take, cfg.dims)
                left -= take

        stream = _gen()
    else:
        raise ScanError("emit_scatter supports grid and random modes")

    count = 0
    maxima = {m: -math.inf for m in cfg.measures}
    scatter_path = out / "scatter.csv"
    with scatter_path.open("w") as fh:
        fh.write("\n".join(_metadata_lines(cfg)) + "\n")
        fh.write("index," + ",".join(cfg.measures) + "\n")
        batch = []
        index = 0

        def flush():
            nonlocal index, count
            if not batch:
                return
            P = np.stack(batch)
            cols = [batch_measure(P, n, q, m) for m in cfg.measures]
            for m, col in zip(cfg.measures, cols):
                maxima[m] = max(maxima[m], float(col.max()))
            for row in zip(*cols):
                fh.write(f"{index}," + ",".join(f"{v:.12g}" for v in row) + "\n")
                index += 1
            count += P.shape[0]
            batch.clear()

        for vec in stream:
            batch.append(vec)
            if len(batch) >= chunk:
                flush()
        flush()

    with (out / "overlay_eq1.csv").open("w") as fh:
        fh.write("\n".join(_metadata_lines(cfg, {"overlay": "adjacent-order rays"})) + "\n")
        fh.write("k,slope\n")
        for k in range(1, n - 1):
            fh.write(f"{k},{(n - k) / k:.12g}\n")
    with (out / "overlay_bounds.csv").open("w") as fh:
        fh.write("\n".join(_metadata_lines(cfg, {"overlay": "constant ceilings"})) + "\n")
        fh.write("k,constant_bound\n")
        for k in range(1, n):
            fh.write(f"{k},{constant_bound(n, k):.12g}\n")
    with (out / "overlay_eq4.csv").open("w") as fh:
        fh.write("\n".join(_metadata_lines(cfg, {"overlay": "divergence bound diagonal"})) + "\n")
        fh.write("slope,intercept\n")
        fh.write("1,0\n")

    return {"points": count, "maxima": maxima, "out": str(out)}
