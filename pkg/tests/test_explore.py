import math

import numpy as np
import pytest

from cohesionlab.cohesion import cohesion_k, constant_bound
from cohesionlab.dist import JointDistribution, to_dense
from cohesionlab.errors import ScanError
from cohesionlab.explore import (
    ScanConfig,
    batch_cohesion,
    batch_cohesion_all,
    batch_measure,
    compositions,
    emit_scatter,
    grid_count,
    grid_enumerate,
    hill_climb,
    local_search_max,
    make_objective,
    parse_measure,
    random_sample,
    sample_matrix,
)
from cohesionlab.maxent import check_eq4_bound
from conftest import random_distribution


class TestConfig:
    def test_measure_parsing(self):
        assert parse_measure("c2", 4) == ("c", 2)
        assert parse_measure("d1", 3) == ("d", 1)

    def test_bad_measure_rejected(self):
        with pytest.raises(ScanError, match="unknown measure"):
            parse_measure("x1", 3)
        with pytest.raises(ScanError, match="outside"):
            parse_measure("c3", 3)

    def test_bad_mode_rejected(self):
        with pytest.raises(ScanError, match="mode"):
            ScanConfig(3, 2, mode="sweep")

    def test_config_validates_measures(self):
        with pytest.raises(ScanError):
            ScanConfig(3, 2, measures=("c5",))


class TestGrid:
    def test_composition_count(self):
        for total, parts in [(3, 2), (4, 3), (6, 4)]:
            got = list(compositions(total, parts))
            assert len(got) == grid_count(total, parts)
            assert len(set(got)) == len(got)
            assert all(sum(c) == total for c in got)

    def test_grid_enumerate_valid_distributions(self):
        cfg = ScanConfig(2, 2, mode="grid", resolution=3, measures=("c1",))
        dists = list(grid_enumerate(cfg))
        assert len(dists) == grid_count(3, 4)
        for d in dists:
            assert abs(sum(d.atoms.values()) - 1.0) < 1e-12

    def test_grid_limit(self):
        cfg = ScanConfig(3, 3, mode="grid", resolution=40, measures=("c1", "c2"))
        with pytest.raises(ScanError, match="limit"):
            list(grid_enumerate(cfg))


class TestSampling:
    def test_seed_reproducible(self):
        cfg = ScanConfig(2, 2, sample_count=5, seed=9, measures=("c1",))
        a = [to_dense(d) for d in random_sample(cfg)]
        b = [to_dense(d) for d in random_sample(cfg)]
        assert a == b

    def test_seeds_differ(self):
        a = next(iter(random_sample(ScanConfig(2, 2, sample_count=1, seed=1, measures=("c1",)))))
        b = next(iter(random_sample(ScanConfig(2, 2, sample_count=1, seed=2, measures=("c1",)))))
        assert a.atoms != b.atoms

    def test_sample_matrix_rows_normalized(self):
        rows = sample_matrix(np.random.default_rng(0), 100, 8)
        assert np.allclose(rows.sum(axis=1), 1.0)
        assert (rows >= 0).all()


class TestBatchMeasures:
    def test_batch_cohesion_matches_scalar(self):
        rng = np.random.default_rng(61)
        n, q = 3, 2
        P = sample_matrix(rng, 40, q**n)
        for k in (1, 2):
            vals = batch_cohesion(P, n, q, k)
            for i in range(P.shape[0]):
                from cohesionlab.dist import from_dense

                p = from_dense(P[i].tolist(), n, q)
                assert vals[i] == pytest.approx(cohesion_k(p, k), abs=1e-9)

    def test_batch_cohesion_all_consistent(self):
        rng = np.random.default_rng(67)
        n, q = 4, 2
        P = sample_matrix(rng, 25, q**n)
        allk = batch_cohesion_all(P, n, q)
        assert allk.shape == (25, 3)
        for k in (1, 2, 3):
            assert np.allclose(allk[:, k - 1], batch_cohesion(P, n, q, k))

    def test_batch_divergence_measure(self):
        rng = np.random.default_rng(71)
        n, q = 3, 2
        P = sample_matrix(rng, 10, q**n)
        vals = batch_measure(P, n, q, "d2", base=2.0)
        from cohesionlab.dist import from_dense

        for i in range(10):
            p = from_dense(P[i].tolist(), n, q)
            rep = check_eq4_bound(p, 2, base=2.0)
            assert vals[i] == pytest.approx(rep.divergence, abs=1e-7)

    def test_large_batch_fast(self):
        import time

        rng = np.random.default_rng(73)
        P = sample_matrix(rng, 100_000, 16)
        start = time.perf_counter()
        vals = batch_cohesion(P, 4, 2, 2, 2.0)
        assert time.perf_counter() - start < 30.0
        assert vals.max() < 5.0 + 1e-9  # never above the proven peak


class TestSearch:
    def test_objective_matches_cohesion(self):
        rng = np.random.default_rng(79)
        f = make_objective(4, 2, "c2", 2.0)
        for _ in range(10):
            vec = sample_matrix(rng, 1, 16)[0]
            from cohesionlab.dist import from_dense

            p = from_dense(vec.tolist(), 4, 2)
            assert f(vec) == pytest.approx(cohesion_k(p, 2, 2.0), abs=1e-9)

    def test_hill_climb_improves(self):
        rng = np.random.default_rng(83)
        f = make_objective(4, 2, "c2", 2.0)
        start = sample_matrix(rng, 1, 16)[0]
        vec, val, evals = hill_climb(start, f, delta_min=2.0**-8)
        assert val >= f(start) - 1e-12
        assert abs(vec.sum() - 1.0) < 1e-9
        assert evals > 1

    def test_search_finds_five_bit_peak(self):
        cfg = ScanConfig(4, 2, mode="search", seed=0, measures=("c2",))
        # warm starts from the best Dirichlet draws keep this fast
        rng = np.random.default_rng(cfg.seed)
        P = sample_matrix(rng, 2000, 16)
        vals = batch_cohesion(P, 4, 2, 2, 2.0)
        warm = [P[i] for i in np.argsort(vals)[-3:]]
        result = local_search_max(cfg, "c2", restarts=3, warm_starts=warm, base=2.0)
        assert result.value == pytest.approx(5.0, abs=1e-6)

    def test_search_result_distribution_consistent(self):
        cfg = ScanConfig(3, 2, mode="search", seed=5, measures=("c1",))
        result = local_search_max(cfg, restarts=2, base=2.0)
        assert result.value <= constant_bound(3, 1) + 1e-9
        assert cohesion_k(result.distribution, 1, 2.0) == pytest.approx(
            result.value, abs=1e-6
        )


class TestEmitScatter:
    def test_files_and_counts(self, tmp_path):
        cfg = ScanConfig(3, 2, mode="random", sample_count=200, seed=2,
                         measures=("c1", "c2"))
        summary = emit_scatter(cfg, tmp_path)
        assert summary["points"] == 200
        lines = (tmp_path / "scatter.csv").read_text().splitlines()
        data = [l for l in lines if not l.startswith("#")]
        assert data[0] == "index,c1,c2"
        assert len(data) == 201
        # every point feasible against the adjacent-order inequality:
        # (n - k) * C^(k) >= k * C^(k+1) with n=3, k=1
        for row in data[1:]:
            _, c1, c2 = row.split(",")
            assert 2 * float(c1) >= float(c2) - 1e-9

    def test_overlay_contents(self, tmp_path):
        cfg = ScanConfig(4, 2, mode="random", sample_count=10, seed=0)
        emit_scatter(cfg, tmp_path)
        eq1 = [l for l in (tmp_path / "overlay_eq1.csv").read_text().splitlines()
               if not l.startswith("#")]
        assert eq1 == ["k,slope", "1,3", "2,1"]
        bounds = [l for l in (tmp_path / "overlay_bounds.csv").read_text().splitlines()
                  if not l.startswith("#")]
        assert bounds == ["k,constant_bound", "1,3", "2,6", "3,3"]
        eq4 = [l for l in (tmp_path / "overlay_eq4.csv").read_text().splitlines()
               if not l.startswith("#")]
        assert eq4 == ["slope,intercept", "1,0"]

    def test_metadata_lines(self, tmp_path):
        cfg = ScanConfig(3, 2, mode="random", sample_count=5, seed=11,
                         measures=("c1", "c2"))
        emit_scatter(cfg, tmp_path)
        text = (tmp_path / "scatter.csv").read_text()
        assert "# seed=11" in text
        assert "# units=base-q" in text

    def test_grid_mode(self, tmp_path):
        cfg = ScanConfig(2, 2, mode="grid", resolution=4, measures=("c1",))
        summary = emit_scatter(cfg, tmp_path)
        assert summary["points"] == grid_count(4, 4)

    def test_search_mode_rejected(self, tmp_path):
        cfg = ScanConfig(3, 2, mode="search", measures=("c1", "c2"))
        with pytest.raises(ScanError, match="grid and random"):
            emit_scatter(cfg, tmp_path)
