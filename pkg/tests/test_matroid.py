import numpy as np
import pytest

from cohesionlab.codes import code_to_distribution, rs_generator
from cohesionlab.cohesion import cohesion_k, constant_bound
from cohesionlab.dist import JointDistribution
from cohesionlab.errors import MatroidError, SearchBudgetExceeded
from cohesionlab.gf import is_prime_power, make_field
from cohesionlab.matroid import (
    check_axioms,
    code_rank_report,
    entropy_rank_report,
    find_uniform_representation,
    is_isomorphic_uniform,
    matroid_from_ranks,
    matroid_json,
    uniform_matroid,
    uniform_representable_over,
    vector_matroid,
)

GF2 = make_field(2, 1)
GF3 = make_field(3, 1)
GF4 = make_field(2, 2)


class TestRankReport:
    def test_rs_maximizer_ranks(self, rs_maximizer4):
        rep = entropy_rank_report(rs_maximizer4)
        assert rep.integer_valued
        for mask in range(16):
            expected = min(mask.bit_count(), 2)
            assert rep.ranks[mask] == pytest.approx(expected, abs=1e-9)

    def test_parity_ranks(self, parity3):
        rep = entropy_rank_report(parity3)
        by_size = sorted(
            (mask.bit_count(), round(r)) for mask, r in enumerate(rep.ranks)
        )
        assert [r for _, r in by_size] == [0, 1, 1, 1, 2, 2, 2, 2]

    def test_half_bit_not_integer_valued(self):
        p = JointDistribution(1, 2, {(0,): 0.9, (1,): 0.1})
        rep = entropy_rank_report(p)
        assert not rep.integer_valued
        assert rep.max_deviation > 1e-3

    def test_near_matroidal_flag(self):
        # small perturbation of a fair bit: the entropy deviation is
        # quadratic in eps, landing between the two tolerances
        eps = 0.01
        p = JointDistribution(1, 2, {(0,): 0.5 + eps, (1,): 0.5 - eps})
        rep = entropy_rank_report(p)
        assert not rep.integer_valued
        assert rep.near_matroidal


class TestMatroidFromRanks:
    def test_rs_maximizer_gives_uniform(self, rs_maximizer4):
        view = matroid_from_ranks(entropy_rank_report(rs_maximizer4))
        assert view.independents == uniform_matroid(2, 4).independents

    def test_redundant_gives_rank_one(self, redundant3):
        view = matroid_from_ranks(entropy_rank_report(redundant3))
        assert view.independents == frozenset({0, 1, 2, 4})

    def test_point_mass_trivial(self):
        p = JointDistribution.point_mass((0, 0, 0), 2)
        view = matroid_from_ranks(entropy_rank_report(p))
        assert view.independents == frozenset({0})

    def test_non_integer_rejected(self):
        p = JointDistribution(2, 2, {(0, 0): 0.7, (1, 1): 0.3})
        with pytest.raises(MatroidError, match="not a matroid rank function"):
            matroid_from_ranks(entropy_rank_report(p))

    def test_binary_peak_not_uniform(self, redundant_synergy4):
        # one pair has entropy 1 < 2, so the independence family is not U_{2,4}
        view = matroid_from_ranks(entropy_rank_report(redundant_synergy4))
        for k in range(5):
            assert not is_isomorphic_uniform(view, k)


class TestAxioms:
    def test_uniform_passes(self):
        for n in range(1, 8):
            for k in range(n + 1):
                assert check_axioms(uniform_matroid(k, n))

    def test_missing_empty_set_fails(self):
        from cohesionlab.matroid import MatroidView

        assert not check_axioms(MatroidView(2, frozenset({1, 2}), "vector"))

    def test_not_downward_closed_fails(self):
        from cohesionlab.matroid import MatroidView

        assert not check_axioms(MatroidView(2, frozenset({0, 3}), "vector"))

    def test_exchange_failure_detected(self):
        from cohesionlab.matroid import MatroidView

        # {1,2} independent but neither {1,3} nor {2,3} can augment {3}
        family = frozenset({0, 0b001, 0b010, 0b100, 0b011})
        assert not check_axioms(MatroidView(3, family, "vector"))

    def test_entropy_matroids_pass_axioms(self):
        rng = np.random.default_rng(29)
        for _ in range(20):
            # uniform distributions over random binary linear codes
            k, n = 2, 4
            rows = rng.integers(0, 2, size=(k, n))
            from cohesionlab.gf import matrix_rank

            if matrix_rank(GF2, rows.tolist()) != k:
                continue
            from cohesionlab.codes import LinearCode

            d = code_to_distribution(LinearCode.from_rows(GF2, rows.tolist()))
            view = matroid_from_ranks(entropy_rank_report(d))
            assert check_axioms(view)


class TestVectorMatroid:
    def test_example_matrix(self):
        view = vector_matroid(GF2, [[1, 0, 1], [0, 1, 1]])
        assert view.independents == frozenset({0, 1, 2, 4, 3, 5, 6})
        assert is_isomorphic_uniform(view, 2)

    def test_rs_generator_uniform(self):
        code = rs_generator(GF4, 2)
        view = vector_matroid(GF4, code.generator)
        assert is_isomorphic_uniform(view, 2)

    def test_zero_matrix(self):
        view = vector_matroid(GF2, [[0, 0], [0, 0]])
        assert view.independents == frozenset({0})


class TestRepresentability:
    def test_u24_not_over_gf2(self):
        assert not uniform_representable_over(2, 4, GF2)

    def test_u24_over_gf3(self):
        assert uniform_representable_over(2, 4, GF3)

    def test_k_equals_n_identity(self):
        assert uniform_representable_over(3, 3, GF2)

    def test_found_matrix_is_valid(self):
        rows = find_uniform_representation(2, 4, GF3)
        view = vector_matroid(GF3, rows)
        assert is_isomorphic_uniform(view, 2)

    def test_monotone_in_field_order(self):
        # once representable, staying representable for larger prime powers
        orders = [2, 3, 4, 5, 7, 8, 9]
        for k, n in [(2, 4), (2, 5), (3, 5)]:
            seen_true = False
            for q in orders:
                f = make_field(*is_prime_power(q))
                ok = uniform_representable_over(k, n, f)
                if seen_true:
                    assert ok, f"monotonicity broken at U_{{{k},{n}}} over GF({q})"
                seen_true = seen_true or ok

    def test_budget_exceeded_is_explicit(self):
        f = make_field(2, 4)
        with pytest.raises(SearchBudgetExceeded, match="undecided"):
            find_uniform_representation(5, 40, f, max_candidates=10)


class TestTheoremChainSmall:
    def test_three_way_agreement_small_fields(self):
        for q in (2, 3, 4, 5):
            f = make_field(*is_prime_power(q))
            for k in range(1, q):
                code = rs_generator(f, k)
                d = code_to_distribution(code)
                entropy_view = matroid_from_ranks(entropy_rank_report(d))
                vector_view = vector_matroid(f, code.generator)
                assert entropy_view.independents == vector_view.independents
                assert is_isomorphic_uniform(entropy_view, k)
                assert cohesion_k(d, k) == pytest.approx(
                    constant_bound(q, k), abs=1e-9
                )

    def test_code_rank_report_matches_entropy(self):
        for q, k in [(2, 1), (3, 2), (4, 2)]:
            f = make_field(*is_prime_power(q))
            code = rs_generator(f, k)
            d = code_to_distribution(code)
            assert code_rank_report(code).ranks == pytest.approx(
                entropy_rank_report(d).ranks, abs=1e-9
            )

    def test_perturbed_near_maximizer_fails_rank_conditions(self, rs_maximizer4):
        atoms = dict(rs_maximizer4.atoms)
        first = next(iter(atoms))
        atoms[first] += 0.01
        atoms[(1, 1, 1, 0)] = atoms.get((1, 1, 1, 0), 0.0) + 0.0  # keep sparse
        perturbed = JointDistribution.normalized(4, 4, atoms)
        rep = entropy_rank_report(perturbed)
        assert not rep.integer_valued
        assert cohesion_k(perturbed, 2) < constant_bound(4, 2) - 1e-6


def test_matroid_json_lists_sorted_indices():
    payload = matroid_json(uniform_matroid(1, 3))
    assert payload["ground_size"] == 3
    assert [0] in payload["independents"]
    assert [] in payload["independents"]
    assert [0, 1] not in payload["independents"]
