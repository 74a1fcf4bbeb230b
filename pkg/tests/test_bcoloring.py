"""Power graphs, coloring validation, coset colorings, and the exact solver."""

import random

import pytest

from hyperb import _tables
from hyperb import bcoloring as bc
from hyperb import bounds

BUDGET = bc.SolveBudget()


class TestPowerGraph:
    def test_vertex_counts(self):
        assert bc.hypercube_power(4, 2).vertex_count == 16
        assert bc.hamming_power(3, 3, 1).vertex_count == 27

    def test_adjacency_spec_examples(self):
        g = bc.hypercube_power(3, 2)
        rank = _tables.rank_of_mask(3)
        v_1 = rank[0b001]      # {1}
        v_23 = rank[0b110]     # {2,3}
        v_empty = rank[0b000]
        v_12 = rank[0b011]
        assert not bc.adjacent(g, v_1, v_23)      # distance 3
        assert bc.adjacent(g, v_empty, v_12)      # distance 2
        h = bc.hamming_power(3, 3, 1)
        u = bc.HammingVertex((0, 1, 2), 3).index()
        v = bc.HammingVertex((0, 1, 0), 3).index()
        assert bc.adjacent(h, u, v)

    def test_self_loops_absent(self):
        g = bc.hypercube_power(3, 2)
        assert not bc.adjacent(g, 5, 5)

    def test_vertex_range_checked(self):
        g = bc.hypercube_power(2, 1)
        with pytest.raises(ValueError):
            bc.adjacent(g, 0, 4)

    def test_adjacency_symmetric_irreflexive(self):
        g = bc.hamming_power(2, 3, 1)
        for u in range(9):
            assert not bc.adjacent(g, u, u)
            for v in range(9):
                assert bc.adjacent(g, u, v) == bc.adjacent(g, v, u)

    def test_cross_model_consistency(self):
        # cube power == Hamming power at q=2 under the rank<->mask bijection
        rng = random.Random(77)
        for n in (3, 5, 8, 10):
            cube = bc.hypercube_power(n, max(1, n // 2))
            ham = bc.hamming_power(n, 2, max(1, n // 2))
            order = _tables.masks_in_order(n)
            for _ in range(200):
                u, v = rng.randrange(1 << n), rng.randrange(1 << n)
                assert bc.adjacent(cube, u, v) == bc.adjacent(ham, order[u], order[v])


class TestHammingVertex:
    def test_roundtrip(self):
        for idx in range(27):
            assert bc.HammingVertex.from_index(idx, 3, 3).index() == idx

    def test_validation(self):
        with pytest.raises(ValueError):
            bc.HammingVertex((0, 3), 3)
        with pytest.raises(ValueError):
            bc.HammingVertex((0, 0), 1)


class TestColoring:
    def test_classes_consistent(self):
        c = bc.Coloring((0, 1, 0, 1), 2)
        assert c.classes() == [[0, 2], [1, 3]]

    def test_all_colors_used(self):
        with pytest.raises(ValueError):
            bc.Coloring((0, 0, 0, 0), 2)

    def test_color_range(self):
        with pytest.raises(ValueError):
            bc.Coloring((0, 2), 2)


class TestValidate:
    def test_four_cycle_parity(self):
        g = bc.hypercube_power(2, 1)
        coloring = bc.to_rank_indexing(2, bc.coset_coloring(2, 2))
        cert = bc.validate_coloring(g, coloring)
        assert cert.valid_b and cert.k == 2

    def test_antipodal_classes_on_cube(self):
        g = bc.hypercube_power(3, 1)
        coloring = bc.to_rank_indexing(3, bc.coset_coloring(3, 2))
        cert = bc.validate_coloring(g, coloring)
        assert cert.valid_b and cert.k == 4
        assert bc.all_vertices_dominating(g, coloring)

    def test_monochromatic_edge_rejected(self):
        g = bc.hypercube_power(2, 1)
        # ranks 0 and 1 are {} and {1}: adjacent, same color
        cert = bc.validate_coloring(g, bc.Coloring((0, 0, 1, 1), 2))
        assert not cert.valid_proper and not cert.valid_b

    def test_wrong_size_rejected(self):
        g = bc.hypercube_power(2, 1)
        with pytest.raises(ValueError):
            bc.validate_coloring(g, bc.Coloring((0, 1), 2))


class TestCosetColoring:
    def test_antipodal_pairs_q2(self):
        c = bc.coset_coloring(3, 2)
        for cls in c.classes():
            assert len(cls) == 2
            assert cls[0] ^ cls[1] == 0b111  # complements as masks

    def test_three_classes_q3(self):
        c = bc.coset_coloring(2, 3)
        want = [
            {(0, 0), (1, 1), (2, 2)},
            {(1, 0), (2, 1), (0, 2)},
            {(2, 0), (0, 1), (1, 2)},
        ]
        got = [
            {tuple(bc.HammingVertex.from_index(v, 2, 3).coords) for v in cls}
            for cls in c.classes()
        ]
        assert got == want

    def test_zero_class_is_diagonal(self):
        for (n, q) in [(2, 2), (3, 2), (2, 3), (3, 3)]:
            c = bc.coset_coloring(n, q)
            zero_class = c.classes()[0]
            diag = {bc.HammingVertex((a,) * n, q).index() for a in range(q)}
            assert set(zero_class) == diag

    def test_class_sizes(self):
        c = bc.coset_coloring(3, 3)
        assert c.k == 9 and all(len(cls) == 3 for cls in c.classes())

    def test_always_proper_below_dimension(self):
        for (n, q, p) in [(3, 2, 2), (3, 3, 2), (4, 2, 3), (2, 5, 1)]:
            g = bc.hamming_power(n, q, p)
            cert = bc.validate_coloring(g, bc.coset_coloring(n, q))
            assert cert.valid_proper


class TestVerifyCoset:
    @pytest.mark.parametrize("n,q,p", [(3, 2, 1), (4, 3, 3), (3, 5, 2)])
    def test_spec_examples(self, n, q, p):
        cert = bc.verify_coset_bcoloring(n, q, p)
        assert cert.valid_b and cert.k == q ** (n - 1)

    def test_rejects_p_at_dimension(self):
        with pytest.raises(ValueError):
            bc.verify_coset_bcoloring(3, 2, 3)

    def test_ungated_is_informational(self):
        # (4, 2, 1): gate needs p >= floor(4/2) = 2, so nothing is claimed
        assert not bounds.hamming_gate(4, 2, 1)
        cert = bc.verify_coset_bcoloring(4, 2, 1)
        assert cert.k == 8  # whatever the verdict, no integrity failure


class TestGreedyFallback:
    @pytest.mark.parametrize("n,p", [(2, 1), (3, 1), (3, 2), (4, 1), (4, 4)])
    def test_always_valid(self, n, p):
        g = bc.hypercube_power(n, p)
        c = bc.greedy_b_coloring(g)
        assert bc.validate_coloring(g, c).valid_b


class TestExactSolver:
    def test_four_cycle(self):
        res = bc.exact_b_chromatic(bc.hypercube_power(2, 1), BUDGET)
        assert res.value == 2 and res.exact

    def test_cube(self):
        res = bc.exact_b_chromatic(bc.hypercube_power(3, 1), BUDGET)
        assert res.value == 4 and res.exact

    @pytest.mark.parametrize("n", [2, 3, 4])
    def test_complete_graphs(self, n):
        res = bc.exact_b_chromatic(bc.hypercube_power(n, n), BUDGET)
        assert res.value == 1 << n and res.exact

    def test_witnesses_validate(self):
        for (n, p) in [(2, 1), (3, 1), (3, 2)]:
            g = bc.hypercube_power(n, p)
            res = bc.exact_b_chromatic(g, BUDGET)
            assert bc.validate_coloring(g, res.coloring).valid_b
            assert res.coloring.k == res.value

    def test_rook_graph(self):
        # recorded from an exhaustive run of this solver
        res = bc.exact_b_chromatic(bc.hamming_power(2, 3, 1), BUDGET)
        assert res.value == 3 and res.exact

    def test_budget_exhaustion_is_explicit(self):
        res = bc.exact_b_chromatic(
            bc.hypercube_power(3, 1), bc.SolveBudget(max_nodes=2, max_seconds=30)
        )
        assert not res.exact
        assert "at least" in res.note
        g = bc.hypercube_power(3, 1)
        assert bc.validate_coloring(g, res.coloring).valid_b  # partial witness still valid

    def test_monotone_in_p_small(self):
        for n in (2, 3):
            values = [
                bc.exact_b_chromatic(bc.hypercube_power(n, p), BUDGET).value
                for p in range(1, n + 1)
            ]
            assert values == sorted(values)
            assert values[-1] == 1 << n


class TestSingletonCertificate:
    def test_vacuous_when_k_small(self):
        g = bc.hypercube_power(3, 1)
        coloring = bc.to_rank_indexing(3, bc.coset_coloring(3, 2))
        rep = bc.singleton_certificate(g, coloring, 0)
        assert rep.ok and rep.required == 0

    def test_synthetic_all_singletons(self):
        # complete graph: every class is a singleton
        g = bc.hypercube_power(2, 2)
        coloring = bc.Coloring((0, 1, 2, 3), 4)
        rep = bc.singleton_certificate(g, coloring, 2)
        assert rep.ok
        assert rep.singleton_count == 4 and rep.required == 4
        assert rep.clique_ok and rep.open_size == 0 and rep.open_required == 0

    def test_solver_witnesses_pass(self):
        for (n, p) in [(2, 2), (3, 2), (3, 3), (4, 3)]:
            g = bc.hypercube_power(n, p)
            res = bc.exact_b_chromatic(g, BUDGET)
            ell = res.value - (1 << (n - 1))
            if ell <= 0:
                continue
            rep = bc.singleton_certificate(g, res.coloring, ell)
            assert rep.ok, rep.failure

    def test_requires_valid_b_coloring(self):
        g = bc.hypercube_power(2, 1)
        with pytest.raises(ValueError):
            bc.singleton_certificate(g, bc.Coloring((0, 0, 1, 1), 2), 0)

    def test_requires_hypercube(self):
        g = bc.hamming_power(2, 3, 1)
        with pytest.raises(ValueError):
            bc.singleton_certificate(g, bc.coset_coloring(2, 3), 0)


class TestBoundsSandwich:
    def test_exact_values_within_applicable_bounds(self):
        for n in (2, 3, 4):
            for p in range(1, n + 1):
                g = bc.hypercube_power(n, p)
                res = bc.exact_b_chromatic(g, BUDGET)
                assert res.exact
                rep = bounds.bound_report(n, p)
                if rep.lower is not None:
                    assert rep.lower <= res.value
                for ub in (rep.upper_old, rep.upper_rough, rep.upper_new):
                    if ub is not None:
                        assert res.value <= ub
                # the q=2 Hamming lower bound is a separate claim; check it too
                ham = bounds.hamming_lower(n, 2, p)
                if ham is not None and p <= n - 1:
                    assert ham <= res.value


class TestJson:
    def test_coloring_json(self):
        g = bc.hamming_power(2, 3, 1)
        payload = bc.coloring_to_json(g, bc.coset_coloring(2, 3))
        assert payload["kind"] == "hamming" and payload["q"] == 3
        assert len(payload["assignment"]) == 9

    def test_vertex_labels(self):
        g = bc.hypercube_power(3, 1)
        assert bc.vertex_label(g, 0) == "{}"
        h = bc.hamming_power(2, 3, 1)
        assert bc.vertex_label(h, 5) == "(2,1)"
