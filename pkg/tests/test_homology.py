import math

import numpy as np
import pytest

from persline import (
    Interval,
    RankQuery,
    ScalarFiltration,
    barcode_from_json,
    barcode_to_json,
    betti_at,
    compute_barcode,
    order_simplices,
    parse_bifiltration,
    rank_invariant,
    restrict,
)
from generators import random_bifiltered_complex, random_canonical_line, random_scalar_filtration
from oracles import homology_dim, induced_rank, scalar_rank

TWO_VERTEX_EDGE = "bifiltration 2\n0 0 ; 0 0\n0 1 ; 0 0\n1 0 1 ; 1 1\n"


class TestOrdering:
    def test_vertices_before_edge(self):
        F = ScalarFiltration((((0,), 0.0), ((1,), 0.0), ((0, 1), 1.0)))
        assert [s for s, _ in order_simplices(F)] == [(0,), (1,), (0, 1)]

    def test_entry_value_order(self):
        F = ScalarFiltration((((1,), 1.0), ((0,), 0.0)))
        assert [s for s, _ in order_simplices(F)] == [(0,), (1,)]

    def test_ties_broken_by_dim_then_lex(self):
        F = ScalarFiltration(
            (((2,), 0.0), ((0,), 0.0), ((1,), 0.0), ((0, 2), 1.0), ((0, 1), 1.0))
        )
        assert [s for s, _ in order_simplices(F)] == [(0,), (1,), (2,), (0, 1), (0, 2)]

    def test_faces_precede_cofaces(self):
        rng = np.random.default_rng(2)
        for _ in range(50):
            F = random_scalar_filtration(rng)
            seen = set()
            for s, _ in order_simplices(F):
                for i in range(len(s)):
                    face = s[:i] + s[i + 1 :]
                    if face:
                        assert face in seen
                seen.add(s)


class TestBarcode:
    def test_two_vertices_merging(self):
        F = ScalarFiltration((((0,), 0.0), ((1,), 0.0), ((0, 1), 1.0)))
        assert compute_barcode(F, 0) == (
            Interval(0.0, 1.0, 0),
            Interval(0.0, math.inf, 0),
        )

    def test_single_vertex(self):
        F = ScalarFiltration((((0,), 0.0),))
        assert compute_barcode(F, 0) == (Interval(0.0, math.inf, 0),)

    def test_triangle_boundary_degree_one(self):
        F = ScalarFiltration(
            (
                ((0,), 0.0), ((1,), 0.0), ((2,), 0.0),
                ((0, 1), 1.0), ((0, 2), 1.0), ((1, 2), 1.0),
            )
        )
        assert compute_barcode(F, 1) == (Interval(1.0, math.inf, 1),)

    def test_filled_triangle_kills_cycle(self):
        F = ScalarFiltration(
            (
                ((0,), 0.0), ((1,), 0.0), ((2,), 0.0),
                ((0, 1), 1.0), ((0, 2), 1.0), ((1, 2), 1.0),
                ((0, 1, 2), 2.0),
            )
        )
        assert compute_barcode(F, 1) == (Interval(1.0, 2.0, 1),)

    def test_zero_length_intervals_dropped(self):
        F = ScalarFiltration((((0,), 0.0), ((1,), 0.0), ((0, 1), 0.0)))
        assert compute_barcode(F, 0) == (Interval(0.0, math.inf, 0),)

    def test_degree_out_of_range(self):
        F = ScalarFiltration((((0,), 0.0),))
        with pytest.raises(ValueError):
            compute_barcode(F, 1)

    def test_rank_oracle_equivalence(self):
        rng = np.random.default_rng(31)
        for _ in range(60):
            F = random_scalar_filtration(rng)
            values = sorted({v for _, v in F.simplices})
            for degree in (0, 1):
                if degree > F.max_dim():
                    continue
                bars = compute_barcode(F, degree)
                for s in values:
                    for t in values:
                        if s > t:
                            continue
                        count = sum(1 for iv in bars if iv.birth <= s and iv.death > t)
                        assert count == scalar_rank(list(F.simplices), s, t, degree)

    def test_tie_break_independence(self):
        rng = np.random.default_rng(37)
        for _ in range(30):
            F = random_scalar_filtration(rng)
            simplices = list(F.simplices)
            rng.shuffle(simplices)
            permuted = ScalarFiltration(tuple(simplices))
            for degree in (0, 1):
                if degree > F.max_dim():
                    continue
                assert compute_barcode(F, degree) == compute_barcode(permuted, degree)


class TestBettiAt:
    def test_single_vertex(self):
        M = parse_bifiltration("bifiltration 2\n0 0 ; 0 0")
        assert betti_at(M, (0.0, 0.0), 0) == 1

    def test_before_edge_two_components(self):
        M = parse_bifiltration(TWO_VERTEX_EDGE)
        assert betti_at(M, (0.0, 0.0), 0) == 2

    def test_after_edge_one_component(self):
        M = parse_bifiltration(TWO_VERTEX_EDGE)
        assert betti_at(M, (1.0, 1.0), 0) == 1

    def test_matches_oracle(self):
        rng = np.random.default_rng(41)
        for _ in range(40):
            M = random_bifiltered_complex(rng)
            u = tuple(rng.uniform(0, 2, size=2))
            for degree in (0, 1):
                sub = [s for s, g in M.simplices if all(a <= b for a, b in zip(g, u))]
                assert betti_at(M, u, degree) == homology_dim(sub, degree)


class TestRankInvariant:
    def test_identity_map(self):
        M = parse_bifiltration("bifiltration 2\n0 0 ; 0 0")
        assert rank_invariant(M, RankQuery((0.0, 0.0), (0.0, 0.0), 0)) == 1

    def test_components_merge(self):
        M = parse_bifiltration(TWO_VERTEX_EDGE)
        assert rank_invariant(M, RankQuery((0.0, 0.0), (2.0, 2.0), 0)) == 1

    def test_edge_absent_at_target(self):
        M = parse_bifiltration(TWO_VERTEX_EDGE)
        assert rank_invariant(M, RankQuery((0.0, 0.0), (0.5, 0.5), 0)) == 2

    def test_precondition(self):
        with pytest.raises(ValueError):
            RankQuery((1.0, 0.0), (0.0, 1.0), 0)

    def test_diagonal_equals_betti(self):
        rng = np.random.default_rng(43)
        for _ in range(30):
            M = random_bifiltered_complex(rng)
            u = tuple(rng.uniform(0, 2, size=2))
            for degree in (0, 1):
                assert rank_invariant(M, RankQuery(u, u, degree)) == betti_at(M, u, degree)

    def test_matches_brute_force_image_rank(self):
        rng = np.random.default_rng(47)
        for _ in range(40):
            M = random_bifiltered_complex(rng)
            u = tuple(rng.uniform(0, 1.5, size=2))
            v = tuple(ui + rng.uniform(0, 1) for ui in u)
            sub_u = [s for s, g in M.simplices if all(a <= b for a, b in zip(g, u))]
            sub_v = [s for s, g in M.simplices if all(a <= b for a, b in zip(g, v))]
            for degree in (0, 1):
                assert rank_invariant(M, RankQuery(u, v, degree)) == induced_rank(
                    sub_u, sub_v, degree
                )

    def test_monotone_in_nesting(self):
        rng = np.random.default_rng(53)
        for _ in range(30):
            M = random_bifiltered_complex(rng)
            u = tuple(rng.uniform(0, 1, size=2))
            du1 = tuple(rng.uniform(0, 0.5, size=2))
            dv1 = tuple(rng.uniform(0, 0.5, size=2))
            dv2 = tuple(rng.uniform(0, 0.5, size=2))
            up = tuple(a + b for a, b in zip(u, du1))
            vp = tuple(a + b for a, b in zip(up, dv1))
            v = tuple(a + b for a, b in zip(vp, dv2))
            assert rank_invariant(M, RankQuery(u, v, 0)) <= rank_invariant(
                M, RankQuery(up, vp, 0)
            )

    def test_agrees_with_line_restriction(self):
        rng = np.random.default_rng(59)
        for _ in range(30):
            M = random_bifiltered_complex(rng)
            L = random_canonical_line(rng)
            s = float(rng.uniform(-1, 2))
            t = s + float(rng.uniform(0.01, 2))
            u, v = L.point_at(s), L.point_at(t)
            bars = compute_barcode(restrict(M, L), 0)
            count = sum(1 for iv in bars if iv.birth <= s and iv.death > t)
            assert rank_invariant(M, RankQuery(u, v, 0)) == count


class TestBarcodeJson:
    def test_round_trip(self):
        bars = (Interval(0.0, 1.0, 0), Interval(0.5, math.inf, 1))
        assert barcode_from_json(barcode_to_json(bars)) == bars

    def test_sorted_output(self):
        bars = (Interval(1.0, math.inf, 1), Interval(0.0, 2.0, 0), Interval(0.0, 1.0, 0))
        text = barcode_to_json(bars)
        assert text == (
            '[{"degree": 0, "birth": 0.0, "death": 1.0},'
            ' {"degree": 0, "birth": 0.0, "death": 2.0},'
            ' {"degree": 1, "birth": 1.0, "death": null}]'
        )
