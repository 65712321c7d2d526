import unittest
from fractions import Fraction

import numpy as np
from hypothesis import given, settings, strategies as st

from src.modules.centralindex.core_metrics import (
    brute_force_h_index,
    build_snapshot,
    central_area_index,
    central_interval_index,
    citation_curve_points,
    cumulative_citations,
    decompose,
    h_index,
    radius_profile_points,
    radius_series,
    summary_profile,
)
from src.modules.centralindex.models import CitationDistribution, TailClass
from src.modules.centralindex.validation import RadiusUndefinedError, ValidationError

counts_strategy = st.lists(st.integers(min_value=0, max_value=300), max_size=60)


class TestHIndex(unittest.TestCase):

    def test_worked_example(self):
        self.assertEqual(h_index(CitationDistribution((9, 7, 6, 5, 3, 2, 1))), 4)

    def test_unsorted_input_is_sorted(self):
        d = CitationDistribution((1, 9, 3, 7, 2, 6, 5))
        self.assertEqual(d.counts, (9, 7, 6, 5, 3, 2, 1))
        self.assertEqual(h_index(d), 4)

    def test_degenerate_distributions(self):
        self.assertEqual(h_index(CitationDistribution()), 0)
        self.assertEqual(h_index(CitationDistribution((0, 0, 0))), 0)
        self.assertEqual(h_index(CitationDistribution((1,))), 1)
        self.assertEqual(h_index(CitationDistribution((100,))), 1)
        self.assertEqual(h_index(CitationDistribution((3, 3, 3))), 3)

    def test_negative_count_rejected(self):
        with self.assertRaises(ValidationError):
            CitationDistribution((3, -1))

    def test_cumulative_citations(self):
        d = CitationDistribution((9, 7, 6, 5, 3, 2, 1))
        self.assertEqual(cumulative_citations(d, 0), 0)
        self.assertEqual(cumulative_citations(d, 4), 27)
        self.assertEqual(cumulative_citations(d, 50), 33)


class TestDecompose(unittest.TestCase):

    def test_worked_example(self):
        p = decompose(CitationDistribution((9, 7, 6, 5, 3, 2, 1)))
        self.assertEqual((p.h, p.H, p.U, p.L, p.N_p, p.N_c), (4, 16, 11, 6, 7, 33))
        self.assertEqual(p.n_c, Fraction(33, 7))
        self.assertEqual(p.tail_ratio, Fraction(33, 16))
        self.assertEqual(p.tail_class, TailClass.LIGHT)
        self.assertEqual(p.upper_lower_ratio, Fraction(11, 6))

    def test_empty_distribution(self):
        p = decompose(CitationDistribution())
        self.assertEqual((p.h, p.H, p.U, p.L, p.N_p, p.N_c), (0, 0, 0, 0, 0, 0))
        self.assertIsNone(p.n_c)
        self.assertIsNone(p.tail_ratio)
        self.assertEqual(p.tail_class, TailClass.UNDEFINED)

    def test_uncited_papers_excluded_by_default(self):
        d = CitationDistribution((4, 4, 0, 0))
        self.assertEqual(decompose(d).N_p, 2)
        self.assertEqual(decompose(d, include_uncited=True).N_p, 4)

    def test_no_lower_tail(self):
        p = decompose(CitationDistribution((20,) * 10))
        self.assertEqual(p.L, 0)
        self.assertIsNone(p.upper_lower_ratio)
        self.assertEqual(p.tail_ratio, Fraction(2))
        self.assertEqual(p.tail_class, TailClass.LIGHT)

    def test_heavy_tail(self):
        p = decompose(CitationDistribution((30, 30) + (1,) * 5))
        self.assertEqual(p.h, 2)
        self.assertEqual(p.tail_class, TailClass.HEAVY)

    def test_summary_profile_keeps_tails_unknown(self):
        p = summary_profile(24, 135, 1966)
        self.assertEqual(p.H, 576)
        self.assertIsNone(p.U)
        self.assertIsNone(p.L)

    def test_summary_profile_rejects_impossible_totals(self):
        with self.assertRaises(ValidationError):
            summary_profile(10, 20, 99)


class TestCentralIndexes(unittest.TestCase):

    def setUp(self):
        self.d = CitationDistribution((9, 7, 6, 5, 3, 2, 1))

    def test_area_worked_example(self):
        self.assertEqual([central_area_index(self.d, j) for j in (1, 2, 3)], [26, 30, 33])

    def test_interval_worked_example(self):
        # I_2 = c2 + ... + c6
        self.assertEqual([central_interval_index(self.d, j) for j in (1, 2, 3)], [14, 23, 33])

    def test_radius_outside_domain(self):
        for j in (0, 4, -1):
            with self.assertRaises(RadiusUndefinedError):
                central_area_index(self.d, j)
            with self.assertRaises(RadiusUndefinedError):
                central_interval_index(self.d, j)

    def test_no_radius_below_h_two(self):
        with self.assertRaises(RadiusUndefinedError):
            central_area_index(CitationDistribution((5,)), 1)
        self.assertEqual(radius_series(CitationDistribution((5,))).area, {})
        self.assertEqual(radius_series(CitationDistribution()).interval, {})

    def test_ranks_past_last_paper_are_zero(self):
        d = CitationDistribution((5, 5))
        self.assertEqual(central_area_index(d, 1), 10)
        self.assertEqual(central_interval_index(d, 1), 10)

    def test_selective_author_area_is_constant(self):
        d = CitationDistribution((20,) * 10)
        self.assertEqual({central_area_index(d, j) for j in range(1, 10)}, {200})
        self.assertEqual([central_interval_index(d, j) for j in range(1, 10)],
                         [20 * (j + 1) for j in range(1, 10)])

    def test_series_matches_single_calls(self):
        s = radius_series(self.d)
        self.assertEqual(s.h, 4)
        self.assertEqual(s.area, {1: 26, 2: 30, 3: 33})
        self.assertEqual(s.interval, {1: 14, 2: 23, 3: 33})
        self.assertEqual(s.radii(), [1, 2, 3])

    def test_curve_points(self):
        d = CitationDistribution((9, 7, 0))
        self.assertEqual(citation_curve_points(d, 10), [(1, 9), (2, 7)])
        self.assertEqual(citation_curve_points(self.d, 2), [(1, 9), (2, 7)])
        with self.assertRaises(ValidationError):
            citation_curve_points(d, 0)

    def test_radius_profile_points(self):
        self.assertEqual(radius_profile_points(radius_series(self.d)),
                         [(1, 26, 14), (2, 30, 23), (3, 33, 33)])

    def test_build_snapshot_keeps_distribution(self):
        snapshot = build_snapshot(self.d)
        self.assertFalse(snapshot.precomputed)
        self.assertEqual(snapshot.profile.h, snapshot.series.h)


class TestIndexProperties(unittest.TestCase):
    """Structural identities that must hold for every distribution."""

    def check_identities(self, counts):
        d = CitationDistribution(tuple(counts))
        p = decompose(d)
        s = radius_series(d)
        h = p.h

        self.assertEqual(h, brute_force_h_index(d))
        self.assertEqual(p.H + p.U + p.L, p.N_c)
        self.assertGreaterEqual(p.U, 0)
        self.assertGreaterEqual(p.L, 0)
        if h < 2:
            self.assertEqual(s.area, {})
            return

        c = d.citations_at
        for j in range(1, h):
            self.assertGreaterEqual(s.area[j], s.interval[j])
            if j > 1:
                self.assertGreaterEqual(s.area[j], s.area[j - 1])
                self.assertGreaterEqual(s.interval[j], s.interval[j - 1])
            if j < h - 1:
                self.assertEqual(s.interval[j + 1] - s.interval[j], c(h - j - 1) + c(h + j + 1))
        self.assertEqual(s.area[h - 1], s.interval[h - 1])

    def test_seeded_sweep(self):
        rng = np.random.default_rng(2024)
        for _ in range(10_000):
            size = int(rng.integers(0, 40))
            self.check_identities(rng.integers(0, 120, size=size).tolist())

    @settings(max_examples=300, deadline=None)
    @given(counts_strategy)
    def test_identities_hold(self, counts):
        self.check_identities(counts)

    @settings(max_examples=200, deadline=None)
    @given(counts_strategy)
    def test_order_does_not_matter(self, counts):
        forward = radius_series(CitationDistribution(tuple(counts)))
        backward = radius_series(CitationDistribution(tuple(reversed(counts))))
        self.assertEqual(forward, backward)


class TestTenPapersOfTwenty(unittest.TestCase):
    """Ten papers with at least 20 citations each: h = 10 and every A_j >= 200."""

    def check(self, counts):
        d = CitationDistribution(tuple(counts))
        self.assertEqual(h_index(d), 10)
        self.assertGreaterEqual(min(central_area_index(d, j) for j in range(1, 10)), 200)

    @settings(max_examples=300, deadline=None)
    @given(st.lists(st.integers(min_value=20, max_value=5000), min_size=10, max_size=10))
    def test_any_counts_at_least_twenty(self, counts):
        self.check(counts)

    def test_seeded_sweep(self):
        rng = np.random.default_rng(10)
        for _ in range(2_000):
            self.check((20 + rng.integers(0, 1000, size=10)).tolist())


if __name__ == '__main__':
    unittest.main()
