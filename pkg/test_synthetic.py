import unittest

from hypothesis import given, settings, strategies as st

from src.modules.centralindex.core_metrics import central_area_index, h_index, radius_series
from src.modules.centralindex.models import ProfileKind, ProfileSpec
from src.modules.centralindex.synthetic import (
    generate,
    generate_cohort,
    generate_matched_pair,
    power_law_draw,
    settle_at_h,
)
from src.modules.centralindex.validation import ValidationError


class TestGenerate(unittest.TestCase):

    def test_selective_shape(self):
        d = generate(ProfileSpec(ProfileKind.SELECTIVE, 10, amplitude=2))
        self.assertEqual(d.counts, (20,) * 10)
        self.assertEqual(h_index(d), 10)

    def test_producer_shape(self):
        d = generate(ProfileSpec(ProfileKind.PRODUCER, 10, amplitude=2))
        self.assertEqual(d.counts, (10,) * 20)
        self.assertEqual(h_index(d), 10)

    def test_power_law_is_deterministic(self):
        spec = ProfileSpec(ProfileKind.POWER_LAW, 12, amplitude=2, exponent=1.2, seed=7)
        self.assertEqual(generate(spec).counts, generate(spec).counts)

    def test_power_law_seed_changes_counts(self):
        first = generate(ProfileSpec(ProfileKind.POWER_LAW, 12, 2, 1.2, seed=1))
        second = generate(ProfileSpec(ProfileKind.POWER_LAW, 12, 2, 1.2, seed=2))
        self.assertNotEqual(first.counts, second.counts)

    @settings(max_examples=150, deadline=None)
    @given(
        st.integers(min_value=2, max_value=40),
        st.integers(min_value=1, max_value=5),
        st.floats(min_value=0.3, max_value=3.0),
        st.integers(min_value=0, max_value=2**31 - 1),
    )
    def test_power_law_hits_target_h(self, h, amplitude, exponent, seed):
        d = generate(ProfileSpec(ProfileKind.POWER_LAW, h, amplitude, exponent, seed))
        self.assertEqual(h_index(d), h)

    @settings(max_examples=150, deadline=None)
    @given(
        st.integers(min_value=2, max_value=40),
        st.integers(min_value=1, max_value=5),
        st.floats(min_value=0.3, max_value=3.0),
        st.integers(min_value=0, max_value=2**31 - 1),
    )
    def test_power_law_edits_only_ranks_h_and_next(self, h, amplitude, exponent, seed):
        spec = ProfileSpec(ProfileKind.POWER_LAW, h, amplitude, exponent, seed)
        drawn = power_law_draw(spec)
        final = generate(spec).counts
        self.assertEqual(len(drawn), len(final))
        moved = [i + 1 for i, (a, b) in enumerate(zip(drawn, final)) if a != b]
        self.assertTrue(set(moved) <= {h, h + 1}, moved)
        self.assertTrue(all(c >= h for c in final[:h]))
        self.assertTrue(all(c <= h for c in final[h:]))

    def test_power_law_tail_is_not_flattened(self):
        h = 10
        d = generate(ProfileSpec(ProfileKind.POWER_LAW, h, amplitude=2, exponent=1.0, seed=0))
        self.assertEqual(d.counts[h - 1], h)
        self.assertLessEqual(sum(1 for c in d.counts[h:] if c == h), 1)

    def test_settle_moves_two_ranks_at_most(self):
        self.assertEqual(settle_at_h([9, 8, 3, 3, 1], 3), [9, 8, 3, 3, 1])
        self.assertEqual(settle_at_h([9, 8, 2, 1], 3), [9, 8, 3, 1])
        self.assertEqual(settle_at_h([9, 8, 7, 5, 2], 3), [9, 8, 7, 3, 2])
        self.assertEqual(settle_at_h([4, 4], 2), [4, 4])

    def test_invalid_specs(self):
        with self.assertRaises(ValidationError):
            generate(ProfileSpec(ProfileKind.SELECTIVE, 1))
        with self.assertRaises(ValidationError):
            generate(ProfileSpec(ProfileKind.PRODUCER, 5, amplitude=0))
        with self.assertRaises(ValidationError):
            generate(ProfileSpec(ProfileKind.POWER_LAW, 5, exponent=0.0))


class TestMatchedPair(unittest.TestCase):

    def test_selective_dominates_at_every_radius(self):
        for h in (2, 5, 10, 17):
            selective, producer = generate_matched_pair(h, 2)
            self.assertEqual(h_index(selective), h_index(producer))
            for j in range(1, h):
                self.assertGreater(central_area_index(selective, j),
                                   central_area_index(producer, j))

    @settings(max_examples=200, deadline=None)
    @given(st.integers(min_value=2, max_value=60), st.integers(min_value=2, max_value=12))
    def test_randomized_pairs(self, h, amplitude):
        selective, producer = generate_matched_pair(h, amplitude)
        self.assertEqual(h_index(selective), h)
        self.assertEqual(h_index(producer), h)
        for j in range(1, h):
            self.assertGreater(central_area_index(selective, j),
                               central_area_index(producer, j))

    def test_amplitude_one_is_rejected(self):
        with self.assertRaises(ValidationError):
            generate_matched_pair(10, 1)


class TestGenerateCohort(unittest.TestCase):

    def test_shape_and_labels(self):
        cohort = generate_cohort(12, ["t1", "t2", "t3"], seed=3)
        self.assertEqual(len(cohort), 12)
        self.assertEqual(cohort.epochs, ["t1", "t2", "t3"])
        self.assertEqual(cohort.author_ids()[0], "author-00")
        self.assertEqual(cohort.source, "synthetic")

    def test_h_never_decreases(self):
        cohort = generate_cohort(20, ["a", "b", "c"], seed=11)
        for author in cohort.author_ids():
            hs = [cohort.snapshot(author, e).profile.h for e in cohort.epochs]
            self.assertEqual(hs, sorted(hs))
            self.assertGreaterEqual(hs[0], 2)

    def test_same_seed_same_cohort(self):
        first = generate_cohort(8, ["x", "y"], seed=5)
        second = generate_cohort(8, ["x", "y"], seed=5)
        for author in first.author_ids():
            for epoch in first.epochs:
                self.assertEqual(first.snapshot(author, epoch).distribution,
                                 second.snapshot(author, epoch).distribution)

    def test_series_present_for_every_snapshot(self):
        cohort = generate_cohort(5, ["t1"], seed=0)
        for author in cohort.author_ids():
            snapshot = cohort.snapshot(author, "t1")
            self.assertEqual(snapshot.series, radius_series(snapshot.distribution))

    def test_requires_epochs(self):
        with self.assertRaises(ValidationError):
            generate_cohort(3, [])


if __name__ == '__main__':
    unittest.main()
