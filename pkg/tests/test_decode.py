#!/usr/bin/env python3
"""Unit tests for consistency sets and decoders"""

import unittest
from itertools import combinations, product

import numpy as np

from codes import LinearCode
from decode import (
    CodewordList,
    DecodeOutcome,
    Decoder,
    common_consistency_count,
    consistency_mask,
    consistency_set,
    decode_batch,
    intersection_size,
    is_consistent,
    ml_decode,
    realized_regions,
    sequential_decode,
)
from errors import BudgetExceededError, CodeConstructionError, DomainError, LengthMismatchError
from gf4 import Word, pack_array


def full_code(n: int) -> CodewordList:
    return CodewordList.from_code(LinearCode(np.eye(n, dtype=int)))


class TestConsistency(unittest.TestCase):
    """Test cases for consistency sets"""

    def test_is_consistent(self):
        """Test y is consistent with c exactly when they differ everywhere"""
        self.assertTrue(is_consistent(Word.parse("1b0a"), Word.parse("01ab")))
        self.assertFalse(is_consistent(Word.parse("0ba0"), Word.parse("01ab")))

    def test_consistency_set(self):
        """Test L(c) has 3^n members, all consistent with c"""
        c = Word.parse("0a1b")
        members = consistency_set(c)
        self.assertEqual(len(members), 81)
        self.assertEqual(len(set(members)), 81)
        self.assertTrue(all(is_consistent(y, c) for y in members))
        with self.assertRaises(BudgetExceededError):
            consistency_set(c, limit=80)

    def test_intersection_size(self):
        """Test |L(c_i) & L(c_j)| = 3^(n-s) 2^s"""
        self.assertEqual(intersection_size(Word.parse("01"), Word.parse("10")), 4)
        self.assertEqual(intersection_size(Word.parse("00000"), Word.parse("11000")), 108)
        with self.assertRaises(DomainError):
            intersection_size(Word.parse("01"), Word.parse("01"))

    def test_intersection_size_by_enumeration(self):
        """Test the closed form against explicit intersection"""
        rng = np.random.default_rng(1)
        for _ in range(20):
            a, b = (Word.from_array(rng.integers(0, 4, size=5)) for _ in range(2))
            if a == b:
                continue
            self.assertEqual(common_consistency_count([a, b]), intersection_size(a, b))
            self.assertEqual(len(set(consistency_set(a)) & set(consistency_set(b))), intersection_size(a, b))

    def test_common_consistency_length_mismatch(self):
        """Test words of different lengths are refused"""
        with self.assertRaises(LengthMismatchError):
            common_consistency_count([Word.parse("01"), Word.parse("011")])


class TestCodewordList(unittest.TestCase):
    """Test cases for CodewordList"""

    def test_distinct(self):
        """Test duplicate codewords are refused"""
        with self.assertRaises(DomainError):
            CodewordList([Word.parse("01"), Word.parse("01")])

    def test_from_code_order(self):
        """Test message-index order"""
        codewords = full_code(2)
        self.assertEqual(codewords.size, 16)
        self.assertEqual(codewords[6], Word.parse("1a"))
        self.assertIsNotNone(codewords.packed)


class TestDecoders(unittest.TestCase):
    """Test cases for the sequential and ML decoders"""

    def setUp(self):
        self.codewords = CodewordList([Word.parse(w) for w in ("0000", "1111", "aaaa", "bbbb")])

    def test_sequential_picks_first(self):
        """Test the first consistent codeword in list order wins"""
        outcome = sequential_decode(Word.parse("0000"), self.codewords)
        self.assertEqual(outcome, DecodeOutcome(index=1, tie_count=3))
        outcome = sequential_decode(Word.parse("1ab1"), self.codewords)
        self.assertEqual(outcome.index, 0)

    def test_inconsistent(self):
        """Test a word agreeing with every codeword somewhere decodes to nothing"""
        outcome = sequential_decode(Word.parse("01ab"), self.codewords)
        self.assertFalse(outcome.decoded)
        self.assertEqual(outcome.to_dict()["result"], "inconsistent")
        self.assertFalse(ml_decode(Word.parse("01ab"), self.codewords, np.random.default_rng(0)).decoded)

    def test_ml_is_uniform_over_ties(self):
        """Test ML tie-breaking is uniform over the consistent codewords"""
        rng = np.random.default_rng(2)
        picks = [ml_decode(Word.parse("aaaa"), self.codewords, rng).index for _ in range(3000)]
        counts = np.bincount(picks, minlength=4)
        self.assertEqual(counts[2], 0)
        for index in (0, 1, 3):
            self.assertLess(abs(counts[index] - 1000), 150)

    def test_batch_matches_single(self):
        """Test batch sequential decoding agrees with sequential_decode"""
        rng = np.random.default_rng(3)
        received = rng.integers(0, 4, size=(200, 4), dtype=np.uint8)
        indices, ties = decode_batch(received, self.codewords, Decoder.SEQUENTIAL)
        for row, index, tie in zip(received, indices, ties):
            outcome = sequential_decode(Word.from_array(row), self.codewords)
            self.assertEqual(index, -1 if outcome.index is None else outcome.index)
            self.assertEqual(tie, outcome.tie_count)

    def test_batch_ml_decodes_to_consistent(self):
        """Test every ML decision is consistent with the received word"""
        rng = np.random.default_rng(4)
        received = rng.integers(0, 4, size=(300, 4), dtype=np.uint8)
        indices, _ = decode_batch(received, self.codewords, Decoder.ML, rng)
        mask = consistency_mask(received, self.codewords)
        for row, index in enumerate(indices):
            if index >= 0:
                self.assertTrue(mask[row, index])
            else:
                self.assertFalse(mask[row].any())
        with self.assertRaises(DomainError):
            decode_batch(received, self.codewords, Decoder.ML)

    def test_packed_mask_matches_symbols(self):
        """Test the packed consistency mask agrees with the symbol path"""
        rng = np.random.default_rng(5)
        received = rng.integers(0, 4, size=(100, 4), dtype=np.uint8)
        np.testing.assert_array_equal(
            consistency_mask(pack_array(received), self.codewords, packed=True),
            consistency_mask(received, self.codewords),
        )

    def test_long_words_use_symbol_path(self):
        """Test decoding works past the packed length limit"""
        code = LinearCode([[1] * 40, [0] * 20 + [1] * 20])
        codewords = CodewordList.from_code(code)
        self.assertIsNone(codewords.packed)
        sent = codewords[5]
        received = sent + Word.parse("1" * 40)
        outcome = sequential_decode(received, codewords)
        self.assertTrue(outcome.decoded)
        self.assertTrue(is_consistent(received, codewords[outcome.index]))

    def test_length_mismatch(self):
        """Test received words of the wrong length are refused"""
        with self.assertRaises(LengthMismatchError):
            sequential_decode(Word.parse("01"), self.codewords)


class TestRealizedRegions(unittest.TestCase):
    """Test cases for realized decoding regions"""

    def test_sequential_regions_partition_union(self):
        """Test sequential regions are disjoint and cover every receivable word"""
        codewords = full_code(1)
        regions = realized_regions(codewords, Decoder.SEQUENTIAL)
        self.assertEqual([len(r) for r in regions], [3, 1, 0, 0])
        self.assertEqual(regions[1], frozenset({Word.parse("0")}))

    def test_budget(self):
        """Test realizing regions over a large space needs budget"""
        with self.assertRaises(BudgetExceededError):
            realized_regions(full_code(2), limit=15)


class TestGeometryByEnumeration(unittest.TestCase):
    """Consistency sets of small random codes checked against all of F4^n"""

    def random_codes(self):
        rng = np.random.default_rng(17)
        for n in (3, 4, 5, 6):
            found = 0
            while found < 2:
                try:
                    code = LinearCode(rng.integers(0, 4, size=(2, n)))
                except CodeConstructionError:
                    continue
                found += 1
                yield n, CodewordList.from_code(code)

    def brute_force_sets(self, n, codewords):
        space = [np.array(t, dtype=np.uint8) for t in product(range(4), repeat=n)]
        return [
            {Word.from_array(y) for y in space if np.all(y != c.to_array())}
            for c in codewords
        ]

    def test_pairs_and_triples(self):
        """Test |L(c)| = 3^n, pair counts match the closed form and are >= 2^n, triples are non-empty"""
        for n, codewords in self.random_codes():
            sets = self.brute_force_sets(n, codewords)
            self.assertTrue(all(len(s) == 3 ** n for s in sets))
            for i, j in combinations(range(len(sets)), 2):
                common = len(sets[i] & sets[j])
                self.assertEqual(common, intersection_size(codewords[i], codewords[j]))
                self.assertGreaterEqual(common, 2 ** n)
            for i, j, l in combinations(range(len(sets)), 3):
                self.assertGreaterEqual(len(sets[i] & sets[j] & sets[l]), 1)

    def test_sequential_matches_first_consistent(self):
        """Test sequential decoding picks the first codeword differing everywhere, for every received word"""
        for n, codewords in self.random_codes():
            symbols = [c.to_array() for c in codewords]
            for t in product(range(4), repeat=n):
                y = np.array(t, dtype=np.uint8)
                consistent = [i for i, c in enumerate(symbols) if np.all(y != c)]
                outcome = sequential_decode(Word.from_array(y), codewords)
                if consistent:
                    self.assertEqual(outcome, DecodeOutcome(index=consistent[0], tie_count=len(consistent)))
                else:
                    self.assertFalse(outcome.decoded)


if __name__ == "__main__":
    unittest.main()
