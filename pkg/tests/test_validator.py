#!/usr/bin/env python3
"""Unit tests for decoding region validation"""

import unittest

import numpy as np

from codes import LinearCode
from decode import CodewordList, Decoder, realized_regions
from gf4 import Word
from validator import validate_decoding_regions


class TestValidateDecodingRegions(unittest.TestCase):
    """Test cases for validate_decoding_regions"""

    def setUp(self):
        self.codewords = CodewordList.from_code(LinearCode([[1, 1]]))

    def test_sequential_regions_are_valid(self):
        """Test the regions of the sequential decoder pass every check"""
        regions = realized_regions(self.codewords, Decoder.SEQUENTIAL)
        ok, issues = validate_decoding_regions(self.codewords, regions, show=False)
        self.assertTrue(ok, issues)

    def test_ml_regions_are_valid(self):
        """Test the regions of an ML decoder pass every check"""
        regions = realized_regions(self.codewords, Decoder.ML, np.random.default_rng(0))
        ok, issues = validate_decoding_regions(self.codewords, regions)
        self.assertTrue(ok, issues)
        self.assertEqual(sum(len(r) for r in regions), 16)

    def test_region_outside_consistency_set(self):
        """Test a region holding a word its codeword cannot produce"""
        regions = list(realized_regions(self.codewords))
        regions[0] = regions[0] | {Word.parse("01")}
        ok, issues = validate_decoding_regions(self.codewords, regions, show=False)
        self.assertFalse(ok)
        self.assertTrue(any("outside" in issue for issue in issues))

    def test_overlapping_regions(self):
        """Test a word decoded into two regions"""
        regions = list(realized_regions(self.codewords))
        shared = next(iter(regions[1]))
        regions[2] = regions[2] | {shared}
        ok, issues = validate_decoding_regions(self.codewords, regions, show=False)
        self.assertFalse(ok)
        self.assertTrue(any("more than one region" in issue for issue in issues))

    def test_uncovered_words(self):
        """Test an emptied region leaves receivable words uncovered"""
        regions = list(realized_regions(self.codewords))
        regions[0] = frozenset()
        ok, issues = validate_decoding_regions(self.codewords, regions, show=False)
        self.assertFalse(ok)
        self.assertTrue(any("not decoded" in issue for issue in issues))

    def test_region_count(self):
        """Test the number of regions must equal M"""
        ok, issues = validate_decoding_regions(self.codewords, [frozenset()], show=False)
        self.assertFalse(ok)
        self.assertEqual(len(issues), 1)


if __name__ == "__main__":
    unittest.main()
