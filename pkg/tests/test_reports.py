#!/usr/bin/env python3
"""Unit tests for reproducing the published table and examples"""

import unittest

from errors import ParseError
from reports import (
    ExampleRow,
    Selector,
    TableRow,
    example1_rows,
    four_significant,
    match_flag,
    reproduce_table,
    table1_rows,
)


class TestMatchFlag(unittest.TestCase):
    """Test cases for four-significant-digit comparison"""

    def test_four_significant(self):
        """Test rounding to four significant digits"""
        self.assertEqual(four_significant(0.0384935), 0.03849)
        self.assertEqual(four_significant(6.3374e-6), 6.337e-6)

    def test_flags(self):
        """Test match, match-tight and MISMATCH"""
        self.assertEqual(match_flag(0.01218, 0.0121795), "match")
        self.assertEqual(match_flag(0.02601, 0.0346831, 0.0260123), "match-tight")
        self.assertEqual(match_flag(7.912e-4, 7.911492e-4, 7.903766e-4), "MISMATCH")


class TestTable1(unittest.TestCase):
    """Test cases for the table reproduction"""

    def setUp(self):
        self.rows = {row.name: row for row in table1_rows()}

    def test_row_count(self):
        """Test all 22 rows are present"""
        self.assertEqual(len(self.rows), 22)
        self.assertTrue(all(isinstance(row, TableRow) for row in self.rows.values()))

    def test_loose_values(self):
        """Test loose bounds at four significant digits"""
        expected = {
            "[20,2,16]": 0.01218,
            "[30,3,22]": 4.277e-3,
            "[50,5,35]": 3.516e-4,
            "[100,10,62]": 6.337e-6,
            "[200,20,109]": 3.517e-8,
            "[250,25,136]": 6.340e-10,
        }
        for name, value in expected.items():
            self.assertEqual(four_significant(self.rows[name].loose), value, name)
            self.assertEqual(self.rows[name].flag, "match", name)

    def test_flags(self):
        """Test which rows disagree with the loose form"""
        flags = {name: row.flag for name, row in self.rows.items() if row.flag != "match"}
        self.assertEqual(flags, {"[10,1,10]": "match-tight", "[48,5,33]": "MISMATCH"})
        self.assertEqual(four_significant(self.rows["[10,1,10]"].tight), 0.02601)

    def test_rates(self):
        """Test R = 2k/n"""
        self.assertAlmostEqual(self.rows["[100,10,62]"].rate, 0.2)
        self.assertEqual(self.rows["[40,4,28]"].size, 256)


class TestExample1(unittest.TestCase):
    """Test cases for the worked examples"""

    @classmethod
    def setUpClass(cls):
        cls.rows = example1_rows()

    def test_loose_values(self):
        """Test the average-error bounds of the four codes"""
        self.assertEqual([four_significant(row.loose) for row in self.rows], [0.03849, 0.01711, 0.006008, 0.001502])
        self.assertTrue(all(row.flag == "match" for row in self.rows))
        self.assertEqual([row.item for row in self.rows], [1, 2, 3, 4])

    def test_weight_bounds(self):
        """Test the weight-distribution bounds of the first two codes"""
        first, second = self.rows[0], self.rows[1]
        self.assertEqual(four_significant(first.theorem1), 0.03031)
        self.assertEqual(first.theorem1_flag, "MISMATCH")
        self.assertEqual(four_significant(second.theorem1), 0.01216)
        self.assertEqual(second.theorem1_flag, "match")

    def test_constructed_codes(self):
        """Test the quasi-cyclic code and its shortening are verified"""
        quasi_cyclic, shortened = self.rows[2], self.rows[3]
        self.assertEqual(quasi_cyclic.verified_d, 28)
        self.assertTrue(quasi_cyclic.verified)
        self.assertGreaterEqual(shortened.verified_d, 28)
        self.assertTrue(shortened.verified)
        self.assertIsNone(self.rows[0].verified_d)

    def test_theorem1_for_constructed_codes(self):
        """Test weights derived from the generator give a bound below the average-error bound"""
        for row in self.rows[2:]:
            self.assertIsNotNone(row.theorem1)
            self.assertLessEqual(row.theorem1, row.loose)


class TestReproduceTable(unittest.TestCase):
    """Test cases for reproduce_table"""

    def test_selectors(self):
        """Test both selectors and their string forms"""
        self.assertEqual(len(reproduce_table(Selector.TABLE1)), 22)
        self.assertTrue(all(isinstance(row, ExampleRow) for row in reproduce_table("example1")))
        with self.assertRaises(ParseError):
            reproduce_table("table2")


if __name__ == "__main__":
    unittest.main()
