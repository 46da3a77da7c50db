#!/usr/bin/env python3
"""Unit tests for exact error analysis and bounds"""

import unittest
from fractions import Fraction

from analysis import (
    ErrorMethod,
    ErrorReport,
    average_error_from_union,
    bound_report,
    bound_theorem1,
    bound_theorem1_from_distance_distribution,
    bound_theorem2,
    bound_theorem3,
    coset_alpha,
    coset_error_report,
    exact_error_ml,
    exact_error_sequential,
    format_exact,
    gv_exponent,
    gv_threshold,
    linear_rate_limit,
    meets_error_target,
    shannon_rate_limit,
    union_measure,
    within_error_target,
)
from catalog import lookup
from codes import LinearCode
from decode import CodewordList, Decoder
from errors import BudgetExceededError, DomainError
from gf4 import Word


def codewords_of(generator) -> CodewordList:
    return CodewordList.from_code(LinearCode(generator))


class TestExactError(unittest.TestCase):
    """Test cases for exact enumeration"""

    def test_sequential_full_code_length_one(self):
        """Test the sequential decoder on all four letters"""
        report = exact_error_sequential(codewords_of([[1]]), threads=1)
        self.assertEqual(report.exact_per_codeword, (0, Fraction(2, 3), 1, 1))
        self.assertEqual(report.exact_average, Fraction(2, 3))
        self.assertEqual(report.maximum, 1.0)
        self.assertEqual(report.decoder, Decoder.SEQUENTIAL)
        self.assertEqual(report.method, ErrorMethod.EXACT)

    def test_ml_full_code_length_one(self):
        """Test ML spreads the error evenly over the four letters"""
        report = exact_error_ml(codewords_of([[1]]), threads=1)
        self.assertEqual(report.exact_per_codeword, (Fraction(2, 3),) * 4)
        self.assertAlmostEqual(report.maximum, 2 / 3)

    def test_repetition_length_two(self):
        """Test the code {tt} has average error 5/9 under both decoders"""
        codewords = codewords_of([[1, 1]])
        self.assertEqual(exact_error_ml(codewords).exact_average, Fraction(5, 9))
        self.assertEqual(exact_error_sequential(codewords).exact_average, Fraction(5, 9))
        self.assertEqual(union_measure(codewords), 16)
        self.assertEqual(average_error_from_union(16, 2, 4), Fraction(5, 9))

    def test_repetition_length_ten(self):
        """Test union and average error of the [10,1,10] code"""
        codewords = CodewordList.from_code(lookup("[10,1,10]").build())
        union = union_measure(codewords, threads=2)
        self.assertEqual(union, 230056)
        self.assertEqual(exact_error_ml(codewords).exact_average, Fraction(1535, 59049))
        self.assertEqual(average_error_from_union(union, 10, 4), Fraction(1535, 59049))

    def test_decoders_share_the_average(self):
        """Test sequential and ML give the same average but ML no larger maximum"""
        codewords = codewords_of([[1, 2, 0, 1, 3], [0, 1, 1, 2, 1]])
        sequential = exact_error_sequential(codewords)
        ml = exact_error_ml(codewords)
        self.assertEqual(sequential.exact_average, ml.exact_average)
        self.assertLessEqual(ml.maximum, sequential.maximum + 1e-12)

    def test_ml_error_is_the_same_for_every_codeword(self):
        """Test ML gives one per-codeword error on a linear code, equal to the coset value"""
        code = LinearCode([[1, 2, 0, 1, 3], [0, 1, 1, 2, 1]])
        report = exact_error_ml(CodewordList.from_code(code))
        self.assertEqual(len(set(report.exact_per_codeword)), 1)
        self.assertEqual(report.exact_per_codeword[0], coset_alpha(code)[1])
        self.assertAlmostEqual(report.maximum, report.average)

    def test_threads_do_not_change_results(self):
        """Test exact results are identical for one and several threads"""
        codewords = codewords_of([[1, 1, 2, 3], [0, 1, 3, 3]])
        self.assertEqual(exact_error_ml(codewords, threads=1), exact_error_ml(codewords, threads=4))

    def test_nonlinear_code(self):
        """Test exact error works on an arbitrary list of codewords"""
        codewords = CodewordList([Word.parse(w) for w in ("01a", "ba0", "1b1")])
        report = exact_error_ml(codewords)
        self.assertEqual(report.size, 3)
        self.assertGreater(report.average, 0)
        self.assertLessEqual(report.average, report.maximum)

    def test_guards(self):
        """Test single codewords and oversized enumerations are refused"""
        with self.assertRaises(DomainError):
            exact_error_ml(CodewordList([Word.parse("01")]))
        with self.assertRaises(BudgetExceededError):
            exact_error_ml(codewords_of([[1, 1, 1]]), limit=100)

    def test_format_exact(self):
        """Test num/3^n formatting"""
        self.assertEqual(format_exact(Fraction(5, 9), 2), "5/3^2")
        self.assertEqual(format_exact(Fraction(1535, 59049), 10), "1535/3^10")
        self.assertEqual(format_exact(Fraction(1, 2), 3), "1/2")


class TestCosets(unittest.TestCase):
    """Test cases for the coset count"""

    def test_repetition_codes(self):
        """Test alpha for the length-2 and length-10 repetition codes"""
        self.assertEqual(coset_alpha(LinearCode([[1, 1]])), (4, Fraction(5, 9)))
        alpha, error = coset_alpha(lookup("[10,1,10]").build())
        self.assertEqual(alpha, 57514)
        self.assertEqual(error, Fraction(1535, 59049))

    def test_agrees_with_enumeration(self):
        """Test the coset error equals the exact ML average"""
        for generator in ([[1, 2, 0, 1, 3], [0, 1, 1, 2, 1]], [[1, 1, 1, 0, 2, 3]], [[1, 0, 2], [0, 1, 3]]):
            code = LinearCode(generator)
            _, error = coset_alpha(code)
            self.assertEqual(error, exact_error_ml(CodewordList.from_code(code)).exact_average)

    def test_report_and_target(self):
        """Test the coset report and the error target check"""
        code = LinearCode([[1, 1]])
        report = coset_error_report(code)
        self.assertEqual(report.method, ErrorMethod.COSET)
        self.assertEqual(report.exact_average, Fraction(5, 9))
        self.assertEqual(meets_error_target(code, 0.6), (True, 4))
        self.assertEqual(meets_error_target(code, 0.5), (False, 4))
        with self.assertRaises(DomainError):
            meets_error_target(code, 1.5)

    def test_report_from_known_alpha(self):
        """Test a precomputed alpha gives the same report without a budget"""
        code = lookup("[10,1,10]").build()
        report = coset_error_report(code, limit=1, alpha=57514)
        self.assertEqual(report.exact_average, Fraction(1535, 59049))
        self.assertEqual(report, coset_error_report(code))
        self.assertTrue(within_error_target(report.exact_average, 0.03))
        self.assertFalse(within_error_target(report.exact_average, 0.02))
        with self.assertRaises(DomainError):
            within_error_target(report.exact_average, 0)

    def test_budget(self):
        """Test the 3^n enumeration respects its budget"""
        with self.assertRaises(BudgetExceededError):
            coset_alpha(LinearCode([[1] * 8]), limit=3 ** 7)


class TestBounds(unittest.TestCase):
    """Test cases for the upper bounds"""

    def test_theorem1_examples(self):
        """Test the weight-distribution bound of the two example codes"""
        self.assertAlmostEqual(bound_theorem1(lookup("[28,4,20]").weights()), 0.0303078, delta=5e-7)
        self.assertAlmostEqual(bound_theorem1(lookup("[31,4,22]").weights()), 0.0121557, delta=5e-7)

    def test_theorem1_accepts_sequences(self):
        """Test a plain A_0..A_n sequence"""
        self.assertAlmostEqual(bound_theorem1([1, 0, 3]), 2 / 3)

    def test_theorem1_bounds_exact_error(self):
        """Test the bound is at least the exact average error"""
        for generator in ([[1, 1]], [[1, 2, 0, 1, 3], [0, 1, 1, 2, 1]], [[1, 1, 1, 0, 2, 3]]):
            code = LinearCode(generator)
            exact = exact_error_ml(CodewordList.from_code(code)).average
            self.assertGreaterEqual(bound_theorem1(code.weight_distribution()), exact)

    def test_distance_distribution_form(self):
        """Test the general-code form agrees with weights on a linear code"""
        code = LinearCode([[1, 2, 0, 1], [0, 1, 1, 3]])
        self.assertAlmostEqual(
            bound_theorem1_from_distance_distribution(list(code.codewords())),
            bound_theorem1(code.weight_distribution()),
        )

    def test_theorem2_and_theorem3(self):
        """Test tight and loose forms and their ratio"""
        tight, loose = bound_theorem2(256, 20)
        self.assertAlmostEqual(loose, 128 * (2 / 3) ** 20)
        self.assertAlmostEqual(tight, 127.5 * (2 / 3) ** 20)
        self.assertEqual(bound_theorem3(256, 20), (2 * tight, 2 * loose))
        with self.assertRaises(DomainError):
            bound_theorem2(1, 5)
        with self.assertRaises(DomainError):
            bound_theorem3(4, 0)

    def test_bound_report(self):
        """Test the combined report"""
        report = bound_report(4, 10, lookup("[10,1,10]").build().weight_distribution())
        self.assertAlmostEqual(report.theorem2_tight, 0.02601, delta=5e-6)
        self.assertAlmostEqual(report.theorem1, 1.5 * (2 / 3) ** 10)
        self.assertIsNone(bound_report(4, 10).theorem1)


class TestAsymptotics(unittest.TestCase):
    """Test cases for rate limits"""

    def test_gv_threshold(self):
        """Test the distance ratio and rate where the exponent changes sign"""
        beta, rate = gv_threshold()
        self.assertAlmostEqual(beta, 0.4627, places=3)
        self.assertAlmostEqual(rate, 0.1353, places=3)
        self.assertAlmostEqual(gv_exponent(beta), 0.0, places=8)

    def test_rate_limits(self):
        """Test the channel capacity and half of it"""
        self.assertAlmostEqual(shannon_rate_limit(), 0.415037, places=6)
        self.assertAlmostEqual(linear_rate_limit(), shannon_rate_limit() / 2)
        self.assertAlmostEqual(linear_rate_limit(), 0.2075, places=4)


class TestErrorReport(unittest.TestCase):
    """Test cases for ErrorReport validation"""

    def test_rejects_out_of_range(self):
        """Test averages outside [0, 1] and maxima below the average"""
        with self.assertRaises(DomainError):
            ErrorReport(method=ErrorMethod.MONTE_CARLO, decoder=Decoder.ML, n=2, size=4, average=1.5)
        with self.assertRaises(DomainError):
            ErrorReport(method=ErrorMethod.MONTE_CARLO, decoder=Decoder.ML, n=2, size=4, average=0.5, maximum=0.2)
        with self.assertRaises(DomainError):
            ErrorReport(method=ErrorMethod.EXACT, decoder=Decoder.ML, n=2, size=4, average=0.0)

    def test_to_dict(self):
        """Test exact fractions serialize as strings"""
        data = coset_error_report(LinearCode([[1, 1]])).to_dict()
        self.assertEqual(data["exact_average"], "5/9")
        self.assertEqual(data["method"], "coset")


if __name__ == "__main__":
    unittest.main()
