#!/usr/bin/env python3
"""Unit tests for the chunk runner"""

import unittest

from parallel import ChunkRunner, default_threads, resolve_threads


class TestChunkRunner(unittest.TestCase):
    """Test cases for ChunkRunner"""

    def test_order_is_kept(self):
        """Test results come back in input order for any thread count"""
        for threads in (1, 4):
            with ChunkRunner(threads, progress=threads > 1) as runner:
                self.assertEqual(runner.map(lambda x: x * x, range(50), total=50), [x * x for x in range(50)])

    def test_resolve_threads(self):
        """Test 0 and None select one worker per CPU"""
        self.assertGreaterEqual(default_threads(), 1)
        self.assertEqual(resolve_threads(0), default_threads())
        self.assertEqual(resolve_threads(None), default_threads())
        self.assertEqual(resolve_threads(3), 3)
        with self.assertRaises(ValueError):
            resolve_threads(-1)

    def test_shutdown_twice(self):
        """Test shutting down is idempotent"""
        runner = ChunkRunner(2)
        runner.shutdown()
        runner.shutdown()


if __name__ == "__main__":
    unittest.main()
