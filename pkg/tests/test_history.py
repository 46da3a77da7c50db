#!/usr/bin/env python3
"""Unit tests for run manifests and history"""

import json
import os
import shutil
import tempfile
import unittest
from pathlib import Path
from unittest import mock

from config import HOME_ENV
from decode import Decoder
from history import (
    MAX_HISTORY_ENTRIES,
    RunManifest,
    add_history_entry,
    clear_history,
    get_history,
    get_history_file,
    manifest_path,
    read_manifest,
    write_manifest,
)


class TestRunManifest(unittest.TestCase):
    """Test cases for RunManifest"""

    def test_serialization(self):
        """Test manifest serialization to/from dict"""
        manifest = RunManifest(subcommand="simulate", flags={"trials": 100}, seed=4)
        manifest.finish()
        restored = RunManifest.from_dict(manifest.to_dict())
        self.assertEqual(restored.subcommand, "simulate")
        self.assertEqual(restored.flags, {"trials": 100})
        self.assertEqual(restored.seed, 4)
        self.assertEqual(restored.started_at, manifest.started_at)
        self.assertGreaterEqual(restored.duration_seconds, 0.0)

    def test_flags_become_json(self):
        """Test enums and paths are stored as plain values"""
        manifest = RunManifest(subcommand="decode", flags={"decoder": Decoder.SEQUENTIAL, "out": Path("a/b.txt")})
        data = json.loads(json.dumps(manifest.to_dict()))
        self.assertEqual(data["flags"], {"decoder": "seq", "out": "a/b.txt"})


class TestManifestFiles(unittest.TestCase):
    """Test cases for sidecar manifests"""

    def setUp(self):
        self.temp_dir = tempfile.mkdtemp()

    def tearDown(self):
        shutil.rmtree(self.temp_dir)

    def test_sidecar(self):
        """Test the manifest is written next to the output"""
        output = Path(self.temp_dir) / "code.txt"
        output.write_text("1 1\n1\n")
        manifest = RunManifest(subcommand="gv", flags={"n": 1}, seed=0)
        sidecar = write_manifest(manifest, output)
        self.assertEqual(sidecar, manifest_path(output))
        self.assertEqual(sidecar.name, "code.txt.manifest.json")
        loaded = read_manifest(output)
        self.assertEqual(loaded.outputs, [str(output)])
        self.assertEqual(loaded.version, manifest.version)


class TestHistory(unittest.TestCase):
    """Test cases for the history file"""

    def setUp(self):
        self.temp_dir = tempfile.mkdtemp()
        self.env = mock.patch.dict(os.environ, {HOME_ENV: self.temp_dir})
        self.env.start()

    def tearDown(self):
        self.env.stop()
        shutil.rmtree(self.temp_dir)

    def test_empty(self):
        """Test no history file means no entries"""
        self.assertEqual(get_history(), [])

    def test_add_and_limit(self):
        """Test entries are appended in order and limited on read"""
        for i in range(5):
            add_history_entry(RunManifest(subcommand=f"cmd{i}"), status="ok" if i % 2 == 0 else "error")
        entries = get_history(3)
        self.assertEqual([e["subcommand"] for e in entries], ["cmd2", "cmd3", "cmd4"])
        self.assertEqual(entries[1]["status"], "error")
        self.assertEqual(len(get_history(0)), 5)

    def test_keeps_most_recent(self):
        """Test the file holds at most MAX_HISTORY_ENTRIES runs"""
        for i in range(MAX_HISTORY_ENTRIES + 5):
            add_history_entry(RunManifest(subcommand=str(i)))
        entries = get_history(0)
        self.assertEqual(len(entries), MAX_HISTORY_ENTRIES)
        self.assertEqual(entries[0]["subcommand"], "5")

    def test_clear(self):
        """Test clearing removes the file"""
        add_history_entry(RunManifest(subcommand="info"))
        clear_history()
        self.assertFalse(get_history_file().exists())
        clear_history()

    def test_corrupt_file(self):
        """Test an unreadable history file is treated as empty"""
        get_history_file().write_text("[broken")
        self.assertEqual(get_history(), [])


if __name__ == "__main__":
    unittest.main()
