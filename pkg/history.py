#!/usr/bin/env python3
"""Run manifests and run history"""

from dataclasses import dataclass, asdict, field
from datetime import datetime
from pathlib import Path
from typing import List, Dict, Any, Optional
import json
import logging

from rich.console import Console

from config import APP_VERSION, get_config_dir

console = Console(stderr=True)
logger = logging.getLogger(__name__)

MAX_HISTORY_ENTRIES = 100


@dataclass
class RunManifest:
    """What produced an output: subcommand, flags, seed, tool version and timing"""
    subcommand: str
    flags: Dict[str, Any] = field(default_factory=dict)
    seed: Optional[int] = None
    version: str = APP_VERSION
    started_at: datetime = field(default_factory=datetime.now)
    duration_seconds: float = 0.0
    outputs: List[str] = field(default_factory=list)

    def finish(self):
        self.duration_seconds = (datetime.now() - self.started_at).total_seconds()

    def to_dict(self) -> Dict[str, Any]:
        """Convert to dictionary for JSON serialization"""
        data = asdict(self)
        data["started_at"] = self.started_at.isoformat()
        data["flags"] = {key: _jsonable(value) for key, value in self.flags.items()}
        return data

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "RunManifest":
        """Create from dictionary (JSON deserialization)"""
        data = dict(data)
        data["started_at"] = datetime.fromisoformat(data["started_at"])
        return cls(**data)


def _jsonable(value: Any) -> Any:
    if isinstance(value, (str, int, float, bool)) or value is None:
        return value
    if isinstance(value, (list, tuple)):
        return [_jsonable(v) for v in value]
    if hasattr(value, "value"):
        return value.value
    return str(value)


def manifest_path(output: Path) -> Path:
    output = Path(output)
    return output.with_name(output.name + ".manifest.json")


def write_manifest(manifest: RunManifest, output: Path) -> Path:
    """Write the <output>.manifest.json sidecar"""
    sidecar = manifest_path(output)
    if str(output) not in manifest.outputs:
        manifest.outputs.append(str(output))
    with open(sidecar, "w") as f:
        json.dump(manifest.to_dict(), f, indent=2)
    return sidecar


def read_manifest(output: Path) -> RunManifest:
    with open(manifest_path(output)) as f:
        return RunManifest.from_dict(json.load(f))


def get_history_file() -> Path:
    """Get path to history file"""
    return get_config_dir() / "history.json"


def get_history(limit: int = 10) -> List[Dict[str, Any]]:
    """Most recent history entries, oldest first; limit <= 0 returns all"""
    history_file = get_history_file()
    if not history_file.exists():
        return []

    try:
        with open(history_file, "r") as f:
            history = json.load(f)
        return history[-limit:] if limit > 0 else history
    except (json.JSONDecodeError, FileNotFoundError) as e:
        logger.warning("Ignoring unreadable history file %s: %s", history_file, e)
        return []


def clear_history() -> None:
    """Clear all history"""
    history_file = get_history_file()
    if history_file.exists():
        history_file.unlink()
        console.print("[green]History cleared[/green]")
    else:
        console.print("[yellow]No history to clear[/yellow]")


def add_history_entry(manifest: RunManifest, status: str = "ok") -> None:
    """Append a finished run, keeping the last MAX_HISTORY_ENTRIES"""
    history_file = get_history_file()
    history_file.parent.mkdir(parents=True, exist_ok=True)

    history = get_history(0)
    entry = manifest.to_dict()
    entry["status"] = status
    history.append(entry)
    history = history[-MAX_HISTORY_ENTRIES:]

    with open(history_file, "w") as f:
        json.dump(history, f, indent=2)
