#!/usr/bin/env python3
"""Configuration management for anticode"""

from pathlib import Path
from typing import Dict, Any, Optional
from dataclasses import dataclass
import json
import logging
import os

from rich.console import Console
from rich.panel import Panel
from rich.syntax import Syntax

from errors import ParseError

console = Console(stderr=True)
logger = logging.getLogger(__name__)

APP_NAME = "anticode"
APP_VERSION = "1.0.0"

HOME_ENV = "ANTICODE_HOME"
BUDGET_ENV = "ANTICODE_BUDGET"

# Enumeration limits
DEFAULT_CODEWORD_BUDGET = 2 ** 26   # 4^k codewords
DEFAULT_EXACT_BUDGET = 2 ** 32      # 3^n * M received words
DEFAULT_COSET_BUDGET = 2 ** 30      # 3^n full-weight words
DEFAULT_GV_MAX_ATTEMPTS = 1000
DEFAULT_MC_CHUNK_TRIALS = 65536
DEFAULT_CONFIDENCE_SIGMAS = 4.0


def get_config_dir() -> Path:
    """Directory holding config.json and history.json"""
    override = os.environ.get(HOME_ENV)
    if override:
        return Path(override).expanduser()
    return Path.home() / ".config" / APP_NAME


def get_config_file() -> Path:
    return get_config_dir() / "config.json"


def get_default_config() -> Dict[str, Any]:
    """Get default configuration"""
    return {
        "codeword_budget": DEFAULT_CODEWORD_BUDGET,
        "exact_budget": DEFAULT_EXACT_BUDGET,
        "coset_budget": DEFAULT_COSET_BUDGET,
        "gv_max_attempts": DEFAULT_GV_MAX_ATTEMPTS,
        "threads": 0,  # 0 = one worker per logical CPU
        "mc_chunk_trials": DEFAULT_MC_CHUNK_TRIALS,
        "confidence_sigmas": DEFAULT_CONFIDENCE_SIGMAS,
    }


def load_config() -> Dict[str, Any]:
    """Load configuration from file, filling in defaults for missing keys"""
    config = get_default_config()
    config_file = get_config_file()
    if config_file.exists():
        try:
            with open(config_file) as f:
                stored = json.load(f)
        except json.JSONDecodeError as e:
            raise ParseError(f"Cannot read {config_file}: {e}") from e
        unknown = set(stored) - set(config)
        if unknown:
            logger.warning("Ignoring unknown config keys: %s", ", ".join(sorted(unknown)))
        config.update({key: value for key, value in stored.items() if key in config})
    return config


def save_config(config: Dict[str, Any]):
    """Save configuration to file"""
    config_dir = get_config_dir()
    config_dir.mkdir(parents=True, exist_ok=True)
    config_file = get_config_file()
    with open(config_file, 'w') as f:
        json.dump(config, f, indent=2)
    config_file.chmod(0o600)


def reset_config() -> Dict[str, Any]:
    """Reset configuration to defaults"""
    config = get_default_config()
    save_config(config)
    return config


def set_config_value(config: Dict[str, Any], assignment: str) -> Dict[str, Any]:
    """Apply a KEY=VALUE assignment, coercing VALUE to the type of the default"""
    if "=" not in assignment:
        raise ParseError(f"Expected KEY=VALUE, got {assignment!r}")
    key, raw = (part.strip() for part in assignment.split("=", 1))
    defaults = get_default_config()
    if key not in defaults:
        raise ParseError(f"Unknown config key {key!r}; known keys: {', '.join(sorted(defaults))}")
    try:
        value = type(defaults[key])(float(raw)) if isinstance(defaults[key], int) else type(defaults[key])(raw)
    except ValueError as e:
        raise ParseError(f"Bad value for {key}: {raw!r}") from e
    config[key] = value
    return config


def show_config():
    """Display current configuration"""
    config = load_config()

    console.print(Panel.fit("[bold cyan]Current Configuration[/bold cyan]", border_style="cyan"))
    json_str = json.dumps(config, indent=2, sort_keys=True)
    console.print(Syntax(json_str, "json", theme="monokai", line_numbers=True))
    console.print(f"[dim]{get_config_file()}[/dim]")


@dataclass(frozen=True)
class Budget:
    """Enumeration limits in effect for one run"""
    codewords: int = DEFAULT_CODEWORD_BUDGET
    exact: int = DEFAULT_EXACT_BUDGET
    coset: int = DEFAULT_COSET_BUDGET


def resolve_budget(config: Optional[Dict[str, Any]] = None, override: Optional[int] = None) -> Budget:
    """Budgets from flag override, then ANTICODE_BUDGET, then config, then defaults"""
    if override is None:
        env_value = os.environ.get(BUDGET_ENV)
        if env_value:
            try:
                override = int(float(env_value))
            except ValueError as e:
                raise ParseError(f"{BUDGET_ENV} must be a number, got {env_value!r}") from e
    if override is not None:
        if override < 1:
            raise ParseError(f"Budget must be positive, got {override}")
        logger.debug("Using global enumeration budget %d", override)
        return Budget(codewords=override, exact=override, coset=override)

    config = config if config is not None else load_config()
    return Budget(
        codewords=int(config.get("codeword_budget", DEFAULT_CODEWORD_BUDGET)),
        exact=int(config.get("exact_budget", DEFAULT_EXACT_BUDGET)),
        coset=int(config.get("coset_budget", DEFAULT_COSET_BUDGET)),
    )
