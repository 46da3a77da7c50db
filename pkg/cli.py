#!/usr/bin/env python3
"""Command-line interface for anticode

Human-readable tables go to stderr; machine-readable key=value lines go to stdout.
"""
from contextlib import contextmanager
from enum import Enum
from pathlib import Path
from typing import Optional, List, Dict, Any
import json
import logging
import sys

import numpy as np
import typer
from rich.console import Console
from rich.logging import RichHandler
from rich.panel import Panel
from rich.table import Table

from analysis import (
    bound_report,
    coset_alpha,
    coset_error_report,
    exact_error_ml,
    exact_error_sequential,
    format_exact,
    gv_threshold,
    linear_rate_limit,
    shannon_rate_limit,
    within_error_target,
)
from catalog import catalog as catalog_entries, lookup
from channel import blahut_arimoto_capacity, info_quantities
from codes import LinearCode, gv_random_code, read_code_file, write_code_file
from config import (
    APP_NAME,
    APP_VERSION,
    Budget,
    load_config,
    reset_config,
    resolve_budget,
    save_config,
    set_config_value,
    show_config,
)
from decode import CodewordList, Decoder, ml_decode, sequential_decode
from errors import AnticodeError, LengthMismatchError, ParseError
from gf4 import Word
from history import RunManifest, add_history_entry, clear_history, get_history, write_manifest
from reports import ExampleRow, Selector, reproduce_table
from sim import MonteCarloConfig, confidence_level, efficiency, estimate_error, run_protocol, write_transcript

console = Console(stderr=True)
logger = logging.getLogger(__name__)

app = typer.Typer(
    help="Codes, decoders and error analysis for the four-letter channel whose output never equals its input",
    add_completion=False,
    no_args_is_help=True,
)

state: Dict[str, Any] = {"budget_override": None, "threads": None}


class AnalyzeMethod(str, Enum):
    EXACT = "exact"
    COSET = "coset"


def setup_logging(verbose: bool):
    logging.basicConfig(
        level=logging.DEBUG if verbose else logging.WARNING,
        format="%(message)s",
        handlers=[RichHandler(console=console, show_path=False)],
        force=True,
    )


@app.callback()
def global_options(
    budget: Optional[int] = typer.Option(
        None, "--budget", min=1, help="Enumeration budget for every limit (overrides ANTICODE_BUDGET and config)"
    ),
    threads: Optional[int] = typer.Option(None, "--threads", min=0, help="Worker threads (0 = one per CPU)"),
    verbose: bool = typer.Option(False, "--verbose", "-v", help="Debug logging"),
):
    """Codes, decoders and error analysis for the four-letter channel"""
    setup_logging(verbose)
    state["budget_override"] = budget
    state["threads"] = threads


def budget_option():
    return typer.Option(None, "--budget", min=1, help="Enumeration budget for this command (overrides the global --budget)")


def _budget(override: Optional[int] = None) -> Budget:
    return resolve_budget(override=override if override is not None else state["budget_override"])


def _threads() -> Optional[int]:
    if state["threads"] is not None:
        return state["threads"]
    return int(load_config().get("threads", 0))


def emit(**values):
    """One key=value line per value on stdout"""
    for key, value in values.items():
        typer.echo(f"{key}={value}")


def sf(value: Optional[float]) -> str:
    """Four significant digits for display"""
    return "-" if value is None else f"{value:.4g}"


def _load_code(spec: str) -> LinearCode:
    """A code file path, or a catalog name with a known generator"""
    path = Path(spec).expanduser()
    if path.exists():
        return read_code_file(path)
    try:
        entry = lookup(spec)
    except ParseError:
        raise ParseError(f"{spec!r} is neither a code file nor a catalog name")
    return entry.build()


@contextmanager
def tracked(subcommand: str, flags: Dict[str, Any], seed: Optional[int] = None):
    """Record the run in the history file"""
    manifest = RunManifest(subcommand=subcommand, flags=flags, seed=seed)
    status = "error"
    try:
        yield manifest
        status = "ok"
    finally:
        manifest.finish()
        try:
            add_history_entry(manifest, status=status)
        except OSError as e:
            logger.warning("Could not record history: %s", e)


def _write_sidecar(manifest: RunManifest, output: Path):
    manifest.finish()
    sidecar = write_manifest(manifest, output)
    console.print(f"[dim]Manifest: {sidecar}[/dim]")


@app.command()
def info():
    """Channel entropies and capacity

    Machine output keys: h_y_bits, h_y_given_x_bits, mutual_info_bits, capacity_bits,
    blahut_arimoto_bits, shannon_rate_limit, linear_rate_limit.
    """
    quantities = info_quantities()
    numeric_capacity, _ = blahut_arimoto_capacity()

    table = Table(title="📡 Channel Q(y|x) = 0 if y = x, 1/3 otherwise")
    table.add_column("Quantity", style="cyan")
    table.add_column("Bits", style="magenta", justify="right")
    table.add_row("H(Y)", f"{quantities.h_y:.6f}")
    table.add_row("H(Y|X)", f"{quantities.h_y_given_x:.6f}")
    table.add_row("I(X;Y)", f"{quantities.mutual_info:.6f}")
    table.add_row("Capacity log2(4/3)", f"{quantities.capacity:.6f}")
    table.add_row("Capacity (Blahut-Arimoto)", f"{numeric_capacity:.6f}")
    table.add_row("Linear-code rate limit", f"{linear_rate_limit():.6f}")
    console.print(table)

    emit(
        h_y_bits=quantities.h_y,
        h_y_given_x_bits=quantities.h_y_given_x,
        mutual_info_bits=quantities.mutual_info,
        capacity_bits=quantities.capacity,
        blahut_arimoto_bits=numeric_capacity,
        shannon_rate_limit=shannon_rate_limit(),
        linear_rate_limit=linear_rate_limit(),
    )


@app.command()
def weights(
    code: str = typer.Option(..., "--code", "-c", help="Code file or catalog name"),
    budget: Optional[int] = budget_option(),
):
    """Weight distribution of a linear code

    Machine output keys: n, k, d, A_<s> for every nonzero count.
    """
    with tracked("weights", {"code": code}):
        linear = _load_code(code)
        distribution = linear.weight_distribution(_budget(budget).codewords)

        table = Table(title=f"⚖️ Weight distribution of {linear.label}")
        table.add_column("Weight s", style="cyan", justify="right")
        table.add_column("A_s", style="magenta", justify="right")
        for s, count in distribution.nonzero().items():
            table.add_row(str(s), str(count))
        table.add_row("Total", str(distribution.total), style="bold")
        console.print(table)

        emit(n=linear.n, k=linear.k, d=distribution.minimum_distance)
        emit(**{f"A_{s}": count for s, count in distribution.nonzero().items()})


@app.command()
def mindist(
    code: str = typer.Option(..., "--code", "-c", help="Code file or catalog name"),
    budget: Optional[int] = budget_option(),
):
    """Minimum distance by exhaustive enumeration

    Machine output keys: n, k, d.
    """
    with tracked("mindist", {"code": code}):
        linear = _load_code(code)
        d = linear.minimum_distance(_budget(budget).codewords)
        console.print(f"[green]✅ {linear.label}: minimum distance {d}[/green]")
        emit(n=linear.n, k=linear.k, d=d)


@app.command()
def catalog(name: Optional[str] = typer.Option(None, "--name", "-n", help="Show one entry, e.g. [40,5,28]")):
    """Built-in codes from the published table and examples

    Machine output keys: name, n, k, d, M, rate, source, published_bound, has_generator
    (one line per entry, space-separated pairs).
    """
    entries = [lookup(name)] if name else catalog_entries()

    table = Table(title="📚 Code catalog")
    table.add_column("Code", style="cyan")
    table.add_column("M", justify="right")
    table.add_column("R", justify="right")
    table.add_column("Source", style="yellow")
    table.add_column("Published ē ≤", justify="right", style="magenta")
    table.add_column("Generator", justify="center")
    for entry in entries:
        table.add_row(
            entry.name, str(entry.size), f"{entry.rate:.4g}", entry.source,
            sf(entry.published_bound), "✓" if entry.has_generator else "-",
        )
    console.print(table)

    for entry in entries:
        typer.echo(" ".join(f"{key}={value}" for key, value in entry.to_dict().items()))

    if name:
        entry = entries[0]
        for note in entry.notes:
            console.print(f"[dim]{note}[/dim]")
        distribution = entry.weights(_budget().codewords)
        if distribution is not None:
            console.print(f"Weights: {distribution.nonzero()}")
            emit(**{f"A_{s}": count for s, count in distribution.nonzero().items()})


@app.command()
def gv(
    n: int = typer.Option(..., "--n", min=1, help="Code length"),
    d: int = typer.Option(..., "--d", min=1, help="Target minimum distance"),
    seed: int = typer.Option(0, "--seed", help="Random seed"),
    out: Optional[Path] = typer.Option(None, "--out", "-o", help="Write the generator to this code file"),
    max_attempts: Optional[int] = typer.Option(None, "--max-attempts", min=1, help="Random rows tried per dimension"),
    budget: Optional[int] = budget_option(),
):
    """Random greedy construction of a linear code with minimum distance >= d

    Machine output keys: n, k, d, rate, out.
    """
    attempts = max_attempts or int(load_config().get("gv_max_attempts", 1000))
    with tracked("gv", {"n": n, "d": d, "max_attempts": attempts, "out": out}, seed=seed) as manifest:
        limit = _budget(budget).codewords
        code = gv_random_code(n, d, np.random.default_rng(seed), attempts, limit)
        found = code.minimum_distance(limit)
        console.print(f"[green]✅ Built {code.label} (target d ≥ {d})[/green]")
        emit(n=code.n, k=code.k, d=found, rate=efficiency(code))
        if out:
            write_code_file(code, out)
            _write_sidecar(manifest, out)
            emit(out=out)


@app.command("gv-threshold")
def gv_threshold_command():
    """Asymptotic distance ratio where random linear codes stop guaranteeing vanishing error

    Machine output keys: beta, rate, shannon_rate_limit, linear_rate_limit.
    """
    beta, rate = gv_threshold()
    console.print(Panel.fit(f"[bold cyan]β ≐ {beta:.4f}   rate 1 - H4(β) ≐ {rate:.4f}[/bold cyan]", border_style="cyan"))
    emit(beta=beta, rate=rate, shannon_rate_limit=shannon_rate_limit(), linear_rate_limit=linear_rate_limit())


def _parse_params(params: str):
    parts = [part.strip() for part in params.strip("[]").split(",")]
    if len(parts) != 3 or not all(part.isdigit() for part in parts):
        raise ParseError(f"--params expects n,k,d, got {params!r}")
    return tuple(int(part) for part in parts)


@app.command()
def bounds(
    code: Optional[str] = typer.Option(None, "--code", "-c", help="Code file or catalog name"),
    params: Optional[str] = typer.Option(None, "--params", "-p", help="n,k,d"),
    weights_from_catalog: Optional[str] = typer.Option(
        None, "--weights-from-catalog", help="Use this catalog entry's weight distribution for the weight bound"
    ),
    budget: Optional[int] = budget_option(),
):
    """Upper bounds on the average and maximum decoding error

    Machine output keys: M, d, theorem1, theorem2_tight, theorem2_loose, theorem3_tight, theorem3_loose.
    """
    if not code and not params:
        raise typer.BadParameter("give --code or --params")
    with tracked("bounds", {"code": code, "params": params, "weights_from_catalog": weights_from_catalog}):
        distribution = None
        if code:
            linear = _load_code(code)
            distribution = linear.weight_distribution(_budget(budget).codewords)
            n, size, d = linear.n, linear.size, distribution.minimum_distance
        else:
            n, k, d = _parse_params(params)
            size = 4 ** k
        if weights_from_catalog:
            distribution = lookup(weights_from_catalog).weights(_budget(budget).codewords)
            if distribution is None:
                raise ParseError(f"{weights_from_catalog} has no known weight distribution")
            if distribution.n != n:
                raise LengthMismatchError(n, distribution.n, what="weight distribution")

        report = bound_report(size, d, distribution)
        table = Table(title=f"📐 Bounds for M={size}, d={d}")
        table.add_column("Bound", style="cyan")
        table.add_column("Tight", justify="right", style="magenta")
        table.add_column("Loose", justify="right", style="magenta")
        table.add_row("Weight distribution", sf(report.theorem1), "")
        table.add_row("Distance (average)", sf(report.theorem2_tight), sf(report.theorem2_loose))
        table.add_row("Distance (maximum)", sf(report.theorem3_tight), sf(report.theorem3_loose))
        console.print(table)

        emit(
            M=size, d=d, theorem1=report.theorem1 if report.theorem1 is not None else "none",
            theorem2_tight=report.theorem2_tight, theorem2_loose=report.theorem2_loose,
            theorem3_tight=report.theorem3_tight, theorem3_loose=report.theorem3_loose,
        )


@app.command()
def analyze(
    code: str = typer.Option(..., "--code", "-c", help="Code file or catalog name"),
    method: AnalyzeMethod = typer.Option(AnalyzeMethod.COSET, "--method", "-m", help="exact enumeration or coset count"),
    decoder: Decoder = typer.Option(Decoder.ML, "--decoder", help="Decoder for the exact method"),
    epsilon: Optional[float] = typer.Option(None, "--epsilon", help="Also report whether the average error is <= epsilon"),
    budget: Optional[int] = budget_option(),
):
    """Exact decoding error probabilities

    Machine output keys: method, decoder, e_bar, e_bar_exact, e_max, alpha (coset method),
    e_<i> per codeword (exact method), meets_target (with --epsilon).
    """
    with tracked("analyze", {"code": code, "method": method, "decoder": decoder, "epsilon": epsilon}):
        linear = _load_code(code)
        limits = _budget(budget)
        alpha = None
        if method is AnalyzeMethod.COSET:
            alpha, _ = coset_alpha(linear, limits.coset)
            report = coset_error_report(linear, alpha=alpha)
        else:
            codewords = CodewordList.from_code(linear, limits.codewords)
            compute = exact_error_ml if decoder is Decoder.ML else exact_error_sequential
            report = compute(codewords, limits.exact, _threads())

        table = Table(title=f"🎯 {report.method.value} error of {linear.label}, {report.decoder.value} decoding")
        table.add_column("Quantity", style="cyan")
        table.add_column("Exact", style="magenta", justify="right")
        table.add_column("Value", justify="right")
        table.add_row("ē", format_exact(report.exact_average, linear.n), f"{report.average:.6g}")
        table.add_row("e_max", "", f"{report.maximum:.6g}")
        if alpha is not None:
            table.add_row("α", str(alpha), f"of 3^{linear.n}")
        if report.exact_per_codeword and len(report.exact_per_codeword) <= 64:
            for i, e in enumerate(report.exact_per_codeword, start=1):
                table.add_row(f"e_{i}", format_exact(e, linear.n), f"{float(e):.6g}")
        console.print(table)

        emit(
            method=report.method.value, decoder=report.decoder.value, e_bar=report.average,
            e_bar_exact=format_exact(report.exact_average, linear.n), e_max=report.maximum,
        )
        if alpha is not None:
            emit(alpha=alpha)
        if report.exact_per_codeword:
            emit(**{f"e_{i}": format_exact(e, linear.n) for i, e in enumerate(report.exact_per_codeword, start=1)})
        if epsilon is not None:
            meets = within_error_target(report.exact_average, epsilon)
            emit(meets_target=meets)


@app.command()
def decode(
    code: str = typer.Option(..., "--code", "-c", help="Code file or catalog name"),
    word: str = typer.Option(..., "--word", "-w", help="Received word, e.g. 01ab or ABCD"),
    decoder: Decoder = typer.Option(Decoder.ML, "--decoder", help="ml or seq"),
    seed: int = typer.Option(0, "--seed", help="Seed for ML tie-breaking"),
    budget: Optional[int] = budget_option(),
):
    """Decode one received word

    Machine output keys: result, index, tie_count, codeword, message.
    """
    with tracked("decode", {"code": code, "word": word, "decoder": decoder}, seed=seed):
        linear = _load_code(code)
        received = Word.parse(word)
        codewords = CodewordList.from_code(linear, _budget(budget).codewords)
        codewords.check_length(len(received))
        if decoder is Decoder.ML:
            outcome = ml_decode(received, codewords, np.random.default_rng(seed))
        else:
            outcome = sequential_decode(received, codewords)

        if outcome.decoded:
            codeword = codewords[outcome.index]
            message = linear.message_of(codeword)
            console.print(f"[green]✅ Decoded to codeword {outcome.index} = {codeword} "
                          f"({outcome.tie_count} consistent)[/green]")
            emit(result="decoded", index=outcome.index, tie_count=outcome.tie_count,
                 codeword=codeword, message=message)
        else:
            console.print("[yellow]⚠️ No codeword is consistent with this word[/yellow]")
            emit(result="inconsistent", tie_count=0)


@app.command()
def simulate(
    code: str = typer.Option(..., "--code", "-c", help="Code file or catalog name"),
    trials: int = typer.Option(100000, "--trials", "-t", min=1, help="Number of transmitted codewords"),
    decoder: Decoder = typer.Option(Decoder.ML, "--decoder", help="ml or seq"),
    seed: int = typer.Option(0, "--seed", help="Random seed"),
    fixed_codeword: Optional[int] = typer.Option(None, "--fixed-codeword", min=0, help="Always send this codeword index"),
    budget: Optional[int] = budget_option(),
):
    """Monte Carlo estimate of the decoding error

    Machine output keys: trials, errors, e_bar, half_width, sigmas, confidence, e_max (when tallied).
    """
    config = load_config()
    with tracked("simulate", {"code": code, "trials": trials, "decoder": decoder,
                              "fixed_codeword": fixed_codeword}, seed=seed):
        linear = _load_code(code)
        mc = MonteCarloConfig(
            trials=trials, seed=seed, decoder=decoder, fixed_codeword=fixed_codeword, threads=_threads(),
            chunk_trials=int(config["mc_chunk_trials"]), sigmas=float(config["confidence_sigmas"]),
        )
        report = estimate_error(linear, mc, _budget(budget).codewords)
        level = confidence_level(report.sigmas)

        console.print(Panel.fit(
            f"[bold cyan]ē ≈ {report.average:.6g} ± {report.half_width:.2g}[/bold cyan] "
            f"({report.errors} errors in {report.trials} trials, {report.sigmas:g}σ ≈ {level:.5%})",
            border_style="cyan",
        ))
        emit(trials=report.trials, errors=report.errors, e_bar=report.average, half_width=report.half_width,
             sigmas=report.sigmas, confidence=level)
        if report.maximum is not None:
            emit(e_max=report.maximum)


@app.command()
def protocol(
    code: str = typer.Option(..., "--code", "-c", help="Code file or catalog name"),
    words: int = typer.Option(1000, "--words", "-w", min=0, help="Codewords Alice tries to send"),
    letters: int = typer.Option(100000, "--letters", "-l", min=1, help="Raw key length"),
    seed: int = typer.Option(0, "--seed", help="Random seed"),
    transcript: Optional[Path] = typer.Option(None, "--transcript", help="Write the transcript to this file"),
    budget: Optional[int] = budget_option(),
):
    """Simulate one-way key generation by position announcement

    Machine output keys: words, raw_length, letters_consumed, letters_scanned, word_errors,
    word_error_rate, key_bits, bit_errors, efficiency, transcript.
    """
    with tracked("protocol", {"code": code, "words": words, "letters": letters,
                              "transcript": transcript}, seed=seed) as manifest:
        linear = _load_code(code)
        result = run_protocol(linear, words, letters, np.random.default_rng(seed), _budget(budget).codewords)
        summary = result.to_dict()

        table = Table(title=f"🔑 Key generation with {linear.label}")
        table.add_column("Quantity", style="cyan")
        table.add_column("Value", style="magenta", justify="right")
        for key, value in summary.items():
            table.add_row(key.replace("_", " "), f"{value:.4g}" if isinstance(value, float) else str(value))
        table.add_row("efficiency (bits/letter)", f"{efficiency(linear):.4g}")
        console.print(table)

        emit(**summary, efficiency=efficiency(linear))
        if transcript:
            write_transcript(result, transcript)
            _write_sidecar(manifest, transcript)
            emit(transcript=transcript)


@app.command()
def reproduce(
    selector: Selector = typer.Argument(..., help="table1 or example1"),
    out: Optional[Path] = typer.Option(None, "--out", "-o", help="Write the rows as JSON"),
):
    """Recompute the published code table or the worked examples and flag mismatches

    Machine output: one line per row with name, tight, loose, published, flag
    (example1 adds theorem1, published_theorem1, theorem1_flag, verified_d).
    """
    with tracked("reproduce", {"selector": selector, "out": out}) as manifest:
        rows = reproduce_table(selector, _budget().codewords)

        table = Table(title=f"📊 Reproduction of {selector.value}")
        for column in ("Code", "M", "R", "Loose", "Published", "Flag"):
            table.add_column(column, justify="right" if column not in ("Code", "Flag") else "left")
        examples = rows and isinstance(rows[0], ExampleRow)
        if examples:
            for column in ("Thm 1", "Published Thm 1", "Thm 1 flag", "Verified d"):
                table.add_column(column, justify="right")
        else:
            table.add_column("Tight", justify="right")
        for row in rows:
            style = "red" if "MISMATCH" in (row.flag, getattr(row, "theorem1_flag", None)) else None
            cells = [row.name, str(row.size), f"{row.rate:.4g}", sf(row.loose), sf(row.published), row.flag]
            if examples:
                cells += [sf(row.theorem1), sf(row.published_theorem1), row.theorem1_flag or "-",
                          "-" if row.verified_d is None else str(row.verified_d)]
            else:
                cells.append(sf(row.tight))
            table.add_row(*cells, style=style)
        console.print(table)

        for row in rows:
            typer.echo(" ".join(f"{key}={value}" for key, value in row.to_dict().items()))
        if out:
            with open(out, "w") as f:
                json.dump([row.to_dict() for row in rows], f, indent=2)
            _write_sidecar(manifest, out)


@app.command()
def config(
    show: bool = typer.Option(False, "--show", "-s", help="Show current configuration"),
    reset: bool = typer.Option(False, "--reset", "-r", help="Reset to defaults"),
    set_values: Optional[List[str]] = typer.Option(None, "--set", help="KEY=VALUE, may be repeated"),
):
    """Manage configuration"""
    if reset:
        reset_config()
        console.print("[green]Configuration reset to defaults[/green]")
    if set_values:
        current = load_config()
        for assignment in set_values:
            set_config_value(current, assignment)
        save_config(current)
        console.print(f"[green]Saved {len(set_values)} setting(s)[/green]")
    if show or not (reset or set_values):
        show_config()


@app.command()
def history(
    limit: int = typer.Option(10, "--limit", "-l", help="Number of entries to show"),
    clear: bool = typer.Option(False, "--clear", help="Clear history"),
):
    """View recent runs"""
    if clear:
        clear_history()
        return
    entries = get_history(limit)
    if not entries:
        console.print("[yellow]No runs recorded yet[/yellow]")
        return

    table = Table(title="🕑 Recent runs")
    table.add_column("Started", style="dim")
    table.add_column("Command", style="cyan")
    table.add_column("Seed", justify="right")
    table.add_column("Seconds", justify="right")
    table.add_column("Status")
    for entry in entries:
        status = entry.get("status", "?")
        table.add_row(
            entry.get("started_at", "")[:19], entry.get("subcommand", "?"),
            str(entry.get("seed", "")) if entry.get("seed") is not None else "-",
            f"{entry.get('duration_seconds', 0):.2f}",
            f"[green]{status}[/green]" if status == "ok" else f"[red]{status}[/red]",
        )
    console.print(table)


def main(argv: Optional[List[str]] = None) -> int:
    """Main entry point; returns the exit status"""
    args = list(sys.argv[1:] if argv is None else argv)
    command = typer.main.get_command(app)
    if not args:
        with typer.Context(command, info_name=APP_NAME) as ctx:
            console.print(command.get_help(ctx))
        return 2
    if args in (["--version"], ["-V"]):
        typer.echo(f"{APP_NAME} {APP_VERSION}")
        return 0
    try:
        command.main(args=args, prog_name=APP_NAME, standalone_mode=True)
    except SystemExit as e:
        if e.code is None:
            return 0
        return e.code if isinstance(e.code, int) else 1
    except (AnticodeError, OSError) as e:
        console.print(f"[red]Error: {e}[/red]")
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
