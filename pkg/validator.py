#!/usr/bin/env python3
"""Decoding region validation"""

from typing import FrozenSet, List, Sequence, Tuple, Set

from rich.console import Console
from rich.panel import Panel

from config import DEFAULT_EXACT_BUDGET
from decode import CodewordList, is_consistent, iter_consistency_chunks
from errors import BudgetExceededError
from gf4 import Word

console = Console(stderr=True)


def validate_decoding_regions(
    codewords: CodewordList,
    regions: Sequence[FrozenSet[Word]],
    limit: int = DEFAULT_EXACT_BUDGET,
    show: bool = True,
) -> Tuple[bool, List[str]]:
    """Check that regions D_1..D_M are a valid set of decoding regions

    (i) every D_i lies inside L(c_i); (ii) the regions are pairwise disjoint;
    (iii) together they cover every word some codeword could produce.
    """
    issues = []

    if show:
        console.print(Panel.fit(
            f"[bold cyan]🔍 Validating {len(regions)} decoding regions (n={codewords.n}, M={codewords.size})[/bold cyan]",
            border_style="cyan",
        ))

    if len(regions) != codewords.size:
        issues.append(f"Expected {codewords.size} regions, got {len(regions)}")
        if show:
            console.print("[red]❌ Region count mismatch[/red]")
        return False, issues

    # (i)
    for i, (c, region) in enumerate(zip(codewords, regions)):
        outside = [y for y in region if len(y) != codewords.n or not is_consistent(y, c)]
        if outside:
            issues.append(f"D_{i + 1} contains {len(outside)} word(s) outside L(c_{i + 1}), e.g. {outside[0]}")
    if show and not issues:
        console.print("[green]✅ Every region lies in its consistency set[/green]")

    # (ii)
    seen: Set[Word] = set()
    overlaps = 0
    for region in regions:
        overlaps += len(seen & region)
        seen |= region
    if overlaps:
        issues.append(f"{overlaps} word(s) belong to more than one region")
    elif show:
        console.print("[green]✅ Regions are pairwise disjoint[/green]")

    # (iii)
    required = 3 ** codewords.n * codewords.size
    if required > limit:
        raise BudgetExceededError("Checking region coverage", required, limit)
    union: Set[int] = set()
    for c in codewords:
        for chunk in iter_consistency_chunks(c, limit):
            union.update(int(p) for p in chunk)
    covered = {y.packed for y in seen}
    missing = len(union - covered)
    if missing:
        issues.append(f"{missing} receivable word(s) are not decoded by any region")
    elif show:
        console.print(f"[green]✅ Regions cover all {len(union)} receivable words[/green]")

    if show:
        if issues:
            console.print(f"\n[red]❌ Validation failed with {len(issues)} issue(s)[/red]")
            for issue in issues:
                console.print(f"  • {issue}")
        else:
            console.print("\n[green]✅ Decoding regions are valid[/green]")
    return not issues, issues
