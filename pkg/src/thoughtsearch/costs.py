"""Projected LLM-call counts, explored-state fractions and dollar costs.

Each surveyed approach is reduced to two per-instance formulas over the
length bound L, trials T, branching bound b and beam size m; multiplying by
the dataset size D gives the projected totals.
"""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass
from typing import Callable, Iterable, Optional, Sequence


@dataclass(frozen=True)
class CostParams:
    b: int = 5
    T: int = 10
    m: int = 5

    def __post_init__(self):
        for name in ("b", "T", "m"):
            v = getattr(self, name)
            if not isinstance(v, int) or v < 1:
                raise ValueError(f"{name} must be a positive integer, got {v!r}")


@dataclass(frozen=True)
class DatasetProfile:
    name: str
    D: int
    L: int
    total_states: int


@dataclass(frozen=True)
class ApproachSpec:
    name: str
    complexity: str
    calls: Callable[[int, int, int, int], int]   # (L, T, b, m) -> calls per instance
    states: Callable[[int, int, int, int], int]  # (L, T, b, m) -> states per instance


@dataclass(frozen=True)
class Pricing:
    input_rate: float = 10.0     # $ per 1M input tokens
    output_rate: float = 30.0    # $ per 1M output tokens
    tokens_in_per_call: int = 500
    tokens_out_per_call: int = 50

    def __post_init__(self):
        for name, v in vars(self).items():
            if v < 0:
                raise ValueError(f"{name} must be non-negative")

    @property
    def per_call(self) -> float:
        return (self.tokens_in_per_call * self.input_rate
                + self.tokens_out_per_call * self.output_rate) / 1e6


GAME24 = DatasetProfile("24Game", D=1362, L=3, total_states=1362 * 4573)
CROSSWORD = DatasetProfile("Crossword", D=20, L=10, total_states=20 * 11**10)
BLOCKSWORLD = DatasetProfile("BlocksWorld", D=502, L=16, total_states=447 * 125 + 55 * 866)
PRONTOQA = DatasetProfile("PrOntoQA", D=4000, L=6, total_states=97_608)
PROFILES = (GAME24, CROSSWORD, BLOCKSWORLD, PRONTOQA)

DATASET_ALIASES = {
    "24game": GAME24, "game24": GAME24, "24": GAME24,
    "crossword": CROSSWORD, "crosswords": CROSSWORD, "xw": CROSSWORD,
    "blocksworld": BLOCKSWORLD, "bw": BLOCKSWORLD,
    "prontoqa": PRONTOQA, "pq": PRONTOQA,
}

APPROACHES = (
    ApproachSpec("IO", "O(D)", lambda L, T, b, m: 1, lambda L, T, b, m: 1),
    ApproachSpec("CoT", "O(D)", lambda L, T, b, m: 1, lambda L, T, b, m: 1),
    ApproachSpec("ReAct", "O(LD)", lambda L, T, b, m: L, lambda L, T, b, m: L),
    ApproachSpec("ReWOO", "O(LD)", lambda L, T, b, m: L, lambda L, T, b, m: L),
    ApproachSpec("RAP", "O(TbLD)", lambda L, T, b, m: L * T + b * L * T, lambda L, T, b, m: b * L * T),
    ApproachSpec("ToT", "O(bmLD)", lambda L, T, b, m: b * m * L, lambda L, T, b, m: b * m * L),
    ApproachSpec("GoT", "O(bLD)", lambda L, T, b, m: b * L, lambda L, T, b, m: b * L),
    ApproachSpec("Reflection", "O(LTD)", lambda L, T, b, m: (2 + L) * T, lambda L, T, b, m: L * T),
    ApproachSpec("LATS", "O(TbLD)", lambda L, T, b, m: 2 * L * T + b * L * T, lambda L, T, b, m: b * L * T),
)
APPROACH_BY_NAME = {a.name.lower(): a for a in APPROACHES}
APPROACH_BY_NAME["reflexion"] = APPROACH_BY_NAME["reflection"]

# Measured averages for the symbolic-search approach, per dataset in PROFILES
# order. Reported as-is, never derived from a formula.
TOS_NAME = "ToS (ours)"
TOS_MEASURED = {
    "24Game": ("27.0%", "2.2"),
    "Crossword": ("3e-4%", "3.8"),
    "BlocksWorld": ("125%", "3.8"),
    "PrOntoQA": ("175%", "2.6"),
}


def get_approach(name: str) -> ApproachSpec:
    try:
        return APPROACH_BY_NAME[name.lower()]
    except KeyError:
        raise KeyError(f"unknown approach {name!r}") from None


def get_dataset(name: str) -> DatasetProfile:
    try:
        return DATASET_ALIASES[name.lower()]
    except KeyError:
        raise KeyError(f"unknown dataset {name!r}") from None


def _args(dataset: DatasetProfile, params: CostParams):
    return dataset.L, params.T, params.b, params.m


def projected_calls(approach: ApproachSpec, dataset: DatasetProfile,
                    params: CostParams = CostParams()) -> int:
    return dataset.D * approach.calls(*_args(dataset, params))


def projected_states(approach: ApproachSpec, dataset: DatasetProfile,
                     params: CostParams = CostParams()) -> int:
    return dataset.D * approach.states(*_args(dataset, params))


def explored_fraction(approach: ApproachSpec, dataset: DatasetProfile,
                      params: CostParams = CostParams()) -> float:
    """Percentage of the summed state space the approach could touch."""
    return 100.0 * projected_states(approach, dataset, params) / dataset.total_states


def total_cost(approach: ApproachSpec, pricing: Pricing = Pricing(),
               datasets: Iterable[DatasetProfile] = PROFILES,
               params: CostParams = CostParams()) -> float:
    calls = sum(projected_calls(approach, d, params) for d in datasets)
    return calls * pricing.per_call


# --- rendering ---------------------------------------------------------------

def _round_half_up(x: float, ndigits: int = 0) -> float:
    q = 10.0**ndigits
    return math.floor(x * q + 0.5) / q


def _trim(text: str) -> str:
    return text.rstrip("0").rstrip(".") if "." in text else text


def format_calls(n: int) -> str:
    """Compact call count: plain below 1000, then K / M suffixes.

    Between 1,000 and 10,000 the K form is used only when it is exact to one
    decimal (a multiple of 100); otherwise the raw count is kept.
    """
    if n < 1000:
        return str(n)
    if n >= 1_000_000:
        return _trim(f"{_round_half_up(n / 1e6, 2):.2f}") + "M"
    if n >= 10_000:
        return f"{int(_round_half_up(n / 1000))}K"
    if n % 100 == 0:
        return _trim(f"{n / 1000:.1f}") + "K"
    return str(n)


def format_percent(p: float) -> str:
    """Percentage at table precision.

    Below 0.001: scientific, one significant digit. Below 1: one significant
    digit. Below 100: one decimal. Otherwise a whole number.
    """
    if p == 0:
        return "0%"
    if p < 1e-3:
        exp = math.floor(math.log10(p))
        mant = _round_half_up(p / 10**exp)
        if mant >= 10:
            mant, exp = 1, exp + 1
        return f"{int(mant)}e{exp}%"
    if p < 1:
        exp = math.floor(math.log10(p))
        digits = -exp
        return f"{_round_half_up(p, digits):.{digits}f}%"
    if p < 100:
        return f"{_round_half_up(p, 1):.1f}%"
    return f"{int(_round_half_up(p))}%"


def table_cells(params: CostParams = CostParams(),
                datasets: Sequence[DatasetProfile] = PROFILES) -> dict[tuple[str, str], tuple[str, str]]:
    """``{(approach, dataset): (states cell, calls cell)}`` including the measured row."""
    cells = {}
    for a in APPROACHES:
        for d in datasets:
            cells[a.name, d.name] = (
                format_percent(explored_fraction(a, d, params)),
                format_calls(projected_calls(a, d, params)),
            )
    for d in datasets:
        if d.name in TOS_MEASURED:
            cells[TOS_NAME, d.name] = TOS_MEASURED[d.name]
    return cells


def render_table(params: CostParams = CostParams(), pricing: Optional[Pricing] = None,
                 fmt: str = "text") -> str:
    """Text (aligned) or CSV rendering of the comparison table.

    In text mode, a dollar total per approach is appended when ``pricing``
    is given.
    """
    cells = table_cells(params)
    rows = [(a.name, a.complexity) for a in APPROACHES] + [(TOS_NAME, "O(1)")]
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["approach", "dataset", "states", "calls", "projected_calls", "explored_percent"])
        for name, _ in rows:
            spec = APPROACH_BY_NAME.get(name.lower())
            for d in PROFILES:
                states, calls = cells[name, d.name]
                exact_calls = projected_calls(spec, d, params) if spec else ""
                exact_pct = f"{explored_fraction(spec, d, params):.6g}" if spec else ""
                w.writerow([name, d.name, states, calls, exact_calls, exact_pct])
        return buf.getvalue()
    if fmt != "text":
        raise ValueError(f"unknown format {fmt!r}")

    header = ["Approach", "Complexity"]
    for d in PROFILES:
        header += [f"{d.name} States", "Calls"]
    if pricing is not None:
        header.append("Cost ($)")
    body = []
    for name, cx in rows:
        line = [name, cx]
        for d in PROFILES:
            line += list(cells[name, d.name])
        if pricing is not None:
            spec = APPROACH_BY_NAME.get(name.lower())
            line.append(f"{total_cost(spec, pricing, PROFILES, params):,.2f}" if spec else "-")
        body.append(line)
    widths = [max(len(r[i]) for r in [header] + body) for i in range(len(header))]
    fmt_row = lambda r: "  ".join(c.ljust(w) if i < 2 else c.rjust(w)
                                  for i, (c, w) in enumerate(zip(r, widths)))
    lines = [fmt_row(header), "  ".join("-" * w for w in widths)]
    lines += [fmt_row(r) for r in body]
    return "\n".join(lines) + "\n"
