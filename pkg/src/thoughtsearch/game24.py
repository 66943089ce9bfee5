"""24 game and Countdown over exact rationals."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Iterable, Optional

from .search import SearchLimits, SearchOutcome, SearchProblem, UNLIMITED, bfs

MAX_NUMBERS = 6


@dataclass(frozen=True)
class Game24State:
    values: tuple[Fraction, ...]

    def __post_init__(self):
        vals = tuple(sorted(Fraction(v) for v in self.values))
        if not 1 <= len(vals) <= MAX_NUMBERS:
            raise ValueError(f"state must hold 1..{MAX_NUMBERS} numbers, got {len(vals)}")
        object.__setattr__(self, "values", vals)

    def key(self) -> str:
        return " ".join(str(v) for v in self.values)

    def __str__(self):
        return "[" + ", ".join(str(v) for v in self.values) + "]"


@dataclass(frozen=True)
class Game24Instance:
    numbers: tuple[int, ...]
    target: int = 24
    countdown: bool = field(default=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "numbers", tuple(int(n) for n in self.numbers))
        n = len(self.numbers)
        if self.countdown:
            if not 2 <= n <= MAX_NUMBERS:
                raise ValueError(f"countdown instance needs 2..{MAX_NUMBERS} numbers, got {n}")
        elif n != 4:
            raise ValueError(f"24 game instance needs exactly 4 numbers, got {n}")

    def to_line(self) -> str:
        nums = " ".join(str(n) for n in self.numbers)
        if self.countdown:
            return f"{self.target}: {nums}"
        return nums


def _apply(state_vals, i, j, result):
    rest = [v for k, v in enumerate(state_vals) if k != i and k != j]
    rest.append(result)
    return Game24State(tuple(rest))


def successors24(state: Game24State) -> list[tuple[str, Game24State]]:
    vals = state.values
    out = []
    for i, j in combinations(range(len(vals)), 2):
        a, b = vals[i], vals[j]
        out.append((f"{a} + {b} = {a + b}", _apply(vals, i, j, a + b)))
        out.append((f"{a} * {b} = {a * b}", _apply(vals, i, j, a * b)))
        out.append((f"{a} - {b} = {a - b}", _apply(vals, i, j, a - b)))
        out.append((f"{b} - {a} = {b - a}", _apply(vals, i, j, b - a)))
        if b != 0:
            out.append((f"{a} / {b} = {a / b}", _apply(vals, i, j, a / b)))
        if a != 0:
            out.append((f"{b} / {a} = {b / a}", _apply(vals, i, j, b / a)))
    return out


def is_goal24(state: Game24State, target=24) -> bool:
    return len(state.values) == 1 and state.values[0] == Fraction(target)


def make_problem(instance: Game24Instance, goal=None) -> SearchProblem:
    target = Fraction(instance.target)
    return SearchProblem(
        initial=Game24State(tuple(instance.numbers)),
        successors=successors24,
        is_goal=goal if goal is not None else (lambda s: is_goal24(s, target)),
        canonical_key=Game24State.key,
    )


def solve24(instance: Game24Instance, limits: SearchLimits = UNLIMITED) -> SearchOutcome:
    return bfs(make_problem(instance), limits)


_OPS = {
    "+": lambda a, b: a + b,
    "-": lambda a, b: a - b,
    "*": lambda a, b: a * b,
    "/": lambda a, b: a / b,
}


def replay_witness(instance: Game24Instance, labels: Iterable[str]) -> Optional[list[Fraction]]:
    """Re-run labelled operations as arithmetic on the starting multiset.

    Returns the final multiset (sorted) or None if a label is malformed,
    uses a number that is not available, or states a wrong result.
    """
    pool = [Fraction(n) for n in instance.numbers]
    for label in labels:
        try:
            lhs, rhs = label.split(" = ")
            a_txt, op, b_txt = lhs.split(" ")
            a, b, claimed = Fraction(a_txt), Fraction(b_txt), Fraction(rhs)
        except ValueError:
            return None
        if op not in _OPS or (op == "/" and b == 0):
            return None
        if _OPS[op](a, b) != claimed:
            return None
        try:
            pool.remove(a)
            pool.remove(b)
        except ValueError:
            return None
        pool.append(claimed)
    return sorted(pool)


def parse_line(line: str, lineno: int = 0) -> Game24Instance:
    text = line.strip()
    try:
        if ":" in text:
            head, tail = text.split(":", 1)
            return Game24Instance(tuple(int(t) for t in tail.split()), int(head), countdown=True)
        return Game24Instance(tuple(int(t) for t in text.split()))
    except ValueError as exc:
        raise ValueError(f"line {lineno}: {exc}: {line.rstrip()!r}") from None


def load_instances(text: str) -> list[Game24Instance]:
    out = []
    for lineno, line in enumerate(text.splitlines(), 1):
        if line.strip() and not line.lstrip().startswith("#"):
            out.append(parse_line(line, lineno))
    return out


def dump_instances(instances: Iterable[Game24Instance]) -> str:
    return "".join(inst.to_line() + "\n" for inst in instances)
