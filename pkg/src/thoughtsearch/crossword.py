"""5x5 mini crosswords with a fixed list of candidate answers per slot.

Slots 0-4 are the rows (R0..R4), slots 5-9 the columns (C0..C4). A state
assigns a candidate index to some slots such that every assigned row and
assigned column agree on their shared cell.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Optional, Sequence

from .search import SearchProblem

SIZE = 5
N_SLOTS = 2 * SIZE
SLOT_NAMES = tuple(f"R{i}" for i in range(SIZE)) + tuple(f"C{i}" for i in range(SIZE))
FILE_LABELS = tuple(f"h{i}" for i in range(SIZE)) + tuple(f"v{i}" for i in range(SIZE))
UNASSIGNED = -1
# row/column interleaving used by the fixed-slot-order mode
FIXED_ORDER = (0, 5, 1, 6, 2, 7, 3, 8, 4, 9)


def _crossings(slot):
    """(other slot, my position, their position) for each crossing slot."""
    if slot < SIZE:
        return [(SIZE + j, j, slot) for j in range(SIZE)]
    col = slot - SIZE
    return [(i, i, col) for i in range(SIZE)]


@dataclass(frozen=True)
class CrosswordSpec:
    horizontal: tuple[tuple[str, ...], ...]
    vertical: tuple[tuple[str, ...], ...]
    # compat[s][t][k] = bitmask of candidates of s consistent with candidate k of t
    _compat: tuple = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        h = tuple(tuple(w) for w in self.horizontal)
        v = tuple(tuple(w) for w in self.vertical)
        if len(h) != SIZE or len(v) != SIZE:
            raise ValueError("need 5 horizontal and 5 vertical candidate lists")
        for name, words in zip(SLOT_NAMES, h + v):
            if not words:
                raise ValueError(f"slot {name} has no candidates")
            for w in words:
                if len(w) != SIZE:
                    raise ValueError(f"slot {name}: candidate {w!r} is not {SIZE} letters")
        object.__setattr__(self, "horizontal", h)
        object.__setattr__(self, "vertical", v)
        object.__setattr__(self, "_compat", self._build_compat())

    @classmethod
    def from_lists(cls, horizontal: Sequence[Sequence[str]], vertical: Sequence[Sequence[str]]):
        """Build a spec, silently dropping words that are not exactly 5 letters."""
        clean = lambda lists: [[w for w in words if len(w) == SIZE] for words in lists]
        return cls(clean(horizontal), clean(vertical))

    @property
    def slots(self) -> tuple[tuple[str, ...], ...]:
        return self.horizontal + self.vertical

    def _build_compat(self):
        slots = self.slots
        compat = []
        for s in range(N_SLOTS):
            per_other = {}
            for t, my_pos, their_pos in _crossings(s):
                per_other[t] = tuple(
                    sum(1 << i for i, w in enumerate(slots[s]) if w[my_pos] == other[their_pos])
                    for other in slots[t]
                )
            compat.append(per_other)
        return tuple(compat)

    def allowed(self, slot: int, assignment: Sequence[int]) -> int:
        """Bitmask of candidates for ``slot`` agreeing with all assigned crossings."""
        mask = (1 << len(self.slots[slot])) - 1
        for t, table in self._compat[slot].items():
            k = assignment[t]
            if k != UNASSIGNED:
                mask &= table[k]
        return mask


@dataclass(frozen=True)
class CrosswordState:
    assignment: tuple[int, ...] = (UNASSIGNED,) * N_SLOTS

    def key(self) -> str:
        return "|".join(
            f"{name}={'·' if k == UNASSIGNED else k}" for name, k in zip(SLOT_NAMES, self.assignment)
        )

    @property
    def n_assigned(self) -> int:
        return sum(k != UNASSIGNED for k in self.assignment)


def successors_xw(spec: CrosswordSpec, state: CrosswordState, fixed_order: bool = False):
    assignment = state.assignment
    slots = spec.slots
    if fixed_order:
        order = [next((s for s in FIXED_ORDER if assignment[s] == UNASSIGNED), None)]
        if order[0] is None:
            return []
    else:
        order = [s for s in range(N_SLOTS) if assignment[s] == UNASSIGNED]
    out = []
    for s in order:
        mask = spec.allowed(s, assignment)
        words = slots[s]
        i = 0
        while mask:
            if mask & 1:
                new = list(assignment)
                new[s] = i
                out.append((f"{SLOT_NAMES[s]} := {words[i]}", CrosswordState(tuple(new))))
            mask >>= 1
            i += 1
    return out


def is_consistent(spec: CrosswordSpec, state: CrosswordState) -> bool:
    a = state.assignment
    for r in range(SIZE):
        if a[r] == UNASSIGNED:
            continue
        row = spec.horizontal[r][a[r]]
        for c in range(SIZE):
            if a[SIZE + c] != UNASSIGNED and spec.vertical[c][a[SIZE + c]][r] != row[c]:
                return False
    return True


def is_goal_xw(spec: CrosswordSpec, state: CrosswordState) -> bool:
    a = state.assignment
    if any(k == UNASSIGNED for k in a) or not is_consistent(spec, state):
        return False
    grid = grid_of(spec, state)
    for r in range(SIZE):
        if "".join(grid[r]) not in spec.horizontal[r]:
            return False
    for c in range(SIZE):
        if "".join(grid[r][c] for r in range(SIZE)) not in spec.vertical[c]:
            return False
    return True


def grid_of(spec: CrosswordSpec, state: CrosswordState) -> list[list[Optional[str]]]:
    grid: list[list[Optional[str]]] = [[None] * SIZE for _ in range(SIZE)]
    a = state.assignment
    for r in range(SIZE):
        if a[r] != UNASSIGNED:
            for c, ch in enumerate(spec.horizontal[r][a[r]]):
                grid[r][c] = ch
    for c in range(SIZE):
        if a[SIZE + c] != UNASSIGNED:
            for r, ch in enumerate(spec.vertical[c][a[SIZE + c]]):
                if grid[r][c] is not None and grid[r][c] != ch:
                    raise ValueError(f"inconsistent state at cell ({r}, {c})")
                grid[r][c] = ch
    return grid


def render_grid(grid) -> str:
    return "".join("".join(ch or "." for ch in row) + "\n" for row in grid)


def make_problem(spec: CrosswordSpec, fixed_order: bool = False) -> SearchProblem:
    return SearchProblem(
        initial=CrosswordState(),
        successors=lambda s: successors_xw(spec, s, fixed_order),
        is_goal=lambda s: is_goal_xw(spec, s),
        canonical_key=CrosswordState.key,
    )


_LABEL = re.compile(r"^\s*([hv][0-4])\s*:\s*$", re.IGNORECASE)


def parse_spec(text: str) -> CrosswordSpec:
    """Parse ten labelled blocks ``h0:`` .. ``v4:`` with one word per line."""
    blocks: dict[str, list[str]] = {}
    current = None
    for lineno, line in enumerate(text.splitlines(), 1):
        stripped = line.strip()
        if not stripped or stripped.startswith("#"):
            continue
        m = _LABEL.match(stripped)
        if m:
            current = m.group(1).lower()
            if current in blocks:
                raise ValueError(f"line {lineno}: duplicate block {current!r}")
            blocks[current] = []
        elif current is None:
            raise ValueError(f"line {lineno}: word outside of a labelled block: {stripped!r}")
        else:
            blocks[current].append(stripped.lower())
    missing = [lab for lab in FILE_LABELS if lab not in blocks]
    if missing:
        raise ValueError(f"missing blocks: {', '.join(missing)}")
    return CrosswordSpec.from_lists(
        [blocks[f"h{i}"] for i in range(SIZE)], [blocks[f"v{i}"] for i in range(SIZE)]
    )


def dump_spec(spec: CrosswordSpec) -> str:
    lines = []
    for label, words in zip(FILE_LABELS, spec.slots):
        lines.append(f"{label}:")
        lines.extend(words)
    return "\n".join(lines) + "\n"


def parse_grid(text: str) -> list[str]:
    rows = [ln.strip().lower() for ln in text.splitlines() if ln.strip()]
    if len(rows) != SIZE or any(len(r) != SIZE for r in rows):
        raise ValueError("solution grid must be 5 lines of 5 letters")
    return rows


def state_for_grid(spec: CrosswordSpec, rows: Sequence[str]) -> Optional[CrosswordState]:
    """The full assignment spelling ``rows``, or None if some word is not a candidate."""
    cols = ["".join(r[c] for r in rows) for c in range(SIZE)]
    assignment = []
    for words, w in zip(spec.slots, list(rows) + cols):
        if w not in words:
            return None
        assignment.append(words.index(w))
    return CrosswordState(tuple(assignment))
