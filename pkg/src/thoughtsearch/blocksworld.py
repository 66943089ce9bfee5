"""STRIPS BlocksWorld with the four classic operators.

States are frozensets of ground atoms written as plain strings
("on a b", "on-table a", "clear a", "holding a", "arm-empty").
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Optional

from .search import SearchProblem

ARITY = {"arm-empty": 0, "clear": 1, "on-table": 1, "holding": 1, "on": 2}
SCHEMAS = ("pick-up", "unstack", "put-down", "stack")


class ProblemParseError(ValueError):
    def __init__(self, message: str, line: Optional[int] = None, context: str = ""):
        self.line = line
        where = f"line {line}: " if line is not None else ""
        ctx = f"\n    {context.strip()}" if context.strip() else ""
        super().__init__(f"{where}{message}{ctx}")


class MalformedState(ValueError):
    pass


def parse_atom(text: str) -> tuple[str, ...]:
    parts = text.split()
    if not parts:
        raise MalformedState("empty atom")
    pred, args = parts[0], parts[1:]
    if pred not in ARITY:
        raise MalformedState(f"unknown predicate {pred!r}")
    if len(args) != ARITY[pred]:
        raise MalformedState(f"predicate {pred!r} takes {ARITY[pred]} argument(s), got {len(args)}")
    for a in args:
        if any(ch in a for ch in "();"):
            raise MalformedState(f"bad block name {a!r}")
    return tuple(parts)


def atom(*parts: str) -> str:
    return " ".join(parts)


def _layout(atoms: Iterable[str]):
    """Split atoms into (arm_empty, holding, on-table set, on: top->below, clear set)."""
    arm_empty = False
    holding = []
    table = set()
    on = {}
    clear = set()
    for a in atoms:
        parts = a.split()
        pred = parts[0]
        if pred == "arm-empty":
            arm_empty = True
        elif pred == "holding":
            holding.append(parts[1])
        elif pred == "on-table":
            table.add(parts[1])
        elif pred == "clear":
            clear.add(parts[1])
        else:
            on[parts[1]] = parts[2]
    return arm_empty, holding, table, on, clear


def check_well_formed(atoms: Iterable[str], blocks: Optional[Iterable[str]] = None) -> None:
    """Raise :class:`MalformedState` unless the atoms describe a physical configuration."""
    atoms = list(atoms)
    for a in atoms:
        parse_atom(a)
    arm_empty, holding, table, on, clear = _layout(atoms)
    mentioned = set(table) | set(clear) | set(holding) | set(on) | set(on.values())
    universe = set(blocks) if blocks is not None else mentioned
    extra = mentioned - universe
    if extra:
        raise MalformedState(f"undeclared block(s): {', '.join(sorted(extra))}")

    if arm_empty == bool(holding) or len(holding) > 1:
        raise MalformedState("need exactly one of arm-empty or a single holding atom")
    on_tops = [a.split()[1] for a in atoms if a.split()[0] == "on"]
    if len(on_tops) != len(set(on_tops)):
        raise MalformedState("a block is on two blocks at once")
    for b in universe:
        places = (b in table) + (b in on) + (b in holding)
        if places != 1:
            raise MalformedState(f"block {b!r} must be on the table, on a block, or held (found {places})")
    below = list(on.values())
    if len(below) != len(set(below)):
        raise MalformedState("two blocks sit on the same block")
    for b in universe:
        should_be_clear = b not in on.values() and b not in holding
        if (b in clear) != should_be_clear:
            raise MalformedState(f"clear {b} is inconsistent with the configuration")
    for b in on:
        seen = {b}
        cur = b
        while cur in on:
            cur = on[cur]
            if cur in seen:
                raise MalformedState(f"cyclic stack through {b!r}")
            seen.add(cur)
        if cur in holding:
            raise MalformedState(f"stack under {b!r} rests on the held block")


@dataclass(frozen=True)
class BlocksState:
    atoms: frozenset

    @classmethod
    def of(cls, atoms: Iterable[str], blocks=None, check: bool = True) -> "BlocksState":
        norm = frozenset(" ".join(a.lower().split()) for a in atoms)
        if check:
            check_well_formed(norm, blocks)
        return cls(norm)

    def key(self) -> str:
        return ";".join(sorted(self.atoms))

    @property
    def blocks(self) -> frozenset:
        return frozenset(p for a in self.atoms for p in a.split()[1:])


@dataclass(frozen=True)
class BlocksGoal:
    atoms: frozenset

    @classmethod
    def of(cls, atoms: Iterable[str]) -> "BlocksGoal":
        norm = frozenset(" ".join(a.lower().split()) for a in atoms)
        for a in norm:
            parse_atom(a)
        return cls(norm)


def successors_bw(state: BlocksState) -> list[tuple[str, BlocksState]]:
    atoms = state.atoms
    arm_empty, holding, table, on, clear = _layout(atoms)
    out = []

    def emit(label, delete, add):
        out.append((label, BlocksState((atoms - delete) | add)))

    if arm_empty:
        for b in sorted(table & clear):
            emit(f"(pick-up {b})",
                 {"arm-empty", f"clear {b}", f"on-table {b}"},
                 {f"holding {b}"})
        for a in sorted(b for b in on if b in clear):
            b = on[a]
            emit(f"(unstack {a} {b})",
                 {"arm-empty", f"clear {a}", f"on {a} {b}"},
                 {f"holding {a}", f"clear {b}"})
    else:
        (a,) = holding
        emit(f"(put-down {a})",
             {f"holding {a}"},
             {"arm-empty", f"clear {a}", f"on-table {a}"})
        for b in sorted(clear):
            if b != a:
                emit(f"(stack {a} {b})",
                     {f"holding {a}", f"clear {b}"},
                     {f"on {a} {b}", f"clear {a}", "arm-empty"})
    return out


def is_goal_bw(state: BlocksState, goal: BlocksGoal) -> bool:
    return goal.atoms <= state.atoms


def make_problem(init: BlocksState, goal: BlocksGoal) -> SearchProblem:
    return SearchProblem(
        initial=init,
        successors=successors_bw,
        is_goal=lambda s: is_goal_bw(s, goal),
        canonical_key=BlocksState.key,
    )


def count_reachable(init: BlocksState) -> int:
    key = BlocksState.key
    seen = {key(init)}
    todo = [init]
    while todo:
        for _, child in successors_bw(todo.pop()):
            k = key(child)
            if k not in seen:
                seen.add(k)
                todo.append(child)
    return len(seen)


def stacks_to_atoms(stacks: Iterable[Iterable[str]], holding: Optional[str] = None) -> frozenset:
    """Atoms for towers given bottom-to-top, plus the arm."""
    out = set()
    for tower in stacks:
        tower = list(tower)
        if not tower:
            continue
        out.add(f"on-table {tower[0]}")
        for lower, upper in zip(tower, tower[1:]):
            out.add(f"on {upper} {lower}")
        out.add(f"clear {tower[-1]}")
    if holding is None:
        out.add("arm-empty")
    else:
        out.add(f"holding {holding}")
    return frozenset(out)


# --- PDDL-subset problem files -------------------------------------------

_TOKEN = re.compile(r"\(|\)|[^\s()]+")


def _tokenize(text: str):
    tokens = []
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.split(";", 1)[0]
        for m in _TOKEN.finditer(line):
            tokens.append((m.group(0), lineno))
    return tokens


def _read_sexpr(tokens, lines):
    stack = [[]]
    opened = []
    for tok, lineno in tokens:
        if tok == "(":
            stack.append([])
            opened.append(lineno)
        elif tok == ")":
            if len(stack) == 1:
                raise ProblemParseError("unbalanced ')'", lineno, lines[lineno - 1])
            done = stack.pop()
            start = opened.pop()
            stack[-1].append(_Node(done, start))
        else:
            stack[-1].append((tok.lower(), lineno))
    if len(stack) != 1:
        ln = opened[-1]
        raise ProblemParseError("unbalanced '(' never closed", ln, lines[ln - 1])
    return stack[0]


class _Node(list):
    def __init__(self, items, line):
        super().__init__(items)
        self.line = line


def _atom_from(node, lines, objects=None):
    if not isinstance(node, _Node):
        tok, ln = node
        raise ProblemParseError(f"expected an atom in parentheses, got {tok!r}", ln, lines[ln - 1])
    words = []
    for item in node:
        if isinstance(item, _Node):
            raise ProblemParseError("nested expression inside an atom", item.line, lines[item.line - 1])
        words.append(item[0])
    text = " ".join(words)
    try:
        parse_atom(text)
    except MalformedState as exc:
        raise ProblemParseError(str(exc), node.line, lines[node.line - 1]) from None
    if objects is not None:
        for name in words[1:]:
            if name not in objects:
                raise ProblemParseError(f"unknown object {name!r}", node.line, lines[node.line - 1])
    return text


def parse_problem(text: str) -> tuple[BlocksState, BlocksGoal]:
    """Parse ``(define (problem ..) (:objects ..) (:init ..) (:goal (and ..)))``."""
    lines = text.splitlines() or [""]
    top = _read_sexpr(_tokenize(text), lines)
    top = [n for n in top if isinstance(n, _Node)]
    if len(top) != 1 or not top[0] or _head(top[0]) != "define":
        raise ProblemParseError("expected a single (define ...) form", 1, lines[0])
    form = top[0]
    sections = {}
    for part in form[1:]:
        if not isinstance(part, _Node) or not part:
            continue
        head = _head(part)
        if head in sections:
            raise ProblemParseError(f"duplicate section {head!r}", part.line, lines[part.line - 1])
        sections[head] = part
    for needed in (":objects", ":init", ":goal"):
        if needed not in sections:
            raise ProblemParseError(f"missing {needed} section", form.line, lines[form.line - 1])

    objects = []
    for item in sections[":objects"][1:]:
        if isinstance(item, _Node):
            raise ProblemParseError("unexpected list in :objects", item.line, lines[item.line - 1])
        if item[0] == "-":
            raise ProblemParseError("typed objects are not supported", item[1], lines[item[1] - 1])
        objects.append(item[0])
    if len(set(objects)) != len(objects):
        sec = sections[":objects"]
        raise ProblemParseError("duplicate object name", sec.line, lines[sec.line - 1])

    init_sec = sections[":init"]
    init_atoms = [_atom_from(n, lines, set(objects)) for n in init_sec[1:]]
    try:
        init = BlocksState.of(init_atoms, blocks=objects)
    except MalformedState as exc:
        raise ProblemParseError(f"ill-formed initial state: {exc}", init_sec.line,
                                lines[init_sec.line - 1]) from None

    goal_sec = sections[":goal"]
    body = goal_sec[1:]
    if len(body) != 1 or not isinstance(body[0], _Node):
        raise ProblemParseError("goal must be a single atom or (and ...)", goal_sec.line,
                                lines[goal_sec.line - 1])
    g = body[0]
    if g and not isinstance(g[0], _Node) and g[0][0] == "and":
        goal_atoms = [_atom_from(n, lines, set(objects)) for n in g[1:]]
    else:
        goal_atoms = [_atom_from(g, lines, set(objects))]
    return init, BlocksGoal.of(goal_atoms)


def _head(node):
    first = node[0]
    return None if isinstance(first, _Node) else first[0]


def dump_problem(name: str, init: BlocksState, goal: BlocksGoal) -> str:
    objects = " ".join(sorted(init.blocks))
    init_txt = "\n    ".join(f"({a})" for a in sorted(init.atoms))
    goal_txt = "\n      ".join(f"({a})" for a in sorted(goal.atoms))
    return (
        f"(define (problem {name})\n"
        f"  (:domain blocksworld)\n"
        f"  (:objects {objects})\n"
        f"  (:init\n    {init_txt})\n"
        f"  (:goal (and\n      {goal_txt})))\n"
    )


def parse_plan(text: str) -> list[str]:
    out = []
    for line in text.splitlines():
        line = line.split(";", 1)[0].strip()
        if line:
            inner = line.strip("()").split()
            out.append("(" + " ".join(w.lower() for w in inner) + ")")
    return out
