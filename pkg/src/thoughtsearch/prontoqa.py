"""Forward-chaining deduction over opaque fact strings.

A fact is negative iff it starts with ``"not "``. Rules are single-antecedent
implications. :func:`prove` runs BFS for the query and, failing that, for
its negation.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Iterable, NamedTuple, Optional, Sequence

from .search import SearchLimits, SearchProblem, UNLIMITED, bfs

NOT = "not "


def normalize(text: str) -> str:
    fact = " ".join(text.split())
    if not fact:
        raise ValueError("empty fact")
    while fact.startswith(NOT + NOT):
        fact = fact[2 * len(NOT):]
    if fact == "not":
        raise ValueError("fact 'not' has no body")
    return fact


def negate(fact: str) -> str:
    if fact.startswith(NOT):
        return fact[len(NOT):]
    return NOT + fact


class Rule(NamedTuple):
    antecedent: str
    consequent: str

    def __str__(self):
        return f"{self.antecedent} -> {self.consequent}"

    @classmethod
    def parse(cls, text: str) -> "Rule":
        if text.count("->") != 1:
            raise ValueError(f"rule must look like 'X -> Y': {text!r}")
        lhs, rhs = text.split("->")
        return cls(normalize(lhs), normalize(rhs))


@dataclass(frozen=True)
class DeductionTask:
    initial_facts: frozenset
    rules: tuple[Rule, ...]
    query: str
    gold_answer: Optional[bool] = None

    def __post_init__(self):
        object.__setattr__(self, "initial_facts", frozenset(normalize(f) for f in self.initial_facts))
        object.__setattr__(self, "rules", tuple(Rule(normalize(a), normalize(c)) for a, c in self.rules))
        object.__setattr__(self, "query", normalize(self.query))


class Answer(str, enum.Enum):
    TRUE = "TRUE"
    FALSE = "FALSE"
    UNKNOWN = "UNKNOWN"


@dataclass(frozen=True)
class Verdict:
    answer: Answer
    proof: tuple[Rule, ...]
    searches: int = 0
    expanded: int = 0
    generated: int = 0

    @property
    def as_bool(self) -> Optional[bool]:
        return {Answer.TRUE: True, Answer.FALSE: False}.get(self.answer)


def state_key(state: frozenset) -> str:
    return "\n".join(sorted(state))


def successors_dq(state: frozenset, rules: Sequence[Rule]) -> list[tuple[str, frozenset]]:
    return [
        (str(r), state | {r.consequent})
        for r in rules
        if r.antecedent in state and r.consequent not in state
    ]


def is_goal_dq(state: frozenset, target: str) -> bool:
    return target in state


def make_problem(task: DeductionTask, target: Optional[str] = None) -> SearchProblem:
    rules = task.rules
    target = task.query if target is None else target
    return SearchProblem(
        initial=task.initial_facts,
        successors=lambda s: successors_dq(s, rules),
        is_goal=lambda s: target in s,
        canonical_key=state_key,
    )


def prove(task: DeductionTask, limits: SearchLimits = UNLIMITED) -> Verdict:
    expanded = generated = 0
    for n, (target, answer) in enumerate(
        ((task.query, Answer.TRUE), (negate(task.query), Answer.FALSE)), 1
    ):
        outcome = bfs(make_problem(task, target), limits)
        expanded += outcome.expanded
        generated += outcome.generated
        if outcome.solved:
            by_label = {str(r): r for r in task.rules}
            proof = tuple(by_label[a] for a in outcome.actions)
            return Verdict(answer, proof, n, expanded, generated)
    return Verdict(Answer.UNKNOWN, (), 2, expanded, generated)


def replay_proof(task: DeductionTask, proof: Iterable[Rule], fact: str) -> bool:
    """Check a proof by applying its rules in order from the initial facts."""
    known = set(task.initial_facts)
    rules = set(task.rules)
    for rule in proof:
        if rule not in rules or rule.antecedent not in known or rule.consequent in known:
            return False
        known.add(rule.consequent)
    return fact in known


def check_verdict(task: DeductionTask, verdict: Verdict) -> bool:
    if verdict.answer is Answer.UNKNOWN:
        return not verdict.proof
    fact = task.query if verdict.answer is Answer.TRUE else negate(task.query)
    return replay_proof(task, verdict.proof, fact)


def count_reachable(task: DeductionTask) -> int:
    seen = {state_key(task.initial_facts)}
    todo = [task.initial_facts]
    while todo:
        for _, child in successors_dq(todo.pop(), task.rules):
            k = state_key(child)
            if k not in seen:
                seen.add(k)
                todo.append(child)
    return len(seen)


# --- task files ------------------------------------------------------------
#
# facts:
# <fact per line>
# rules:
# <X -> Y per line>
# query: <fact>
# gold: true|false        (optional)
#
# Records are separated by blank lines.

def parse_tasks(text: str) -> list[DeductionTask]:
    tasks = []
    record: list[tuple[int, str]] = []
    for lineno, line in enumerate(text.splitlines() + [""], 1):
        if line.strip():
            if not line.lstrip().startswith("#"):
                record.append((lineno, line.strip()))
        elif record:
            tasks.append(_parse_record(record))
            record = []
    return tasks


def _parse_record(record):
    facts, rules = [], []
    query = gold = None
    section = None
    for lineno, line in record:
        low = line.lower()
        try:
            if low == "facts:":
                section = "facts"
            elif low == "rules:":
                section = "rules"
            elif low.startswith("query:"):
                query = normalize(line[len("query:"):])
                section = None
            elif low.startswith("gold:"):
                value = low[len("gold:"):].strip()
                if value not in ("true", "false"):
                    raise ValueError(f"gold must be true or false, got {value!r}")
                gold = value == "true"
                section = None
            elif section == "facts":
                facts.append(normalize(line))
            elif section == "rules":
                rules.append(Rule.parse(line))
            else:
                raise ValueError(f"unexpected line {line!r}")
        except ValueError as exc:
            raise ValueError(f"line {lineno}: {exc}") from None
    if query is None:
        raise ValueError(f"line {record[0][0]}: task without a query line")
    return DeductionTask(frozenset(facts), tuple(rules), query, gold)


def dump_task(task: DeductionTask) -> str:
    lines = ["facts:"]
    lines.extend(sorted(task.initial_facts))
    lines.append("rules:")
    lines.extend(str(r) for r in task.rules)
    lines.append(f"query: {task.query}")
    if task.gold_answer is not None:
        lines.append(f"gold: {'true' if task.gold_answer else 'false'}")
    return "\n".join(lines) + "\n"


def dump_tasks(tasks: Iterable[DeductionTask]) -> str:
    return "\n".join(dump_task(t) for t in tasks)


def format_verdict(verdict: Verdict) -> str:
    return "".join([verdict.answer.value + "\n"] + [f"{r}\n" for r in verdict.proof])
