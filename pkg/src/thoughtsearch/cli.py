"""Command-line entry point: generate, solve, enumerate, validate, costs."""

from __future__ import annotations

import argparse
import csv
import json
import os
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Optional

from . import blocksworld, costs, crossword, datasets, game24, prontoqa
from .search import ALGORITHMS, SearchLimits, Status, reachable_states, replay, validate_path

DOMAINS = ("game24", "crossword", "blocksworld", "prontoqa")
DEFAULT_ALGORITHM = {"game24": "bfs", "crossword": "dfs", "blocksworld": "bfs", "prontoqa": "bfs"}
JOBS_ENV = "THOUGHTSEARCH_JOBS"
CSV_COLUMNS = ("instance", "status", "correct", "valid", "plan_length", "expanded",
               "generated", "wall_time")


class UsageError(Exception):
    """Bad arguments or unreadable input; exit code 2."""


@dataclass
class InstanceRecord:
    instance: str
    status: str
    correct: bool
    valid: bool
    plan_length: Optional[int]
    expanded: int
    generated: int
    wall_time: float
    detail: str = ""


@dataclass
class RunReport:
    domain: str
    algorithm: str
    records: list = field(default_factory=list)
    elapsed: float = 0.0

    @property
    def total(self) -> int:
        return len(self.records)

    @property
    def n_correct(self) -> int:
        return sum(r.correct for r in self.records)

    @property
    def accuracy(self) -> float:
        return self.n_correct / self.total if self.records else 0.0

    @property
    def all_valid(self) -> bool:
        return all(r.valid for r in self.records)

    @property
    def expanded(self) -> int:
        return sum(r.expanded for r in self.records)

    @property
    def generated(self) -> int:
        return sum(r.generated for r in self.records)

    @property
    def wall_time(self) -> float:
        return sum(r.wall_time for r in self.records)

    def aggregates(self) -> dict:
        return {
            "instances": self.total,
            "correct": self.n_correct,
            "accuracy": self.accuracy,
            "expanded": self.expanded,
            "generated": self.generated,
            "all_valid": self.all_valid,
        }

    def write_csv(self, path) -> None:
        with open(path, "w", newline="") as fh:
            w = csv.writer(fh)
            w.writerow(CSV_COLUMNS)
            for r in self.records:
                w.writerow([r.instance, r.status, int(r.correct), int(r.valid),
                            "" if r.plan_length is None else r.plan_length,
                            r.expanded, r.generated, f"{r.wall_time:.6f}"])

    def render(self, verbose: bool = False) -> str:
        lines = []
        if verbose:
            lines.append(f"{'instance':<20} {'status':<10} {'ok':<3} {'len':>4} "
                         f"{'expanded':>9} {'generated':>10} {'time':>8}")
            for r in self.records:
                length = "-" if r.plan_length is None else str(r.plan_length)
                lines.append(f"{r.instance:<20} {r.status:<10} {'y' if r.correct else 'n':<3} "
                             f"{length:>4} {r.expanded:>9} {r.generated:>10} {r.wall_time:>8.4f}")
        lines.append(f"domain:     {self.domain} ({self.algorithm})")
        lines.append(f"instances:  {self.total}")
        lines.append(f"accuracy:   {self.n_correct}/{self.total} ({100 * self.accuracy:.1f}%)")
        lines.append(f"paths:      {'all valid' if self.all_valid else 'INVALID PATHS FOUND'}")
        lines.append(f"expanded:   {self.expanded}")
        lines.append(f"generated:  {self.generated}")
        lines.append(f"search time {self.wall_time:.3f}s, elapsed {self.elapsed:.3f}s")
        return "\n".join(lines) + "\n"


# --- loading suites ------------------------------------------------------------

def _read(path: Path) -> str:
    try:
        return path.read_text()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc}") from None


def _game24_answers_path(path: Path) -> Path:
    if path.name == "instances.txt":
        return path.with_name("answers.txt")
    return path.with_name(f"{path.stem}.answers.txt")


def _parse_or_fail(parse, path, text):
    try:
        return parse(text)
    except ValueError as exc:
        raise UsageError(f"{path}: {exc}") from None


def load_suite(domain: str, path) -> list[tuple[str, Any]]:
    """Return ``(instance id, picklable payload)`` pairs for a dataset path."""
    path = Path(path)
    if not path.exists():
        raise UsageError(f"no such file or directory: {path}")
    try:
        if domain == "game24":
            if path.is_dir():
                path = path / "instances.txt"
            instances = game24.load_instances(_read(path))
            answers_file = _game24_answers_path(path)
            answers = [None] * len(instances)
            if answers_file.exists():
                words = _read(answers_file).split()
                if len(words) != len(instances):
                    raise UsageError(f"{answers_file}: {len(words)} answers for {len(instances)} instances")
                answers = [w == "solvable" for w in words]
            return [(f"{i:05d}", (inst, ans)) for i, (inst, ans) in enumerate(zip(instances, answers))]
        if domain == "prontoqa":
            if path.is_dir():
                path = path / "tasks.txt"
            return [(f"{i:05d}", t) for i, t in enumerate(prontoqa.parse_tasks(_read(path)))]
        if domain == "crossword":
            files = sorted(path.glob("*.xw")) if path.is_dir() else [path]
            out = []
            for f in files:
                text = _read(f)
                _parse_or_fail(crossword.parse_spec, f, text)
                sol = f.with_suffix(".solution")
                out.append((f.stem, (f.name, text, _read(sol) if sol.exists() else None)))
            return out
        if domain == "blocksworld":
            files = sorted(path.glob("*.pddl")) if path.is_dir() else [path]
            out = []
            for f in files:
                text = _read(f)
                _parse_or_fail(blocksworld.parse_problem, f, text)
                out.append((f.stem, (f.name, text)))
            return out
    except ValueError as exc:
        raise UsageError(f"{path}: {exc}") from None
    raise UsageError(f"unknown domain {domain!r}")


# --- solving one instance ----------------------------------------------------------

@dataclass(frozen=True)
class SolveOptions:
    algorithm: str = "bfs"
    limits: SearchLimits = SearchLimits()
    check_optimal: bool = False
    fixed_order: bool = False


def solve_one(domain: str, ident: str, payload, opts: SolveOptions) -> InstanceRecord:
    search = ALGORITHMS[opts.algorithm]
    start = time.monotonic()
    detail = ""
    if domain == "prontoqa":
        task = payload
        verdict = prontoqa.prove(task, opts.limits)
        wall = time.monotonic() - start
        valid = prontoqa.check_verdict(task, verdict)
        if task.gold_answer is None:
            correct = verdict.answer is not prontoqa.Answer.UNKNOWN
        else:
            correct = verdict.as_bool == task.gold_answer
        return InstanceRecord(ident, verdict.answer.value, correct and valid, valid,
                              None if verdict.answer is prontoqa.Answer.UNKNOWN else len(verdict.proof),
                              verdict.expanded, verdict.generated, wall,
                              f"searches={verdict.searches}")

    if domain == "game24":
        instance, expected = payload
        problem = game24.make_problem(instance)
        outcome = search(problem, opts.limits)
        wall = time.monotonic() - start
        if expected is None:
            expected = datasets.oracle_game24(instance)
        valid = True
        if outcome.solved:
            final = game24.replay_witness(instance, outcome.actions)
            valid = validate_path(problem, outcome.path) and final == [instance.target]
        correct = outcome.status is not Status.LIMIT and outcome.solved == expected
        detail = "; ".join(outcome.actions)
    elif domain == "crossword":
        name, text, solution = payload
        spec = crossword.parse_spec(text)
        problem = crossword.make_problem(spec, opts.fixed_order)
        outcome = search(problem, opts.limits)
        wall = time.monotonic() - start
        valid = True
        if outcome.solved:
            final = outcome.path[-1].state
            valid = validate_path(problem, outcome.path) and crossword.is_goal_xw(spec, final)
            grid = crossword.render_grid(crossword.grid_of(spec, final))
            detail = grid.replace("\n", "/").rstrip("/")
            if solution is not None and crossword.parse_grid(solution) != grid.split():
                detail += " (alternative fill)"
        correct = outcome.solved and valid
    elif domain == "blocksworld":
        name, text = payload
        init, goal = blocksworld.parse_problem(text)
        problem = blocksworld.make_problem(init, goal)
        outcome = search(problem, opts.limits)
        wall = time.monotonic() - start
        valid = validate_path(problem, outcome.path) if outcome.solved else True
        correct = outcome.solved and valid
        if correct and opts.check_optimal:
            best = datasets.blocks_shortest_plan(init, goal)
            correct = best == outcome.plan_length
            detail = f"optimal={best}"
    else:
        raise UsageError(f"unknown domain {domain!r}")
    return InstanceRecord(ident, outcome.status.value, bool(correct), bool(valid),
                          outcome.plan_length, outcome.expanded, outcome.generated, wall, detail)


def _solve_star(args):
    return solve_one(*args)


def solve_suite(domain: str, suite, opts: SolveOptions, jobs: int = 1) -> RunReport:
    report = RunReport(domain, "prove/bfs" if domain == "prontoqa" else opts.algorithm)
    start = time.monotonic()
    work = [(domain, ident, payload, opts) for ident, payload in suite]
    if jobs > 1 and len(work) > 1:
        chunk = max(1, len(work) // (4 * jobs))
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            report.records = list(pool.map(_solve_star, work, chunksize=chunk))
    else:
        report.records = [solve_one(*w) for w in work]
    report.elapsed = time.monotonic() - start
    return report


# --- subcommands ---------------------------------------------------------------

def _generator_params(args) -> dict:
    d = args.domain
    if d == "game24":
        return {"count": args.count, "value_range": (args.low, args.high), "target": args.target,
                "size": args.size}
    if d == "crossword":
        return {"count": args.count, "distractors_per_slot": args.distractors,
                "share_letters": args.share_letters}
    if d == "blocksworld":
        return {"count": args.count, "n_blocks": args.blocks}
    return {"count": args.count, "depth": _parse_depth(args.depth),
            "distractor_rules": args.distractor_rules}


def _parse_depth(text: str):
    try:
        if "-" in text:
            lo, hi = text.split("-")
            return (int(lo), int(hi))
        return int(text)
    except ValueError:
        raise UsageError(f"bad depth {text!r}; use N or LO-HI") from None


SINGLE_FILE = {"game24": "instances.txt", "prontoqa": "tasks.txt"}


def cmd_generate(args) -> int:
    try:
        files, manifest = datasets.generate(args.domain, args.seed, **_generator_params(args))
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    out = Path(args.output)
    manifest_name = datasets.MANIFEST_NAME
    if args.domain in SINGLE_FILE and out.suffix:
        primary = SINGLE_FILE[args.domain]
        files = {(out.name if n == primary else f"{out.stem}.{n}"): t for n, t in files.items()}
        manifest = datasets.make_manifest(args.domain, files, manifest["params"], args.seed)
        manifest_name = f"{out.name}.manifest.json"
        out = out.parent
    out.mkdir(parents=True, exist_ok=True)
    for name, text in files.items():
        (out / name).write_bytes(text.encode("utf-8"))
    (out / manifest_name).write_text(json.dumps(manifest, indent=2, sort_keys=True) + "\n")
    print(f"wrote {len(files)} file(s) to {out} (digest {manifest['digest'][:16]})")
    return 0


def _default_jobs() -> int:
    try:
        return max(1, int(os.environ.get(JOBS_ENV, "1")))
    except ValueError:
        return 1


def cmd_solve(args) -> int:
    suite = load_suite(args.domain, args.dataset)
    if not suite:
        raise UsageError(f"no instances found in {args.dataset}")
    algorithm = args.algorithm or DEFAULT_ALGORITHM[args.domain]
    opts = SolveOptions(algorithm, SearchLimits(args.max_expansions, args.max_time),
                        args.check_optimal, args.fixed_order)
    try:
        report = solve_suite(args.domain, suite, opts, args.jobs or _default_jobs())
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    sys.stdout.write(report.render(verbose=args.verbose))
    if args.csv:
        report.write_csv(args.csv)
    if not report.all_valid or report.n_correct < report.total:
        return 1
    return 0


def _pick(items, index, path):
    if not items:
        raise UsageError(f"{path}: no instances")
    if not 0 <= index < len(items):
        raise UsageError(f"{path}: index {index} out of range (0..{len(items) - 1})")
    return items[index]


def _load_problem(domain: str, path, index: int = 0, fixed_order: bool = False):
    """(SearchProblem, domain object) for a single instance file."""
    path = Path(path)
    text = _read(path)
    try:
        if domain == "game24":
            inst = _pick(game24.load_instances(text), index, path)
            return game24.make_problem(inst), inst
        if domain == "crossword":
            spec = crossword.parse_spec(text)
            return crossword.make_problem(spec, fixed_order), spec
        if domain == "blocksworld":
            init, goal = blocksworld.parse_problem(text)
            return blocksworld.make_problem(init, goal), (init, goal)
        if domain == "prontoqa":
            task = _pick(prontoqa.parse_tasks(text), index, path)
            return prontoqa.make_problem(task), task
    except ValueError as exc:
        raise UsageError(f"{path}: {exc}") from None
    raise UsageError(f"unknown domain {domain!r}")


def cmd_enumerate(args) -> int:
    problem, obj = _load_problem(args.domain, args.instance, args.index, args.fixed_order)
    if args.domain == "blocksworld":
        n = blocksworld.count_reachable(obj[0])
    elif args.domain == "prontoqa":
        n = prontoqa.count_reachable(obj)
    else:
        n = len(reachable_states(problem))
    print(n)
    return 0


def cmd_validate(args) -> int:
    problem, obj = _load_problem(args.domain, args.instance, args.index)
    plan_text = _read(Path(args.plan))
    try:
        if args.domain == "prontoqa":
            lines = [ln.strip() for ln in plan_text.splitlines() if ln.strip()]
            if not lines:
                raise UsageError("empty verdict file")
            answer = prontoqa.Answer(lines[0].upper())
            proof = tuple(prontoqa.Rule.parse(ln) for ln in lines[1:])
            ok = prontoqa.check_verdict(obj, prontoqa.Verdict(answer, proof))
        else:
            if args.domain == "blocksworld":
                labels = blocksworld.parse_plan(plan_text)
            elif args.domain == "crossword":
                rows = crossword.parse_grid(plan_text)
                cols = ["".join(r[c] for r in rows) for c in range(crossword.SIZE)]
                labels = [f"{name} := {w}" for name, w in zip(crossword.SLOT_NAMES, rows + cols)]
            else:
                labels = [ln.strip() for ln in plan_text.splitlines() if ln.strip()]
            path = replay(problem, labels)
            ok = path is not None and validate_path(problem, path)
    except ValueError as exc:
        raise UsageError(f"{args.plan}: {exc}") from None
    print("valid" if ok else "invalid")
    return 0 if ok else 1


def _load_cost_config(path):
    if path is None:
        return {}
    try:
        return json.loads(Path(path).read_text())
    except (OSError, ValueError) as exc:
        raise UsageError(f"cannot read config {path}: {exc}") from None


def cmd_costs(args) -> int:
    cfg = _load_cost_config(args.config)
    pick = lambda flag, key, default: flag if flag is not None else cfg.get(key, default)
    try:
        params = costs.CostParams(pick(args.b, "b", 5), pick(args.T, "T", 10), pick(args.m, "m", 5))
        pricing = costs.Pricing(
            pick(args.input_rate, "input_rate", 10.0),
            pick(args.output_rate, "output_rate", 30.0),
            pick(args.tokens_in, "tokens_in_per_call", 500),
            pick(args.tokens_out, "tokens_out_per_call", 50),
        )
        if args.approach or args.dataset:
            if not (args.approach and args.dataset):
                raise UsageError("--approach and --dataset go together")
            approach = costs.get_approach(args.approach)
            dataset = costs.get_dataset(args.dataset)
            calls = costs.projected_calls(approach, dataset, params)
            pct = costs.explored_fraction(approach, dataset, params)
            print(f"{calls} ({costs.format_calls(calls)})")
            print(f"states {pct:.6g}% ({costs.format_percent(pct)})")
            return 0
    except (KeyError, ValueError) as exc:
        raise UsageError(str(exc.args[0] if exc.args else exc)) from None
    if args.csv:
        sys.stdout.write(costs.render_table(params, fmt="csv"))
        return 0
    sys.stdout.write(costs.render_table(params, pricing))
    print()
    for a in costs.APPROACHES:
        print(f"{a.name:<11} ${costs.total_cost(a, pricing, costs.PROFILES, params):>12,.2f}")
    return 0


# --- parser --------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="thoughtsearch",
                                description="Symbolic BFS/DFS benchmark harness.")
    sub = p.add_subparsers(dest="command", required=True)

    g = sub.add_parser("generate", help="generate a seeded dataset")
    g.add_argument("domain", choices=DOMAINS)
    g.add_argument("--count", type=int, default=100)
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("-o", "--output", required=True)
    g.add_argument("--low", type=int, default=1, help="game24: smallest number")
    g.add_argument("--high", type=int, default=13, help="game24: largest number")
    g.add_argument("--target", type=int, default=24, help="game24: target (countdown if not 24)")
    g.add_argument("--size", type=int, default=4, help="game24: numbers per instance")
    g.add_argument("--distractors", type=int, default=9, help="crossword: distractors per slot")
    g.add_argument("--share-letters", action="store_true",
                   help="crossword: distractors keep one letter of the planted word")
    g.add_argument("--blocks", type=int, default=4, help="blocksworld: blocks per instance")
    g.add_argument("--depth", default="1-6", help="prontoqa: chain depth N or LO-HI")
    g.add_argument("--distractor-rules", type=int, default=4, help="prontoqa: decoy rules")
    g.set_defaults(func=cmd_generate)

    s = sub.add_parser("solve", help="solve every instance of a dataset")
    s.add_argument("domain", choices=DOMAINS)
    s.add_argument("dataset")
    s.add_argument("--algorithm", choices=sorted(ALGORITHMS))
    s.add_argument("--jobs", type=int, default=None,
                   help=f"worker processes (default ${JOBS_ENV} or 1)")
    s.add_argument("--csv", metavar="PATH")
    s.add_argument("--max-expansions", type=int)
    s.add_argument("--max-time", type=float, help="seconds per instance")
    s.add_argument("--check-optimal", action="store_true",
                   help="blocksworld: compare plan length with an independent optimum")
    s.add_argument("--fixed-order", action="store_true",
                   help="crossword: fill slots in a fixed order")
    s.add_argument("-v", "--verbose", action="store_true")
    s.set_defaults(func=cmd_solve)

    e = sub.add_parser("enumerate", help="count reachable states of one instance")
    e.add_argument("domain", choices=DOMAINS)
    e.add_argument("instance")
    e.add_argument("--index", type=int, default=0, help="record index in multi-instance files")
    e.add_argument("--fixed-order", action="store_true")
    e.set_defaults(func=cmd_enumerate)

    v = sub.add_parser("validate", help="check a plan/proof/grid against an instance")
    v.add_argument("domain", choices=DOMAINS)
    v.add_argument("instance")
    v.add_argument("plan")
    v.add_argument("--index", type=int, default=0)
    v.set_defaults(func=cmd_validate)

    c = sub.add_parser("costs", help="projected LLM calls, explored states and dollars")
    c.add_argument("--b", type=int)
    c.add_argument("--T", type=int)
    c.add_argument("--m", type=int)
    c.add_argument("--input-rate", type=float, help="$ per 1M input tokens")
    c.add_argument("--output-rate", type=float, help="$ per 1M output tokens")
    c.add_argument("--tokens-in", type=int)
    c.add_argument("--tokens-out", type=int)
    c.add_argument("--config", help="JSON file with any of the above keys")
    c.add_argument("--approach")
    c.add_argument("--dataset")
    c.add_argument("--csv", action="store_true")
    c.set_defaults(func=cmd_costs)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
