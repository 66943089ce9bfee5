"""Seeded instance generators, brute-force oracles and dataset manifests.

Every generator is a pure function of its parameters and seed and returns
``{relative file name: text}``; :func:`write_dataset` puts the files on disk
next to a JSON manifest carrying a SHA-256 digest of their bytes.
"""

from __future__ import annotations

import hashlib
import json
import random
import string
from collections import deque
from fractions import Fraction
from functools import lru_cache
from itertools import combinations, product
from math import comb, factorial
from pathlib import Path
from typing import Optional

from . import blocksworld, crossword, game24, prontoqa

MANIFEST_NAME = "manifest.json"
MAX_SEED = 2**64 - 1


def _rng(seed: int, *salt) -> random.Random:
    if not 0 <= seed <= MAX_SEED:
        raise ValueError("seed must be a 64-bit unsigned integer")
    # string seeds hash through sha512, stable across runs and platforms
    return random.Random(":".join(str(x) for x in (seed,) + salt))


def _check_count(count):
    if count < 1:
        raise ValueError("count must be at least 1")


# --- 24 game ---------------------------------------------------------------

def gen_game24(count: int, seed: int, value_range=(1, 13), target: int = 24,
               size: int = 4) -> dict[str, str]:
    _check_count(count)
    lo, hi = value_range
    if lo > hi:
        raise ValueError(f"invalid value range {lo}..{hi}")
    rng = _rng(seed, "game24")
    countdown = target != 24 or size != 4
    instances = [
        game24.Game24Instance(tuple(rng.randint(lo, hi) for _ in range(size)), target, countdown)
        for _ in range(count)
    ]
    answers = "".join(
        ("solvable" if oracle_game24(inst) else "unsolvable") + "\n" for inst in instances
    )
    return {"instances.txt": game24.dump_instances(instances), "answers.txt": answers}


def _tree_values(nums: tuple[Fraction, ...]) -> set[Fraction]:
    return _tree_values_cached(tuple(sorted(nums)))


@lru_cache(maxsize=1 << 16)
def _tree_values_cached(nums):
    if len(nums) == 1:
        return frozenset(nums)
    out = set()
    idx = range(len(nums))
    # each unordered split {left, right} once: left always holds index 0
    for r in range(1, len(nums)):
        for rest in combinations(idx[1:], r - 1):
            left = (0,) + rest
            right = tuple(i for i in idx if i not in left)
            lv = _tree_values(tuple(nums[i] for i in left))
            rv = _tree_values(tuple(nums[i] for i in right))
            for a in lv:
                for b in rv:
                    out.add(a + b)
                    out.add(a * b)
                    out.add(a - b)
                    out.add(b - a)
                    if b:
                        out.add(a / b)
                    if a:
                        out.add(b / a)
    return frozenset(out)


def oracle_game24(instance: game24.Game24Instance) -> bool:
    """True iff some expression tree over all the numbers evaluates to the target.

    Enumerates every binary tree shape over every split of the multiset with
    the four operators in both operand orders, in exact rationals.
    """
    return Fraction(instance.target) in _tree_values(tuple(Fraction(n) for n in instance.numbers))


# --- crosswords ------------------------------------------------------------

LETTERS = string.ascii_lowercase


def _random_word(rng):
    return "".join(rng.choice(LETTERS) for _ in range(crossword.SIZE))


def _distractor(rng, planted, share):
    if not share:
        return _random_word(rng)
    keep = rng.randrange(crossword.SIZE)
    return "".join(ch if i == keep else rng.choice(LETTERS) for i, ch in enumerate(planted))


def gen_crossword(count: int, seed: int, distractors_per_slot: int = 9,
                  share_letters: bool = False) -> dict[str, str]:
    _check_count(count)
    if distractors_per_slot < 0:
        raise ValueError("distractors_per_slot must be non-negative")
    files = {}
    for g in range(count):
        rng = _rng(seed, "crossword", g)
        rows = [_random_word(rng) for _ in range(crossword.SIZE)]
        cols = ["".join(r[c] for r in rows) for c in range(crossword.SIZE)]
        slots = []
        for planted in rows + cols:
            words = [planted]
            while len(words) < distractors_per_slot + 1:
                w = _distractor(rng, planted, share_letters)
                if w not in words:
                    words.append(w)
            rng.shuffle(words)
            slots.append(words)
        spec = crossword.CrosswordSpec(slots[:crossword.SIZE], slots[crossword.SIZE:])
        files[f"game-{g:03d}.xw"] = crossword.dump_spec(spec)
        files[f"game-{g:03d}.solution"] = "".join(r + "\n" for r in rows)
    return files


def crossword_state_count(n_slots: int = 10, per_slot: int = 10) -> int:
    """Syntactic partial assignments: choose the assigned slots, then a word for each."""
    return sum(comb(n_slots, i) * per_slot**i for i in range(n_slots + 1))


# --- BlocksWorld -----------------------------------------------------------

@lru_cache(maxsize=None)
def tower_configurations(n: int) -> int:
    """Ways to arrange ``n`` labelled blocks into unordered sets of towers."""
    if n == 0:
        return 1
    # the tower holding block 0 has k blocks: choose k-1 mates, order all k
    return sum(comb(n - 1, k - 1) * factorial(k) * tower_configurations(n - k)
               for k in range(1, n + 1))


def blocks_state_count(n: int) -> int:
    """Closed-form size of the n-block state space: arm empty, or one of n blocks held."""
    return tower_configurations(n) + n * tower_configurations(n - 1)


def random_towers(rng: random.Random, blocks: list[str]) -> list[list[str]]:
    """Uniform sample from all tower configurations of ``blocks``."""
    blocks = list(blocks)
    towers = []
    while blocks:
        n = len(blocks)
        weights = [comb(n - 1, k - 1) * factorial(k) * tower_configurations(n - k)
                   for k in range(1, n + 1)]
        k = rng.choices(range(1, n + 1), weights=weights)[0]
        first, rest = blocks[0], blocks[1:]
        mates = rng.sample(rest, k - 1)
        tower = [first] + mates
        rng.shuffle(tower)
        towers.append(tower)
        blocks = [b for b in rest if b not in mates]
    return towers


def block_names(n: int) -> list[str]:
    return [string.ascii_lowercase[i] for i in range(n)]


def gen_blocksworld(count: int, n_blocks: int, seed: int) -> dict[str, str]:
    _check_count(count)
    if not 1 <= n_blocks <= 8:
        raise ValueError("n_blocks must be between 1 and 8")
    names = block_names(n_blocks)
    files = {}
    for i in range(count):
        rng = _rng(seed, "blocksworld", n_blocks, i)
        init = blocksworld.BlocksState.of(blocksworld.stacks_to_atoms(random_towers(rng, names)))
        goal_atoms = blocksworld.stacks_to_atoms(random_towers(rng, names))
        goal = blocksworld.BlocksGoal.of(a for a in goal_atoms if a.startswith(("on ", "on-table ")))
        name = f"bw-{n_blocks}-{i:04d}"
        files[f"{name}.pddl"] = blocksworld.dump_problem(name, init, goal)
    return files


def _towers_of(state: blocksworld.BlocksState):
    """Stack view of a state: (frozenset of bottom-to-top towers, held block)."""
    on, table, held = {}, [], None
    for a in state.atoms:
        p = a.split()
        if p[0] == "on":
            on[p[2]] = p[1]
        elif p[0] == "on-table":
            table.append(p[1])
        elif p[0] == "holding":
            held = p[1]
    towers = []
    for base in table:
        t = [base]
        while t[-1] in on:
            t.append(on[t[-1]])
        towers.append(tuple(t))
    return frozenset(towers), held


def _tower_moves(node):
    towers, held = node
    if held is None:
        for t in towers:
            rest = towers - {t}
            new = rest | {t[:-1]} if len(t) > 1 else rest
            yield frozenset(new), t[-1]
    else:
        yield towers | {(held,)}, None
        for t in towers:
            yield (towers - {t}) | {t + (held,)}, None


def _satisfies(node, goal_atoms):
    towers, held = node
    facts = set()
    if held is None:
        facts.add("arm-empty")
    else:
        facts.add(f"holding {held}")
    for t in towers:
        facts.add(f"on-table {t[0]}")
        facts.add(f"clear {t[-1]}")
        for lo, up in zip(t, t[1:]):
            facts.add(f"on {up} {lo}")
    return goal_atoms <= facts


def blocks_shortest_plan(init: blocksworld.BlocksState, goal: blocksworld.BlocksGoal) -> Optional[int]:
    """Optimal plan length via BFS over a tower-list model of the domain.

    Uses its own move generator, so it can check :func:`successors_bw`.
    """
    start = _towers_of(init)
    dist = {start: 0}
    queue = deque([start])
    while queue:
        node = queue.popleft()
        if _satisfies(node, goal.atoms):
            return dist[node]
        for nxt in _tower_moves(node):
            if nxt not in dist:
                dist[nxt] = dist[node] + 1
                queue.append(nxt)
    return None


# --- PrOntoQA-style deduction ----------------------------------------------

_SYL_A = ["w", "y", "j", "r", "z", "t", "v", "gr", "st", "sh", "l", "b", "d", "f"]
_SYL_B = ["um", "or", "im", "al", "ump", "err", "ol", "ing", "arn", "es"]
_SYL_C = ["pus", "ple", "fus", "tus", "nus", "mpus", "x", "ck", "ne", "pee"]
_NAMES = ["Alex", "Max", "Sam", "Rex", "Fae", "Polly", "Wren", "Stella", "Sally", "Jay"]


def _concepts(rng, n):
    seen = set()
    out = []
    while len(out) < n:
        w = rng.choice(_SYL_A) + rng.choice(_SYL_B) + rng.choice(_SYL_C)
        if w not in seen:
            seen.add(w)
            out.append(w)
    return out


def gen_prontoqa(count: int, depth, distractor_rules: int, seed: int) -> dict[str, str]:
    """Implication chains of length ``depth`` plus ``distractor_rules`` decoys.

    ``depth`` may be an int or an inclusive ``(lo, hi)`` range sampled per
    task. Even-numbered tasks are TRUE (the chain ends at the query), odd ones
    FALSE (the chain ends at the query's negation). Roughly half of the
    distractors fire (they hang off the chain and lead to fresh concepts);
    the rest have antecedents that can never be derived.
    """
    _check_count(count)
    lo, hi = (depth, depth) if isinstance(depth, int) else depth
    if lo < 1 or hi < lo:
        raise ValueError("depth must be at least 1")
    if distractor_rules < 0:
        raise ValueError("distractor_rules must be non-negative")
    tasks = []
    for i in range(count):
        rng = _rng(seed, "prontoqa", i)
        d = rng.randint(lo, hi)
        who = rng.choice(_NAMES)
        words = _concepts(rng, d + 1 + 2 * distractor_rules + 1)
        fact = lambda w: f"{who} is a {w}"
        chain = [fact(w) for w in words[: d + 1]]
        query = chain[-1]
        gold = i % 2 == 0
        if not gold:
            chain[-1] = prontoqa.negate(query)
        rules = [prontoqa.Rule(a, b) for a, b in zip(chain, chain[1:])]
        fresh = iter(fact(w) for w in words[d + 1:])
        live = chain[:-1]
        for k in range(distractor_rules):
            if k % 2 == 0:
                head = rng.choice(live)
                new = next(fresh)
                live.append(new)
                rules.append(prontoqa.Rule(head, new))
            else:
                dead = next(fresh)
                # a rule to the opposite answer that can never fire
                tail = prontoqa.negate(chain[-1]) if rng.random() < 0.5 else next(fresh)
                rules.append(prontoqa.Rule(dead, tail))
        rng.shuffle(rules)
        tasks.append(prontoqa.DeductionTask(frozenset([chain[0]]), tuple(rules), query, gold))
    return {"tasks.txt": prontoqa.dump_tasks(tasks)}


def deduction_state_count(task: prontoqa.DeductionTask) -> int:
    """Count reachable fact sets by testing every subset of derivable consequents.

    A subset is reachable iff its facts can be added one at a time, each
    supported by an already-known antecedent.
    """
    initial = set(task.initial_facts)
    derivable = set(initial)
    changed = True
    while changed:
        changed = False
        for r in task.rules:
            if r.antecedent in derivable and r.consequent not in derivable:
                derivable.add(r.consequent)
                changed = True
    extra = sorted(derivable - initial)
    if len(extra) > 20:
        raise OverflowError("too many derivable facts to enumerate subsets")
    support: dict[str, set] = {f: set() for f in extra}
    for r in task.rules:
        if r.consequent in support:
            support[r.consequent].add(r.antecedent)
    total = 0
    for bits in product((False, True), repeat=len(extra)):
        chosen = {f for f, b in zip(extra, bits) if b}
        known = set(initial)
        pending = set(chosen)
        grew = True
        while pending and grew:
            grew = False
            for f in list(pending):
                if support[f] & known:
                    known.add(f)
                    pending.discard(f)
                    grew = True
        total += not pending
    return total


# --- manifests -------------------------------------------------------------

GENERATORS = {
    "game24": gen_game24,
    "crossword": gen_crossword,
    "blocksworld": gen_blocksworld,
    "prontoqa": gen_prontoqa,
}


def digest_files(files: dict[str, str]) -> str:
    h = hashlib.sha256()
    for name in sorted(files):
        data = files[name].encode("utf-8")
        h.update(name.encode("utf-8") + b"\0")
        h.update(len(data).to_bytes(8, "big"))
        h.update(data)
    return h.hexdigest()


def make_manifest(domain: str, files: dict[str, str], params: dict, seed: int) -> dict:
    return {
        "domain": domain,
        "count": params.get("count"),
        "params": params,
        "seed": seed,
        "files": sorted(files),
        "digest": digest_files(files),
    }


def generate(domain: str, seed: int, **params) -> tuple[dict[str, str], dict]:
    if domain not in GENERATORS:
        raise KeyError(f"unknown domain {domain!r}")
    files = GENERATORS[domain](seed=seed, **params)
    json_params = {k: list(v) if isinstance(v, tuple) else v for k, v in params.items()}
    return files, make_manifest(domain, files, json_params, seed)


def write_dataset(out_dir, files: dict[str, str], manifest: dict) -> Path:
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    for name, text in files.items():
        (out / name).write_bytes(text.encode("utf-8"))
    path = out / MANIFEST_NAME
    path.write_text(json.dumps(manifest, indent=2, sort_keys=True) + "\n")
    return path


def read_manifest(path) -> dict:
    path = Path(path)
    if path.is_dir():
        path = path / MANIFEST_NAME
    return json.loads(path.read_text())


def verify_manifest(path) -> bool:
    """Recompute the digest of the files a manifest lists."""
    path = Path(path)
    root = path if path.is_dir() else path.parent
    manifest = read_manifest(path)
    files = {name: (root / name).read_bytes().decode("utf-8") for name in manifest["files"]}
    return digest_files(files) == manifest["digest"]
