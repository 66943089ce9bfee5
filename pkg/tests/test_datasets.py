import random
from collections import Counter

import pytest
from hypothesis import given, settings, strategies as st

from thoughtsearch import blocksworld, crossword, game24, prontoqa
from thoughtsearch.datasets import (
    crossword_state_count,
    gen_blocksworld,
    gen_crossword,
    gen_game24,
    gen_prontoqa,
    generate,
    oracle_game24,
    random_towers,
    read_manifest,
    tower_configurations,
    verify_manifest,
    write_dataset,
)
from thoughtsearch.search import bfs, dfs


@pytest.mark.parametrize("domain, params", [
    ("game24", dict(count=50)),
    ("crossword", dict(count=3)),
    ("blocksworld", dict(count=10, n_blocks=4)),
    ("prontoqa", dict(count=20, depth=(1, 6), distractor_rules=4)),
])
def test_generation_is_deterministic(domain, params):
    a, ma = generate(domain, 7, **params)
    b, mb = generate(domain, 7, **params)
    c, _ = generate(domain, 8, **params)
    assert a == b and ma == mb
    assert a != c


@pytest.mark.parametrize("gen, params", [
    (gen_game24, dict()), (gen_crossword, dict()),
    (gen_blocksworld, dict(n_blocks=3)), (gen_prontoqa, dict(depth=2, distractor_rules=0)),
])
def test_count_zero_rejected(gen, params):
    with pytest.raises(ValueError):
        gen(0, seed=1, **params)


def test_seed_must_be_64_bit():
    with pytest.raises(ValueError):
        gen_game24(1, seed=2**64)
    gen_game24(1, seed=2**64 - 1)


def test_game24_value_range():
    insts = game24.load_instances(gen_game24(20, 3, value_range=(1, 1))["instances.txt"])
    assert all(i.numbers == (1, 1, 1, 1) for i in insts)
    with pytest.raises(ValueError):
        gen_game24(5, 3, value_range=(9, 2))


def test_game24_values_in_range():
    insts = game24.load_instances(gen_game24(300, 11)["instances.txt"])
    values = Counter(v for i in insts for v in i.numbers)
    assert set(values) == set(range(1, 14))


@pytest.mark.parametrize("nums, expected", [
    ((1, 1, 1, 1), False), ((6, 6, 6, 6), True), ((24, 1, 1, 1), True),
    ((4, 7, 8, 8), True), ((1, 1, 1, 2), False), ((3, 3, 8, 8), True),
])
def test_oracle_examples(nums, expected):
    assert oracle_game24(game24.Game24Instance(nums)) is expected


def test_oracle_agrees_with_solver_on_generated():
    files = gen_game24(150, 2)
    insts = game24.load_instances(files["instances.txt"])
    answers = files["answers.txt"].split()
    for inst, ans in zip(insts, answers):
        assert game24.solve24(inst).solved == oracle_game24(inst) == (ans == "solvable")


def test_crossword_generator():
    files = gen_crossword(5, 9)
    assert len(files) == 10
    for g in range(5):
        text = files[f"game-{g:03d}.xw"]
        spec = crossword.parse_spec(text)
        rows = crossword.parse_grid(files[f"game-{g:03d}.solution"])
        assert all(len(words) == 10 for words in spec.slots)
        # length filtering leaves the spec as written
        assert crossword.dump_spec(spec) == text
        full = crossword.state_for_grid(spec, rows)
        assert full is not None and crossword.is_goal_xw(spec, full)


def test_crossword_no_distractors():
    files = gen_crossword(2, 9, distractors_per_slot=0)
    spec = crossword.parse_spec(files["game-001.xw"])
    assert all(len(w) == 1 for w in spec.slots)
    out = dfs(crossword.make_problem(spec))
    assert out.solved and out.plan_length == 10


def test_crossword_share_letters():
    files = gen_crossword(3, 1, share_letters=True)
    for g in range(3):
        spec = crossword.parse_spec(files[f"game-{g:03d}.xw"])
        rows = crossword.parse_grid(files[f"game-{g:03d}.solution"])
        planted = rows + ["".join(r[c] for r in rows) for c in range(5)]
        for words, p in zip(spec.slots, planted):
            assert all(any(a == b for a, b in zip(w, p)) for w in words)


def test_crossword_state_count():
    assert crossword_state_count() == 11**10 == 25_937_424_601
    assert 20 * crossword_state_count() == 518_748_492_020
    assert crossword_state_count(2, 2) == 9


def test_blocksworld_generator():
    files = gen_blocksworld(40, 5, seed=3)
    assert len(files) == 40
    for text in list(files.values())[:15]:
        init, goal = blocksworld.parse_problem(text)
        blocksworld.check_well_formed(init.atoms)
        assert "arm-empty" in init.atoms
        assert all(a.startswith(("on ", "on-table ")) for a in goal.atoms)
        assert bfs(blocksworld.make_problem(init, goal)).solved


def test_blocksworld_one_block():
    for text in gen_blocksworld(3, 1, seed=0).values():
        init, goal = blocksworld.parse_problem(text)
        assert init.atoms == {"arm-empty", "clear a", "on-table a"}
        assert goal.atoms == {"on-table a"}
        assert bfs(blocksworld.make_problem(init, goal)).plan_length == 0


def test_blocksworld_n_blocks_bounds():
    for n in (0, 9):
        with pytest.raises(ValueError):
            gen_blocksworld(1, n, seed=0)


def test_random_towers_uniform():
    rng = random.Random(0)
    n_draws = 13 * 600
    counts = Counter(
        tuple(sorted(tuple(t) for t in random_towers(rng, ["a", "b", "c"])))
        for _ in range(n_draws)
    )
    assert len(counts) == tower_configurations(3) == 13
    expected = n_draws / 13
    chi2 = sum((c - expected) ** 2 / expected for c in counts.values())
    # 12 degrees of freedom; 32.9 is the 0.999 quantile
    assert chi2 < 32.9


@given(st.integers(0, 2**32), st.integers(1, 6))
@settings(max_examples=40)
def test_random_towers_partition(seed, n):
    names = [chr(97 + i) for i in range(n)]
    towers = random_towers(random.Random(seed), names)
    assert sorted(b for t in towers for b in t) == names


def test_prontoqa_generator_labels_alternate():
    tasks = prontoqa.parse_tasks(gen_prontoqa(10, (1, 6), 6, seed=4)["tasks.txt"])
    assert [t.gold_answer for t in tasks] == [True, False] * 5
    for t in tasks:
        assert prove_ok(t)


def prove_ok(t):
    v = prontoqa.prove(t)
    return v.as_bool == t.gold_answer and prontoqa.check_verdict(t, v)


def test_prontoqa_depth_one():
    t = prontoqa.parse_tasks(gen_prontoqa(1, 1, 0, seed=0)["tasks.txt"])[0]
    assert len(t.rules) == 1
    v = prontoqa.prove(t)
    assert v.as_bool is True and v.expanded <= 2


def test_prontoqa_bad_params():
    with pytest.raises(ValueError):
        gen_prontoqa(1, 0, 0, seed=0)
    with pytest.raises(ValueError):
        gen_prontoqa(1, 2, -1, seed=0)


@pytest.mark.parametrize("domain, params", [
    ("game24", dict(count=5)),
    ("blocksworld", dict(count=4, n_blocks=3)),
    ("prontoqa", dict(count=4, depth=(1, 3), distractor_rules=2)),
])
def test_manifest_round_trip(tmp_path, domain, params):
    files, manifest = generate(domain, 99, **params)
    path = write_dataset(tmp_path / domain, files, manifest)
    back = read_manifest(tmp_path / domain)
    assert back == manifest
    assert back["seed"] == 99 and back["domain"] == domain and back["count"] == params["count"]
    assert verify_manifest(path)
    regenerated, _ = generate(domain, back["seed"], **{k: tuple(v) if isinstance(v, list) else v
                                                     for k, v in back["params"].items()})
    assert regenerated == files
    victim = tmp_path / domain / manifest["files"][0]
    victim.write_text(victim.read_text() + "x")
    assert not verify_manifest(path)


def test_unknown_domain():
    with pytest.raises(KeyError):
        generate("chess", 1, count=1)
