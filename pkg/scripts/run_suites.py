"""Generate a desk-scale dataset per domain, solve it and print one summary line each.

Sizes default to the original benchmark sizes where that stays fast
(1362 24-game instances, 20 crosswords, 447 + 55 BlocksWorld problems,
4000 deduction tasks).
"""

import argparse
import tempfile
from pathlib import Path

from thoughtsearch import cli


def run(domain, gen_args, solve_args, workdir, jobs):
    out = Path(workdir) / domain
    target = out / "data.txt" if domain in cli.SINGLE_FILE else out
    cli.main(["generate", domain, "-o", str(target)] + gen_args)
    suite = cli.load_suite(domain, target)
    algorithm = next((a for a in ("bfs", "dfs") if a in solve_args), cli.DEFAULT_ALGORITHM[domain])
    opts = cli.SolveOptions(algorithm, check_optimal="--check-optimal" in solve_args)
    report = cli.solve_suite(domain, suite, opts, jobs)
    agg = report.aggregates()
    print(f"{domain:<12} {' '.join(gen_args):<40} {agg['correct']}/{agg['instances']} correct, "
          f"valid={agg['all_valid']}, expanded={agg['expanded']}, generated={agg['generated']}, "
          f"search {report.wall_time:.2f}s, elapsed {report.elapsed:.2f}s")
    return report


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--seed", type=int, default=1)
    ap.add_argument("--jobs", type=int, default=1)
    ap.add_argument("--quick", action="store_true", help="small sizes for a smoke run")
    args = ap.parse_args()
    seed = ["--seed", str(args.seed)]
    n = (lambda full, quick: str(quick if args.quick else full))
    plan = [
        ("game24", ["--count", n(1362, 100)], ["bfs"]),
        ("crossword", ["--count", n(20, 3)], ["dfs"]),
        ("blocksworld", ["--count", n(447, 40), "--blocks", "4"], ["bfs", "--check-optimal"]),
        ("blocksworld", ["--count", n(55, 10), "--blocks", "5"], ["bfs", "--check-optimal"]),
        ("prontoqa", ["--count", n(4000, 400), "--depth", "1-6"], []),
    ]
    with tempfile.TemporaryDirectory() as tmp:
        for i, (domain, gen_args, solve_args) in enumerate(plan):
            run(domain, gen_args + seed, solve_args, Path(tmp) / str(i), args.jobs)


if __name__ == "__main__":
    main()
