"""State-space sizes: closed forms next to exhaustive crawls."""

from math import comb

from thoughtsearch import blocksworld, datasets, game24
from thoughtsearch.search import bfs


def main():
    print("BlocksWorld: blocks, closed form, crawl")
    for n in range(1, 9):
        crawl = "-"
        if n <= 6:
            init = blocksworld.BlocksState.of(
                blocksworld.stacks_to_atoms([[b] for b in datasets.block_names(n)]))
            crawl = blocksworld.count_reachable(init)
        print(f"  {n}  {datasets.blocks_state_count(n):>10}  {crawl:>8}")
    print(f"  447*125 + 55*866 = {447 * 125 + 55 * 866:,}")

    print("Crossword: partial assignments per 10-slot puzzle with 10 candidates")
    per = sum(comb(10, i) * 10**i for i in range(11))
    print(f"  sum C(10,i) 10^i = {per:,} = 11^10: {per == 11**10}; x20 = {20 * per:,}")

    print("24 game: states generated by exhaustive bfs (no goal)")
    for nums in [(1, 2, 3, 4), (4, 7, 8, 8), (1, 1, 1, 1), (7, 11, 13, 17)]:
        out = bfs(game24.make_problem(game24.Game24Instance(nums), goal=lambda s: False))
        print(f"  {nums}: generated {out.generated}, expanded {out.expanded}")
    print(f"  search-tree bound 1 + 36 + 648 + 3888 = {1 + 36 + 648 + 3888}")


if __name__ == "__main__":
    main()
