"""Print the projected calls / explored-states table and dollar totals."""

import argparse

from thoughtsearch import costs


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--b", type=int, default=5)
    ap.add_argument("--T", type=int, default=10)
    ap.add_argument("--m", type=int, default=5)
    ap.add_argument("--csv", action="store_true")
    args = ap.parse_args()

    params = costs.CostParams(args.b, args.T, args.m)
    if args.csv:
        print(costs.render_table(params, fmt="csv"), end="")
        return
    pricing = costs.Pricing()
    print(costs.render_table(params, pricing))
    print(f"per call: ${pricing.per_call:.4f} "
          f"({pricing.tokens_in_per_call} in / {pricing.tokens_out_per_call} out tokens)")
    for d in costs.PROFILES:
        print(f"{d.name:<12} D={d.D:<5} L={d.L:<3} total states {d.total_states:,}")


if __name__ == "__main__":
    main()
