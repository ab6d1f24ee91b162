"""Count W_af elements by length and compare the three length computations."""

import argparse
import collections

from genuine_hecke.root_datum import bfs_lengths, build_preset, length, separating_count


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--group", default="SL")
    ap.add_argument("--size", type=int, default=3)
    ap.add_argument("--max-length", type=int, default=6)
    args = ap.parse_args()
    d = build_preset(args.group, args.size)
    bfs = bfs_lengths(d, args.max_length)
    counts = collections.Counter(bfs.values())
    mismatches = sum(1 for w, l in bfs.items() if not (length(d, w) == l == separating_count(d, w)))
    for l in sorted(counts):
        print(f"length {l}: {counts[l]} elements")
    print(f"mismatches between N(w), hyperplane count and word length: {mismatches}")


if __name__ == "__main__":
    main()
