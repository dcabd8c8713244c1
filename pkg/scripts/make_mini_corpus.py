#!/usr/bin/env python3
"""Generate the synthetic mini corpus and a ready-to-run pipeline config."""

import argparse

from srlpipe.synth import write_corpus


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("outdir")
    parser.add_argument("--pairs", type=int, default=500)
    parser.add_argument("--seed", type=int, default=7)
    args = parser.parse_args()
    config = write_corpus(args.outdir, n_pairs=args.pairs, seed=args.seed)
    print(f"wrote corpus under {args.outdir}; run:")
    print(f"  srlpipe run-all --config {config}")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
