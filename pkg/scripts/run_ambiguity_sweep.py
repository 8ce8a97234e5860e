#!/usr/bin/env python3
"""Uncoded AWGN sweep over the power-imbalance axis for both schemes.

Emits required-SNR summary rows per user at the target block error rate.
The interesting structure: the index-modulated scheme has amplitude
collisions near -1.25 dB and +4.77 dB, the plain superposition scheme
collapses at 0 dB. Collisions show up as NA (not achieved) rows.
"""

import argparse
import dataclasses
import sys

sys.path.insert(0, "src")

from wdnoma import harness  # noqa: E402


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--out", default="ambiguity_results.csv")
    ap.add_argument("--target-bler", type=float, default=1e-2)
    ap.add_argument("--delta-p", type=float, nargs="+",
                    default=[-5.0, -1.25, 0.0, 2.0, 4.77, 8.0])
    ap.add_argument("--snr", type=float, nargs="+",
                    default=[8.0, 12.0, 16.0, 20.0, 24.0, 28.0, 32.0])
    ap.add_argument("--min-block-errors", type=int, default=30)
    ap.add_argument("--max-trials", type=int, default=1000)
    ap.add_argument("--seed", type=int, default=3)
    ap.add_argument("--workers", type=int, default=1)
    args = ap.parse_args()

    summary = []
    for scheme in harness.SCHEMES:
        cfg = dataclasses.replace(
            harness.SimulationConfig(),
            scheme=scheme, coded=False, channel_model="awgn",
            decode_order="auto", pilot_trials=50,
            snr_grid_db=tuple(args.snr), delta_p_grid_db=tuple(args.delta_p),
            min_block_errors=args.min_block_errors, max_trials=args.max_trials,
            master_seed=args.seed, workers=args.workers,
        )
        cfg.validate()
        records = harness.run_bler_sweep(cfg)
        rows = harness.required_snr_records(cfg, records, args.target_bler)
        summary.extend(rows)
        for row in rows:
            val = "NA" if row.snr_db is None else f"{row.snr_db:6.2f}"
            print(f"{row.scheme:20s} dp={row.delta_p_db:6.2f} req_snr={val}")
    harness.write_results(summary, args.out)
    print(f"wrote {len(summary)} summary rows to {args.out}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
