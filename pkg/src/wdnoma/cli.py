"""Command-line front end: sweep, evm, capacity, and selftest subcommands."""

from __future__ import annotations

import argparse
import dataclasses
import sys

import numpy as np

from . import analysis, harness, ldpc, modem, mud, sic
from .channel import ReceivedFrame, flat_channel


def _add_common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--config", help="flat key = value config file")
    p.add_argument("--seed", type=int, help="master seed override")
    p.add_argument("--out", help="output CSV path")
    p.add_argument("--workers", type=int, help="parallel worker count")
    p.add_argument("--scheme", choices=harness.SCHEMES)
    p.add_argument("--decode-order", choices=harness.DECODE_ORDERS)
    p.add_argument("--snr", type=float, nargs="+", metavar="DB",
                   help="SNR grid override (dB)")
    p.add_argument("--delta-p", type=float, nargs="+", metavar="DB",
                   help="power-imbalance grid override (dB)")
    p.add_argument("--channel", choices=harness.CHANNEL_MODELS)
    p.add_argument("--min-block-errors", type=int)
    p.add_argument("--max-trials", type=int)
    coded = p.add_mutually_exclusive_group()
    coded.add_argument("--coded", dest="coded", action="store_true",
                       default=None)
    coded.add_argument("--uncoded", dest="coded", action="store_false",
                       default=None)


def _build_config(args) -> harness.SimulationConfig:
    cfg = (harness.load_config(args.config) if args.config
           else harness.SimulationConfig())
    overrides = {}
    if args.seed is not None:
        overrides["master_seed"] = args.seed
    if args.workers is not None:
        overrides["workers"] = args.workers
    if args.scheme is not None:
        overrides["scheme"] = args.scheme
    if args.coded is not None:
        overrides["coded"] = args.coded
    if args.decode_order is not None:
        overrides["decode_order"] = args.decode_order
    if args.snr is not None:
        overrides["snr_grid_db"] = tuple(args.snr)
    if args.delta_p is not None:
        overrides["delta_p_grid_db"] = tuple(args.delta_p)
    if args.channel is not None:
        overrides["channel_model"] = args.channel
    if args.min_block_errors is not None:
        overrides["min_block_errors"] = args.min_block_errors
    if args.max_trials is not None:
        overrides["max_trials"] = args.max_trials
    cfg = dataclasses.replace(cfg, **overrides)
    cfg.validate()
    return cfg


def _cmd_sweep(args) -> int:
    cfg = _build_config(args)
    records = harness.run_bler_sweep(cfg)
    if args.required_snr:
        records = harness.required_snr_records(cfg, records, args.target_bler)
    if args.out:
        harness.write_results(records, args.out)
        print(f"wrote {len(records)} records to {args.out}")
    else:
        for rec in records:
            print(rec)
    return 0


def _cmd_evm(args) -> int:
    cfg = _build_config(args)
    records = harness.run_evm_experiment(cfg)
    if args.out:
        harness.write_results(records, args.out)
        print(f"wrote {len(records)} records to {args.out}")
    else:
        for rec in records:
            print(rec)
    return 0


def _cmd_capacity(args) -> int:
    n = args.n_subcarriers
    h = flat_channel(n)
    rep = analysis.capacity_user1_first(args.p1, args.p2, h, h, args.noise_var)
    line = f"{rep.r1:.6g},{rep.r2:.6g},{rep.decode_order}"
    if args.out:
        with open(args.out, "w") as f:
            f.write("r1_bits,r2_bits,decode_order\n")
            f.write(line + "\n")
        print(f"wrote capacity record to {args.out}")
    else:
        print("r1_bits,r2_bits,decode_order")
        print(line)
    return 0


def _selftest_checks():
    """Quick deterministic oracle and invariant checks."""
    rng = np.random.default_rng(7)
    alphabet = modem.qpsk()

    def qpsk_map():
        got = modem.map_qam_bits([0, 0, 1, 1], alphabet)
        want = np.array([1 + 1j, -1 - 1j]) / np.sqrt(2)
        assert np.allclose(got, want), got

    def im_round_trip():
        cfg = modem.make_im_config(16, 4, 3, 4)
        bits = rng.integers(0, 2, cfg.bits_per_frame, dtype=np.uint8)
        frame = modem.build_ofdmim_frame(bits, cfg, alphabet, 16.0)
        assert np.array_equal(
            modem.demap_ofdmim_frame_hard(frame, cfg, alphabet), bits)
        assert abs(frame.power() - 16.0) < 1e-9 * 16.0
        mask = frame.symbols != 0
        assert mask.sum() == cfg.n_active * cfg.n_subblocks

    def ldpc_round_trip():
        code = ldpc.construct_code(256, 0.5, seed=1)
        msg = rng.integers(0, 2, code.n_message, dtype=np.uint8)
        cw = ldpc.encode(msg, code)
        assert not ldpc.syndrome(cw, code).any()
        llrs = ldpc.LLR_CLIP * (1.0 - 2.0 * cw)
        res = ldpc.decode_sum_product(llrs, code)
        assert res.syndrome_ok and np.array_equal(res.bits, cw)

    def joint_llr_oracle():
        n = 4
        r = ReceivedFrame(rng.standard_normal(n) + 1j * rng.standard_normal(n),
                          0.7)
        h1 = rng.standard_normal(n) + 1j * rng.standard_normal(n)
        h2 = rng.standard_normal(n) + 1j * rng.standard_normal(n)
        a1, a2 = 1.3, 0.8
        got = mud.llr_joint_ofdm_ofdm(r, h1, h2, alphabet, a1, a2, clip=None)
        for sc in range(n):
            for bit in range(2):
                best = {0: np.inf, 1: np.inf}
                for i1, u1 in enumerate(alphabet.symbols):
                    for u2 in alphabet.symbols:
                        m = abs(r.samples[sc] - h1[sc] * a1 * u1
                                - h2[sc] * a2 * u2) ** 2 / r.noise_var
                        b = alphabet.labels[i1, bit]
                        best[b] = min(best[b], m)
                want = best[1] - best[0]
                assert abs(got[2 * sc + bit] - want) < 1e-9, (sc, bit)

    def capacity_identity():
        h1 = rng.standard_normal(8) + 1j * rng.standard_normal(8)
        h2 = rng.standard_normal(8) + 1j * rng.standard_normal(8)
        rep = analysis.capacity_user1_first(1.7, 0.4, h1, h2, 0.3)
        total = np.sum(np.log2(
            1 + (1.7 * np.abs(h1) ** 2 + 0.4 * np.abs(h2) ** 2) / 0.3))
        assert abs(rep.r1 + rep.r2 - total) < 1e-12 * abs(total)

    def evm_algebra():
        u = rng.standard_normal(16) + 1j * rng.standard_normal(16)
        assert sic.evm_db(np.zeros(16), u) == 0.0
        assert sic.evm_db(2 * u, u) == 0.0
        assert sic.evm_db(u, u) == sic.EVM_FLOOR_DB

    def noise_scaling():
        n = 4
        samples = rng.standard_normal(n) + 1j * rng.standard_normal(n)
        h = flat_channel(n)
        l1 = mud.llr_single_user_qam(ReceivedFrame(samples, 1.0), h,
                                     alphabet, 1.0, clip=None)
        l2 = mud.llr_single_user_qam(ReceivedFrame(samples, 2.0), h,
                                     alphabet, 1.0, clip=None)
        assert np.allclose(l1, 2.0 * l2, rtol=0, atol=1e-12)

    return [qpsk_map, im_round_trip, ldpc_round_trip, joint_llr_oracle,
            capacity_identity, evm_algebra, noise_scaling]


def _cmd_selftest(args) -> int:
    failures = 0
    for check in _selftest_checks():
        try:
            check()
            print(f"[ok]   {check.__name__}")
        except AssertionError as exc:
            failures += 1
            print(f"[FAIL] {check.__name__}: {exc}")
    if args.out:
        cfg = _build_config(args)
        cfg = dataclasses.replace(
            cfg, scheme="waveform-domain", coded=False, channel_model="awgn",
            snr_grid_db=(6.0, 10.0), delta_p_grid_db=(0.0,),
            decode_order="user1-first", min_block_errors=20, max_trials=200)
        harness.write_results(harness.run_bler_sweep(cfg), args.out)
        print(f"wrote selftest sweep to {args.out}")
    return 1 if failures else 0


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="wdnoma",
        description="Two-user NOMA link simulator (power-domain vs waveform-domain)",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_sweep = sub.add_parser("sweep", help="Monte Carlo BLER sweep")
    _add_common(p_sweep)
    p_sweep.add_argument("--required-snr", action="store_true",
                         help="emit required-SNR summary rows instead of raw points")
    p_sweep.add_argument("--target-bler", type=float, default=1e-2)
    p_sweep.set_defaults(func=_cmd_sweep)

    p_evm = sub.add_parser("evm", help="reconstruction EVM experiment")
    _add_common(p_evm)
    p_evm.set_defaults(func=_cmd_evm)

    p_cap = sub.add_parser("capacity", help="closed-form capacity evaluation")
    p_cap.add_argument("--p1", type=float, default=1.0)
    p_cap.add_argument("--p2", type=float, default=1.0)
    p_cap.add_argument("--noise-var", type=float, default=1.0)
    p_cap.add_argument("--n-subcarriers", type=int, default=1)
    p_cap.add_argument("--out")
    p_cap.set_defaults(func=_cmd_capacity)

    p_self = sub.add_parser("selftest", help="oracle and invariant spot checks")
    _add_common(p_self)
    p_self.set_defaults(func=_cmd_selftest)

    args = parser.parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
