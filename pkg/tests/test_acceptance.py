"""Acceptance suite: one criterion per test, one [PASS]/[FAIL] line each.

Run with -s to see the lines. Each test is deterministic (fixed seeds) and
budgeted well inside the stated runtime limits.
"""

import dataclasses
import filecmp
import math

import numpy as np
import pytest
from scipy.special import erfc, erfcinv

from wdnoma import analysis, cli, harness, ldpc, modem, mud, sic
from wdnoma.channel import ReceivedFrame, complex_awgn, draw_channel, TapDelayProfile

from test_mud import brute_joint_ofdm, brute_ofdm_first, brute_ofdmim_first


def _report(name: str, ok: bool, detail: str) -> None:
    print(f"[{'PASS' if ok else 'FAIL'}] {name}: {detail}")


def _cfg(**kw):
    cfg = dataclasses.replace(harness.SimulationConfig(), **kw)
    cfg.validate()
    return cfg


def test_awgn_ber_sanity():
    # single-user uncoded QPSK over AWGN against the Gaussian-tail formula,
    # at the SNR where the analytic BER is 1e-3, over 2.048e6 bits
    ebn0 = erfcinv(2e-3) ** 2
    snr_db = 10 * math.log10(2 * ebn0)
    analytic = 0.5 * erfc(math.sqrt(ebn0))
    cfg = _cfg(scheme="power-domain", coded=False, single_user=True,
               decode_order="user1-first", channel_model="awgn",
               snr_grid_db=(snr_db,), master_seed=2026)
    tally, _ = harness.run_point(cfg, 0.0, snr_db, 0, fixed_trials=8000)
    bits = tally.trials * tally.nbits_u1
    ber = tally.b1 / bits
    rel = abs(ber / analytic - 1.0)
    ok = bits >= 1_000_000 and rel <= 0.05
    _report("awgn-ber-sanity", ok,
            f"ber={ber:.3e} analytic={analytic:.3e} rel={rel:.3f} bits={bits}")
    assert ok


def test_llr_oracle_equivalence():
    qpsk, bpsk = modem.qpsk(), modem.bpsk()
    rng = np.random.default_rng(101)
    instances = 0
    worst = 0.0

    def scene(n, sigma2=0.5):
        r = rng.standard_normal(n) + 1j * rng.standard_normal(n)
        h1 = rng.standard_normal(n) + 1j * rng.standard_normal(n)
        h2 = rng.standard_normal(n) + 1j * rng.standard_normal(n)
        return ReceivedFrame(r, sigma2), h1, h2

    for alph in (qpsk, bpsk):
        for _ in range(200):
            rf, h1, h2 = scene(4)
            a1, a2 = rng.uniform(0.3, 2.0, 2)
            got = mud.llr_joint_ofdm_ofdm(rf, h1, h2, alph, a1, a2, clip=None)
            ref = brute_joint_ofdm(rf.samples, h1, h2, alph, a1, a2,
                                   rf.noise_var)
            worst = max(worst, float(np.max(np.abs(got - ref))))
            instances += 1
            got = mud.llr_ofdm_first(rf, h1, h2, alph, a1, a2, clip=None)
            ref = brute_ofdm_first(rf.samples, h1, h2, alph, a1, a2,
                                   rf.noise_var)
            worst = max(worst, float(np.max(np.abs(got - ref))))
            instances += 1
    im_small = modem.make_im_config(4, 2, 1, 2)
    for _ in range(350):
        rf, h1, h2 = scene(4)
        a1, a2 = rng.uniform(0.3, 2.0, 2)
        got = mud.llr_ofdmim_first(rf, h1, h2, im_small, bpsk, a1, a2,
                                   clip=None)
        ref = brute_ofdmim_first(rf.samples, h1, h2, im_small, bpsk, a1, a2,
                                 rf.noise_var)
        worst = max(worst, float(np.max(np.abs(got - ref))))
        instances += 1
    im_head = modem.make_im_config(8, 4, 3, 4)
    for _ in range(3):
        rf, h1, h2 = scene(8)
        got = mud.llr_ofdmim_first(rf, h1, h2, im_head, qpsk, 1.0, 1.0,
                                   clip=None)
        ref = brute_ofdmim_first(rf.samples, h1, h2, im_head, qpsk, 1.0, 1.0,
                                 rf.noise_var)
        worst = max(worst, float(np.max(np.abs(got - ref))))
        instances += 1

    # exact (marginalized) vs max-log sign agreement at >= 6 dB per subcarrier
    sigma2 = 10 ** (-6 / 10)
    agree = total = 0
    for _ in range(250):
        r = rng.standard_normal(4) + 1j * rng.standard_normal(4)
        rf = ReceivedFrame(r, sigma2)
        ones = np.ones(4)
        a = mud.llr_joint_ofdm_ofdm(rf, ones, ones, qpsk, 1.0, 0.5, clip=None)
        b = mud.exact_llr_joint_ofdm_ofdm(rf, ones, ones, qpsk, 1.0, 0.5)
        keep = (a != 0) & (b != 0)
        agree += int(np.sum(np.sign(a[keep]) == np.sign(b[keep])))
        total += int(keep.sum())
    agreement = agree / total
    ok = instances >= 1000 and worst <= 1e-9 and agreement >= 0.99
    _report("llr-oracle-equivalence", ok,
            f"instances={instances} worst_abs_dev={worst:.2e} "
            f"sign_agreement={agreement:.4f}")
    assert ok


def test_perfect_sic_residual():
    # residual identity: exact reconstruction leaves exactly the other user's
    # term plus noise
    rng = np.random.default_rng(55)
    qpsk = modem.qpsk()
    im = modem.make_im_config(128, 4, 3, 4)
    wf1 = modem.WaveformConfig("ofdm-im", qpsk, 128, 128.0, im=im)
    wf2 = modem.WaveformConfig("ofdm", qpsk, 128, 128.0)
    code = ldpc.construct_code(256, 0.5, seed=1)
    msg1 = rng.integers(0, 2, 128, dtype=np.uint8)
    msg2 = rng.integers(0, 2, 128, dtype=np.uint8)
    f1 = wf1.modulate(ldpc.encode(msg1, code))
    f2 = wf2.modulate(ldpc.encode(msg2, code))
    prof = TapDelayProfile(10)
    h1 = draw_channel(prof, 128, rng)
    h2 = draw_channel(prof, 128, rng)
    w = complex_awgn(128, 0.1, rng)
    rx = ReceivedFrame(h1 * f1.scaled + h2 * f2.scaled + w, 0.1)
    recon = sic.reconstruct_hard(msg1, code, wf1)
    residual = sic.cancel(rx, recon, h1)
    expect = h2 * f2.scaled + w
    rel = float(np.max(np.abs(residual.samples - expect))
                / np.max(np.abs(expect)))
    residual_ok = rel <= 1e-12

    # genie-aided second-user BLER vs single-user BLER, binomial 95% overlap
    n_trials, snr = 400, 2.0
    cfg_g = _cfg(scheme="waveform-domain", coded=True, channel_model="awgn",
                 genie_first_user=True, decode_order="user1-first",
                 master_seed=11)
    tg, _ = harness.run_point(cfg_g, 0.0, snr, 0, fixed_trials=n_trials)
    cfg_s = _cfg(scheme="power-domain", coded=True, channel_model="awgn",
                 single_user=True, decode_order="user1-first", master_seed=11)
    ts, _ = harness.run_point(cfg_s, 0.0, snr, 0, fixed_trials=n_trials)
    p_g = tg.e2 / n_trials
    p_s = ts.e1 / n_trials
    se = math.sqrt(p_g * (1 - p_g) / n_trials + p_s * (1 - p_s) / n_trials)
    bler_ok = abs(p_g - p_s) <= 1.96 * se
    ok = residual_ok and bler_ok
    _report("perfect-sic-residual", ok,
            f"residual_rel={rel:.2e} genie_bler={p_g:.4f} "
            f"single_bler={p_s:.4f} ci95_halfwidth={1.96 * se:.4f}")
    assert ok


def test_reconstruction_evm_ordering():
    # soft reconstruction EVM <= hard reconstruction EVM at every
    # (estimation MSE, SNR) grid point over the 10-tap channel, 200 frames
    cfg = _cfg(scheme="waveform-domain", coded=True,
               channel_model="selective", channel_taps=10,
               decode_order="user2-first", master_seed=5,
               snr_grid_db=(4.0, 7.0, 10.0), evm_frames=200,
               evm_mse_grid=(0.0, 1e-2, 1e-1))
    records = harness.run_evm_experiment(cfg)
    points = {}
    for r in records:
        _, method, mse = r.scheme.split("/")
        points.setdefault((mse, r.snr_db), {})[method] = r.evm_db
    bad = [(k, v) for k, v in points.items() if v["soft"] > v["hard"]]
    ok = len(points) == 9 and not bad
    detail = "; ".join(
        f"{mse} snr={snr:g}: hard={v['hard']:.2f} soft={v['soft']:.2f}"
        for (mse, snr), v in sorted(points.items()))
    _report("reconstruction-evm-ordering", ok, detail)
    assert ok


def test_ambiguity_regions():
    # uncoded AWGN required SNR at BLER 1e-2 across the power-imbalance axis:
    # the mixed-waveform scheme collapses at the amplitude collisions
    # (-1.25 dB and +4.77 dB) while achieving the target elsewhere; the plain
    # superposition scheme degrades most at 0 dB
    grids = dict(snr_grid_db=(8.0, 12.0, 16.0, 20.0, 24.0, 28.0, 32.0),
                 delta_p_grid_db=(-5.0, -1.25, 0.0, 2.0, 4.77, 8.0),
                 min_block_errors=30, max_trials=1000, pilot_trials=50,
                 master_seed=3, coded=False, channel_model="awgn",
                 decode_order="auto")
    req = {}
    for scheme in harness.SCHEMES:
        cfg = _cfg(scheme=scheme, **grids)
        records = harness.run_bler_sweep(cfg)
        for dp in grids["delta_p_grid_db"]:
            for user in (1, 2):
                req[(scheme, dp, user)] = harness.required_snr_from_records(
                    records, 1e-2, dp, user)

    def elevated(scheme, dp, user):
        r = req[(scheme, dp, user)]
        if r.qualifier == "not-achieved":
            return True
        refs = [req[(scheme, d, user)].snr_db
                for d in (-5.0, 2.0, 8.0)
                if req[(scheme, d, user)].snr_db is not None]
        return bool(refs) and r.snr_db >= max(refs) + 3.0

    wf_ok = all(elevated("waveform-domain", dp, u)
                for dp in (-1.25, 4.77) for u in (1, 2))
    wf_achieves = all(req[("waveform-domain", dp, u)].qualifier != "not-achieved"
                      for dp in (-5.0, 0.0, 2.0, 8.0) for u in (1, 2))

    def pd_worst_at_zero(user):
        r0 = req[("power-domain", 0.0, user)]
        if r0.qualifier == "not-achieved":
            return True
        others = [req[("power-domain", d, user)].snr_db
                  for d in (-5.0, -1.25, 2.0, 4.77, 8.0)]
        return all(o is not None and r0.snr_db > o for o in others)

    pd_ok = pd_worst_at_zero(1) and pd_worst_at_zero(2)
    ok = wf_ok and wf_achieves and pd_ok

    def fmt(scheme, dp, user):
        r = req[(scheme, dp, user)]
        return "NA" if r.snr_db is None else f"{r.snr_db:.1f}"

    _report("ambiguity-regions", ok,
            "wf u1 req by dp: " + " ".join(
                f"{dp:g}:{fmt('waveform-domain', dp, 1)}"
                for dp in grids["delta_p_grid_db"])
            + " | pd u1 req by dp: " + " ".join(
                f"{dp:g}:{fmt('power-domain', dp, 1)}"
                for dp in grids["delta_p_grid_db"]))
    assert ok


def test_coded_equal_power_gain():
    # coded equal-power comparison over the 10-tap channel: the criterion
    # asks the mixed-waveform scheme to reach BLER 1e-2 at least 0.5 dB
    # earlier than plain superposition for both users
    grids = dict(snr_grid_db=(9.0, 10.0, 11.0, 12.0, 13.0, 14.0),
                 delta_p_grid_db=(0.0,), min_block_errors=30, max_trials=1500,
                 pilot_trials=50, master_seed=9, coded=True,
                 channel_model="selective", channel_taps=10,
                 decode_order="auto")
    req = {}
    for scheme in harness.SCHEMES:
        cfg = _cfg(scheme=scheme, **grids)
        records = harness.run_bler_sweep(cfg)
        for user in (1, 2):
            req[(scheme, user)] = harness.required_snr_from_records(
                records, 1e-2, 0.0, user)
    gains = {}
    for user in (1, 2):
        wf = req[("waveform-domain", user)].snr_db
        pd = req[("power-domain", user)].snr_db
        gains[user] = (None if wf is None or pd is None else pd - wf)
    ok = all(g is not None and g >= 0.5 for g in gains.values())
    detail = " ".join(
        f"u{u}: wf={req[('waveform-domain', u)].snr_db:.2f}dB "
        f"pd={req[('power-domain', u)].snr_db:.2f}dB "
        f"gain={gains[u]:+.2f}dB" for u in (1, 2))
    _report("coded-equal-power-gain", ok, detail)
    assert ok, (
        "measured gains below the 0.5 dB bar; with the joint max-log "
        "power-domain baseline and a generic regular (3,6) code the ordering "
        "does not reproduce at desk scale: " + detail)


def test_capacity_sum_rate_identity():
    rng = np.random.default_rng(77)
    worst = 0.0
    for _ in range(200):
        n = int(rng.integers(1, 16))
        h1 = rng.standard_normal(n) + 1j * rng.standard_normal(n)
        h2 = rng.standard_normal(n) + 1j * rng.standard_normal(n)
        p1, p2 = rng.uniform(0.01, 50.0, 2)
        sigma2 = rng.uniform(0.01, 5.0)
        joint = float(np.sum(np.log2(
            1 + (p1 * np.abs(h1) ** 2 + p2 * np.abs(h2) ** 2) / sigma2)))
        for rep in (analysis.capacity_user1_first(p1, p2, h1, h2, sigma2),
                    analysis.capacity_user2_first(p1, p2, h1, h2, sigma2)):
            worst = max(worst,
                        abs(rep.r1 + rep.r2 - joint) / max(1.0, abs(joint)))
    ok = worst <= 1e-12
    _report("capacity-sum-rate-identity", ok, f"worst_rel_dev={worst:.2e}")
    assert ok


def test_determinism(tmp_path, capsys):
    outs = []
    for i in range(2):
        out = tmp_path / f"selftest_{i}.csv"
        rc = cli.main(["selftest", "--seed", "13", "--out", str(out)])
        assert rc == 0
        outs.append(out)
    selftest_same = filecmp.cmp(outs[0], outs[1], shallow=False)

    sweeps = []
    for i in range(2):
        out = tmp_path / f"sweep_{i}.csv"
        rc = cli.main([
            "sweep", "--uncoded", "--scheme", "waveform-domain",
            "--snr", "10", "14", "--delta-p", "0",
            "--min-block-errors", "10", "--max-trials", "300",
            "--seed", "21", "--workers", str(1 + i), "--out", str(out)])
        assert rc == 0
        sweeps.append(out)
    sweep_same = filecmp.cmp(sweeps[0], sweeps[1], shallow=False)
    capsys.readouterr()
    ok = selftest_same and sweep_same
    _report("determinism", ok,
            f"selftest_identical={selftest_same} "
            f"sweep_identical_across_worker_counts={sweep_same}")
    assert ok
