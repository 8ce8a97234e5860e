"""Monte Carlo experiment engine: trial pipeline, sweeps, and persistence.

Conventions: user 2's per-subcarrier power is fixed at 1 W; the SNR axis is
10*log10(1/noise_var) referenced to user 2, and the power imbalance
delta_p_db = 10*log10(P1/P2) scales user 1. Every trial derives its random
stream from (master seed, point index, trial index), so results do not
depend on scheduling.
"""

from __future__ import annotations

import dataclasses
import itertools
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from . import ldpc, modem, mud, sic
from .channel import (
    ReceivedFrame,
    TapDelayProfile,
    apply_estimation_error,
    draw_channel,
    flat_channel,
    superimpose,
)
from .errors import ConfigurationError
from .modem import SymbolFrame, WaveformConfig

SCHEMES = ("power-domain", "waveform-domain")
DECODE_ORDERS = ("user1-first", "user2-first", "auto")
RECON_METHODS = ("hard", "soft")
CHANNEL_MODELS = ("awgn", "selective")

CSV_HEADER = ("scheme,delta_p_db,snr_db,trials,blkerr_u1,blkerr_u2,"
              "bler_u1,bler_u2,ber_u1,ber_u2,evm_db,decode_order,seed")

# Pilot trials for automatic decode-order selection use an index offset so
# their random streams never collide with measurement trials.
_PILOT_OFFSET = 1 << 30


@dataclass
class SimulationConfig:
    scheme: str = "waveform-domain"
    decode_order: str = "auto"
    coded: bool = True
    modulation: str = "qpsk"
    n_subcarriers: int = 128
    subblock_size: int = 4
    active_per_subblock: int = 3
    code_block_length: int = 256
    code_rate: float = 0.5
    code_seed: int = 1
    decoder_max_iter: int = 50
    channel_model: str = "awgn"
    channel_taps: int = 10
    est_error_var: float = 0.0
    est_error_both_users: bool = True
    single_user: bool = False
    genie_first_user: bool = False
    snr_grid_db: tuple = (0.0, 2.0, 4.0, 6.0, 8.0, 10.0)
    delta_p_grid_db: tuple = (0.0,)
    min_block_errors: int = 100
    max_trials: int = 100000
    master_seed: int = 1
    recon_method: str = "soft"
    soft_convention: str = "posterior"
    im_soft_mode: str = "posterior"
    pilot_trials: int = 100
    evm_frames: int = 200
    evm_mse_grid: tuple = (0.0, 1e-2, 1e-1)
    workers: int = 1

    def validate(self) -> None:
        checks = [
            (self.scheme in SCHEMES, f"unknown scheme {self.scheme!r}"),
            (self.decode_order in DECODE_ORDERS,
             f"unknown decode order {self.decode_order!r}"),
            (self.recon_method in RECON_METHODS,
             f"unknown reconstruction method {self.recon_method!r}"),
            (self.soft_convention in sic.SOFT_CONVENTIONS,
             f"unknown soft convention {self.soft_convention!r}"),
            (self.im_soft_mode in sic.IM_SOFT_MODES,
             f"unknown OFDM-IM soft mode {self.im_soft_mode!r}"),
            (self.channel_model in CHANNEL_MODELS,
             f"unknown channel model {self.channel_model!r}"),
            (self.modulation in ("qpsk", "bpsk"),
             f"unknown modulation {self.modulation!r}"),
            (len(self.snr_grid_db) > 0, "empty SNR grid"),
            (len(self.delta_p_grid_db) > 0, "empty power-imbalance grid"),
            (self.min_block_errors >= 1, "min_block_errors must be >= 1"),
            (self.max_trials >= 1, "max_trials must be >= 1"),
            (self.evm_frames >= 1, "evm_frames must be >= 1"),
            (self.pilot_trials >= 1, "pilot_trials must be >= 1"),
            (self.est_error_var >= 0, "est_error_var must be >= 0"),
            (self.workers >= 1, "workers must be >= 1"),
        ]
        for ok, msg in checks:
            if not ok:
                raise ConfigurationError(msg)


def load_config(path) -> SimulationConfig:
    """Flat key = value config file; '#' starts a comment; unknown keys error."""
    overrides = {}
    with open(path) as f:
        for lineno, line in enumerate(f, 1):
            line = line.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise ConfigurationError(f"{path}:{lineno}: expected 'key = value'")
            key, value = (s.strip() for s in line.split("=", 1))
            overrides[key] = value
    return config_from_dict(overrides)


def config_from_dict(overrides: dict) -> SimulationConfig:
    defaults = SimulationConfig()
    kwargs = {}
    valid = {f.name for f in dataclasses.fields(SimulationConfig)}
    for key, raw in overrides.items():
        if key not in valid:
            raise ConfigurationError(f"unknown config key {key!r}")
        if not isinstance(raw, str):
            kwargs[key] = raw
            continue
        default = getattr(defaults, key)
        if isinstance(default, bool):
            if raw.lower() not in ("true", "false", "1", "0"):
                raise ConfigurationError(f"{key}: expected a boolean, got {raw!r}")
            kwargs[key] = raw.lower() in ("true", "1")
        elif isinstance(default, int):
            kwargs[key] = int(raw)
        elif isinstance(default, float):
            kwargs[key] = float(raw)
        elif isinstance(default, tuple):
            kwargs[key] = tuple(float(v) for v in raw.split(",") if v.strip())
        else:
            kwargs[key] = raw
    cfg = dataclasses.replace(defaults, **kwargs)
    cfg.validate()
    return cfg


@dataclass(eq=False)
class _Context:
    alphabet: modem.ConstellationAlphabet
    im_cfg: modem.OfdmImConfig
    code: ldpc.ParityCheckCode | None
    profile: TapDelayProfile | None


_CONTEXT_CACHE: dict = {}


def get_context(cfg: SimulationConfig) -> _Context:
    key = (cfg.modulation, cfg.n_subcarriers, cfg.subblock_size,
           cfg.active_per_subblock, cfg.coded, cfg.code_block_length,
           cfg.code_rate, cfg.code_seed, cfg.channel_model, cfg.channel_taps)
    ctx = _CONTEXT_CACHE.get(key)
    if ctx is None:
        alphabet = modem.qpsk() if cfg.modulation == "qpsk" else modem.bpsk()
        im_cfg = modem.make_im_config(cfg.n_subcarriers, cfg.subblock_size,
                                      cfg.active_per_subblock, alphabet.order)
        code = None
        if cfg.coded:
            code = ldpc.construct_code(cfg.code_block_length, cfg.code_rate,
                                       cfg.code_seed)
        profile = (TapDelayProfile(cfg.channel_taps)
                   if cfg.channel_model == "selective" else None)
        ctx = _Context(alphabet, im_cfg, code, profile)
        _CONTEXT_CACHE[key] = ctx
    return ctx


def _waveforms(cfg: SimulationConfig, ctx: _Context,
               delta_p_db: float) -> tuple[WaveformConfig, WaveformConfig]:
    p2_total = float(cfg.n_subcarriers)
    p1_total = p2_total * 10.0 ** (delta_p_db / 10.0)
    wf2 = WaveformConfig("ofdm", ctx.alphabet, cfg.n_subcarriers, p2_total)
    if cfg.scheme == "power-domain":
        wf1 = WaveformConfig("ofdm", ctx.alphabet, cfg.n_subcarriers, p1_total)
    else:
        wf1 = WaveformConfig("ofdm-im", ctx.alphabet, cfg.n_subcarriers,
                             p1_total, im=ctx.im_cfg)
    return wf1, wf2


@dataclass
class TrialOutcome:
    err_u1: int
    err_u2: int | None
    biterr_u1: int
    biterr_u2: int | None
    nbits_u1: int
    nbits_u2: int
    evm_hard: tuple | None = None  # (error power, reference power)
    evm_soft: tuple | None = None


def _payload_bits(cfg: SimulationConfig, ctx: _Context,
                  wf: WaveformConfig) -> int:
    return ctx.code.n_message if cfg.coded else wf.bits_per_frame


def run_trial(cfg: SimulationConfig, delta_p_db: float, snr_db: float,
              point_index: int, trial_index: int,
              order: str | None = None, ctx: _Context | None = None,
              collect_evm: bool = False) -> TrialOutcome:
    """One full transmit/demap/decode/cancel/decode pipeline pass."""
    ctx = ctx or get_context(cfg)
    if order is None:
        order = resolve_decode_order(cfg, delta_p_db, snr_db, point_index, ctx)
    rng = np.random.default_rng(np.random.SeedSequence(
        [cfg.master_seed, point_index, trial_index]))
    noise_var = 10.0 ** (-snr_db / 10.0)
    wf1, wf2 = _waveforms(cfg, ctx, delta_p_db)

    n1, n2 = _payload_bits(cfg, ctx, wf1), _payload_bits(cfg, ctx, wf2)
    msg1 = rng.integers(0, 2, size=n1, dtype=np.uint8)
    msg2 = rng.integers(0, 2, size=n2, dtype=np.uint8)
    cw1 = ldpc.encode(msg1, ctx.code) if cfg.coded else msg1
    cw2 = ldpc.encode(msg2, ctx.code) if cfg.coded else msg2
    frame1 = wf1.modulate(cw1)
    frame2 = wf2.modulate(cw2)
    if cfg.single_user:
        frame2 = SymbolFrame(np.zeros(cfg.n_subcarriers, dtype=complex), 0.0)

    if ctx.profile is None:
        h1 = flat_channel(cfg.n_subcarriers)
        h2 = flat_channel(cfg.n_subcarriers)
    else:
        h1 = draw_channel(ctx.profile, cfg.n_subcarriers, rng)
        h2 = draw_channel(ctx.profile, cfg.n_subcarriers, rng)

    first = 1 if order == "user1-first" else 2
    he1, he2 = h1, h2
    if cfg.est_error_var > 0:
        e1 = apply_estimation_error(h1, cfg.est_error_var, rng).gains
        e2 = apply_estimation_error(h2, cfg.est_error_var, rng).gains
        if cfg.est_error_both_users:
            he1, he2 = e1, e2
        elif first == 1:
            he1 = e1
        else:
            he2 = e2

    rx = superimpose(frame1, h1, frame2, h2, noise_var, rng)

    if first == 1:
        wf_f, wf_s = wf1, wf2
        msg_f, msg_s, cw_f = msg1, msg2, cw1
        h_f, h_s = he1, he2
    else:
        wf_f, wf_s = wf2, wf1
        msg_f, msg_s, cw_f = msg2, msg1, cw2
        h_f, h_s = he2, he1

    llrs_f = _demap_first(cfg, ctx, rx, wf_f, wf_s, h_f, h_s)
    dec_f = _decode(cfg, ctx, llrs_f)
    err_f = int(np.any(dec_f.message != msg_f))
    bit_f = int(np.count_nonzero(dec_f.message != msg_f))

    recon_hard = recon_soft = None
    if collect_evm or cfg.recon_method == "hard":
        recon_hard = sic.rebuild_frame(dec_f.codeword, wf_f)
    if collect_evm or cfg.recon_method == "soft":
        recon_soft = sic.reconstruct_soft(dec_f.total_llrs, wf_f,
                                          cfg.soft_convention,
                                          im_mode=cfg.im_soft_mode)
    evm_hard = evm_soft = None
    if collect_evm:
        evm_hard = sic.evm_powers(recon_hard, frame_f := (frame1 if first == 1
                                                          else frame2))
        evm_soft = sic.evm_powers(recon_soft, frame_f)

    if cfg.single_user:
        out = (err_f, None, bit_f, None, n1, n2)
        return TrialOutcome(*out, evm_hard=evm_hard, evm_soft=evm_soft)

    if cfg.genie_first_user:
        recon = sic.rebuild_frame(cw_f, wf_f)
    else:
        recon = recon_hard if cfg.recon_method == "hard" else recon_soft
    residual = sic.cancel(rx, recon, h_f)

    llrs_s = _demap_second(cfg, ctx, residual, wf_s, h_s)
    dec_s = _decode(cfg, ctx, llrs_s)
    err_s = int(np.any(dec_s.message != msg_s))
    bit_s = int(np.count_nonzero(dec_s.message != msg_s))

    if first == 1:
        return TrialOutcome(err_f, err_s, bit_f, bit_s, n1, n2,
                            evm_hard=evm_hard, evm_soft=evm_soft)
    return TrialOutcome(err_s, err_f, bit_s, bit_f, n1, n2,
                        evm_hard=evm_hard, evm_soft=evm_soft)


def _demap_first(cfg, ctx, rx: ReceivedFrame, wf_f: WaveformConfig,
                 wf_s: WaveformConfig, h_f, h_s) -> np.ndarray:
    alphabet = ctx.alphabet
    if cfg.single_user:
        if wf_f.kind == "ofdm":
            return mud.llr_single_user_qam(rx, h_f, alphabet, wf_f.amplitude)
        return mud.llr_single_user_ofdmim(rx, h_f, wf_f.im, alphabet,
                                          wf_f.amplitude)
    if cfg.scheme == "power-domain":
        return mud.llr_joint_ofdm_ofdm(rx, h_f, h_s, alphabet,
                                       wf_f.amplitude, wf_s.amplitude)
    if wf_f.kind == "ofdm-im":
        return mud.llr_ofdmim_first(rx, h_f, h_s, wf_f.im, alphabet,
                                    wf_f.amplitude, wf_s.amplitude)
    return mud.llr_ofdm_first(rx, h_f, h_s, alphabet,
                              wf_f.amplitude, wf_s.amplitude)


def _demap_second(cfg, ctx, residual: ReceivedFrame,
                  wf_s: WaveformConfig, h_s) -> np.ndarray:
    if wf_s.kind == "ofdm":
        return mud.llr_single_user_qam(residual, h_s, ctx.alphabet,
                                       wf_s.amplitude)
    return mud.llr_single_user_ofdmim(residual, h_s, wf_s.im, ctx.alphabet,
                                      wf_s.amplitude)


@dataclass
class _Decoded:
    message: np.ndarray
    codeword: np.ndarray
    total_llrs: np.ndarray


def _decode(cfg, ctx, llrs: np.ndarray) -> _Decoded:
    if cfg.coded:
        res = ldpc.decode_sum_product(llrs, ctx.code, cfg.decoder_max_iter)
        return _Decoded(ldpc.extract_message(res.bits, ctx.code),
                        res.bits, res.total_llrs)
    bits = (np.asarray(llrs) < 0).astype(np.uint8)
    return _Decoded(bits, bits, np.asarray(llrs, dtype=float))


def resolve_decode_order(cfg: SimulationConfig, delta_p_db: float,
                         snr_db: float, point_index: int,
                         ctx: _Context | None = None) -> str:
    """Fixed order from config, or the automatic rule.

    Power-domain: stronger user first. Waveform-domain: a pilot batch per
    order, keeping the order whose first-decoded user has fewer block errors.
    """
    if cfg.decode_order != "auto":
        return cfg.decode_order
    if cfg.single_user or cfg.scheme == "power-domain":
        return "user1-first" if delta_p_db >= 0 else "user2-first"
    errors = []
    for oi, order in enumerate(("user1-first", "user2-first")):
        errs = 0
        for t in range(cfg.pilot_trials):
            idx = _PILOT_OFFSET + oi * cfg.pilot_trials + t
            out = run_trial(cfg, delta_p_db, snr_db, point_index, idx,
                            order=order, ctx=ctx)
            errs += out.err_u1 if order == "user1-first" else out.err_u2
        errors.append(errs)
    return "user1-first" if errors[0] <= errors[1] else "user2-first"


@dataclass
class ResultRecord:
    scheme: str
    delta_p_db: float
    snr_db: float | None
    trials: int
    blkerr_u1: int | None
    blkerr_u2: int | None
    bler_u1: float | None
    bler_u2: float | None
    ber_u1: float | None
    ber_u2: float | None
    evm_db: float | None
    decode_order: str
    seed: int


def _run_batch(cfg: SimulationConfig, delta_p_db: float, snr_db: float,
               point_index: int, start: int, count: int, order: str,
               collect_evm: bool):
    ctx = get_context(cfg)
    e1 = e2 = b1 = b2 = 0
    hard = [0.0, 0.0]
    soft = [0.0, 0.0]
    for t in range(start, start + count):
        out = run_trial(cfg, delta_p_db, snr_db, point_index, t,
                        order=order, ctx=ctx, collect_evm=collect_evm)
        e1 += out.err_u1
        b1 += out.biterr_u1
        if out.err_u2 is not None:
            e2 += out.err_u2
            b2 += out.biterr_u2
        if collect_evm:
            hard[0] += out.evm_hard[0]
            hard[1] += out.evm_hard[1]
            soft[0] += out.evm_soft[0]
            soft[1] += out.evm_soft[1]
    return e1, e2, b1, b2, out.nbits_u1, out.nbits_u2, tuple(hard), tuple(soft)


def _run_trials(cfg, delta_p_db, snr_db, point_index, start, count, order,
                collect_evm, executor=None):
    if executor is None or count < 2 * cfg.workers:
        return [_run_batch(cfg, delta_p_db, snr_db, point_index, start, count,
                           order, collect_evm)]
    chunk = math.ceil(count / cfg.workers)
    jobs = []
    for s in range(start, start + count, chunk):
        jobs.append((cfg, delta_p_db, snr_db, point_index, s,
                     min(chunk, start + count - s), order, collect_evm))
    return list(executor.map(_run_batch, *zip(*jobs)))


@dataclass
class _PointTally:
    trials: int = 0
    e1: int = 0
    e2: int = 0
    b1: int = 0
    b2: int = 0
    nbits_u1: int = 0
    nbits_u2: int = 0
    evm_hard: tuple = (0.0, 0.0)
    evm_soft: tuple = (0.0, 0.0)

    def absorb(self, batches, count):
        self.trials += count
        for e1, e2, b1, b2, n1, n2, hard, soft in batches:
            self.e1 += e1
            self.e2 += e2
            self.b1 += b1
            self.b2 += b2
            self.nbits_u1, self.nbits_u2 = n1, n2
            self.evm_hard = (self.evm_hard[0] + hard[0],
                             self.evm_hard[1] + hard[1])
            self.evm_soft = (self.evm_soft[0] + soft[0],
                             self.evm_soft[1] + soft[1])


def run_point(cfg: SimulationConfig, delta_p_db: float, snr_db: float,
              point_index: int, collect_evm: bool = False,
              fixed_trials: int | None = None,
              executor=None) -> tuple[_PointTally, str]:
    """Trials at one grid point until the stop rule (or a fixed count)."""
    ctx = get_context(cfg)
    order = resolve_decode_order(cfg, delta_p_db, snr_db, point_index, ctx)
    tally = _PointTally()
    limit = fixed_trials if fixed_trials is not None else cfg.max_trials
    while tally.trials < limit:
        batch = min(max(200, cfg.min_block_errors), limit - tally.trials)
        results = _run_trials(cfg, delta_p_db, snr_db, point_index,
                              tally.trials, batch, order, collect_evm,
                              executor)
        tally.absorb(results, batch)
        if fixed_trials is None and _stop_reached(cfg, tally):
            break
    return tally, order


def _stop_reached(cfg: SimulationConfig, tally: _PointTally) -> bool:
    if cfg.single_user:
        return tally.e1 >= cfg.min_block_errors
    return min(tally.e1, tally.e2) >= cfg.min_block_errors


def _record(cfg: SimulationConfig, delta_p_db: float, snr_db: float,
            tally: _PointTally, order: str,
            evm: float | None = None, scheme: str | None = None) -> ResultRecord:
    t = tally.trials
    single = cfg.single_user
    return ResultRecord(
        scheme=scheme if scheme is not None else cfg.scheme,
        delta_p_db=delta_p_db,
        snr_db=snr_db,
        trials=t,
        blkerr_u1=tally.e1,
        blkerr_u2=None if single else tally.e2,
        bler_u1=tally.e1 / t,
        bler_u2=None if single else tally.e2 / t,
        ber_u1=tally.b1 / (t * tally.nbits_u1),
        ber_u2=None if single else tally.b2 / (t * tally.nbits_u2),
        evm_db=evm,
        decode_order=order,
        seed=cfg.master_seed,
    )


def _executor(cfg: SimulationConfig):
    if cfg.workers > 1:
        return ProcessPoolExecutor(max_workers=cfg.workers)
    return None


def run_bler_sweep(cfg: SimulationConfig) -> list[ResultRecord]:
    """Block-error sweep over the (delta_p, SNR) grid."""
    cfg.validate()
    records = []
    pool = _executor(cfg)
    try:
        points = itertools.product(cfg.delta_p_grid_db, cfg.snr_grid_db)
        for point_index, (dp, snr) in enumerate(points):
            tally, order = run_point(cfg, dp, snr, point_index, executor=pool)
            records.append(_record(cfg, dp, snr, tally, order))
    finally:
        if pool is not None:
            pool.shutdown()
    return records


def run_evm_experiment(cfg: SimulationConfig) -> list[ResultRecord]:
    """Reconstruction-quality experiment over (estimation MSE, SNR).

    Emits two records per grid point, one per reconstruction method, with the
    method and MSE appended to the scheme label. The reported EVM is the
    RMS aggregate over all frames at the point.
    """
    cfg.validate()
    if cfg.decode_order == "auto":
        cfg = dataclasses.replace(cfg, decode_order="user2-first")
    records = []
    pool = _executor(cfg)
    try:
        grid = itertools.product(cfg.evm_mse_grid, [cfg.delta_p_grid_db[0]],
                                 cfg.snr_grid_db)
        for point_index, (mse, dp, snr) in enumerate(grid):
            run_cfg = dataclasses.replace(cfg, est_error_var=mse)
            tally, order = run_point(run_cfg, dp, snr, point_index,
                                     collect_evm=True,
                                     fixed_trials=cfg.evm_frames,
                                     executor=pool)
            for method, powers in (("hard", tally.evm_hard),
                                   ("soft", tally.evm_soft)):
                evm = sic.evm_from_powers(powers[0], powers[1])
                label = f"{cfg.scheme}/{method}/mse={mse:g}"
                records.append(_record(run_cfg, dp, snr, tally, order,
                                       evm=evm, scheme=label))
    finally:
        if pool is not None:
            pool.shutdown()
    return records


@dataclass
class RequiredSnr:
    snr_db: float | None
    qualifier: str  # "exact" | "at-most" | "not-achieved"


def required_snr_from_records(records, target_bler: float, delta_p_db: float,
                              user: int = 1) -> RequiredSnr:
    """Grid scan plus log-linear interpolation of the BLER/SNR curve."""
    if not 0.0 < target_bler < 1.0:
        raise ConfigurationError("target BLER must lie in (0, 1)")
    rows = sorted((r for r in records
                   if math.isclose(r.delta_p_db, delta_p_db, abs_tol=1e-9)),
                  key=lambda r: r.snr_db)
    if not rows:
        raise ConfigurationError(f"no records at delta_p = {delta_p_db}")
    blers = [r.bler_u1 if user == 1 else r.bler_u2 for r in rows]
    # Zero measured errors: substitute half an error for interpolation.
    floors = [max(b, 0.5 / r.trials) for b, r in zip(blers, rows)]
    if blers[0] <= target_bler:
        return RequiredSnr(rows[0].snr_db, "at-most")
    for i in range(len(rows) - 1):
        if blers[i] > target_bler >= blers[i + 1]:
            s1, s2 = rows[i].snr_db, rows[i + 1].snr_db
            b1, b2 = floors[i], floors[i + 1]
            frac = (math.log(b1) - math.log(target_bler)) / \
                   (math.log(b1) - math.log(b2))
            return RequiredSnr(s1 + frac * (s2 - s1), "exact")
    return RequiredSnr(None, "not-achieved")


def required_snr_search(cfg: SimulationConfig, target_bler: float,
                        delta_p_db: float, user: int = 1,
                        records=None) -> RequiredSnr:
    if records is None:
        sweep_cfg = dataclasses.replace(cfg, delta_p_grid_db=(delta_p_db,))
        records = run_bler_sweep(sweep_cfg)
    return required_snr_from_records(records, target_bler, delta_p_db, user)


def required_snr_records(cfg: SimulationConfig, records,
                         target_bler: float) -> list[ResultRecord]:
    """Required-SNR summary rows: one per (delta_p, user), user tagged onto
    the scheme label; unachieved targets carry NA in the snr_db column."""
    out = []
    for dp in cfg.delta_p_grid_db:
        rows = [r for r in records
                if math.isclose(r.delta_p_db, dp, abs_tol=1e-9)]
        trials = sum(r.trials for r in rows)
        order = rows[0].decode_order if rows else cfg.decode_order
        for user in (1, 2):
            req = required_snr_from_records(records, target_bler, dp, user)
            out.append(ResultRecord(
                scheme=f"{cfg.scheme}/u{user}",
                delta_p_db=dp,
                snr_db=req.snr_db,
                trials=trials,
                blkerr_u1=None, blkerr_u2=None,
                bler_u1=None, bler_u2=None,
                ber_u1=None, ber_u2=None,
                evm_db=None,
                decode_order=order,
                seed=cfg.master_seed,
            ))
    return out


def _fmt(value) -> str:
    if value is None:
        return "NA"
    if isinstance(value, (bool, np.bool_)):
        return str(int(value))
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if isinstance(value, (float, np.floating)):
        return format(float(value), ".6g")
    return str(value)


def write_results(records, path) -> None:
    """Deterministic CSV with the fixed schema; missing measurements as NA."""
    cols = CSV_HEADER.split(",")
    try:
        with open(path, "w") as f:
            f.write(CSV_HEADER + "\n")
            for rec in records:
                f.write(",".join(_fmt(getattr(rec, c)) for c in cols) + "\n")
    except OSError as exc:
        raise OSError(f"failed writing results to {path}: {exc}") from exc


def read_results(path) -> list[ResultRecord]:
    """Inverse of write_results for round-trip checks and downstream tools."""
    cols = CSV_HEADER.split(",")
    ints = {"trials", "blkerr_u1", "blkerr_u2", "seed"}
    strs = {"scheme", "decode_order"}
    records = []
    with open(path) as f:
        header = f.readline().strip()
        if header != CSV_HEADER:
            raise ConfigurationError(f"unexpected CSV header in {path}")
        for line in f:
            vals = line.strip().split(",")
            kwargs = {}
            for c, v in zip(cols, vals):
                if v == "NA":
                    kwargs[c] = None
                elif c in strs:
                    kwargs[c] = v
                elif c in ints:
                    kwargs[c] = int(v)
                else:
                    kwargs[c] = float(v)
            records.append(ResultRecord(**kwargs))
    return records
