"""Joint multi-user max-log demappers and exact log-sum-exp references.

LLR convention throughout: positive favors bit 0, i.e.
Lambda = min_{hypotheses with bit=1} metric - min_{hypotheses with bit=0} metric
with metric = ||r - sum of channel-weighted hypothesis symbols||^2 / sigma^2.

The index-modulation demapper scores all c*M^m subblock realizations of the
first user jointly against the M^k interfering vectors of the second user.
Because the interferer's symbols are enumerated independently per subcarrier,
the inner minimization (and the log-sum-exp marginalization) factorizes per
subcarrier; the factorized form computes exactly the same values as the full
joint enumeration at a fraction of the cost.
"""

from __future__ import annotations

import numpy as np
from scipy.special import logsumexp

from .channel import ReceivedFrame
from .errors import CapacityError, InputSizeError
from .ldpc import LLR_CLIP
from .modem import ConstellationAlphabet, OfdmImConfig, int_to_bits

MAX_HYPOTHESES = 1 << 20


def _clip(llrs: np.ndarray, clip: float | None) -> np.ndarray:
    return llrs if clip is None else np.clip(llrs, -clip, clip)


def _bit_minima(metrics: np.ndarray, labels: np.ndarray) -> np.ndarray:
    """Per-bit max-log LLRs from per-symbol metrics.

    metrics: (..., M) metric per candidate symbol of the target user.
    labels: (M, bps). Returns (..., bps) LLRs, flattened by the caller.
    """
    bps = labels.shape[1]
    out = np.empty(metrics.shape[:-1] + (bps,))
    for i in range(bps):
        one = metrics[..., labels[:, i] == 1].min(axis=-1)
        zero = metrics[..., labels[:, i] == 0].min(axis=-1)
        out[..., i] = one - zero
    return out


def _bit_logsum(metrics: np.ndarray, labels: np.ndarray) -> np.ndarray:
    bps = labels.shape[1]
    out = np.empty(metrics.shape[:-1] + (bps,))
    for i in range(bps):
        lse1 = logsumexp(-metrics[..., labels[:, i] == 1], axis=-1)
        lse0 = logsumexp(-metrics[..., labels[:, i] == 0], axis=-1)
        out[..., i] = lse0 - lse1
    return out


def _pair_metrics(received: ReceivedFrame, h_first, h_other,
                  first_points: np.ndarray, other_points: np.ndarray) -> np.ndarray:
    """(N, M_first, M_other) metrics for all per-subcarrier symbol pairs."""
    r = received.samples
    h1, h2 = np.asarray(h_first), np.asarray(h_other)
    if not (r.size == h1.size == h2.size):
        raise InputSizeError("received frame and channel gains length mismatch")
    d = (r[:, None, None]
         - h1[:, None, None] * first_points[None, :, None]
         - h2[:, None, None] * other_points[None, None, :])
    return np.abs(d) ** 2 / received.noise_var


def llr_joint_ofdm_ofdm(received: ReceivedFrame, h_first, h_other,
                        alphabet: ConstellationAlphabet,
                        amp_first: float, amp_other: float,
                        clip: float | None = LLR_CLIP) -> np.ndarray:
    """Joint max-log LLRs of the first-decoded OFDM user under OFDM interference.

    Enumerates all M^2 per-subcarrier symbol pairs; output is subcarrier-major
    (bits of subcarrier 0, then subcarrier 1, ...).
    """
    metrics = _pair_metrics(received, h_first, h_other,
                            amp_first * alphabet.symbols,
                            amp_other * alphabet.symbols)
    llrs = _bit_minima(metrics.min(axis=2), alphabet.labels)
    return _clip(llrs.reshape(-1), clip)


def llr_single_user_qam(received: ReceivedFrame, h,
                        alphabet: ConstellationAlphabet, amp: float,
                        clip: float | None = LLR_CLIP) -> np.ndarray:
    """Interference-free max-log QAM demapping."""
    r = received.samples
    h = np.asarray(h)
    d = r[:, None] - h[:, None] * (amp * alphabet.symbols)[None, :]
    metrics = np.abs(d) ** 2 / received.noise_var
    return _clip(_bit_minima(metrics, alphabet.labels).reshape(-1), clip)


def llr_ofdm_first(received: ReceivedFrame, h_ofdm, h_im,
                   alphabet: ConstellationAlphabet,
                   amp_ofdm: float, amp_im: float,
                   clip: float | None = LLR_CLIP) -> np.ndarray:
    """Max-log LLRs of the OFDM user, marginalizing the index-modulated
    interferer over the augmented alphabet {0} union S per subcarrier."""
    metrics = _pair_metrics(received, h_ofdm, h_im,
                            amp_ofdm * alphabet.symbols,
                            amp_im * alphabet.augmented)
    llrs = _bit_minima(metrics.min(axis=2), alphabet.labels)
    return _clip(llrs.reshape(-1), clip)


def im_realizations(cfg: OfdmImConfig, alphabet: ConstellationAlphabet):
    """All c*M^m subblock realizations of the index-modulated user.

    Returns (symbols, bits): symbols is (R, k) complex with zeros on inactive
    subcarriers; bits is (R, Q) with the q1 index bits first, then the active
    subcarriers' label bits in increasing-position order.
    """
    k, m = cfg.subblock_size, cfg.n_active
    M, bps = alphabet.order, alphabet.bits_per_symbol
    n_real = cfg.n_patterns * M ** m
    syms = np.zeros((n_real, k), dtype=complex)
    bits = np.zeros((n_real, cfg.bits_per_subblock), dtype=np.uint8)
    a = 0
    for word in range(cfg.n_patterns):
        positions = np.nonzero(cfg.patterns[word])[0]
        word_bits = int_to_bits(word, cfg.index_bits)
        for combo in range(M ** m):
            bits[a, :cfg.index_bits] = word_bits
            rest = combo
            for j in range(m - 1, -1, -1):
                s = rest % M
                rest //= M
                syms[a, positions[j]] = alphabet.symbols[s]
                lo = cfg.index_bits + j * bps
                bits[a, lo:lo + bps] = alphabet.labels[s]
            a += 1
    return syms, bits


def _subblock_view(x: np.ndarray, cfg: OfdmImConfig) -> np.ndarray:
    """(g, k) view with row beta holding subcarriers beta + i*g."""
    return np.asarray(x).reshape(cfg.subblock_size, cfg.n_subblocks).T


def _check_capacity(cfg: OfdmImConfig, alphabet: ConstellationAlphabet,
                    interferer_order: int, max_hypotheses: int) -> None:
    n_hyp = (cfg.n_patterns * alphabet.order ** cfg.n_active
             * interferer_order ** cfg.subblock_size)
    if n_hyp > max_hypotheses:
        raise CapacityError(
            f"{n_hyp} joint hypotheses per subblock exceed cap {max_hypotheses}"
        )


def _im_first_metrics(received: ReceivedFrame, h_im, h_ofdm,
                      cfg: OfdmImConfig, alphabet: ConstellationAlphabet,
                      amp_im: float, amp_ofdm: float):
    """Per-subcarrier interference metrics for the OFDM-IM-first demapper.

    Returns (per_sc, bits) with per_sc of shape (g, R, k, M): the metric of
    subblock beta under realization a at in-block position t against each
    interfering symbol. Minimizing (or log-sum-exp'ing) over the last axis
    and summing over t reproduces the joint enumeration over S^k exactly.
    """
    if received.samples.size != cfg.n_subcarriers:
        raise InputSizeError("received frame length does not match OFDM-IM config")
    syms, bits = im_realizations(cfg, alphabet)
    r_sub = _subblock_view(received.samples, cfg)
    h1_sub = _subblock_view(h_im, cfg)
    h2_sub = _subblock_view(h_ofdm, cfg)
    d = (r_sub[:, None, :] - amp_im * h1_sub[:, None, :] * syms[None, :, :])
    u2 = amp_ofdm * alphabet.symbols
    e = d[:, :, :, None] - h2_sub[:, None, :, None] * u2[None, None, None, :]
    per_sc = np.abs(e) ** 2 / received.noise_var
    return per_sc, bits


def llr_ofdmim_first(received: ReceivedFrame, h_im, h_ofdm,
                     cfg: OfdmImConfig, alphabet: ConstellationAlphabet,
                     amp_im: float, amp_ofdm: float,
                     clip: float | None = LLR_CLIP,
                     max_hypotheses: int = MAX_HYPOTHESES) -> np.ndarray:
    """Max-log LLRs of the index-modulated user's Q bits per subblock,
    jointly over the OFDM interferer. Output is subblock-major."""
    _check_capacity(cfg, alphabet, alphabet.order, max_hypotheses)
    per_sc, bits = _im_first_metrics(received, h_im, h_ofdm, cfg, alphabet,
                                     amp_im, amp_ofdm)
    metric = per_sc.min(axis=3).sum(axis=2)  # (g, R)
    q = cfg.bits_per_subblock
    llrs = np.empty((cfg.n_subblocks, q))
    for i in range(q):
        one = metric[:, bits[:, i] == 1].min(axis=1)
        zero = metric[:, bits[:, i] == 0].min(axis=1)
        llrs[:, i] = one - zero
    return _clip(llrs.reshape(-1), clip)


def llr_single_user_ofdmim(received: ReceivedFrame, h,
                           cfg: OfdmImConfig, alphabet: ConstellationAlphabet,
                           amp: float, clip: float | None = LLR_CLIP,
                           max_hypotheses: int = MAX_HYPOTHESES) -> np.ndarray:
    """Interference-free max-log demapping of an OFDM-IM frame."""
    _check_capacity(cfg, alphabet, 1, max_hypotheses)
    if received.samples.size != cfg.n_subcarriers:
        raise InputSizeError("received frame length does not match OFDM-IM config")
    syms, bits = im_realizations(cfg, alphabet)
    r_sub = _subblock_view(received.samples, cfg)
    h_sub = _subblock_view(h, cfg)
    d = r_sub[:, None, :] - amp * h_sub[:, None, :] * syms[None, :, :]
    metric = (np.abs(d) ** 2).sum(axis=2) / received.noise_var
    q = cfg.bits_per_subblock
    llrs = np.empty((cfg.n_subblocks, q))
    for i in range(q):
        one = metric[:, bits[:, i] == 1].min(axis=1)
        zero = metric[:, bits[:, i] == 0].min(axis=1)
        llrs[:, i] = one - zero
    return _clip(llrs.reshape(-1), clip)


# --- exact log-sum-exp references (test and diagnostics only) ---------------

def exact_llr_joint_ofdm_ofdm(received: ReceivedFrame, h_first, h_other,
                              alphabet: ConstellationAlphabet,
                              amp_first: float, amp_other: float,
                              clip: float | None = None) -> np.ndarray:
    metrics = _pair_metrics(received, h_first, h_other,
                            amp_first * alphabet.symbols,
                            amp_other * alphabet.symbols)
    marg = -logsumexp(-metrics, axis=2)  # pseudo-metric after marginalization
    return _clip(_bit_logsum(marg, alphabet.labels).reshape(-1), clip)


def exact_llr_ofdm_first(received: ReceivedFrame, h_ofdm, h_im,
                         alphabet: ConstellationAlphabet,
                         amp_ofdm: float, amp_im: float,
                         clip: float | None = None) -> np.ndarray:
    metrics = _pair_metrics(received, h_ofdm, h_im,
                            amp_ofdm * alphabet.symbols,
                            amp_im * alphabet.augmented)
    marg = -logsumexp(-metrics, axis=2)
    return _clip(_bit_logsum(marg, alphabet.labels).reshape(-1), clip)


def exact_llr_ofdmim_first(received: ReceivedFrame, h_im, h_ofdm,
                           cfg: OfdmImConfig, alphabet: ConstellationAlphabet,
                           amp_im: float, amp_ofdm: float,
                           clip: float | None = None,
                           max_hypotheses: int = MAX_HYPOTHESES) -> np.ndarray:
    _check_capacity(cfg, alphabet, alphabet.order, max_hypotheses)
    per_sc, bits = _im_first_metrics(received, h_im, h_ofdm, cfg, alphabet,
                                     amp_im, amp_ofdm)
    # Marginalize the interferer per subcarrier, then sum log-likelihoods.
    loglik = logsumexp(-per_sc, axis=3).sum(axis=2)  # (g, R)
    q = cfg.bits_per_subblock
    llrs = np.empty((cfg.n_subblocks, q))
    for i in range(q):
        lse1 = logsumexp(loglik[:, bits[:, i] == 1], axis=1)
        lse0 = logsumexp(loglik[:, bits[:, i] == 0], axis=1)
        llrs[:, i] = lse0 - lse1
    return _clip(llrs.reshape(-1), clip)
