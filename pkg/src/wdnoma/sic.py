"""Waveform reconstruction (hard and soft), cancellation, and EVM.

Soft reconstruction turns the decoder's per-bit total LLRs into expected
symbols. The default convention is the posterior mean tanh(L/2) under the
log(P0/P1) sign convention; "full-tanh" uses tanh(L) instead. LLRs at or
beyond the clip value saturate to exact hard decisions so that a fully
confident soft frame is bit-identical to the hard rebuild.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import ldpc
from .channel import ReceivedFrame, _samples
from .errors import ContractError, InputSizeError
from .ldpc import LLR_CLIP, ParityCheckCode
from .modem import SymbolFrame, WaveformConfig
from .mud import im_realizations

EVM_FLOOR_DB = -120.0

SOFT_CONVENTIONS = ("posterior", "full-tanh")
IM_SOFT_MODES = ("posterior", "hard-index")


@dataclass
class SoftSymbolFrame:
    """Expected (soft) symbols in the unit constellation domain plus scale."""

    symbols: np.ndarray
    scale: float

    @property
    def scaled(self) -> np.ndarray:
        return self.scale * self.symbols


def soft_bit_values(llrs, convention: str = "posterior",
                    clip: float = LLR_CLIP) -> np.ndarray:
    """Per-bit soft values in [-1, 1]; +1 means bit 0.

    Saturates to exactly +-1 at |L| >= clip.
    """
    llrs = np.asarray(llrs, dtype=float)
    if convention == "posterior":
        v = np.tanh(0.5 * llrs)
    elif convention == "full-tanh":
        v = np.tanh(llrs)
    else:
        raise ContractError(f"unknown soft-value convention {convention!r}")
    return np.where(np.abs(llrs) >= clip, np.sign(llrs), v)


def reconstruct_hard(message_bits, code: ParityCheckCode,
                     wf: WaveformConfig) -> SymbolFrame:
    """Reencode the decoded message and rebuild the transmit frame."""
    return wf.modulate(ldpc.encode(message_bits, code))


def rebuild_frame(codeword_bits, wf: WaveformConfig) -> SymbolFrame:
    """Remodulate already-encoded (or uncoded) bits into a transmit frame."""
    return wf.modulate(codeword_bits)


def _bit_probs_zero(llrs, convention: str, clip: float) -> np.ndarray:
    return 0.5 * (1.0 + soft_bit_values(llrs, convention, clip))


def _soft_ofdm(llrs: np.ndarray, wf: WaveformConfig, convention: str,
               clip: float) -> np.ndarray:
    alphabet = wf.alphabet
    bps = alphabet.bits_per_symbol
    p0 = _bit_probs_zero(llrs, convention, clip).reshape(-1, bps)
    symbols = np.zeros(p0.shape[0], dtype=complex)
    for i, label in enumerate(alphabet.labels):
        w = np.ones(p0.shape[0])
        for b in range(bps):
            w = w * (p0[:, b] if label[b] == 0 else 1.0 - p0[:, b])
        symbols += w * alphabet.symbols[i]
    return symbols


def _soft_ofdmim(llrs: np.ndarray, wf: WaveformConfig, convention: str,
                 clip: float, im_mode: str) -> np.ndarray:
    cfg = wf.im
    q = cfg.bits_per_subblock
    p0 = _bit_probs_zero(llrs, convention, clip).reshape(cfg.n_subblocks, q)
    syms, bits = im_realizations(cfg, wf.alphabet)
    if im_mode == "hard-index":
        # Hard activation mask from the index-bit signs, soft QAM on top.
        out = np.zeros(cfg.n_subcarriers, dtype=complex)
        llr_blocks = np.asarray(llrs, dtype=float).reshape(cfg.n_subblocks, q)
        soft_qam = _soft_ofdm(
            llr_blocks[:, cfg.index_bits:].reshape(-1), wf, convention, clip
        ).reshape(cfg.n_subblocks, cfg.n_active)
        for beta in range(cfg.n_subblocks):
            word = int("".join(
                "1" if v < 0 else "0"
                for v in llr_blocks[beta, :cfg.index_bits]), 2)
            positions = np.nonzero(cfg.patterns[word])[0]
            out[beta + positions * cfg.n_subblocks] = soft_qam[beta]
        return out
    if im_mode != "posterior":
        raise ContractError(f"unknown OFDM-IM soft mode {im_mode!r}")
    # Posterior mean over all realizations, with realization probabilities
    # formed as products of per-bit probabilities (independence approximation).
    w = np.ones((cfg.n_subblocks, syms.shape[0]))
    for i in range(q):
        w = w * np.where(bits[None, :, i] == 0, p0[:, None, i],
                         1.0 - p0[:, None, i])
    soft_sub = w @ syms  # (g, k)
    return soft_sub.T.ravel()


def reconstruct_soft(total_llrs, wf: WaveformConfig,
                     convention: str = "posterior", clip: float = LLR_CLIP,
                     im_mode: str = "posterior") -> SoftSymbolFrame:
    """Expected transmit frame from per-coded-bit total LLRs."""
    llrs = np.asarray(total_llrs, dtype=float)
    if llrs.size != wf.bits_per_frame:
        raise ContractError(
            f"expected {wf.bits_per_frame} total LLRs, got {llrs.size}"
        )
    if wf.kind == "ofdm":
        symbols = _soft_ofdm(llrs, wf, convention, clip)
    else:
        symbols = _soft_ofdmim(llrs, wf, convention, clip, im_mode)
    return SoftSymbolFrame(symbols, wf.amplitude)


def cancel(received: ReceivedFrame, recon, h_used) -> ReceivedFrame:
    """Subtract the channel-weighted reconstruction from the aggregate."""
    x = _samples(recon) if not isinstance(recon, SoftSymbolFrame) else recon.scaled
    h = np.asarray(h_used)
    if not (received.samples.size == x.size == h.size):
        raise InputSizeError("cancellation length mismatch")
    return ReceivedFrame(received.samples - h * x, received.noise_var)


def evm_db(recon, reference, floor_db: float = EVM_FLOOR_DB) -> float:
    """10*log10(sqrt(error power / reference power)), floored for reporting."""
    num, den = evm_powers(recon, reference)
    return evm_from_powers(num, den, floor_db)


def evm_powers(recon, reference) -> tuple[float, float]:
    """Error and reference powers, for aggregation across frames."""
    u_hat = _samples(recon) if not isinstance(recon, SoftSymbolFrame) else recon.scaled
    u = _samples(reference)
    if u_hat.size != u.size:
        raise InputSizeError("EVM length mismatch")
    num = float(np.sum(np.abs(u_hat - u) ** 2))
    den = float(np.sum(np.abs(u) ** 2))
    return num, den


def evm_from_powers(error_power: float, reference_power: float,
                    floor_db: float = EVM_FLOOR_DB) -> float:
    if reference_power == 0.0:
        raise ContractError("EVM reference is all zero")
    if error_power == 0.0:
        return floor_db
    return max(10.0 * np.log10(np.sqrt(error_power / reference_power)), floor_db)
