"""Constellations, OFDM symbol mapping, and OFDM-IM subblock construction."""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

import numpy as np

from .errors import (
    ConfigurationError,
    FrameDecodeError,
    InputSizeError,
    RangeError,
)


@dataclass(frozen=True, eq=False)
class ConstellationAlphabet:
    """Unit-average-energy complex alphabet with fixed bit labels.

    ``symbols[i]`` is the point whose label is the big-endian bit expansion
    of ``i``. ``augmented`` prepends the zero symbol, which models an
    inactive index-modulated subcarrier at the receiver.
    """

    name: str
    symbols: np.ndarray  # (M,) complex128
    labels: np.ndarray   # (M, bits_per_symbol) uint8

    def __post_init__(self):
        mean_energy = float(np.mean(np.abs(self.symbols) ** 2))
        if abs(mean_energy - 1.0) > 1e-12:
            raise ConfigurationError(
                f"alphabet {self.name!r} has mean energy {mean_energy}, expected 1"
            )
        m, bps = self.labels.shape
        if m != len(self.symbols) or m != 1 << bps:
            raise ConfigurationError("bit labels must be a bijection onto {0,1}^b")

    @property
    def order(self) -> int:
        return len(self.symbols)

    @property
    def bits_per_symbol(self) -> int:
        return self.labels.shape[1]

    @property
    def augmented(self) -> np.ndarray:
        """Alphabet extended with the zero symbol (M+1 entries)."""
        return np.concatenate(([0.0 + 0.0j], self.symbols))


def _int_labels(order: int) -> np.ndarray:
    bps = int(math.log2(order))
    idx = np.arange(order)
    return ((idx[:, None] >> np.arange(bps - 1, -1, -1)) & 1).astype(np.uint8)


def bpsk() -> ConstellationAlphabet:
    """BPSK: bit 0 -> -1, bit 1 -> +1."""
    return ConstellationAlphabet(
        "bpsk", np.array([-1.0 + 0.0j, 1.0 + 0.0j]), _int_labels(2)
    )


def qpsk() -> ConstellationAlphabet:
    """Gray-labeled QPSK: (b0, b1) -> ((1-2*b0) + 1j*(1-2*b1)) / sqrt(2)."""
    labels = _int_labels(4)
    signs = 1 - 2 * labels.astype(int)
    symbols = (signs[:, 0] + 1j * signs[:, 1]) / math.sqrt(2)
    return ConstellationAlphabet("qpsk", symbols, labels)


def bits_to_int(bits) -> int:
    """Big-endian bit word to integer."""
    value = 0
    for b in np.asarray(bits).ravel():
        value = (value << 1) | int(b)
    return value


def int_to_bits(value: int, width: int) -> np.ndarray:
    return ((value >> np.arange(width - 1, -1, -1)) & 1).astype(np.uint8)


def map_qam_bits(bits, alphabet: ConstellationAlphabet) -> np.ndarray:
    """Map a bit sequence to constellation symbols, one group per symbol."""
    bits = np.asarray(bits, dtype=np.uint8)
    bps = alphabet.bits_per_symbol
    if bits.size % bps != 0:
        raise InputSizeError(
            f"bit count {bits.size} not divisible by {bps} bits/symbol"
        )
    weights = 1 << np.arange(bps - 1, -1, -1)
    idx = bits.reshape(-1, bps) @ weights
    return alphabet.symbols[idx]


def hard_symbol_bits(symbols, alphabet: ConstellationAlphabet) -> np.ndarray:
    """Nearest-point hard demapping of symbols back to their label bits."""
    symbols = np.asarray(symbols)
    idx = np.argmin(
        np.abs(symbols[:, None] - alphabet.symbols[None, :]), axis=1
    )
    return alphabet.labels[idx].reshape(-1)


@dataclass
class SymbolFrame:
    """One user's frequency-domain frame: unit symbols plus amplitude scale."""

    symbols: np.ndarray  # (N,) complex, zeros on inactive subcarriers
    scale: float

    @property
    def scaled(self) -> np.ndarray:
        return self.scale * self.symbols

    def power(self) -> float:
        return float(np.sum(np.abs(self.scaled) ** 2))


def build_ofdm_frame(symbols, power_per_subcarrier: float,
                     n_subcarriers: int | None = None) -> SymbolFrame:
    """Uniform-power OFDM frame; total transmit power is N * p."""
    symbols = np.asarray(symbols, dtype=complex)
    if n_subcarriers is not None and symbols.size != n_subcarriers:
        raise InputSizeError(
            f"expected {n_subcarriers} symbols, got {symbols.size}"
        )
    return SymbolFrame(symbols.copy(), math.sqrt(power_per_subcarrier))


@dataclass(frozen=True, eq=False)
class OfdmImConfig:
    """Index-modulation layout: g subblocks of k subcarriers, m active each.

    Subblock beta occupies subcarriers {beta, beta+g, ..., beta+(k-1)g}
    (stride-g interleaved grouping), and carries q1 index bits plus
    q2 = m*log2(M) modulation bits.
    """

    n_subcarriers: int
    subblock_size: int
    n_active: int
    mod_order: int
    n_subblocks: int
    index_bits: int
    n_patterns: int
    symbol_bits: int
    patterns: np.ndarray  # (c, k) bool activation masks

    @property
    def bits_per_subblock(self) -> int:
        return self.index_bits + self.symbol_bits

    @property
    def bits_per_frame(self) -> int:
        return self.n_subblocks * self.bits_per_subblock

    @property
    def interleave_stride(self) -> int:
        return self.n_subblocks

    def subblock_subcarriers(self, beta: int) -> np.ndarray:
        return beta + np.arange(self.subblock_size) * self.n_subblocks


def make_im_config(n_subcarriers: int, subblock_size: int, n_active: int,
                   mod_order: int) -> OfdmImConfig:
    k, m = subblock_size, n_active
    if n_subcarriers % k != 0:
        raise ConfigurationError(f"N={n_subcarriers} not divisible by k={k}")
    if not 1 <= m < k:
        raise ConfigurationError(f"need 1 <= m < k, got m={m}, k={k}")
    bps = math.log2(mod_order)
    if bps != int(bps):
        raise ConfigurationError(f"mod_order {mod_order} is not a power of 2")
    q1 = int(math.floor(math.log2(math.comb(k, m))))
    c = 1 << q1
    # Lexicographic combinadic enumeration, truncated to the first c masks.
    patterns = np.zeros((c, k), dtype=bool)
    for i, combo in enumerate(itertools.islice(
            itertools.combinations(range(k), m), c)):
        patterns[i, list(combo)] = True
    return OfdmImConfig(
        n_subcarriers=n_subcarriers,
        subblock_size=k,
        n_active=m,
        mod_order=mod_order,
        n_subblocks=n_subcarriers // k,
        index_bits=q1,
        n_patterns=c,
        symbol_bits=m * int(bps),
        patterns=patterns,
    )


def encode_index_pattern(word: int, cfg: OfdmImConfig) -> np.ndarray:
    """Index-bit word to activation mask (bool, length k)."""
    if not 0 <= word < cfg.n_patterns:
        raise RangeError(f"index word {word} out of range [0, {cfg.n_patterns})")
    return cfg.patterns[word].copy()


def decode_index_pattern(mask, cfg: OfdmImConfig) -> int:
    """Activation mask back to its index-bit word."""
    mask = np.asarray(mask, dtype=bool)
    hits = np.nonzero((cfg.patterns == mask[None, :]).all(axis=1))[0]
    if hits.size == 0:
        raise FrameDecodeError(f"activation mask {mask.astype(int)} not in pattern table")
    return int(hits[0])


def ofdmim_amplitude(cfg: OfdmImConfig, total_power: float) -> float:
    """Per-active-subcarrier amplitude sqrt(k*P/(m*N))."""
    return math.sqrt(
        cfg.subblock_size * total_power / (cfg.n_active * cfg.n_subcarriers)
    )


def build_ofdmim_frame(codeword_bits, cfg: OfdmImConfig,
                       alphabet: ConstellationAlphabet,
                       total_power: float) -> SymbolFrame:
    """OFDM-IM frame: per subblock, q1 index bits then q2 modulation bits."""
    bits = np.asarray(codeword_bits, dtype=np.uint8)
    if alphabet.order != cfg.mod_order:
        raise ConfigurationError("alphabet order does not match OFDM-IM config")
    if bits.size != cfg.bits_per_frame:
        raise InputSizeError(
            f"expected {cfg.bits_per_frame} bits, got {bits.size}"
        )
    q, q1 = cfg.bits_per_subblock, cfg.index_bits
    symbols = np.zeros(cfg.n_subcarriers, dtype=complex)
    for beta in range(cfg.n_subblocks):
        blk = bits[beta * q:(beta + 1) * q]
        mask = encode_index_pattern(bits_to_int(blk[:q1]), cfg)
        active = map_qam_bits(blk[q1:], alphabet)
        symbols[beta + np.nonzero(mask)[0] * cfg.n_subblocks] = active
    return SymbolFrame(symbols, ofdmim_amplitude(cfg, total_power))


def demap_ofdmim_frame_hard(frame, cfg: OfdmImConfig,
                            alphabet: ConstellationAlphabet) -> np.ndarray:
    """Exact inverse of build_ofdmim_frame on hard symbol decisions.

    Accepts a SymbolFrame or an array of unit-scale symbol decisions.
    Raises FrameDecodeError when a subblock's activation mask is not in
    the pattern table.
    """
    symbols = frame.symbols if isinstance(frame, SymbolFrame) else np.asarray(frame)
    if symbols.size != cfg.n_subcarriers:
        raise InputSizeError(
            f"expected {cfg.n_subcarriers} symbols, got {symbols.size}"
        )
    bits = np.empty(cfg.bits_per_frame, dtype=np.uint8)
    q, q1 = cfg.bits_per_subblock, cfg.index_bits
    for beta in range(cfg.n_subblocks):
        vals = symbols[cfg.subblock_subcarriers(beta)]
        mask = vals != 0
        word = decode_index_pattern(mask, cfg)
        blk = bits[beta * q:(beta + 1) * q]
        blk[:q1] = int_to_bits(word, q1)
        blk[q1:] = hard_symbol_bits(vals[mask], alphabet)
    return bits


@dataclass(frozen=True, eq=False)
class WaveformConfig:
    """Transmit-side description of one user: waveform kind, alphabet, power."""

    kind: str  # "ofdm" | "ofdm-im"
    alphabet: ConstellationAlphabet
    n_subcarriers: int
    total_power: float
    im: OfdmImConfig | None = None

    def __post_init__(self):
        if self.kind not in ("ofdm", "ofdm-im"):
            raise ConfigurationError(f"unknown waveform kind {self.kind!r}")
        if self.kind == "ofdm-im":
            if self.im is None:
                raise ConfigurationError("ofdm-im waveform requires an OfdmImConfig")
            if self.im.n_subcarriers != self.n_subcarriers:
                raise ConfigurationError("OfdmImConfig subcarrier count mismatch")

    @property
    def amplitude(self) -> float:
        """Per-subcarrier amplitude applied to unit constellation points."""
        if self.kind == "ofdm":
            return math.sqrt(self.total_power / self.n_subcarriers)
        return ofdmim_amplitude(self.im, self.total_power)

    @property
    def bits_per_frame(self) -> int:
        if self.kind == "ofdm":
            return self.n_subcarriers * self.alphabet.bits_per_symbol
        return self.im.bits_per_frame

    def modulate(self, bits) -> SymbolFrame:
        if self.kind == "ofdm":
            symbols = map_qam_bits(bits, self.alphabet)
            return build_ofdm_frame(
                symbols, self.total_power / self.n_subcarriers, self.n_subcarriers
            )
        return build_ofdmim_frame(bits, self.im, self.alphabet, self.total_power)
