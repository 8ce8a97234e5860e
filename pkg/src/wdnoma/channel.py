"""Channel realizations, estimation-error injection, and user superposition.

Everything lives in the frequency domain: a realization is a vector of
per-subcarrier complex gains, block-constant over one frame.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ConfigurationError, InputSizeError
from .modem import SymbolFrame


@dataclass(frozen=True)
class TapDelayProfile:
    """Tapped-delay-line power profile, normalized to unit total power."""

    n_taps: int
    powers: tuple | None = None  # None -> uniform 1/L per tap

    def tap_powers(self) -> np.ndarray:
        if self.powers is None:
            return np.full(self.n_taps, 1.0 / self.n_taps)
        p = np.asarray(self.powers, dtype=float)
        if p.size != self.n_taps or abs(p.sum() - 1.0) > 1e-9:
            raise ConfigurationError("tap powers must have length L and sum to 1")
        return p


@dataclass
class ChannelEstimate:
    gains: np.ndarray  # (N,) complex estimated per-subcarrier gains
    mse: float         # configured normalized MSE


@dataclass
class ReceivedFrame:
    samples: np.ndarray  # (N,) complex
    noise_var: float


def _samples(frame) -> np.ndarray:
    return frame.scaled if isinstance(frame, SymbolFrame) else np.asarray(frame)


def complex_awgn(n: int, var: float, rng: np.random.Generator) -> np.ndarray:
    if var == 0.0:
        return np.zeros(n, dtype=complex)
    s = np.sqrt(var / 2.0)
    return s * (rng.standard_normal(n) + 1j * rng.standard_normal(n))


def flat_channel(n_subcarriers: int) -> np.ndarray:
    """AWGN-only mode: unit gain on every subcarrier."""
    return np.ones(n_subcarriers, dtype=complex)


def draw_channel(profile: TapDelayProfile | None, n_subcarriers: int,
                 rng: np.random.Generator) -> np.ndarray:
    """Frequency response of i.i.d. complex Gaussian taps; unit average gain.

    profile=None returns the flat AWGN-only channel.
    """
    if profile is None:
        return flat_channel(n_subcarriers)
    if profile.n_taps > n_subcarriers:
        raise ConfigurationError(
            f"L={profile.n_taps} taps exceed N={n_subcarriers} subcarriers"
        )
    taps = complex_awgn(profile.n_taps, 1.0, rng) * np.sqrt(profile.tap_powers())
    return np.fft.fft(taps, n=n_subcarriers)


def apply_estimation_error(h, mse: float,
                           rng: np.random.Generator) -> ChannelEstimate:
    """h_tilde = h + e with e ~ CN(0, mse); channels are unit-gain normalized."""
    h = np.asarray(h)
    if mse < 0:
        raise ConfigurationError(f"estimation MSE must be >= 0, got {mse}")
    if mse == 0.0:
        return ChannelEstimate(h.copy(), 0.0)
    return ChannelEstimate(h + complex_awgn(h.size, mse, rng), mse)


def superimpose(frame1, h1, frame2, h2, noise_var: float,
                rng: np.random.Generator) -> ReceivedFrame:
    """r = h1*x1 + h2*x2 + w with w ~ CN(0, noise_var) per subcarrier."""
    x1, x2 = _samples(frame1), _samples(frame2)
    h1, h2 = np.asarray(h1), np.asarray(h2)
    if not (x1.size == x2.size == h1.size == h2.size):
        raise InputSizeError("frames and channel gains must share one length")
    w = complex_awgn(x1.size, noise_var, rng)
    return ReceivedFrame(h1 * x1 + h2 * x2 + w, noise_var)
