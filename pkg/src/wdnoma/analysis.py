"""Closed-form per-subcarrier capacities for the power-domain scheme."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ConfigurationError


@dataclass
class CapacityReport:
    r1: float  # bit/s/Hz summed over subcarriers
    r2: float
    decode_order: str


def capacity_user1_first(p1: float, p2: float, h1, h2,
                         noise_var: float) -> CapacityReport:
    """User 1 decoded under user-2 interference; user 2 after ideal cancellation.

    R1 = sum log2(1 + p1|h1|^2 / (sigma^2 + p2|h2|^2))
    R2 = sum log2(1 + p2|h2|^2 / sigma^2)
    """
    if noise_var <= 0:
        raise ConfigurationError(f"noise variance must be > 0, got {noise_var}")
    g1 = p1 * np.abs(np.asarray(h1)) ** 2
    g2 = p2 * np.abs(np.asarray(h2)) ** 2
    r1 = float(np.sum(np.log2(1.0 + g1 / (noise_var + g2))))
    r2 = float(np.sum(np.log2(1.0 + g2 / noise_var)))
    return CapacityReport(r1=r1, r2=r2, decode_order="user1-first")


def capacity_user2_first(p1: float, p2: float, h1, h2,
                         noise_var: float) -> CapacityReport:
    """Swapped decoding order, by argument exchange."""
    rep = capacity_user1_first(p2, p1, h2, h1, noise_var)
    return CapacityReport(r1=rep.r2, r2=rep.r1, decode_order="user2-first")
