"""Two-user uplink NOMA link simulator.

Compares conventional power-domain superposition (OFDM+OFDM) against a
waveform-domain pairing (OFDM-IM+OFDM), with LDPC-aided soft successive
interference cancellation.
"""

from . import analysis, channel, harness, ldpc, modem, mud, sic  # noqa: F401

__version__ = "0.1.0"
