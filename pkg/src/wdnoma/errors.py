"""Exception types shared across the simulator."""


class InputSizeError(ValueError):
    """An array argument has the wrong length or shape."""


class RangeError(ValueError):
    """A scalar argument is outside its admissible range."""


class ConfigurationError(ValueError):
    """A configuration object is internally inconsistent."""


class CapacityError(RuntimeError):
    """A hypothesis enumeration would exceed the configured cap."""


class FrameDecodeError(ValueError):
    """A hard symbol decision frame is not consistent with the modulator."""


class ContractError(ValueError):
    """A caller violated an operation's contract (missing or degenerate input)."""
