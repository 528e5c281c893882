"""Physical constants and frequency-unit conversions.

Internal convention: every frequency in the library is an angular frequency
in rad/s.  Ordinary frequencies (Hz) appear only at the CLI boundary and are
converted once, here.
"""

import math

SPEED_OF_LIGHT = 2.99792458e8  # m/s, exact

TWO_PI = 2.0 * math.pi


def hz_to_angular(f_hz: float) -> float:
    """Convert an ordinary frequency in Hz to angular frequency in rad/s."""
    return TWO_PI * f_hz


def angular_to_hz(omega: float) -> float:
    """Convert an angular frequency in rad/s to an ordinary frequency in Hz."""
    return omega / TWO_PI
