"""Parameter sweeps: figure-data surfaces, spectra and their metadata.

Cells are written into pre-sized arrays addressed by grid index, so results
are deterministic regardless of evaluation order.
"""

import math
from dataclasses import dataclass, field, replace

import numpy as np

from . import __version__ as _version
from . import oracle
from .constants import SPEED_OF_LIGHT as C
from .errors import OracleMismatchError
from .rates import (EMIT_EXCITE, AtomParams, FreeSpace, Mirror, ShoMotion,
                    Sideband, allowed_sidebands, free_space_rate, mirror_rate)
from .specfun import bessel_j, bessel_j_orders


@dataclass(frozen=True)
class SweepGrid:
    """Two named, strictly monotone axes plus the held-fixed parameters."""

    axis1_name: str
    axis1_values: tuple
    axis2_name: str
    axis2_values: tuple
    fixed: dict = field(default_factory=dict)

    def __post_init__(self):
        for name, values in ((self.axis1_name, self.axis1_values),
                             (self.axis2_name, self.axis2_values)):
            values = tuple(float(v) for v in values)
            if len(values) == 0:
                raise ValueError(f"axis {name!r} is empty")
            if any(b <= a for a, b in zip(values, values[1:])):
                raise ValueError(f"axis {name!r} must be strictly increasing")
        object.__setattr__(self, "axis1_values",
                           tuple(float(v) for v in self.axis1_values))
        object.__setattr__(self, "axis2_values",
                           tuple(float(v) for v in self.axis2_values))


@dataclass(frozen=True)
class SweepResult:
    """Rate matrix over a grid; values[i, j] pairs axis1[i] with axis2[j]."""

    grid: SweepGrid
    values: np.ndarray
    metadata: dict
    aux: dict = field(default_factory=dict)

    def __post_init__(self):
        expected = (len(self.grid.axis1_values), len(self.grid.axis2_values))
        if self.values.shape != expected:
            raise ValueError(
                f"values shape {self.values.shape} != grid shape {expected}")
        if not np.all(np.isfinite(self.values)) or np.any(self.values < 0):
            raise ValueError("values must be finite and non-negative")


def fig2_surface(a_tilde_values=None, n_values=None, *,
                 g: float | None = None, Omega: float | None = None) -> SweepResult:
    """Free-space rate surface over dimensionless amplitude and sideband index.

    Default normalization omits the 2 pi g^2 / Omega prefactor, so cells are
    J_n(a_tilde)^2; pass ``g`` and ``Omega`` for absolute rates in Hz.  The
    grid maximum sits at n = 1, a_tilde ~ 1.84.
    """
    if a_tilde_values is None:
        a_tilde_values = np.linspace(0.0, 30.0, 512)
    if n_values is None:
        n_values = range(1, 31)
    a_tilde_values = tuple(float(a) for a in a_tilde_values)
    n_values = tuple(int(n) for n in n_values)
    if any(a < 0 for a in a_tilde_values):
        raise ValueError("a_tilde must be >= 0")
    if any(n < 1 for n in n_values):
        raise ValueError("sideband indices must be >= 1")
    if (g is None) != (Omega is None):
        raise ValueError("pass both g and Omega for absolute rates, or neither")

    n_max = max(n_values)
    values = np.empty((len(a_tilde_values), len(n_values)))
    for i, a in enumerate(a_tilde_values):
        orders = bessel_j_orders(n_max, a)
        values[i, :] = [orders[n] ** 2 for n in n_values]
    normalization = "prefactor-omitted"
    if g is not None:
        values *= 2.0 * math.pi * g**2 / Omega
        normalization = "hz"
    grid = SweepGrid("A_tilde", a_tilde_values, "n", n_values,
                     fixed={} if g is None else {"g": g, "Omega": Omega})
    metadata = {"surface": "fig2", "normalization": normalization,
                "version": _version}
    return SweepResult(grid=grid, values=values, metadata=metadata)


def fig3_surface(amplitude_values=None, alpha_values=None, *,
                 Omega: float = 2.0 * math.pi * 1e10) -> SweepResult:
    """Small-amplitude cQED rate surface over oscillation amplitude and alpha.

    Cells hold the n = 1 small-amplitude rate at omega0 = Omega/2,

        rate = pi (A alpha)^2 Omega^3 / (32 c^2)   [Hz],

    with the exact Bessel-formula rate alongside in ``aux['exact_rate_hz']``
    and a per-cell validity flag in ``aux['approx_valid']`` (the cell's
    dimensionless amplitude must stay below 0.1; violating cells are flagged,
    not fatal).
    """
    if amplitude_values is None:
        amplitude_values = np.linspace(1e-8 / 128, 1e-8, 128)
    if alpha_values is None:
        alpha_values = np.linspace(1.0 / 128, 1.0, 128)
    amplitude_values = tuple(float(a) for a in amplitude_values)
    alpha_values = tuple(float(a) for a in alpha_values)
    if any(a < 0 for a in amplitude_values) or any(a < 0 for a in alpha_values):
        raise ValueError("amplitudes and alphas must be >= 0")
    if not Omega > 0:
        raise ValueError(f"Omega must be positive, got {Omega}")

    amps = np.asarray(amplitude_values)
    alphas = np.asarray(alpha_values)
    values = (math.pi * np.outer(amps, alphas) ** 2 * Omega**3
              / (32.0 * C**2))
    # Exact rate for comparison: omega0 = Omega/2, g = alpha*omega0,
    # a_tilde = Omega*A/(2c).
    a_tilde = 0.5 * Omega * amps / C
    j1_sq = np.array([bessel_j(1, a) ** 2 for a in a_tilde])
    g_sq = (alphas * 0.5 * Omega) ** 2
    exact = 2.0 * math.pi / Omega * np.outer(j1_sq, g_sq)
    approx_valid = np.broadcast_to((a_tilde < 0.1)[:, None],
                                   values.shape).copy()
    grid = SweepGrid("amplitude_m", amplitude_values, "alpha", alpha_values,
                     fixed={"Omega": Omega, "omega0": 0.5 * Omega})
    metadata = {"surface": "fig3", "normalization": "hz",
                "version": _version}
    return SweepResult(grid=grid, values=values, metadata=metadata,
                       aux={"exact_rate_hz": exact,
                            "approx_valid": approx_valid})


def rate_surface(atom: AtomParams, motion: ShoMotion, geom,
                 amplitude_values, n_values) -> SweepResult:
    """Custom sweep: closed-form rate over oscillation amplitude and n.

    Cells with no open sideband (n*Omega <= omega0) are zero.
    """
    amplitude_values = tuple(float(a) for a in amplitude_values)
    n_values = tuple(int(n) for n in n_values)
    values = np.zeros((len(amplitude_values), len(n_values)))
    for i, amplitude in enumerate(amplitude_values):
        cell_motion = replace(motion, amplitude=amplitude)
        for j, n in enumerate(n_values):
            if n * motion.Omega <= atom.omega0:
                continue
            if isinstance(geom, FreeSpace):
                values[i, j] = free_space_rate(atom, cell_motion, n).rate
            elif isinstance(geom, Mirror):
                values[i, j] = mirror_rate(atom, cell_motion, geom, n).rate
            else:
                raise TypeError(
                    "custom sweeps support free-space and mirror geometries")
    grid = SweepGrid("amplitude_m", amplitude_values, "n", n_values,
                     fixed={"omega0": atom.omega0, "g": atom.g,
                            "Omega": motion.Omega})
    metadata = {"surface": "custom", "normalization": "hz",
                "version": _version}
    return SweepResult(grid=grid, values=values, metadata=metadata)


def spectrum(atom: AtomParams, motion, geom, n_max: int, *,
             verify: bool = False, verify_tol: float = 1e-6,
             quadrature=None) -> list[Sideband]:
    """Sideband spectrum via the closed forms, optionally oracle-checked.

    With ``verify`` set, every emission line is re-verified against the
    brute-force one-period amplitude; disagreement beyond ``verify_tol``
    relative raises :class:`OracleMismatchError`.
    """
    lines = allowed_sidebands(atom, motion, geom, n_max)
    if not verify:
        return lines
    cfg = quadrature if quadrature is not None else oracle.DEFAULT_CONFIG
    for line in lines:
        if line.branch != EMIT_EXCITE:
            continue  # the oracle models the emission branch only
        result = oracle.one_period_amplitude(motion, geom, line.omega,
                                             atom.omega0, cfg, g=atom.g)
        scale = max(line.rate, result.rate)
        floor = 1e-20 * 8.0 * math.pi * atom.g**2 / motion.Omega
        if scale > floor and abs(result.rate - line.rate) > verify_tol * scale:
            deviation = abs(result.rate - line.rate) / scale
            raise OracleMismatchError(
                f"sideband n={line.n}: closed form {line.rate:g} Hz vs "
                f"oracle {result.rate:g} Hz (relative deviation "
                f"{deviation:g} > {verify_tol:g})",
                relative_deviation=deviation,
            )
    return lines
