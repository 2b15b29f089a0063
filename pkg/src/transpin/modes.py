"""Complex field phasors of guided and evanescent electromagnetic modes.

Two geometries are covered:

* **Guided modes** of an ideal rectangular waveguide (perfectly conducting
  walls at ``x in {0, a}``, ``y in {0, b}``, propagation along z).  TM_mn
  modes are built from the longitudinal electric amplitude ``E_z``; TE_mn
  modes from the longitudinal magnetic amplitude ``B_z``.  See e.g. Jackson,
  *Classical Electrodynamics*, ch. 8, or Pozar, *Microwave Engineering*,
  ch. 3.

* **Evanescent surface waves** on the vacuum side ``x > 0`` of a planar
  interface, produced by total internal reflection inside a denser medium
  (refractive index ``eta``, internal incidence angle ``phi`` with
  ``eta*sin(phi) > 1``).  The wave travels along z with a superluminal-phase
  wavenumber ``k_z = (omega/c)*eta*sin(phi)`` and decays along x with rate
  ``kappa = (omega/c)*sqrt(eta^2 sin^2 phi - 1)``.

All phasors carry the full space-time factor ``exp(-i*(omega*t - k_z*z))``
(or its surface counterpart), so the physical field is simply
``Re(phasor)``.  Evaluation functions broadcast over numpy arrays in the
coordinates; field vectors live on the trailing axis of shape ``(..., 3)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

from .constants import SI, PhysicalConstants
from .errors import DomainError, InvalidModeError

__all__ = [
    "ModeFamily",
    "ModeIndex",
    "WaveguideGeometry",
    "GuidedModeSpec",
    "SurfaceWaveSpec",
    "FieldPhasor",
    "cutoff_frequency",
    "axial_wavenumber",
    "guided_field_phasor",
    "surface_field_phasor",
    "maxwell_residuals",
]


class ModeFamily(str, Enum):
    """Transverse-magnetic (``E_z != 0``) or transverse-electric (``B_z != 0``)."""

    TM = "TM"
    TE = "TE"


@dataclass(frozen=True)
class ModeIndex:
    """Validated (family, m, n) triple.

    TM requires ``m >= 1`` and ``n >= 1`` (both transverse sine factors must
    be non-trivial); TE requires ``m >= 1``, ``n >= 0``.
    """

    family: ModeFamily
    m: int
    n: int

    def __post_init__(self) -> None:
        object.__setattr__(self, "family", ModeFamily(self.family))
        if self.m != int(self.m) or self.n != int(self.n):
            raise InvalidModeError(f"mode indices must be integers, got ({self.m}, {self.n})")
        if self.family is ModeFamily.TM and (self.m < 1 or self.n < 1):
            raise InvalidModeError(f"TM requires m >= 1 and n >= 1, got ({self.m}, {self.n})")
        if self.family is ModeFamily.TE and (self.m < 1 or self.n < 0):
            raise InvalidModeError(f"TE requires m >= 1 and n >= 0, got ({self.m}, {self.n})")


@dataclass(frozen=True)
class WaveguideGeometry:
    """Rectangular cross-section ``a x b`` and quantization length ``L``.

    The convention ``a >= b`` makes TE10 the dominant mode.
    """

    a: float
    b: float
    length: float

    def __post_init__(self) -> None:
        if not (self.a >= self.b > 0.0):
            raise ValueError(f"need a >= b > 0, got a={self.a!r}, b={self.b!r}")
        if not (self.length > 0.0):
            raise ValueError(f"length must be positive, got {self.length!r}")

    @property
    def volume(self) -> float:
        return self.a * self.b * self.length


def cutoff_frequency(index: ModeIndex, geometry: WaveguideGeometry,
                     constants: PhysicalConstants = SI) -> float:
    """Angular cutoff frequency ``omega_c = c*pi*sqrt((m/a)^2 + (n/b)^2)``."""
    return constants.c * math.pi * math.hypot(index.m / geometry.a, index.n / geometry.b)


def axial_wavenumber(omega: float, omega_c: float, constants: PhysicalConstants = SI):
    """Positive-branch axial wavenumber from ``omega^2 = omega_c^2 + c^2 k_z^2``.

    Returns a real float above cutoff and a purely imaginary complex number
    ``i*beta`` (decay rate ``beta > 0``) below cutoff.  Propagation direction
    is applied by the caller (negate for -z).
    """
    if omega <= 0.0 or omega_c <= 0.0:
        raise ValueError(f"omega and omega_c must be positive, got {omega!r}, {omega_c!r}")
    gap = omega * omega - omega_c * omega_c
    if gap >= 0.0:
        return math.sqrt(gap) / constants.c
    return 1j * math.sqrt(-gap) / constants.c


@dataclass(frozen=True)
class GuidedModeSpec:
    """A fully specified guided mode.

    Parameters
    ----------
    geometry, index : domain and mode labels.
    omega : float
        Angular frequency [rad/s].
    amplitude : float
        Field normalization ``h``: equal to ``E_0`` for TM modes and to
        ``c*B_0`` for TE modes, so both families share one amplitude scale
        of electric-field dimension.
    direction : int
        +1 for propagation along +z, -1 for -z (negates ``k_z``).
    """

    geometry: WaveguideGeometry
    index: ModeIndex
    omega: float
    amplitude: float
    direction: int = +1
    constants: PhysicalConstants = SI

    def __post_init__(self) -> None:
        if not (self.omega > 0.0):
            raise ValueError(f"omega must be positive, got {self.omega!r}")
        if not (self.amplitude > 0.0):
            raise ValueError(f"amplitude must be positive, got {self.amplitude!r}")
        if self.direction not in (+1, -1):
            raise ValueError(f"direction must be +1 or -1, got {self.direction!r}")

    @property
    def omega_c(self) -> float:
        return cutoff_frequency(self.index, self.geometry, self.constants)

    @property
    def k_z(self):
        """Signed axial wavenumber (imaginary for evanescent modes)."""
        return self.direction * axial_wavenumber(self.omega, self.omega_c, self.constants)

    @property
    def is_propagating(self) -> bool:
        return self.omega > self.omega_c


@dataclass(frozen=True)
class SurfaceWaveSpec:
    """An evanescent surface wave on the vacuum side of a planar interface.

    ``eta`` and ``phi`` describe the totally internally reflected parent
    wave; ``area`` is the transverse quantization area in the (y, z) plane.
    ``amplitude`` is ``h' = c*a_0`` (TM, where ``a_0`` is the magnetic
    amplitude) or ``h' = b_0`` (TE, electric amplitude), again giving both
    families a common electric-field scale.
    """

    family: ModeFamily
    eta: float
    phi: float
    omega: float
    amplitude: float
    area: float
    direction: int = +1
    constants: PhysicalConstants = SI

    def __post_init__(self) -> None:
        object.__setattr__(self, "family", ModeFamily(self.family))
        if not (self.eta > 0.0):
            raise ValueError(f"eta must be positive, got {self.eta!r}")
        if not (0.0 < self.phi < math.pi / 2):
            raise DomainError(f"phi must lie in (0, pi/2), got {self.phi!r}")
        if self.eta * math.sin(self.phi) <= 1.0:
            raise DomainError(
                f"eta*sin(phi) = {self.eta * math.sin(self.phi):.6f} <= 1: "
                "no total internal reflection, no evanescent tail")
        if not (self.omega > 0.0):
            raise ValueError(f"omega must be positive, got {self.omega!r}")
        if not (self.amplitude > 0.0):
            raise ValueError(f"amplitude must be positive, got {self.amplitude!r}")
        if not (self.area > 0.0):
            raise ValueError(f"area must be positive, got {self.area!r}")
        if self.direction not in (+1, -1):
            raise ValueError(f"direction must be +1 or -1, got {self.direction!r}")

    @property
    def kappa(self) -> float:
        """Transverse decay rate [1/m]; always positive."""
        s = self.eta * math.sin(self.phi)
        return (self.omega / self.constants.c) * math.sqrt(s * s - 1.0)

    @property
    def k_z(self) -> float:
        """Signed axial wavenumber; ``|k_z| > omega/c`` always."""
        return self.direction * (self.omega / self.constants.c) * self.eta * math.sin(self.phi)


@dataclass(frozen=True)
class FieldPhasor:
    """Complex E and B phasors on the trailing axis: shape ``(..., 3)``.

    E in V/m, B in T (SI).  The physical fields are ``Re(E)``, ``Re(B)``.
    """

    E: np.ndarray
    B: np.ndarray


def _stack3(cx, cy, cz) -> np.ndarray:
    parts = np.broadcast_arrays(np.asarray(cx, complex), np.asarray(cy, complex),
                                np.asarray(cz, complex))
    return np.stack(parts, axis=-1)


def guided_field_phasor(spec: GuidedModeSpec, point, t=0.0) -> FieldPhasor:
    """Evaluate the guided-mode phasor at ``point = (x, y, z)`` and time ``t``.

    Parameters
    ----------
    spec : GuidedModeSpec
    point : tuple of float or ndarray
        Coordinates; broadcast against each other and ``t``.  ``x`` must lie
        in ``[0, a]`` and ``y`` in ``[0, b]``.
    t : float or ndarray, optional

    Returns
    -------
    FieldPhasor

    Notes
    -----
    TM components (with ``r = c^2/omega_c^2`` and transverse wavenumbers
    ``k_x = m*pi/a``, ``k_y = n*pi/b``)::

        E_x = i k_x k_z r E0 cos(k_x x) sin(k_y y) * P
        E_y = i k_y k_z r E0 sin(k_x x) cos(k_y y) * P
        E_z =             E0 sin(k_x x) sin(k_y y) * P
        B_x = -i k_y (omega/omega_c^2) E0 sin(k_x x) cos(k_y y) * P
        B_y = +i k_x (omega/omega_c^2) E0 cos(k_x x) sin(k_y y) * P

    and TE components::

        E_x = -i k_y omega r B0 cos(k_x x) sin(k_y y) * P
        E_y = +i k_x omega r B0 sin(k_x x) cos(k_y y) * P
        B_x = -i k_x k_z r B0 sin(k_x x) cos(k_y y) * P
        B_y = -i k_y k_z r B0 cos(k_x x) sin(k_y y) * P
        B_z =            B0 cos(k_x x) cos(k_y y) * P

    where ``P = exp(-i*(omega*t - k_z*z))``.  Both satisfy the source-free
    Maxwell equations exactly (checked by :func:`maxwell_residuals`).
    """
    geom, idx, con = spec.geometry, spec.index, spec.constants
    x = np.asarray(point[0], dtype=float)
    y = np.asarray(point[1], dtype=float)
    z = np.asarray(point[2], dtype=float)
    if np.any(x < 0.0) or np.any(x > geom.a):
        raise DomainError(f"x must lie in [0, {geom.a}]")
    if np.any(y < 0.0) or np.any(y > geom.b):
        raise DomainError(f"y must lie in [0, {geom.b}]")

    omega, omega_c, k_z = spec.omega, spec.omega_c, spec.k_z
    kx = idx.m * math.pi / geom.a
    ky = idx.n * math.pi / geom.b
    r = con.c**2 / omega_c**2
    phase = np.exp(-1j * (omega * np.asarray(t, dtype=float) - k_z * z))
    sx, cx = np.sin(kx * x), np.cos(kx * x)
    sy, cy = np.sin(ky * y), np.cos(ky * y)

    if idx.family is ModeFamily.TM:
        e0 = spec.amplitude
        E = _stack3(1j * kx * k_z * r * e0 * cx * sy * phase,
                    1j * ky * k_z * r * e0 * sx * cy * phase,
                    e0 * sx * sy * phase)
        B = _stack3(-1j * ky * (omega / omega_c**2) * e0 * sx * cy * phase,
                    1j * kx * (omega / omega_c**2) * e0 * cx * sy * phase,
                    np.zeros_like(phase))
    else:
        b0 = spec.amplitude / con.c
        E = _stack3(-1j * ky * omega * r * b0 * cx * sy * phase,
                    1j * kx * omega * r * b0 * sx * cy * phase,
                    np.zeros_like(phase))
        B = _stack3(-1j * kx * k_z * r * b0 * sx * cy * phase,
                    -1j * ky * k_z * r * b0 * cx * sy * phase,
                    b0 * cx * cy * phase)
    return FieldPhasor(E=E, B=B)


def surface_field_phasor(spec: SurfaceWaveSpec, point, t=0.0) -> FieldPhasor:
    """Evaluate the surface-wave phasor at ``point = (x, y, z)``, ``x >= 0``.

    TM carries ``(E_x, E_z, B_y)``; TE carries ``(E_y, B_x, B_z)``.  The
    longitudinal component lags/leads its transverse partner by pi/2 (the
    ``-i kappa/omega`` and ``+i kappa/omega`` factors), which is the origin
    of the transverse spin of these waves.
    """
    con = spec.constants
    x = np.asarray(point[0], dtype=float)
    z = np.asarray(point[2], dtype=float)
    if np.any(x < 0.0):
        raise DomainError("surface wave is defined on the vacuum side x >= 0")

    omega, k_z, kappa = spec.omega, spec.k_z, spec.kappa
    F = np.exp(1j * (k_z * z - omega * np.asarray(t, dtype=float)) - kappa * x)
    zero = np.zeros_like(F)
    c2 = con.c**2

    if spec.family is ModeFamily.TM:
        a0 = spec.amplitude / con.c
        E = _stack3((k_z / omega) * c2 * a0 * F, zero, -1j * (kappa / omega) * c2 * a0 * F)
        B = _stack3(zero, a0 * F, zero)
    else:
        b0 = spec.amplitude
        E = _stack3(zero, b0 * F, zero)
        B = _stack3(-(k_z / omega) * b0 * F, zero, 1j * (kappa / omega) * b0 * F)
    return FieldPhasor(E=E, B=B)


# --------------------------------------------------------------------------
# finite-difference Maxwell diagnostics


def _fd_vector_derivatives(evaluate, point, h):
    """Central-difference gradients of E and B along each axis at ``point``."""
    dE, dB = [], []
    for axis in range(3):
        plus = list(point)
        minus = list(point)
        plus[axis] = point[axis] + h
        minus[axis] = point[axis] - h
        fp = evaluate(tuple(plus))
        fm = evaluate(tuple(minus))
        dE.append((fp.E - fm.E) / (2.0 * h))
        dB.append((fp.B - fm.B) / (2.0 * h))
    return dE, dB


def maxwell_residuals(spec, point, t=0.0) -> dict:
    """Normalized source-free Maxwell residuals at an interior point.

    Computes ``div E``, ``div B`` and ``curl E - i*omega*B`` (Faraday for the
    ``exp(-i*omega*t)`` convention) by central differences, normalized by
    ``|k_scale| * max(|E|, c|B|)``.  A correct mode implementation keeps all
    three below ~1e-10; the acceptance threshold is 1e-8.
    """
    con = spec.constants
    if isinstance(spec, GuidedModeSpec):
        evaluate = lambda p: guided_field_phasor(spec, p, t)  # noqa: E731
        h = 1e-6 * min(spec.geometry.a, spec.geometry.b)
        k_scale = spec.omega / con.c
    elif isinstance(spec, SurfaceWaveSpec):
        evaluate = lambda p: surface_field_phasor(spec, p, t)  # noqa: E731
        h = 1e-6 / spec.kappa
        k_scale = abs(spec.k_z)
    else:
        raise TypeError(f"unsupported spec type {type(spec).__name__}")

    f0 = evaluate(point)
    dE, dB = _fd_vector_derivatives(evaluate, point, h)
    div_e = dE[0][..., 0] + dE[1][..., 1] + dE[2][..., 2]
    div_b = dB[0][..., 0] + dB[1][..., 1] + dB[2][..., 2]
    curl_e = np.stack([
        dE[1][..., 2] - dE[2][..., 1],
        dE[2][..., 0] - dE[0][..., 2],
        dE[0][..., 1] - dE[1][..., 0],
    ], axis=-1)
    faraday = curl_e - 1j * spec.omega * f0.B

    e_scale = float(np.max(np.abs(f0.E)))
    b_scale = con.c * float(np.max(np.abs(f0.B)))
    scale = k_scale * max(e_scale, b_scale)
    return {
        "div_e": float(abs(complex(div_e))) / scale,
        "div_b": float(abs(complex(div_b))) / scale,
        "faraday": float(np.max(np.abs(faraday))) / scale,
    }
