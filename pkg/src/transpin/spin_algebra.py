"""Spin-1 matrix algebra, six-spinor representations and helicity bases.

The photon-spin generators are the adjoint-representation matrices
``(tau_k)_{lm} = -i eps_{klm}`` obeying ``[tau_i, tau_j] = i eps_{ijk}
tau_k`` and ``tau.tau = 2 I`` (spin s = 1).  Doubling them produces the
6 x 6 blocks used with six-spinors::

    Sigma_k = diag(tau_k, tau_k)        alpha_k = offdiag(tau_k, tau_k)

and an antisymmetric tensor of generators ``S_{lm} = eps_{lmn} Sigma_n``,
``S_{0l} = -i alpha_l`` that closes into the Lorentz algebra so(1,3)
(brute-force structure constants are frozen in ``data/commutator_table.json``).

Six-spinors come in two unitarily equivalent representations::

    standard  psi = (E, iB)/sqrt(2)
    chiral    psi = ((E + iB), (E - iB))/2

related by the involutive block-Hadamard matrix ``U``.

For any unit vector ``n`` the matrix ``tau.n`` has eigenvalues {+1, 0, -1}
with eigenvectors ``(e_+1, e_0 = n, e_-1 = conj(e_+1))`` -- the circular
polarization basis about ``n``.  The eigenvectors are built by rotating the
closed-form pole basis ``(1, +/- i, 0)/sqrt(2)`` from the nearer pole onto
``n`` (Rodrigues formula), which is exact, smooth on each hemisphere and
immune to the coordinate singularity that a component-ratio formula for
generic ``n`` develops where ``n_1 - i n_2 -> 0``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from importlib import resources

import numpy as np

from .errors import DomainError, RepresentationError

__all__ = [
    "SpinMatrixSet",
    "SixSpinor",
    "HelicityEigensystem",
    "PolarizationCoefficients",
    "build_spin_matrices",
    "to_chiral",
    "to_standard",
    "helicity_eigensystem",
    "decompose_polarization",
    "commutator_table",
    "load_reference_commutator_table",
    "generator_closure_rank",
]

_SQRT2 = np.sqrt(2.0)

#: Levi-Civita symbol eps[i, j, k]
LEVI_CIVITA = np.zeros((3, 3, 3))
for _i, _j, _k in ((0, 1, 2), (1, 2, 0), (2, 0, 1)):
    LEVI_CIVITA[_i, _j, _k] = 1.0
    LEVI_CIVITA[_i, _k, _j] = -1.0


@dataclass(frozen=True)
class SpinMatrixSet:
    """The full matrix toolkit; see module docstring for definitions.

    Attributes
    ----------
    tau : (3, 3, 3) complex
        ``tau[k]`` is the spin-1 generator about axis k.
    Sigma, alpha : (3, 6, 6) complex
        Block-diagonal and block-antidiagonal doublings.
    S : (4, 4, 6, 6) complex
        Antisymmetric generator tensor ``S[mu, nu]``.
    U : (6, 6) float
        Standard <-> chiral basis change; ``U = U^dagger = U^{-1}``.
    """

    tau: np.ndarray
    Sigma: np.ndarray
    alpha: np.ndarray
    S: np.ndarray
    U: np.ndarray


def build_spin_matrices() -> SpinMatrixSet:
    """Construct all spin matrices from the Levi-Civita symbol."""
    tau = -1j * LEVI_CIVITA
    eye2 = np.eye(2)
    swap = np.array([[0.0, 1.0], [1.0, 0.0]])
    Sigma = np.stack([np.kron(eye2, tau[k]) for k in range(3)])
    alpha = np.stack([np.kron(swap, tau[k]) for k in range(3)])

    S = np.zeros((4, 4, 6, 6), dtype=complex)
    for l in range(1, 4):
        for m in range(1, 4):
            for n in range(1, 4):
                if LEVI_CIVITA[l - 1, m - 1, n - 1] != 0.0:
                    S[l, m] += LEVI_CIVITA[l - 1, m - 1, n - 1] * Sigma[n - 1]
    for l in range(1, 4):
        S[0, l] = -1j * alpha[l - 1]
        S[l, 0] = 1j * alpha[l - 1]

    U = np.kron(np.array([[1.0, 1.0], [1.0, -1.0]]) / _SQRT2, np.eye(3))
    return SpinMatrixSet(tau=tau, Sigma=Sigma, alpha=alpha, S=S, U=U)


# --------------------------------------------------------------------------
# six-spinors


@dataclass(frozen=True)
class SixSpinor:
    """A six-component field spinor with an explicit representation tag."""

    values: np.ndarray
    representation: str  # "standard" or "chiral"

    def __post_init__(self) -> None:
        values = np.asarray(self.values, dtype=complex)
        if values.shape != (6,):
            raise ValueError(f"six-spinor needs shape (6,), got {values.shape}")
        if self.representation not in ("standard", "chiral"):
            raise RepresentationError(
                f"unknown representation {self.representation!r}")
        object.__setattr__(self, "values", values)

    @classmethod
    def standard_from_fields(cls, E, B) -> "SixSpinor":
        """``psi = (E, iB)/sqrt(2)``."""
        E = np.asarray(E, dtype=complex)
        B = np.asarray(B, dtype=complex)
        return cls(np.concatenate([E, 1j * B]) / _SQRT2, "standard")

    @classmethod
    def chiral_from_fields(cls, E, B) -> "SixSpinor":
        """``psi = ((E + iB), (E - iB))/2``."""
        E = np.asarray(E, dtype=complex)
        B = np.asarray(B, dtype=complex)
        return cls(np.concatenate([E + 1j * B, E - 1j * B]) / 2.0, "chiral")


def _basis_change(psi: SixSpinor, source: str, target: str) -> SixSpinor:
    if psi.representation != source:
        raise RepresentationError(
            f"expected a {source} six-spinor, got {psi.representation!r}")
    U = build_spin_matrices().U
    return SixSpinor(U @ psi.values, target)


def to_chiral(psi: SixSpinor) -> SixSpinor:
    """Map a standard six-spinor to the chiral representation (apply U)."""
    return _basis_change(psi, "standard", "chiral")


def to_standard(psi: SixSpinor) -> SixSpinor:
    """Map a chiral six-spinor back to the standard representation."""
    return _basis_change(psi, "chiral", "standard")


# --------------------------------------------------------------------------
# helicity eigensystem


@dataclass(frozen=True)
class HelicityEigensystem:
    """Orthonormal circular basis about ``direction``: ``(tau.n) e_lam = lam e_lam``."""

    direction: np.ndarray
    e_plus: np.ndarray
    e_zero: np.ndarray
    e_minus: np.ndarray

    def vector(self, lam: int) -> np.ndarray:
        try:
            return {+1: self.e_plus, 0: self.e_zero, -1: self.e_minus}[lam]
        except KeyError:
            raise ValueError(f"helicity must be +1, 0 or -1, got {lam!r}") from None


def helicity_eigensystem(n) -> HelicityEigensystem:
    """Circular polarization basis about the unit vector ``n``.

    Convention: at the north pole ``e_+1 = (1, i, 0)/sqrt(2)``; at the south
    pole its complex conjugate.  Directions in each hemisphere inherit the
    nearer pole's vector through the rotation that carries that pole onto
    ``n`` about the axis ``pole x n``.  ``e_0 = n`` exactly and ``e_-1 =
    conj(e_+1)``, so eigen-residuals stay at rounding level (~1e-16) for all
    directions, including within 1e-8 of either pole.
    """
    n = np.asarray(n, dtype=float)
    if n.shape != (3,):
        raise DomainError(f"direction needs shape (3,), got {n.shape}")
    norm = float(np.linalg.norm(n))
    if abs(norm - 1.0) > 1e-12:
        raise DomainError(f"direction must be a unit vector, |n| = {norm!r}")

    north = n[2] >= 0.0
    pole = np.array([0.0, 0.0, 1.0 if north else -1.0])
    base = np.array([1.0, 1j if north else -1j, 0.0]) / _SQRT2

    axis = np.cross(pole, n)
    sin_t = float(np.linalg.norm(axis))
    cos_t = float(pole @ n)
    if sin_t < 1e-15:
        e_plus = base
    else:
        u = axis / sin_t
        K = np.array([[0.0, -u[2], u[1]],
                      [u[2], 0.0, -u[0]],
                      [-u[1], u[0], 0.0]])
        R = np.eye(3) + sin_t * K + (1.0 - cos_t) * (K @ K)
        e_plus = R @ base
    return HelicityEigensystem(direction=n, e_plus=e_plus,
                               e_zero=n.astype(complex), e_minus=np.conj(e_plus))


@dataclass(frozen=True)
class PolarizationCoefficients:
    """Projections ``c_lam = <e_lam, v>`` (first slot conjugated)."""

    c_plus: complex
    c_zero: complex
    c_minus: complex

    def reconstruct(self, basis: HelicityEigensystem) -> np.ndarray:
        return (self.c_plus * basis.e_plus + self.c_zero * basis.e_zero
                + self.c_minus * basis.e_minus)

    def circular_imbalance(self) -> float:
        """``|c_+1|^2 - |c_-1|^2``; the spin expectation along the axis."""
        return float(abs(self.c_plus) ** 2 - abs(self.c_minus) ** 2)


def decompose_polarization(vec, n) -> PolarizationCoefficients:
    """Decompose a complex 3-vector in the circular basis about ``n``.

    ``n`` may be a direction or a prebuilt :class:`HelicityEigensystem`.
    Individual coefficient phases depend on the basis phase convention; only
    ``|c_lam|`` and the imbalance ``|c_+1|^2 - |c_-1|^2`` are convention-free.
    """
    basis = n if isinstance(n, HelicityEigensystem) else helicity_eigensystem(n)
    vec = np.asarray(vec, dtype=complex)
    if vec.shape != (3,):
        raise ValueError(f"expected a 3-vector, got shape {vec.shape}")
    return PolarizationCoefficients(
        c_plus=complex(np.vdot(basis.e_plus, vec)),
        c_zero=complex(np.vdot(basis.e_zero, vec)),
        c_minus=complex(np.vdot(basis.e_minus, vec)),
    )


# --------------------------------------------------------------------------
# commutator table / algebra closure

_GENERATOR_LABELS = ("S01", "S02", "S03", "S12", "S13", "S23")


def _generator_basis(sms: SpinMatrixSet) -> dict[str, np.ndarray]:
    return {
        "S01": sms.S[0, 1], "S02": sms.S[0, 2], "S03": sms.S[0, 3],
        "S12": sms.S[1, 2], "S13": sms.S[1, 3], "S23": sms.S[2, 3],
    }


def commutator_table(sms: SpinMatrixSet | None = None,
                     snap_tolerance: float = 1e-12) -> dict:
    """Brute-force structure constants of the six independent generators.

    For every ordered pair computes ``[A, B]`` and expands it in the
    generator basis by least squares.  Expansion coefficients within
    ``snap_tolerance`` of a Gaussian integer are snapped to it (they all
    are: the algebra closes with coefficients in {0, +/-1, +/-i}).  Returns
    ``{"A,B": {label: [re, im], ...}, ...}`` with zero entries omitted,
    plus a ``"residual"`` key recording the worst expansion error.
    """
    sms = sms or build_spin_matrices()
    basis = _generator_basis(sms)
    stack = np.stack([basis[k].ravel() for k in _GENERATOR_LABELS], axis=1)

    table: dict = {}
    worst = 0.0
    for left in _GENERATOR_LABELS:
        for right in _GENERATOR_LABELS:
            if left == right:
                continue
            bracket = basis[left] @ basis[right] - basis[right] @ basis[left]
            coeff, *_ = np.linalg.lstsq(stack, bracket.ravel(), rcond=None)
            residual = float(np.max(np.abs(stack @ coeff - bracket.ravel())))
            worst = max(worst, residual)
            entry = {}
            for label, c in zip(_GENERATOR_LABELS, coeff):
                snapped = complex(round(c.real), round(c.imag))
                if abs(c - snapped) > snap_tolerance:
                    raise AssertionError(
                        f"[{left},{right}] coefficient {c!r} is not a Gaussian integer")
                if snapped != 0:
                    entry[label] = [snapped.real, snapped.imag]
            table[f"{left},{right}"] = entry
    table["residual"] = worst
    return table


def load_reference_commutator_table() -> dict:
    """The frozen structure-constant fixture shipped with the package."""
    text = resources.files("transpin").joinpath("data/commutator_table.json").read_text()
    return json.loads(text)


def generator_closure_rank(sms: SpinMatrixSet | None = None) -> int:
    """Rank of the vectorized generator set: 6 for a closed 6-dim algebra."""
    sms = sms or build_spin_matrices()
    basis = _generator_basis(sms)
    stack = np.stack([basis[k].ravel() for k in _GENERATOR_LABELS], axis=0)
    return int(np.linalg.matrix_rank(stack, tol=1e-10))
