"""Baker-Akhiezer functions of the 1-gap Lame operator and multiplier bases.

    Phi_alpha(x) = sigma(alpha - x) / (sigma(alpha) sigma(x)) * exp(zeta(alpha) x)

solves ``Phi'' - 2 wp(x) Phi = wp(alpha) Phi`` and picks up the factor
``exp(2(zeta(alpha) omega_j - alpha eta_j))`` under ``x -> x + 2 omega_j``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .elliptic import (
    Lattice,
    lattice_constants,
    lattice_distance,
    log_sigma,
    wp,
    wp_prime,
    zeta_w,
)
from .errors import (
    DegenerateAlpha,
    InconsistentPeriods,
    PoleAtLatticePoint,
    TrivialMultiplier,
)
from .tolerances import TOL


@dataclass(frozen=True)
class BakerSpec:
    alpha: complex
    lat: Lattice

    def __post_init__(self):
        object.__setattr__(self, "alpha", complex(self.alpha))
        if lattice_distance(self.alpha, self.lat) < self.lat.pole_radius:
            raise PoleAtLatticePoint("alpha must not be a lattice point")

    @property
    def energy(self) -> complex:
        return wp(self.alpha, self.lat)


@dataclass(frozen=True)
class Multiplier:
    """Values of a homomorphism ``Gamma -> C*`` on two generators.

    ``h1``/``h3`` may be numpy arrays (a batch of multipliers sharing the
    same generators).
    """

    h1: complex
    h3: complex
    generators: tuple = field(default=(None, None), compare=False)

    def __post_init__(self):
        if np.any(np.asarray(self.h1) == 0) or np.any(np.asarray(self.h3) == 0):
            raise ValueError("multiplier values must be non-zero")

    def inverse(self) -> "Multiplier":
        return Multiplier(1 / self.h1, 1 / self.h3, self.generators)

    def conj(self) -> "Multiplier":
        return Multiplier(np.conj(self.h1), np.conj(self.h3), self.generators)

    def __mul__(self, other: "Multiplier") -> "Multiplier":
        return Multiplier(self.h1 * other.h1, self.h3 * other.h3, self.generators)

    def scaled_log(self, eps1, eps3) -> "Multiplier":
        """``h * exp(eps)`` componentwise."""
        return Multiplier(self.h1 * np.exp(eps1), self.h3 * np.exp(eps3), self.generators)

    def is_trivial(self, tol: float = TOL.trivial_multiplier) -> bool:
        return bool(np.all(np.abs(np.asarray(self.h1) - 1) < tol)
                    and np.all(np.abs(np.asarray(self.h3) - 1) < tol))

    def values(self) -> tuple:
        return (self.h1, self.h3)


def _check_pole(x, lat: Lattice) -> None:
    if np.any(np.asarray(lattice_distance(x, lat)) < lat.pole_radius):
        raise PoleAtLatticePoint("Phi_alpha has a pole on the lattice")


def baker_eval(spec: BakerSpec, x):
    _check_pole(x, spec.lat)
    a, lat = spec.alpha, spec.lat
    xa = np.asarray(x, dtype=complex)
    val = np.exp(
        log_sigma(a - xa, lat) - log_sigma(a, lat) - log_sigma(xa, lat) + zeta_w(a, lat) * xa
    )
    return complex(val) if xa.ndim == 0 else val


def baker_derivative(spec: BakerSpec, x):
    """Phi'(x) = Phi(x) (zeta(alpha) - zeta(alpha - x) - zeta(x)); x must avoid alpha + Gamma."""
    a, lat = spec.alpha, spec.lat
    xa = np.asarray(x, dtype=complex)
    val = baker_eval(spec, xa) * (zeta_w(a, lat) - zeta_w(a - xa, lat) - zeta_w(xa, lat))
    return complex(val) if xa.ndim == 0 else val


def baker_monodromy(spec: BakerSpec) -> Multiplier:
    lat, a = spec.lat, spec.alpha
    c = lattice_constants(lat)
    z = zeta_w(a, lat)
    h1 = np.exp(2 * (z * lat.omega1 - a * c.eta1))
    h3 = np.exp(2 * (z * lat.omega3 - a * c.eta3))
    return Multiplier(complex(h1), complex(h3), lat.generators)


def baker_laurent(spec: BakerSpec) -> tuple[complex, complex, complex, complex]:
    """Coefficients of x^-1, x^0, x^1, x^2 in the expansion of Phi_alpha at 0."""
    return (
        1.0 + 0j,
        0j,
        -wp(spec.alpha, spec.lat) / 2,
        wp_prime(spec.alpha, spec.lat) / 6,
    )


def hill_residual(spec: BakerSpec, x, step: float = TOL.hill_step):
    """Relative residual of ``Phi'' - 2 wp Phi - wp(alpha) Phi`` with a 4th-order stencil."""
    xa = np.asarray(x, dtype=complex)
    lat = spec.lat
    if np.any(np.asarray(lattice_distance(xa, lat)) < 2 * step + lat.pole_radius):
        raise PoleAtLatticePoint("stencil reaches a pole of Phi")
    f = [baker_eval(spec, xa + j * step) for j in (-2, -1, 0, 1, 2)]
    d2 = (-f[0] + 16 * f[1] - 30 * f[2] + 16 * f[3] - f[4]) / (12 * step**2)
    res = np.abs(d2 - 2 * wp(xa, lat) * f[2] - spec.energy * f[2]) / np.abs(f[2])
    return float(res) if xa.ndim == 0 else res


# ---------------------------------------------------------------------------
# function spaces with prescribed multiplier and simple poles


@dataclass(frozen=True)
class ShiftedBaker:
    """``sigma(alpha - y) / (sigma(alpha) sigma(y)) * exp(c y)`` with ``y = x - end``.

    Residue 1 at ``end``; multiplier ``exp(2 c omega_j - 2 eta_j alpha)``.
    """

    lat: Lattice
    end: complex
    alpha: complex
    c: complex

    def __call__(self, x):
        y = np.asarray(x, dtype=complex) - self.end
        _check_pole(y, self.lat)
        val = np.exp(
            log_sigma(self.alpha - y, self.lat)
            - log_sigma(self.alpha, self.lat)
            - log_sigma(y, self.lat)
            + self.c * y
        )
        return complex(val) if y.ndim == 0 else val

    def order_zero(self) -> complex:
        """Constant Laurent coefficient at its own pole."""
        return self.c - zeta_w(self.alpha, self.lat)

    def multiplier(self) -> Multiplier:
        k = lattice_constants(self.lat)
        lat = self.lat
        return Multiplier(
            complex(np.exp(2 * self.c * lat.omega1 - 2 * k.eta1 * self.alpha)),
            complex(np.exp(2 * self.c * lat.omega3 - 2 * k.eta3 * self.alpha)),
            lat.generators,
        )


@dataclass(frozen=True)
class ZetaDifference:
    """``zeta(x - p) - zeta(x - q)``, or the constant 1 when ``p`` is None."""

    lat: Lattice
    p: complex | None
    q: complex | None

    def __call__(self, x):
        xa = np.asarray(x, dtype=complex)
        if self.p is None:
            val = np.ones_like(xa)
        else:
            val = zeta_w(xa - self.p, self.lat) - zeta_w(xa - self.q, self.lat)
        return complex(val) if xa.ndim == 0 else val

    def residue_at(self, point: complex) -> float:
        if self.p is None:
            return 0.0
        if lattice_distance(point - self.p, self.lat) < self.lat.pole_radius:
            return 1.0
        if lattice_distance(point - self.q, self.lat) < self.lat.pole_radius:
            return -1.0
        return 0.0

    def order_zero_at(self, point: complex) -> complex:
        """Constant Laurent coefficient at ``point`` (value if regular there)."""
        if self.p is None:
            return 1.0 + 0j
        lat = self.lat
        val = 0j
        for shift, sign in ((self.p, 1), (self.q, -1)):
            # zeta(y) = 1/y + O(y^3): the singular term contributes no constant
            if lattice_distance(point - shift, lat) >= lat.pole_radius:
                val += sign * zeta_w(point - shift, lat)
            else:
                # point = shift + lattice vector W; zeta(x - shift) = zeta(x - point) + eta(W)
                val += sign * (zeta_w(point - shift + lat.omega1, lat)
                               - zeta_w(lat.omega1, lat))
        return complex(val)


def solve_shift(h1, h3, lat: Lattice):
    """Solve ``2c omega_j - 2 eta_j alpha = Log h_j`` (j = 1, 3) for (c, alpha).

    Principal logarithms; the system determinant is ``2 pi i`` by Legendre.
    Vectorised over h1, h3.
    """
    k = lattice_constants(lat)
    l1 = np.log(np.asarray(h1, dtype=complex))
    l3 = np.log(np.asarray(h3, dtype=complex))
    det = 4 * (k.eta1 * lat.omega3 - k.eta3 * lat.omega1)  # = 2 pi i
    c = (-2 * k.eta3 * l1 + 2 * k.eta1 * l3) / det
    alpha = (2 * lat.omega1 * l3 - 2 * lat.omega3 * l1) / det
    return c, alpha


def _check_ends(ends: Sequence[complex], lat: Lattice) -> list[complex]:
    pts = [complex(p) for p in ends]
    for i in range(len(pts)):
        for j in range(i):
            if lattice_distance(pts[i] - pts[j], lat) < lat.pole_radius:
                raise ValueError("ends must be distinct modulo the lattice")
    return pts


def multiplier_basis(h: Multiplier, ends: Sequence[complex], lat: Lattice) -> list[ShiftedBaker]:
    """One function per end: multiplier ``h``, a single simple pole (residue 1) at that end."""
    if h.is_trivial():
        raise TrivialMultiplier("trivial multiplier: use zeta_difference_basis")
    pts = _check_ends(ends, lat)
    c, alpha = solve_shift(h.h1, h.h3, lat)
    c, alpha = complex(c), complex(alpha)
    if lattice_distance(alpha, lat) < TOL.degenerate_alpha_factor * abs(2 * lat.omega1):
        raise DegenerateAlpha(f"solved alpha={alpha} lies on the lattice; perturb the multiplier")
    return [ShiftedBaker(lat, p, alpha, c) for p in pts]


def zeta_difference_basis(ends: Sequence[complex], lat: Lattice) -> list[ZetaDifference]:
    """Elliptic functions with at most simple poles at the ends.

    ``{zeta(x - p_i) - zeta(x - p_n)}_{i<n}`` together with the constant 1.
    """
    pts = _check_ends(ends, lat)
    if len(pts) < 2:
        raise ValueError("need at least two ends")
    last = pts[-1]
    basis = [ZetaDifference(lat, p, last) for p in pts[:-1]]
    basis.append(ZetaDifference(lat, None, None))
    return basis


def fix_additive_monodromy(a_gamma: Sequence[complex], h: Multiplier) -> complex:
    """Constant b with ``a_gamma + b (1 - h_gamma) = 0`` on both generators.

    ``a_gamma = f(z + gamma) - f(z) h_gamma`` is the additive defect of an
    antiderivative f; ``f + b`` then has pure multiplicative monodromy h.
    """
    a1, a3 = (complex(a) for a in a_gamma)
    h1, h3 = complex(h.h1), complex(h.h3)
    if abs(h1 - 1) < TOL.trivial_multiplier and abs(h3 - 1) < TOL.trivial_multiplier:
        raise TrivialMultiplier("additive monodromy cannot be removed for h = 1")
    scale = max(1.0, abs(a1), abs(a3)) * max(1.0, abs(h1), abs(h3))
    if abs(a1 * (h3 - 1) - a3 * (h1 - 1)) > TOL.additive_consistency * scale:
        raise InconsistentPeriods("a_1 (h_3 - 1) != a_3 (h_1 - 1)")
    if abs(h1 - 1) >= abs(h3 - 1):
        return a1 / (h1 - 1)
    return a3 / (h3 - 1)


def z2_sign(value: complex) -> int:
    """Nearest element of {+1, -1}."""
    return 1 if complex(value).real >= 0 else -1


def log_multiplier_derivative(alpha, lat: Lattice, scale: float = 2.0):
    """d/dalpha of ``scale*(zeta(alpha) omega_j - alpha eta_j)`` for j = 1, 3."""
    k = lattice_constants(lat)
    p = wp(alpha, lat)
    return (-scale * (p * lat.omega1 + k.eta1), -scale * (p * lat.omega3 + k.eta3))


__all__ = [
    "BakerSpec",
    "Multiplier",
    "ShiftedBaker",
    "ZetaDifference",
    "baker_eval",
    "baker_derivative",
    "baker_monodromy",
    "baker_laurent",
    "hill_residual",
    "multiplier_basis",
    "zeta_difference_basis",
    "fix_additive_monodromy",
    "solve_shift",
    "z2_sign",
    "log_multiplier_derivative",
]
