"""Weierstrass elliptic functions on an arbitrary lattice.

The lattice is ``Gamma = span{2*omega1, 2*omega3}``.  Evaluation uses the
rapidly convergent nome expansions (Lambert series for zeta/wp/wp', theta
series for sigma) on an internally Gauss-reduced basis, after reducing the
argument into the parallelogram centered at 0 through the (quasi-)periodicity
laws.  Every function accepts scalars or numpy arrays and broadcasts.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .errors import InvalidLattice, PoleAtLatticePoint

__all__ = [
    "Lattice",
    "LatticeConstants",
    "reduce_to_fundamental",
    "lattice_coords",
    "lattice_distance",
    "wp",
    "wp_prime",
    "zeta_w",
    "sigma_w",
    "log_sigma",
    "quasi_period",
    "lattice_constants",
    "POLE_RADIUS_FACTOR",
]

# calls closer than POLE_RADIUS_FACTOR * |2*omega1| to a lattice point are rejected
POLE_RADIUS_FACTOR = 1e-8


@dataclass(frozen=True)
class Lattice:
    """Half-periods ``omega1``, ``omega3`` of the torus ``C / span{2w1, 2w3}``."""

    omega1: complex
    omega3: complex

    def __post_init__(self):
        w1 = complex(self.omega1)
        w3 = complex(self.omega3)
        object.__setattr__(self, "omega1", w1)
        object.__setattr__(self, "omega3", w3)
        if not (np.isfinite(w1) and np.isfinite(w3)):
            raise InvalidLattice("half-periods must be finite")
        if w1 == 0 or w3 == 0:
            raise InvalidLattice("half-periods must be non-zero")
        if (w3 / w1).imag <= 0:
            raise InvalidLattice(
                f"Im(omega3/omega1) must be positive, got {(w3 / w1).imag!r}"
            )

    @property
    def omega2(self) -> complex:
        return self.omega1 + self.omega3

    @property
    def half_periods(self) -> tuple[complex, complex, complex]:
        return (self.omega1, self.omega2, self.omega3)

    @property
    def generators(self) -> tuple[complex, complex]:
        """The two lattice generators ``2*omega1`` and ``2*omega3``."""
        return (2 * self.omega1, 2 * self.omega3)

    @property
    def tau(self) -> complex:
        return self.omega3 / self.omega1

    @property
    def pole_radius(self) -> float:
        return POLE_RADIUS_FACTOR * abs(2 * self.omega1)

    def scaled(self, factor) -> "Lattice":
        return Lattice(self.omega1 * factor, self.omega3 * factor)

    def point(self, m, n) -> complex:
        """Lattice vector ``2*m*omega1 + 2*n*omega3``."""
        return 2 * m * self.omega1 + 2 * n * self.omega3


@dataclass(frozen=True)
class LatticeConstants:
    e1: complex
    e2: complex
    e3: complex
    eta1: complex
    eta2: complex
    eta3: complex

    @property
    def e(self) -> tuple[complex, complex, complex]:
        return (self.e1, self.e2, self.e3)

    @property
    def eta(self) -> tuple[complex, complex, complex]:
        return (self.eta1, self.eta2, self.eta3)

    def legendre_residual(self, lat: Lattice) -> float:
        return abs(self.eta1 * lat.omega3 - self.eta3 * lat.omega1 - 0.5j * math.pi)

    def e_sum_residual(self) -> float:
        return abs(self.e1 + self.e2 + self.e3)

    def eta_sum_residual(self) -> float:
        return abs(self.eta2 - self.eta1 - self.eta3)


# ---------------------------------------------------------------------------
# internal per-lattice data


@dataclass(frozen=True)
class _Kernel:
    w1: complex
    w3: complex
    k: complex  # pi / (2 w1)
    eta_w1: complex
    eta_w3: complex
    n: np.ndarray  # 1..N
    lam: np.ndarray  # q^{2n} / (1 - q^{2n})
    theta_coef: np.ndarray  # (-1)^n q^{n(n+1)}, n = 0..N-1
    theta_odd: np.ndarray  # 2n+1
    log_theta_norm: complex  # log(k * S'(0))
    coords: np.ndarray  # inverse of [[Re w1, Re w3], [Im w1, Im w3]]
    user_coords: np.ndarray
    pole_radius: float


def _gauss_reduce(a: complex, b: complex) -> tuple[complex, complex]:
    """Reduce half-periods so that |b| >= |a| and |Re(b/a)| <= 1/2."""
    for _ in range(10_000):
        shift = round((b / a).real)
        b = b - shift * a
        if abs(b) < abs(a) * (1 - 1e-15):
            a, b = -b, a
            continue
        return a, b
    raise InvalidLattice("lattice reduction did not terminate")


def _coord_matrix(w1: complex, w3: complex) -> np.ndarray:
    m = np.array([[w1.real, w3.real], [w1.imag, w3.imag]])
    return np.linalg.inv(m)


@lru_cache(maxsize=256)
def _kernel(lat: Lattice) -> _Kernel:
    w1, w3 = _gauss_reduce(lat.omega1, lat.omega3)
    tau = w3 / w1
    q = np.exp(1j * math.pi * tau)
    aq = abs(q)
    # |q| <= exp(-pi*sqrt(3)/2) after reduction; terms decay at least like |q|^n
    nterms = max(8, int(math.ceil(math.log(1e-20) / math.log(aq))) + 2)
    n = np.arange(1, nterms + 1)
    q2n = q ** (2 * n)
    lam = q2n / (1 - q2n)
    k = math.pi / (2 * w1)
    eta_w1 = (math.pi**2 / (12 * w1)) * (1 - 24 * np.sum(n * lam))
    eta_w3 = (eta_w1 * w3 - 0.5j * math.pi) / w1
    m = np.arange(nterms)
    theta_coef = (-1.0) ** m * q ** (m * (m + 1))
    theta_odd = 2 * m + 1
    s_prime0 = np.sum(theta_coef * theta_odd)
    return _Kernel(
        w1=complex(w1),
        w3=complex(w3),
        k=complex(k),
        eta_w1=complex(eta_w1),
        eta_w3=complex(eta_w3),
        n=n,
        lam=lam,
        theta_coef=theta_coef,
        theta_odd=theta_odd,
        log_theta_norm=complex(np.log(k * s_prime0)),
        coords=_coord_matrix(w1, w3),
        user_coords=_coord_matrix(lat.omega1, lat.omega3),
        pole_radius=lat.pole_radius,
    )


def _real_coords(x: np.ndarray, inv: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    s = inv[0, 0] * x.real + inv[0, 1] * x.imag
    t = inv[1, 0] * x.real + inv[1, 1] * x.imag
    return s, t


def _reduce(x: np.ndarray, ker: _Kernel):
    s, t = _real_coords(x, ker.coords)
    m = np.floor(s / 2 + 0.5)
    n = np.floor(t / 2 + 0.5)
    x0 = x - 2 * m * ker.w1 - 2 * n * ker.w3
    return x0, m, n


def _dist_to_lattice(x0: np.ndarray, ker: _Kernel) -> np.ndarray:
    d = np.abs(x0)
    for i in (-1, 0, 1):
        for j in (-1, 0, 1):
            if i or j:
                d = np.minimum(d, np.abs(x0 - 2 * i * ker.w1 - 2 * j * ker.w3))
    return d


def _check_poles(x0: np.ndarray, ker: _Kernel) -> None:
    if np.any(_dist_to_lattice(x0, ker) < ker.pole_radius):
        raise PoleAtLatticePoint("argument lies on (or within the pole radius of) the lattice")


def _prepare(x, lat: Lattice, poles: bool = True):
    ker = _kernel(lat)
    xa = np.asarray(x, dtype=complex)
    if not np.all(np.isfinite(xa)):
        raise ValueError("argument must be finite")
    x0, m, n = _reduce(xa, ker)
    if poles:
        _check_poles(x0, ker)
    return ker, xa, x0, m, n


def _out(value, like):
    if np.ndim(like) == 0:
        return complex(value)
    return value


def _trig_sums(v: np.ndarray, ker: _Kernel):
    """Lambert-series parts: sum lam_n sin(2nv), sum n lam_n cos(2nv), sum n^2 lam_n sin(2nv)."""
    arg = 2 * v[..., None] * ker.n
    s = np.sin(arg)
    c = np.cos(arg)
    return (
        np.sum(ker.lam * s, axis=-1),
        np.sum(ker.n * ker.lam * c, axis=-1),
        np.sum(ker.n**2 * ker.lam * s, axis=-1),
    )


# ---------------------------------------------------------------------------
# public API


def lattice_coords(x, lat: Lattice) -> tuple[np.ndarray, np.ndarray]:
    """Real coordinates (s, t) with ``x = s*omega1 + t*omega3``."""
    xa = np.asarray(x, dtype=complex)
    return _real_coords(xa, _kernel(lat).user_coords)


def reduce_to_fundamental(x, lat: Lattice):
    """Split ``x = x0 + 2m*omega1 + 2n*omega3`` with x0 in the centered parallelogram.

    The parallelogram has corners ``±omega1 ± omega3``; m and n are integers.
    """
    xa = np.asarray(x, dtype=complex)
    if not np.all(np.isfinite(xa)):
        raise ValueError("argument must be finite")
    s, t = _real_coords(xa, _kernel(lat).user_coords)
    m = np.floor(s / 2 + 0.5)
    n = np.floor(t / 2 + 0.5)
    x0 = xa - 2 * m * lat.omega1 - 2 * n * lat.omega3
    if xa.ndim == 0:
        return complex(x0), int(m), int(n)
    return x0, m.astype(int), n.astype(int)


def lattice_distance(x, lat: Lattice):
    """Distance from x to the nearest lattice point."""
    ker = _kernel(lat)
    x0, _, _ = _reduce(np.asarray(x, dtype=complex), ker)
    d = _dist_to_lattice(x0, ker)
    return float(d) if np.ndim(d) == 0 else d


def quasi_period(m, n, lat: Lattice) -> complex:
    """``zeta(x + 2m*omega1 + 2n*omega3) - zeta(x)``."""
    c = lattice_constants(lat)
    return 2 * m * c.eta1 + 2 * n * c.eta3


def zeta_w(x, lat: Lattice):
    ker, xa, x0, m, n = _prepare(x, lat)
    v = ker.k * x0
    ssum, _, _ = _trig_sums(v, ker)
    z0 = ker.eta_w1 * x0 / ker.w1 + ker.k * (1 / np.tan(v) + 4 * ssum)
    return _out(z0 + 2 * m * ker.eta_w1 + 2 * n * ker.eta_w3, x)


def wp(x, lat: Lattice):
    ker, xa, x0, _, _ = _prepare(x, lat)
    v = ker.k * x0
    _, csum, _ = _trig_sums(v, ker)
    csc = 1 / np.sin(v)
    val = -ker.eta_w1 / ker.w1 + ker.k**2 * (csc * csc - 8 * csum)
    return _out(val, x)


def wp_prime(x, lat: Lattice):
    ker, xa, x0, _, _ = _prepare(x, lat)
    v = ker.k * x0
    _, _, s2sum = _trig_sums(v, ker)
    csc = 1 / np.sin(v)
    cot = 1 / np.tan(v)
    val = ker.k**3 * (-2 * cot * csc * csc + 16 * s2sum)
    return _out(val, x)


def log_sigma(x, lat: Lattice):
    """A logarithm of sigma(x) (branch unspecified; ``exp`` of it is sigma).

    Lattice points give ``-inf`` real part.  Working with logs keeps products
    and quotients of sigma values finite far from the origin.
    """
    ker = _kernel(lat)
    xa = np.asarray(x, dtype=complex)
    if not np.all(np.isfinite(xa)):
        raise ValueError("argument must be finite")
    x0, m, n = _reduce(xa, ker)
    v = ker.k * x0
    s = np.sum(ker.theta_coef * np.sin(v[..., None] * ker.theta_odd), axis=-1)
    with np.errstate(divide="ignore"):
        ls0 = np.log(s) - ker.log_theta_norm + ker.eta_w1 * x0 * x0 / (2 * ker.w1)
    w = 2 * m * ker.w1 + 2 * n * ker.w3
    eta_w = 2 * m * ker.eta_w1 + 2 * n * ker.eta_w3
    parity = np.mod(m + n + m * n, 2)
    val = ls0 + eta_w * (x0 + w / 2) + 1j * math.pi * parity
    return _out(val, x)


def sigma_w(x, lat: Lattice):
    ls = log_sigma(x, lat)
    return _out(np.exp(ls), x)


@lru_cache(maxsize=256)
def lattice_constants(lat: Lattice) -> LatticeConstants:
    """e_j = wp(omega_j) and eta_j = zeta(omega_j) for j = 1, 2, 3."""
    ker = _kernel(lat)
    # express the user half-periods in the reduced basis: omega = a*w1 + b*w3
    a1, b1 = _real_coords(np.asarray(lat.omega1), ker.coords)
    a3, b3 = _real_coords(np.asarray(lat.omega3), ker.coords)
    a1, b1, a3, b3 = (int(round(float(v))) for v in (a1, b1, a3, b3))
    eta1 = a1 * ker.eta_w1 + b1 * ker.eta_w3
    eta3 = a3 * ker.eta_w1 + b3 * ker.eta_w3
    e1, e2, e3 = (complex(wp(w, lat)) for w in lat.half_periods)
    return LatticeConstants(
        e1=e1, e2=e2, e3=e3, eta1=complex(eta1), eta2=complex(eta1 + eta3), eta3=complex(eta3)
    )
