"""Minimal tori with planar ends from products of Lame Baker functions.

The spinors are linear combinations of Baker functions at half-periods.
Every product of two of them is a constant plus a combination of translated
``wp`` functions on the surface lattice, so the Weierstrass data integrate in
closed form to ``lambda*x - sum mu_q zeta(x - q) + kappa``.

four_end: ``s1 = Phi1 + a Phi2 + b Phi3``, ``s2 = c Phi2 + d Phi3`` with
``Phi_k`` the Baker function of ``Gamma`` at ``alpha = w_k``, living on
``Gamma~ = span{4w1, 4w3}`` with ends ``{0, 2w1, 2w2, 2w3}``.

two_end: ``s1 = Phi1 + Phi2``, ``s2 = a (Phi1 - Phi2)`` with Baker functions
of ``Gamma' = span{w2, 2w3}`` at ``w2/2`` and ``w2/2 + w3``, living on
``Gamma`` with ends ``{0, w2}``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np
from scipy.optimize import minimize

from .baker import BakerSpec, Multiplier, baker_eval
from .contour import laurent_coefficient
from .elliptic import (
    Lattice,
    lattice_constants,
    lattice_coords,
    lattice_distance,
    quasi_period,
    wp,
    wp_prime,
    zeta_w,
)
from .errors import DegenerateLattice, NoConvergence, PoleAtEnd
from .spectral import FOUR_END, TWO_END, surface_lattice
from .tolerances import TOL

# Sign of wp~(x - 2w_j), j = 1, 2, 3, in Phi_k Phi_l (k != l).  Resolved once by
# sampling (see resolve_sign_patterns) and fixed here.
SIGN_PATTERNS = {
    (1, 2): (-1, -1, +1),
    (1, 3): (-1, +1, -1),
    (2, 3): (+1, -1, -1),
}


# ---------------------------------------------------------------------------
# family data


@dataclass(frozen=True)
class _Family:
    name: str
    surface: Lattice
    bases: tuple  # BakerSpec per Phi_k
    shifts: tuple  # translates q of wp(x - q); these are the ends
    table: dict  # (k, l) with k <= l (0-based) -> (constant, coefficient per shift)


@lru_cache(maxsize=64)
def _family(name: str, lat: Lattice) -> _Family:
    surf = surface_lattice(name, lat)
    if name == FOUR_END:
        k = lattice_constants(lat)
        bases = tuple(BakerSpec(w, lat) for w in lat.half_periods)
        shifts = (0j, 2 * lat.omega1, 2 * lat.omega2, 2 * lat.omega3)
        table = {}
        for i in range(3):
            table[(i, i)] = (-k.e[i], (1.0, 1.0, 1.0, 1.0))
        for (p, q), signs in SIGN_PATTERNS.items():
            table[(p - 1, q - 1)] = (0j, (1.0,) + tuple(float(s) for s in signs))
    elif name == TWO_END:
        lp = Lattice(lat.omega2 / 2, lat.omega3)
        bases = (BakerSpec(lp.omega1, lp), BakerSpec(lp.omega2, lp))
        shifts = (0j, lat.omega2)
        b1, b2 = two_end_constants(lat)
        table = {
            (0, 0): (-b1, (1.0, 1.0)),
            (1, 1): (-b2, (1.0, 1.0)),
            (0, 1): (0j, (1.0, -1.0)),
        }
    else:
        raise ValueError(f"unknown family {name!r}")
    return _Family(name, surf, bases, shifts, table)


def two_end_constants(lat: Lattice) -> tuple[complex, complex]:
    """``b1 = 2 wp(w2/2)``, ``b2 = 2 wp(w2/2 + w3)`` (wp of Gamma)."""
    return (complex(2 * wp(lat.omega2 / 2, lat)),
            complex(2 * wp(lat.omega2 / 2 + lat.omega3, lat)))


def _quad(fam: _Family, u, v):
    """``sum_{k,l} u_k v_l Phi_k Phi_l`` as (constant, coefficient per shift)."""
    n = len(fam.bases)
    const = 0j
    coefs = np.zeros(len(fam.shifts), dtype=complex)
    for i in range(n):
        for j in range(n):
            w = u[i] * v[j]
            if w == 0:
                continue
            cst, cf = fam.table[(min(i, j), max(i, j))]
            const += w * cst
            coefs += w * np.asarray(cf)
    return const, coefs


# ---------------------------------------------------------------------------
# configurations


@dataclass(frozen=True)
class SpinorConfig:
    family: str
    lat: Lattice
    coefficients: tuple
    period_index: tuple | None = None

    def __post_init__(self):
        coeffs = tuple(complex(c) for c in self.coefficients)
        object.__setattr__(self, "coefficients", coeffs)
        if self.family == FOUR_END:
            if len(coeffs) != 4:
                raise ValueError("four_end needs coefficients (a, b, c, d)")
        elif self.family == TWO_END:
            if len(coeffs) != 1:
                raise ValueError("two_end needs the single coefficient a")
            if self.period_index is not None:
                m, n = self.period_index
                object.__setattr__(self, "period_index", (int(m), int(n)))
        else:
            raise ValueError(f"unknown family {self.family!r}")

    @classmethod
    def four_end(cls, lat: Lattice, a=0, b=0, c=0, d=0) -> "SpinorConfig":
        return cls(FOUR_END, lat, (a, b, c, d))

    @classmethod
    def two_end(cls, lat: Lattice, a, m: int = 1, n: int = 0) -> "SpinorConfig":
        return cls(TWO_END, lat, (a,), (m, n))

    @property
    def surface_lat(self) -> Lattice:
        return surface_lattice(self.family, self.lat)

    @property
    def ends(self) -> tuple:
        return _family(self.family, self.lat).shifts

    @property
    def spin(self) -> Multiplier:
        """Common Z2 monodromy of s1, s2 on the surface generators."""
        gens = self.surface_lat.generators
        if self.family == FOUR_END:
            return Multiplier(1.0 + 0j, 1.0 + 0j, gens)
        return Multiplier(-1.0 + 0j, -1.0 + 0j, gens)

    def spinor_coefficients(self) -> tuple[np.ndarray, np.ndarray]:
        if self.family == FOUR_END:
            a, b, c, d = self.coefficients
            return np.array([1, a, b]), np.array([0, c, d])
        (a,) = self.coefficients
        return np.array([1, 1], dtype=complex), np.array([a, -a])

    def echo(self) -> dict:
        out = {
            "family": self.family,
            "omega1": self.lat.omega1,
            "omega3": self.lat.omega3,
        }
        names = "abcd" if self.family == FOUR_END else "a"
        for name, val in zip(names, self.coefficients):
            out[name] = val
        if self.period_index is not None:
            out["m"], out["n"] = self.period_index
        return out


def _check_not_end(x, shifts, surf: Lattice) -> None:
    for q in shifts:
        if np.any(np.asarray(lattice_distance(np.asarray(x) - q, surf)) < surf.pole_radius):
            raise PoleAtEnd("evaluation point is an end")


def basis_eval(cfg: SpinorConfig, x):
    """Values of Phi_1..Phi_n at x (stacked along axis 0)."""
    fam = _family(cfg.family, cfg.lat)
    _check_not_end(x, fam.shifts, fam.surface)
    return np.stack([np.asarray(baker_eval(s, x)) for s in fam.bases])


def spinor_eval(cfg: SpinorConfig, x):
    """(s1, s2) at x."""
    phi = basis_eval(cfg, x)
    u, v = cfg.spinor_coefficients()
    s1 = np.tensordot(u, phi, axes=1)
    s2 = np.tensordot(v, phi, axes=1)
    if np.ndim(x) == 0:
        return complex(s1), complex(s2)
    return s1, s2


# ---------------------------------------------------------------------------
# identities


def _identity_rhs(fam: _Family, i: int, j: int, x):
    cst, cf = fam.table[(min(i, j), max(i, j))]
    out = cst + 0 * np.asarray(x, dtype=complex)
    for q, c in zip(fam.shifts, cf):
        out = out + c * wp(np.asarray(x) - q, fam.surface)
    return out


def product_identity_residual(lat: Lattice, k: int, l: int, x, family: str = FOUR_END):
    """Relative residual of the closed form of ``Phi_k Phi_l`` (1-based indices)."""
    fam = _family(family, lat)
    _check_not_end(x, fam.shifts, fam.surface)
    lhs = np.asarray(baker_eval(fam.bases[k - 1], x)) * np.asarray(baker_eval(fam.bases[l - 1], x))
    rhs = _identity_rhs(fam, k - 1, l - 1, x)
    res = np.abs(lhs - rhs) / np.abs(lhs)
    return float(res) if np.ndim(x) == 0 else res


def resolve_sign_patterns(lat: Lattice, points=None, tol: float = 1e-8) -> dict:
    """Determine the sign pattern of every ``Phi_k Phi_l`` (k < l) by sampling.

    Tries all patterns with two minus signs and keeps the one whose residual
    is below ``tol`` at every sample point.
    """
    surf = lat.scaled(2)
    if points is None:
        points = np.array([0.37 + 0.21j, -0.52 + 0.44j, 0.13 - 0.61j]) * abs(lat.omega1)
    bases = [BakerSpec(w, lat) for w in lat.half_periods]
    candidates = [(-1, -1, 1), (-1, 1, -1), (1, -1, -1)]
    out = {}
    for k, l in ((1, 2), (1, 3), (2, 3)):
        lhs = np.asarray(baker_eval(bases[k - 1], points)) * np.asarray(baker_eval(bases[l - 1], points))
        found = []
        for signs in candidates:
            rhs = wp(points, surf)
            for s, q in zip(signs, (2 * lat.omega1, 2 * lat.omega2, 2 * lat.omega3)):
                rhs = rhs + s * wp(points - q, surf)
            if np.all(np.abs(lhs - rhs) < tol * np.abs(lhs)):
                found.append(signs)
        if len(found) != 1:
            raise ValueError(f"sign pattern for Phi_{k} Phi_{l} is not unique: {found}")
        out[(k, l)] = found[0]
    return out


def period_integral_closed(lat: Lattice, k: int, l: int) -> complex:
    """``integral of Phi_k^2`` over the surface period ``4 w_l``: ``-4(eta_l + e_k w_l)``."""
    c = lattice_constants(lat)
    w = {1: lat.omega1, 2: lat.omega2, 3: lat.omega3}[l]
    return -4 * (c.eta[l - 1] + c.e[k - 1] * w)


def _surface_coords(gamma: complex, surf: Lattice) -> tuple[int, int]:
    s, t = lattice_coords(gamma, surf)
    m, n = float(s) / 2, float(t) / 2
    if abs(m - round(m)) > 1e-9 or abs(n - round(n)) > 1e-9:
        raise ValueError(f"{gamma} is not a surface lattice vector")
    return int(round(m)), int(round(n))


def _integral(fam: _Family, quad, gamma: complex) -> complex:
    """Integral of a quadratic expression over the period gamma (closed form)."""
    const, coefs = quad
    m, n = _surface_coords(gamma, fam.surface)
    eta = quasi_period(m, n, fam.surface)
    return complex(const * gamma - np.sum(coefs) * eta)


def spinor_period_integrals(cfg: SpinorConfig, gamma: complex) -> tuple[complex, complex, complex]:
    """Integrals of (s1 s2, s1^2, s2^2) over the period gamma."""
    fam = _family(cfg.family, cfg.lat)
    u, v = cfg.spinor_coefficients()
    return (_integral(fam, _quad(fam, u, v), gamma),
            _integral(fam, _quad(fam, u, u), gamma),
            _integral(fam, _quad(fam, v, v), gamma))


def closedness_residual(cfg: SpinorConfig, generator: complex) -> tuple[float, float]:
    """``r1 = |Re int s1 s2|``, ``r2 = |int s1^2 - conj(int s2^2)|`` over ``generator``."""
    i12, i11, i22 = spinor_period_integrals(cfg, generator)
    return abs(i12.real), abs(i11 - i22.conjugate())


def period_vector(cfg: SpinorConfig, generator: complex) -> np.ndarray:
    """Translation of the immersion over ``generator``."""
    i12, i11, i22 = spinor_period_integrals(cfg, generator)
    return np.array([(2 * i12).real, (i11 - i22).real, (1j * (i11 + i22)).real])


# ---------------------------------------------------------------------------
# period problem


def special_system_matrix(lat: Lattice) -> np.ndarray:
    """Rows l = 1, 3: ``[eta_l + e2 w_l, eta_l + e3 w_l]``."""
    k = lattice_constants(lat)
    return np.array([
        [k.eta1 + k.e2 * lat.omega1, k.eta1 + k.e3 * lat.omega1],
        [k.eta3 + k.e2 * lat.omega3, k.eta3 + k.e3 * lat.omega3],
    ])


def solve_special_four_end(lat: Lattice) -> tuple[complex, complex]:
    """(c, d) closing the four-end surface with a = b = 0 (principal roots)."""
    k = lattice_constants(lat)
    if abs(k.e3 - k.e2) < TOL.degenerate_lattice:
        raise DegenerateLattice("e3 == e2: the special system is singular")
    M = special_system_matrix(lat)
    rhs = np.conj([k.eta1 + k.e1 * lat.omega1, k.eta3 + k.e1 * lat.omega3])
    c2, d2 = np.linalg.solve(M, rhs)
    return complex(np.sqrt(c2)), complex(np.sqrt(d2))


def _closing_equations(cfg: SpinorConfig) -> np.ndarray:
    out = []
    for g in cfg.surface_lat.generators:
        i12, i11, i22 = spinor_period_integrals(cfg, g)
        r = i11 - i22.conjugate()
        out += [i12.real, r.real, r.imag]
    return np.array(out)


@dataclass
class SolveReport:
    c: complex
    d: complex
    b: complex
    residual: float
    iterations: int
    history: list = field(default_factory=list)


def solve_general_four_end(lat: Lattice, a, b, guess=None, solve_b: bool = False,
                           tol: float = TOL.closedness,
                           max_iter: int = TOL.newton_iterations) -> SolveReport:
    """Gauss-Newton on the six real closing equations for fixed (a, b).

    Unknowns are (Re c, Im c, Re d, Im d); with ``solve_b`` also (Re b, Im b),
    ``b`` then serving as the starting value.  Steps are least-squares
    solutions of the linearised system; a step that increases the residual is
    halved (up to 30 times).  The equations are quadratic, so central
    differences give the Jacobian exactly up to roundoff.
    """
    a = complex(a)
    if guess is None:
        guess = solve_special_four_end(lat)
    p = np.array([guess[0].real, guess[0].imag, guess[1].real, guess[1].imag], dtype=float)
    if solve_b:
        p = np.concatenate([p, [complex(b).real, complex(b).imag]])

    def unpack(p):
        c = complex(p[0], p[1])
        d = complex(p[2], p[3])
        bb = complex(p[4], p[5]) if solve_b else complex(b)
        return c, d, bb

    def F(p):
        c, d, bb = unpack(p)
        return _closing_equations(SpinorConfig.four_end(lat, a, bb, c, d))

    r = F(p)
    res = float(np.max(np.abs(r)))
    history = [res]
    it = 0
    while res >= tol and it < max_iter:
        it += 1
        J = np.empty((r.size, p.size))
        for j in range(p.size):
            hstep = 1e-6 * max(1.0, abs(p[j]))
            e = np.zeros_like(p)
            e[j] = hstep
            J[:, j] = (F(p + e) - F(p - e)) / (2 * hstep)
        step = np.linalg.lstsq(J, -r, rcond=None)[0]
        t = 1.0
        for _ in range(30):
            trial = p + t * step
            r_trial = F(trial)
            res_trial = float(np.max(np.abs(r_trial)))
            if res_trial < res:
                break
            t *= TOL.newton_damping
        else:
            break
        p, r, res = trial, r_trial, res_trial
        history.append(res)
    c, d, bb = unpack(p)
    report = SolveReport(c, d, bb, res, it, history)
    if res >= tol:
        raise NoConvergence(
            f"closing equations not solved: residual {res:.3e} after {it} iterations",
            best=report, residual=res, iterations=it,
        )
    return report


def solve_two_end(lat: Lattice, m: int, n: int) -> tuple[complex, float]:
    """Coefficient a closing the two-end surface over ``gamma = 2(m w1 + n w3)``.

    ``conj(a) = P/|P|`` with ``P = -8(m eta1 + n eta3) - 2(b1 + b2)(m w1 + n w3)``
    (the integral of ``Phi1^2 + Phi2^2``), which makes
    ``int s1^2 = conj(int s2^2)`` hold exactly.  The returned residual is
    ``|Re int s1 s2|`` over gamma.
    """
    if (m, n) == (0, 0):
        raise ValueError("(m, n) must be non-zero")
    k = lattice_constants(lat)
    b1, b2 = two_end_constants(lat)
    w = m * lat.omega1 + n * lat.omega3
    P = -8 * (m * k.eta1 + n * k.eta3) - 2 * (b1 + b2) * w
    if abs(P) == 0:
        raise DegenerateLattice("period integral of Phi1^2 + Phi2^2 vanishes")
    a = complex(np.conj(P / abs(P)))
    residual = abs((a * (b2 - b1) * 2 * w).real)
    return a, residual


def two_end_open_generator(cfg: SpinorConfig) -> complex:
    """Surface generator transverse to ``gamma_{m,n}`` (the staircase translation)."""
    m, n = cfg.period_index or (1, 0)
    lat = cfg.lat
    if n == 0:
        return 2 * lat.omega3
    if m == 0:
        return 2 * lat.omega1
    raise ValueError("open generator is defined for mn = 0")


# ---------------------------------------------------------------------------
# immersion


@dataclass(frozen=True)
class ImmersionForm:
    """``F_k(x) = lam_k x - sum_q mu_{k,q} zeta(x - q) + kappa_k``; ``f = Re F``."""

    lat: Lattice
    shifts: tuple
    lam: np.ndarray  # (3,)
    mu: np.ndarray  # (3, len(shifts))
    kappa: np.ndarray  # (3,)
    base_point: complex = 0j
    echo: dict = field(default_factory=dict, compare=False)
    default_clip: float = 0.0

    def _check(self, x):
        _check_not_end(x, self.shifts, self.lat)

    def F(self, x):
        x = np.asarray(x, dtype=complex)
        self._check(x)
        z = np.stack([zeta_w(x - q, self.lat) for q in self.shifts])  # (nq, ...)
        lin = self.lam.reshape((3,) + (1,) * x.ndim) * x
        return lin - np.tensordot(self.mu, z, axes=1) + self.kappa.reshape((3,) + (1,) * x.ndim)

    def dF(self, x):
        x = np.asarray(x, dtype=complex)
        self._check(x)
        p = np.stack([wp(x - q, self.lat) for q in self.shifts])
        return self.lam.reshape((3,) + (1,) * x.ndim) + np.tensordot(self.mu, p, axes=1)

    def d2F(self, x):
        x = np.asarray(x, dtype=complex)
        self._check(x)
        p = np.stack([wp_prime(x - q, self.lat) for q in self.shifts])
        return np.tensordot(self.mu, p, axes=1)

    def translation(self, gamma: complex) -> np.ndarray:
        """Closed-form ``f(x + gamma) - f(x)``."""
        m, n = _surface_coords(gamma, self.lat)
        eta = quasi_period(m, n, self.lat)
        return (self.lam * gamma - self.mu.sum(axis=1) * eta).real


def build_immersion(cfg: SpinorConfig, base_point: complex | None = None) -> ImmersionForm:
    """Closed-form integral of ``(2 s1 s2, s1^2 - s2^2, i(s1^2 + s2^2)) dx``."""
    fam = _family(cfg.family, cfg.lat)
    u, v = cfg.spinor_coefficients()
    c12, m12 = _quad(fam, u, v)
    c11, m11 = _quad(fam, u, u)
    c22, m22 = _quad(fam, v, v)
    lam = np.array([2 * c12, c11 - c22, 1j * (c11 + c22)])
    mu = np.array([2 * m12, m11 - m22, 1j * (m11 + m22)])
    if base_point is None:
        base_point = cfg.lat.omega2 / 2
    clip = default_clip_radius(cfg.lat)
    form = ImmersionForm(fam.surface, fam.shifts, lam, mu, np.zeros(3, dtype=complex),
                         complex(base_point), cfg.echo(), clip)
    kappa = -form.F(base_point)
    return ImmersionForm(fam.surface, fam.shifts, lam, mu, kappa, complex(base_point),
                         cfg.echo(), clip)


@dataclass(frozen=True)
class ImmersionPoint:
    p: np.ndarray
    fu: np.ndarray
    fv: np.ndarray
    fuu: np.ndarray
    fuv: np.ndarray
    fvv: np.ndarray


def immersion_eval(form: ImmersionForm, x) -> ImmersionPoint:
    """Position and analytic partials in ``x = u + iv``; arrays have shape (3, ...)."""
    F = form.F(x)
    d1 = form.dF(x)
    d2 = form.d2F(x)
    return ImmersionPoint(F.real, d1.real, -d1.imag, d2.real, -d2.imag, -d2.real)


# ---------------------------------------------------------------------------
# meshes


@dataclass
class Mesh:
    vertices: np.ndarray  # (N, 3)
    faces: np.ndarray  # (M, 3) int, 0-based
    uv: np.ndarray  # (N,) complex parameter points
    metadata: dict

    def face_areas(self) -> np.ndarray:
        a, b, c = (self.vertices[self.faces[:, i]] for i in range(3))
        return 0.5 * np.linalg.norm(np.cross(b - a, c - a), axis=1)


def default_clip_radius(lat: Lattice) -> float:
    return TOL.clip_radius_factor * abs(2 * lat.omega1)


def _end_distance(x, shifts, surf: Lattice):
    return np.min(np.stack([np.asarray(lattice_distance(x - q, surf)) for q in shifts]), axis=0)


def sample_mesh(form: ImmersionForm, resolution: int, clip_radius: float | None = None,
                copies: tuple = (1, 1)) -> Mesh:
    """Triangulated parameter grid over ``copies`` fundamental domains, minus clip disks."""
    if resolution < 8:
        raise ValueError("resolution must be at least 8")
    surf = form.lat
    if clip_radius is None:
        clip_radius = form.default_clip or TOL.clip_radius_factor * abs(surf.omega1)
    if clip_radius <= 0:
        raise ValueError("clip_radius must be positive")
    cu, cv = int(copies[0]), int(copies[1])
    nu, nv = resolution * cu + 1, resolution * cv + 1
    I, J = np.meshgrid(np.arange(nu), np.arange(nv), indexing="ij")
    x = (I / resolution) * 2 * surf.omega1 + (J / resolution) * 2 * surf.omega3
    keep = _end_distance(x, form.shifts, surf) >= clip_radius
    index = -np.ones(x.shape, dtype=np.int64)
    index[keep] = np.arange(int(keep.sum()))
    uv = x[keep]
    vertices = form.F(uv).real.T.copy()
    a = index[:-1, :-1]
    b = index[1:, :-1]
    c = index[1:, 1:]
    d = index[:-1, 1:]
    tris = np.concatenate([
        np.stack([a, b, c], axis=-1).reshape(-1, 3),
        np.stack([a, c, d], axis=-1).reshape(-1, 3),
    ])
    # keep cell ordering deterministic: interleave the two triangles of each cell
    n_cells = a.size
    order = np.empty(2 * n_cells, dtype=np.int64)
    order[0::2] = np.arange(n_cells)
    order[1::2] = np.arange(n_cells) + n_cells
    tris = tris[order]
    faces = tris[np.all(tris >= 0, axis=1)]
    meta = dict(form.echo)
    meta.update({"resolution": resolution, "clip_radius": float(clip_radius),
                 "copies_u": cu, "copies_v": cv})
    return Mesh(vertices, faces, uv, meta)


# ---------------------------------------------------------------------------
# common zeros


@dataclass(frozen=True)
class CommonZeroScan:
    min_value: float
    location: complex
    grid_min: float

    def __iter__(self):
        return iter((self.min_value, self.location))


def common_zero_scan(cfg: SpinorConfig, resolution: int = 200,
                     clip_radius: float | None = None) -> CommonZeroScan:
    """Minimum of ``|s1|^2 + |s2|^2`` over the surface torus minus clip disks.

    A grid search is followed by a Nelder-Mead refinement from the best grid
    point, so a common zero between grid nodes still shows up as ~0.
    Unpacks as ``(min_value, location)``.
    """
    surf = cfg.surface_lat
    if clip_radius is None:
        clip_radius = default_clip_radius(cfg.lat)
    t = np.arange(resolution) / resolution
    U, V = np.meshgrid(t, t, indexing="ij")
    x = (U * 2 * surf.omega1 + V * 2 * surf.omega3).ravel()
    x = x[_end_distance(x, cfg.ends, surf) >= clip_radius]
    s1, s2 = spinor_eval(cfg, x)
    val = np.abs(s1) ** 2 + np.abs(s2) ** 2
    i = int(np.argmin(val))
    grid_min, x0 = float(val[i]), complex(x[i])

    def objective(p):
        z = complex(p[0], p[1])
        if _end_distance(np.array([z]), cfg.ends, surf)[0] < clip_radius:
            return grid_min
        a, b = spinor_eval(cfg, z)
        return abs(a) ** 2 + abs(b) ** 2

    h = abs(2 * surf.omega1) / resolution
    simplex = np.array([[x0.real, x0.imag], [x0.real + h, x0.imag], [x0.real, x0.imag + h]])
    res = minimize(objective, [x0.real, x0.imag], method="Nelder-Mead",
                   options={"initial_simplex": simplex, "xatol": 1e-12 * h, "fatol": 0.0,
                            "maxiter": 400})
    best = float(res.fun)
    loc = complex(res.x[0], res.x[1])
    if best > grid_min:
        best, loc = grid_min, x0
    return CommonZeroScan(best, loc, grid_min)


# ---------------------------------------------------------------------------
# Laurent data at the ends


def spinor_laurent(cfg: SpinorConfig, end: complex, order: int, radius: float | None = None):
    """Laurent coefficients of (s1, s2) at an end, by contour quadrature."""
    if radius is None:
        radius = TOL.contour_radius_factor * abs(2 * cfg.lat.omega1)
    return tuple(
        laurent_coefficient(lambda z, j=j: spinor_eval(cfg, z)[j], end, order, radius)
        for j in (0, 1)
    )


def spinor_monodromy(cfg: SpinorConfig, x: complex) -> tuple[tuple[complex, complex], tuple[complex, complex]]:
    """Ratios ``s_i(x + g)/s_i(x)`` for the two surface generators g."""
    out = []
    s0 = spinor_eval(cfg, x)
    for g in cfg.surface_lat.generators:
        s = spinor_eval(cfg, x + g)
        out.append(tuple(s[i] / s0[i] if s0[i] != 0 else complex("nan") for i in range(2)))
    return out[0], out[1]


__all__ = [
    "SIGN_PATTERNS",
    "SpinorConfig",
    "ImmersionForm",
    "ImmersionPoint",
    "Mesh",
    "SolveReport",
    "CommonZeroScan",
    "two_end_constants",
    "basis_eval",
    "spinor_eval",
    "product_identity_residual",
    "resolve_sign_patterns",
    "period_integral_closed",
    "spinor_period_integrals",
    "closedness_residual",
    "period_vector",
    "special_system_matrix",
    "solve_special_four_end",
    "solve_general_four_end",
    "solve_two_end",
    "two_end_open_generator",
    "build_immersion",
    "immersion_eval",
    "default_clip_radius",
    "sample_mesh",
    "common_zero_scan",
    "spinor_laurent",
    "spinor_monodromy",
]
