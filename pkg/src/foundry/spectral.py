"""Spectral curves of minimal tori with planar ends.

Two routes to the same multiplier curve:

* analytic: ``alpha -> h(alpha)``, the monodromy of the Lame Baker function
  ``Phi_alpha`` of the small lattice seen on the covering torus where the
  surface lives;
* brute force: a multiplier ``h`` is on the curve iff some meromorphic
  function with multiplier ``h``, simple poles at the ends and vanishing
  constant Laurent terms there exists, i.e. iff the order-zero matrix built
  from a residue-normalised basis is singular.

Covering conventions
--------------------
four_end: the Lame curve is ``C/Gamma`` with ``Gamma = span{2w1, 2w3}``;
the surface torus is ``Gamma~ = span{4w1, 4w3}`` with ends
``{0, 2w1, 2w2, 2w3}``.
two_end: the Lame curve is ``C/Gamma'`` with ``Gamma' = span{w2, 2w3}``;
the surface torus is ``Gamma`` with ends ``{0, w2}``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .baker import (
    Multiplier,
    multiplier_basis,
    solve_shift,
    zeta_difference_basis,
)
from .contour import contour_residue
from .elliptic import (
    Lattice,
    lattice_constants,
    lattice_coords,
    lattice_distance,
    log_sigma,
    wp,
    zeta_w,
)
from .errors import DegenerateAlpha, PoleAtLatticePoint, TrivialMultiplier
from .tolerances import TOL

FOUR_END = "four_end"
TWO_END = "two_end"
FAMILIES = (FOUR_END, TWO_END)


@dataclass(frozen=True)
class EndSet:
    points: tuple
    surface_lat: Lattice

    def __post_init__(self):
        pts = tuple(complex(p) for p in self.points)
        object.__setattr__(self, "points", pts)
        for i in range(len(pts)):
            for j in range(i):
                if lattice_distance(pts[i] - pts[j], self.surface_lat) < self.surface_lat.pole_radius:
                    raise ValueError("end points must be distinct modulo the surface lattice")

    def __len__(self):
        return len(self.points)

    def permuted(self, order: Sequence[int]) -> "EndSet":
        return EndSet(tuple(self.points[i] for i in order), self.surface_lat)


@dataclass(frozen=True)
class SpectralSample:
    alpha: complex
    h: Multiplier
    det_ratio: float

    def __post_init__(self):
        if not (0.0 <= self.det_ratio <= 1.0 or math.isnan(self.det_ratio)):
            raise ValueError("det_ratio must lie in [0, 1]")


# ---------------------------------------------------------------------------
# covering bookkeeping


def curve_lattice(family: str, lat: Lattice) -> Lattice:
    """Lattice of the Lame spectral curve Sigma' = C/L minus the origin."""
    if family == FOUR_END:
        return lat
    if family == TWO_END:
        return Lattice(lat.omega2 / 2, lat.omega3)
    raise ValueError(f"unknown family {family!r}")


def surface_lattice(family: str, lat: Lattice) -> Lattice:
    if family == FOUR_END:
        return lat.scaled(2)
    if family == TWO_END:
        return lat
    raise ValueError(f"unknown family {family!r}")


def family_ends(family: str, lat: Lattice) -> EndSet:
    if family == FOUR_END:
        pts = (0j, 2 * lat.omega1, 2 * lat.omega2, 2 * lat.omega3)
    elif family == TWO_END:
        pts = (0j, lat.omega2)
    else:
        raise ValueError(f"unknown family {family!r}")
    return EndSet(pts, surface_lattice(family, lat))


def _in_lattice_coords(g: complex, lat: Lattice) -> tuple[int, int]:
    """Integers (m, n) with g = 2m w1 + 2n w3; raises if g is not a lattice vector."""
    s, t = lattice_coords(g, lat)
    m, n = float(s) / 2, float(t) / 2
    if abs(m - round(m)) > 1e-9 or abs(n - round(n)) > 1e-9:
        raise ValueError(f"{g} is not a vector of the lattice {lat}")
    return int(round(m)), int(round(n))


def _exponent_data(family: str, lat: Lattice):
    """For each surface generator g: (g, eta_L(g)) on the curve lattice L."""
    lc = curve_lattice(family, lat)
    k = lattice_constants(lc)
    out = []
    for g in surface_lattice(family, lat).generators:
        m, n = _in_lattice_coords(g, lc)
        out.append((g, 2 * m * k.eta1 + 2 * n * k.eta3))
    return lc, out


def surface_multiplier(alpha, family: str, lat: Lattice) -> Multiplier:
    """Multiplier of Phi_alpha (curve lattice) on the surface generators.

    ``h_g = exp(zeta_L(alpha) g - alpha eta_L(g))``.
    """
    lc, data = _exponent_data(family, lat)
    a = np.asarray(alpha, dtype=complex)
    if np.any(np.asarray(lattice_distance(a, lc)) < lc.pole_radius):
        raise PoleAtLatticePoint("alpha must avoid the curve lattice")
    z = zeta_w(a, lc)
    h = [np.exp(z * g - a * eg) for g, eg in data]
    if a.ndim == 0:
        h = [complex(v) for v in h]
    return Multiplier(h[0], h[1], surface_lattice(family, lat).generators)


def four_end_multiplier(alpha, lat: Lattice) -> Multiplier:
    """``exp(4(zeta(alpha) w_j - alpha eta_j))`` on generators 4w1, 4w3."""
    return surface_multiplier(alpha, FOUR_END, lat)


def two_end_multiplier(alpha, lat: Lattice) -> Multiplier:
    """Multiplier of Phi_alpha on ``span{w2, 2w3}`` over the periods 2w1, 2w3."""
    return surface_multiplier(alpha, TWO_END, lat)


def log_multiplier_form(alpha, family: str, lat: Lattice):
    """Coefficients of ``d log h_g = -(wp_L(alpha) g + eta_L(g)) dalpha`` for both generators."""
    lc, data = _exponent_data(family, lat)
    p = wp(alpha, lc)
    return tuple(-(p * g + eg) for g, eg in data)


# ---------------------------------------------------------------------------
# order-zero matrix


def _order_zero_parts(h: Multiplier, ends: EndSet):
    lat = ends.surface_lat
    h1 = np.asarray(h.h1, dtype=complex)
    h3 = np.asarray(h.h3, dtype=complex)
    scalar = h1.ndim == 0 and h3.ndim == 0
    if scalar:
        # validation path shared with multiplier_basis (raises on degeneracy)
        multiplier_basis(h, ends.points, lat)
    h1, h3 = np.broadcast_arrays(h1, h3)
    c, alpha = solve_shift(h1, h3, lat)
    bad = (np.abs(h1 - 1) < TOL.trivial_multiplier) & (np.abs(h3 - 1) < TOL.trivial_multiplier)
    bad |= np.asarray(lattice_distance(alpha, lat)) < TOL.degenerate_alpha_factor * abs(2 * lat.omega1)
    alpha_safe = np.where(bad, lat.omega2 / 2, alpha)
    ls_alpha = log_sigma(alpha_safe, lat)
    diag = c - zeta_w(alpha_safe, lat)
    n = len(ends)
    A = np.empty(h1.shape + (n, n), dtype=complex)
    for m, pm in enumerate(ends.points):
        for i, pi in enumerate(ends.points):
            if m == i:
                A[..., m, i] = diag
            else:
                d = pm - pi
                A[..., m, i] = np.exp(
                    log_sigma(alpha_safe - d, lat) - ls_alpha - log_sigma(d, lat) + c * d
                )
    A[bad] = np.nan
    # column weights e^{c (p_i - p_n)} strip the common exponential factor
    pts = np.array(ends.points)
    weights = np.exp(np.asarray(c)[..., None] * (pts - pts[-1]))
    if scalar:
        return A[()], weights[()]
    return A, weights


def order_zero_matrix(h: Multiplier, ends: EndSet):
    """Constant Laurent terms of the multiplier-h basis at the ends.

    ``A[m, i]`` is the order-zero coefficient at ``p_m`` of the basis function
    with its pole at ``p_i``.  Batched over array-valued ``h``: the result has
    shape ``h.shape + (n, n)``; degenerate batch entries are NaN.
    """
    return _order_zero_parts(h, ends)[0]


def multiplier_det_ratio(h: Multiplier, ends: EndSet):
    """``det_ratio`` of the order-zero matrix of ``h``, using the exponential weights."""
    A, weights = _order_zero_parts(h, ends)
    return det_ratio(A, weights)


def raw_det_ratio(A) -> np.ndarray:
    """``sigma_min / sigma_max`` of (a batch of) square matrices; NaN stays NaN.

    The zero matrix is maximally singular and gets 0.
    """
    A = np.asarray(A)
    good = np.all(np.isfinite(A), axis=(-2, -1))
    out = np.full(A.shape[:-2], np.nan)
    if np.any(good):
        s = np.linalg.svd(A[good], compute_uv=False)
        top = s[..., 0]
        out[good] = np.where(top > 0, s[..., -1] / np.where(top > 0, top, 1.0), 0.0)
    return out[()] if out.ndim == 0 else out


def _equilibrate(A, sweeps: int = 30):
    """Alternate row/column normalisation (diagonal scalings keep the kernel dimension)."""
    A = np.array(A, dtype=complex)
    with np.errstate(invalid="ignore", divide="ignore"):
        for _ in range(sweeps):
            # zero rows and columns stay zero
            r = np.linalg.norm(A, axis=-1, keepdims=True)
            A /= np.where(r > 0, r, 1.0)
            c = np.linalg.norm(A, axis=-2, keepdims=True)
            A /= np.where(c > 0, c, 1.0)
    return A


def _difference_columns(A, weights=None):
    """Columns ``w_i f_i - w_n f_n`` (i < n) and ``f_n``: same span.

    Near ``alpha = 0`` every basis function is dominated by
    ``-e^{c(x - p_i)}/alpha``; with ``w_i = e^{c p_i}`` the differences are
    ``e^{cx}(zeta(x - p_i) - zeta(x - p_n))`` to leading order.  Without
    weights this is the plain difference, which suits ``h`` close to 1.
    """
    A = np.asarray(A, dtype=complex)
    if weights is not None:
        A = A * np.asarray(weights)[..., None, :]
    B = np.array(A)
    B[..., :-1] = A[..., :-1] - A[..., -1:]
    return B


def det_ratio(A, weights=None) -> np.ndarray:
    """Scale-aware singularity measure of the order-zero matrix.

    The raw ratio ``sigma_min/sigma_max`` depends on how the basis functions
    are normalised: with multipliers far from the unit torus the entries
    span many orders of magnitude, and when the solved ``alpha`` is small
    every basis function is dominated by ``e^{cx}/alpha``.  Both effects
    shrink the raw ratio without the matrix being close to singular.  We
    therefore take the larger of the ratios of two equilibrated versions, one
    in the Baker basis and one in the (weighted) difference basis; pass the
    weights ``e^{c(p_i - p_n)}`` from ``multiplier_det_ratio``.  A genuinely singular matrix
    is singular in every basis, so on-curve values remain at roundoff level.
    """
    A = np.asarray(A)
    return np.fmax(raw_det_ratio(_equilibrate(A)),
                   raw_det_ratio(_equilibrate(_difference_columns(A, weights))))


def spectrum_det_ratio(h: Multiplier, ends: EndSet, spin: Multiplier | None = None):
    """Criterion for the full spectral curve: a function exists for ``h*h0`` or ``conj(h)*h0``."""
    hbar = h.conj()
    if spin is not None:
        h, hbar = h * spin, hbar * spin
    return np.fmin(multiplier_det_ratio(h, ends), multiplier_det_ratio(hbar, ends))


# ---------------------------------------------------------------------------
# grid scan


def alpha_grid(family: str, lat: Lattice, n: int = 64):
    """Cell-centred n x n grid on the fundamental parallelogram of the curve
    lattice (centred at 0), minus the puncture disk."""
    lc = curve_lattice(family, lat)
    u = (np.arange(n) + 0.5) / n - 0.5
    U, V = np.meshgrid(u, u, indexing="ij")
    alpha = (2 * U * lc.omega1 + 2 * V * lc.omega3).ravel()
    keep = np.abs(alpha) >= TOL.puncture_radius_factor * abs(2 * lc.omega1)
    return alpha[keep]


def _log_exponents(alpha, family: str, lat: Lattice):
    lc, data = _exponent_data(family, lat)
    z = zeta_w(alpha, lc)
    return lc, [z * g - alpha * eg for g, eg in data]


def _wrap(d):
    """Reduce imaginary parts to (-pi, pi]."""
    return d.real + 1j * (d.imag - 2 * math.pi * np.round(d.imag / (2 * math.pi)))


def curve_log_distance(h: Multiplier, family: str, lat: Lattice, seeds=None,
                       starts: int = 8, iterations: int = 20, chunk: int = 512):
    """Distance in log-multiplier space from ``h`` to the first component.

    The ``starts`` nearest seeds (default: the 64 x 64 scan grid plus rings
    around the puncture) each start a damped Gauss-Newton iteration in alpha;
    the best result wins.  Returns ``(distance, alpha)`` arrays.
    """
    t1, t3 = (np.log(np.asarray(v, dtype=complex)).ravel() for v in h.values())
    if seeds is None:
        lc = curve_lattice(family, lat)
        r = abs(lc.omega1) * np.geomspace(0.25, 1e-3, 40)
        polar = (r[:, None] * np.exp(2j * math.pi * np.arange(64) / 64)).ravel()
        seeds = np.concatenate([alpha_grid(family, lat, 64), polar])
    _, (s1, s3) = _log_exponents(seeds, family, lat)
    k = min(starts, seeds.size)
    first = np.empty((t1.size, k), dtype=complex)
    for i in range(0, t1.size, chunk):
        d = (np.abs(_wrap(s1[None, :] - t1[i:i + chunk, None])) ** 2
             + np.abs(_wrap(s3[None, :] - t3[i:i + chunk, None])) ** 2)
        first[i:i + chunk] = seeds[np.argpartition(d, k - 1, axis=1)[:, :k]]
    a = first.ravel()
    t1, t3 = np.repeat(t1, k), np.repeat(t3, k)
    # fix the branch of the logarithm at the seed; Newton runs unwrapped
    _, (e1, e3) = _log_exponents(a, family, lat)
    t1 = e1 - _wrap(e1 - t1)
    t3 = e3 - _wrap(e3 - t3)

    def residual(a):
        _, (e1, e3) = _log_exponents(a, family, lat)
        d1, d3 = e1 - t1, e3 - t3
        return d1, d3, np.sqrt(np.abs(d1) ** 2 + np.abs(d3) ** 2)

    d1, d3, dist = residual(a)
    for _ in range(iterations):
        g1, g3 = log_multiplier_form(a, family, lat)
        step = -(np.conj(g1) * d1 + np.conj(g3) * d3) / (np.abs(g1) ** 2 + np.abs(g3) ** 2)
        # damped: halve the step where the distance would grow
        for _ in range(20):
            n1, n3, nd = residual(a + step)
            worse = ~(nd <= dist)
            if not np.any(worse):
                break
            step = np.where(worse, step / 2, step)
        keep = nd <= dist
        a = np.where(keep, a + step, a)
        d1, d3, dist = np.where(keep, n1, d1), np.where(keep, n3, d3), np.where(keep, nd, dist)
    dist, a = dist.reshape(-1, k), a.reshape(-1, k)
    j = np.argmin(dist, axis=1)
    rows = np.arange(dist.shape[0])
    shape = np.shape(h.h1)
    return dist[rows, j].reshape(shape), a[rows, j].reshape(shape)


def _normal_directions(alpha, family: str, lat: Lattice):
    """Unit vectors in log-multiplier space orthogonal (Hermitian) to the curve tangent."""
    t1, t3 = log_multiplier_form(alpha, family, lat)
    norm = np.sqrt(np.abs(t1) ** 2 + np.abs(t3) ** 2)
    return -np.conj(t3) / norm, np.conj(t1) / norm


@dataclass
class ScanResult:
    family: str
    lat: Lattice
    samples: list
    off_curve: np.ndarray  # min over control phases, per sample
    conjugate: np.ndarray  # full-spectrum criterion at conj(h)
    conjugate_direct: np.ndarray  # first-component criterion at conj(h)
    conjugate_off: np.ndarray  # full-spectrum criterion at controls far from both components
    flagged: list  # indices of degenerate grid points

    @property
    def on_curve(self) -> np.ndarray:
        return np.array([s.det_ratio for s in self.samples])

    def fraction_on_curve(self, tol: float = TOL.on_curve) -> float:
        r = self.on_curve
        return float(np.mean(np.nan_to_num(r, nan=1.0) < tol))

    def fraction_conjugate(self, tol: float = TOL.on_curve) -> float:
        return float(np.mean(np.nan_to_num(self.conjugate, nan=1.0) < tol))

    def min_off_curve(self) -> float:
        return float(np.nanmin(self.off_curve))

    def min_conjugate_off(self) -> float:
        return float(np.nanmin(self.conjugate_off))

    def agreement(self) -> bool:
        """On-curve and off-curve thresholds for both components, which must differ."""
        return (self.fraction_on_curve() >= TOL.on_curve_fraction
                and self.min_off_curve() > TOL.off_curve
                and self.fraction_conjugate() >= TOL.on_curve_fraction
                and self.min_conjugate_off() > TOL.off_curve
                and self.fraction_distinct() > 0.5)

    def excluded_controls(self) -> int:
        """Samples all of whose controls lie near the conjugate component."""
        return int(np.sum(np.isnan(self.conjugate_off)))

    def fraction_distinct(self, tol: float = TOL.off_curve) -> float:
        """Share of samples whose conjugate is off the first component."""
        return float(np.mean(np.nan_to_num(self.conjugate_direct, nan=0.0) > tol))

    def histogram(self, edges=None):
        """Counts of log10(det_ratio) for on-curve and off-curve samples."""
        if edges is None:
            edges = np.arange(-18, 1, 1.0)
        on = np.log10(np.clip(np.nan_to_num(self.on_curve, nan=1.0), 1e-300, None))
        off = np.log10(np.clip(np.nan_to_num(self.off_curve, nan=1.0), 1e-300, None))
        return edges, np.histogram(on, edges)[0], np.histogram(off, edges)[0]


def _scan_chunk(alpha, family: str, lat: Lattice, ends: EndSet, eps: float, phases: int):
    h = surface_multiplier(alpha, family, lat)
    on = multiplier_det_ratio(h, ends)
    n1, n3 = _normal_directions(alpha, family, lat)
    off = np.full(alpha.shape, np.inf)
    conj_off = np.full(alpha.shape, np.inf)
    for k in range(phases):
        ph = eps * np.exp(2j * math.pi * (k + 0.5) / phases)
        moved = h.scaled_log(ph * n1, ph * n3)
        off = np.fmin(off, multiplier_det_ratio(moved, ends))
        # full-spectrum criterion, only for controls that are also eps away
        # from the conjugate component (near crossings of the two they are
        # not).  The distance is only needed where the value could matter.
        full = spectrum_det_ratio(moved, ends)
        low = np.flatnonzero(~(full > 10 * TOL.off_curve))
        if low.size:
            mirror = Multiplier(np.conj(moved.h1[low]), np.conj(moved.h3[low]), moved.generators)
            far, _ = curve_log_distance(mirror, family, lat)
            full[low[far < eps]] = np.inf
        conj_off = np.fmin(conj_off, full)
    conj_off[np.isinf(conj_off)] = np.nan
    hbar = h.conj()
    conj_direct = multiplier_det_ratio(hbar, ends)
    conj_full = spectrum_det_ratio(hbar, ends)
    return np.asarray(h.h1), np.asarray(h.h3), on, off, conj_full, conj_direct, conj_off


def spectral_scan(family: str, lat: Lattice, grid: int = 64,
                  eps: float = TOL.control_log_distance, phases: int = 4,
                  workers: int = 1) -> ScanResult:
    """Sample Sigma', compare the analytic multipliers with the order-zero determinant.

    Off-curve controls move ``log h`` a distance ``eps`` along the normal of
    the curve at ``phases`` equally spaced complex phases; the reported value
    is the smallest det_ratio among them.  ``workers > 1`` evaluates chunks
    of the grid in a thread pool; results keep grid order.
    """
    alpha = alpha_grid(family, lat, grid)
    ends = family_ends(family, lat)
    lattice_constants(curve_lattice(family, lat))
    lattice_constants(ends.surface_lat)
    chunks = np.array_split(alpha, max(1, int(workers)) * 4) if workers > 1 else [alpha]
    chunks = [c for c in chunks if c.size]
    if workers > 1:
        from concurrent.futures import ThreadPoolExecutor

        with ThreadPoolExecutor(max_workers=int(workers)) as pool:
            parts = list(pool.map(lambda c: _scan_chunk(c, family, lat, ends, eps, phases), chunks))
    else:
        parts = [_scan_chunk(c, family, lat, ends, eps, phases) for c in chunks]
    h1, h3, on, off, conj_full, conj_direct, conj_off = (np.concatenate(p) for p in zip(*parts))
    gens = ends.surface_lat.generators
    samples = [
        SpectralSample(complex(a), Multiplier(complex(x1), complex(x3), gens), float(r))
        for a, x1, x3, r in zip(alpha, h1, h3, on)
    ]
    flagged = [int(i) for i in np.flatnonzero(np.isnan(on))]
    return ScanResult(family, lat, samples, off, conj_full, conj_direct, conj_off, flagged)


# ---------------------------------------------------------------------------
# closing condition


@dataclass(frozen=True)
class ClosingRecord:
    cycle: int  # 1 or 3: generator 2*w_cycle of the curve lattice
    form: int  # 1 or 3: surface generator the multiplier refers to
    period_over_2pii: complex
    nearest: int
    residual: float


def _segment_integral(f, a: complex, b: complex, pieces: int = 8, nodes: int = 48) -> complex:
    t, w = np.polynomial.legendre.leggauss(nodes)
    total = 0j
    for j in range(pieces):
        za = a + (b - a) * j / pieces
        zb = a + (b - a) * (j + 1) / pieces
        z = (za + zb) / 2 + (zb - za) / 2 * t
        total += np.sum(w * f(z)) * (zb - za) / 2
    return complex(total)


def kp_closing_check(family: str, lat: Lattice, cycles: Sequence[int] = (1, 3)):
    """Periods of ``d log h_j`` over the basic cycles of the compactified Sigma'.

    Returns one ClosingRecord per (cycle, form) pair.  Integration runs along
    a straight segment through the middle of the fundamental domain, so it
    never comes near the puncture.
    """
    lc = curve_lattice(family, lat)
    records = []
    for cyc in cycles:
        if cyc == 1:
            G, other = 2 * lc.omega1, lc.omega3
        elif cyc == 3:
            G, other = 2 * lc.omega3, lc.omega1
        else:
            raise ValueError("cycles are 1 or 3")
        start = -G / 2 + other / 2
        for form in (1, 3):
            def integrand(z, form=form):
                return log_multiplier_form(z, family, lat)[0 if form == 1 else 1]

            per = _segment_integral(integrand, start, start + G) / (2j * math.pi)
            near = int(round(per.real))
            records.append(ClosingRecord(cyc, form, per, near, abs(per - near)))
    return records


def puncture_residues(family: str, lat: Lattice, radius: float | None = None):
    """Residues of both forms ``d log h_j`` at alpha = 0."""
    lc = curve_lattice(family, lat)
    if radius is None:
        radius = TOL.contour_radius_factor * abs(2 * lc.omega1)
    out = []
    for j in (0, 1):
        out.append(contour_residue(lambda z, j=j: log_multiplier_form(z, family, lat)[j], 0j, radius))
    return out


# ---------------------------------------------------------------------------
# spin obstruction


@dataclass(frozen=True)
class KernelCertificate:
    singular_values: np.ndarray
    kernel: np.ndarray  # columns span the kernel
    matrix: np.ndarray


def _zeta_order_zero_matrix(ends: EndSet) -> np.ndarray:
    basis = zeta_difference_basis(ends.points, ends.surface_lat)
    return np.array([[f.order_zero_at(p) for f in basis] for p in ends.points])


def trivial_spin_obstruction(ends: EndSet, spin: Multiplier | None = None,
                             tol: float = TOL.kernel_rank):
    """Dimension of the space of admissible functions for the given Z2 multiplier.

    Admissible: simple poles at the ends (nowhere else), vanishing constant
    Laurent terms there.  ``spin=None`` means the trivial multiplier.
    Returns ``(dimension, certificate)``.
    """
    if spin is None or spin.is_trivial():
        A = _zeta_order_zero_matrix(ends)
    else:
        A = order_zero_matrix(spin, ends)
    u, s, vh = np.linalg.svd(A)
    rank = int(np.sum(s > tol * s[0]))
    kernel = vh[rank:].conj().T
    return A.shape[1] - rank, KernelCertificate(s, kernel, A)


__all__ = [
    "FOUR_END",
    "TWO_END",
    "FAMILIES",
    "EndSet",
    "SpectralSample",
    "ScanResult",
    "ClosingRecord",
    "KernelCertificate",
    "curve_lattice",
    "surface_lattice",
    "family_ends",
    "surface_multiplier",
    "four_end_multiplier",
    "two_end_multiplier",
    "log_multiplier_form",
    "order_zero_matrix",
    "det_ratio",
    "multiplier_det_ratio",
    "raw_det_ratio",
    "spectrum_det_ratio",
    "alpha_grid",
    "spectral_scan",
    "curve_log_distance",
    "kp_closing_check",
    "puncture_residues",
    "trivial_spin_obstruction",
    "DegenerateAlpha",
    "TrivialMultiplier",
]
