"""Laurent coefficients by the trapezoid rule on small circles."""
from __future__ import annotations

import math

import numpy as np

from .tolerances import TOL


def _circle(center: complex, radius: float, nodes: int):
    theta = 2 * math.pi * np.arange(nodes) / nodes
    w = np.exp(1j * theta)
    return center + radius * w, w


def laurent_coefficient(fn, center: complex, order: int, radius: float,
                        nodes: int = TOL.contour_nodes) -> complex:
    """Coefficient of ``(x - center)^order`` in the Laurent series of ``fn``.

    ``fn`` must accept an array.  Exact (to roundoff) for Laurent polynomials
    of degree below ``nodes``; otherwise aliasing error ~ ``(radius/R)^nodes``
    where R is the distance to the nearest other singularity.
    """
    z, w = _circle(complex(center), float(radius), nodes)
    vals = np.asarray(fn(z), dtype=complex)
    return complex(np.mean(vals * w ** (-order)) / radius**order)


def contour_residue(fn, center: complex, radius: float, nodes: int = TOL.contour_nodes) -> complex:
    """``(1/2 pi i) * contour integral of fn`` around ``center``."""
    return laurent_coefficient(fn, center, -1, radius, nodes)


def _gauss(fn, z_of_t, dz_of_t, t0: float, t1: float, nodes: int) -> complex:
    x, w = np.polynomial.legendre.leggauss(nodes)
    t = (t0 + t1) / 2 + (t1 - t0) / 2 * x
    return complex(np.sum(w * np.asarray(fn(z_of_t(t))) * dz_of_t(t)) * (t1 - t0) / 2)


def segment_integral(fn, a: complex, b: complex, poles=(), radius: float = 0.0,
                     side: int = 1, nodes: int = 64, pieces: int = 4) -> complex:
    """Integral of ``fn`` from a to b along the straight segment.

    Poles lying on the segment are bypassed by semicircles of ``radius``,
    to the left of the direction of travel for ``side=+1`` and to the right
    for ``side=-1``.  Poles must lie on the segment (not merely near it)
    and at least ``radius`` away from the endpoints and from each other.
    """
    a, b = complex(a), complex(b)
    L = abs(b - a)
    u = (b - a) / L
    stops = []
    for p in poles:
        t = ((complex(p) - a) / u)
        if abs(t.imag) > 1e-9 * L:
            if abs(t.imag) < radius and -radius < t.real < L + radius:
                raise ValueError("pole near but not on the integration segment")
            continue
        if -radius < t.real < L + radius:
            if t.real < radius or t.real > L - radius:
                raise ValueError("pole too close to a segment endpoint")
            stops.append(t.real)
    stops.sort()
    total = 0j
    pos = 0.0
    for s in stops + [None]:
        end = L if s is None else s - radius
        if end <= pos:
            raise ValueError("poles closer than the detour radius")
        for j in range(pieces):
            t0 = pos + (end - pos) * j / pieces
            t1 = pos + (end - pos) * (j + 1) / pieces
            total += _gauss(fn, lambda t: a + u * t, lambda t: u, t0, t1, nodes)
        if s is None:
            break
        c = a + u * s
        sgn = -1.0 if side > 0 else 1.0
        # theta from pi to 0 (left side) or from -pi to 0 (right side)
        total += _gauss(
            fn,
            lambda th: c + radius * u * np.exp(1j * th),
            lambda th: 1j * radius * u * np.exp(1j * th),
            -sgn * math.pi, 0.0, nodes,
        )
        pos = s + radius
    return total


__all__ = ["laurent_coefficient", "contour_residue", "segment_integral"]
