import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import LATTICES, SQUARE, SKEW, interior_points
from foundry.baker import (
    BakerSpec,
    Multiplier,
    ShiftedBaker,
    baker_derivative,
    baker_eval,
    baker_laurent,
    baker_monodromy,
    fix_additive_monodromy,
    hill_residual,
    multiplier_basis,
    solve_shift,
    z2_sign,
    zeta_difference_basis,
)
from foundry.contour import contour_residue, laurent_coefficient, segment_integral
from foundry.elliptic import lattice_distance, zeta_w
from foundry.errors import (
    DegenerateAlpha,
    InconsistentPeriods,
    PoleAtLatticePoint,
    TrivialMultiplier,
)
from foundry.tolerances import TOL


def alphas(lat, count, seed):
    return interior_points(lat, count, seed=seed, margin=0.15)


def away_from(x, lat, pts, r):
    keep = np.ones(x.shape, bool)
    for p in pts:
        keep &= np.asarray(lattice_distance(x - p, lat)) > r
    return x[keep]


# -- Phi_alpha ------------------------------------------------------------------


def test_spec_rejects_lattice_alpha():
    with pytest.raises(PoleAtLatticePoint):
        BakerSpec(2 * SQUARE.omega1, SQUARE)


def test_eval_rejects_pole(lat):
    spec = BakerSpec(0.3 + 0.2j, lat)
    with pytest.raises(PoleAtLatticePoint):
        baker_eval(spec, lat.point(1, 1))


def test_leading_term(lat):
    spec = BakerSpec(0.4 + 0.3j, lat)
    x = 1e-5 * np.exp(1.1j)
    assert abs(x * baker_eval(spec, x) - 1) < 1e-8


def test_monodromy_matches_translation(lat):
    for a in alphas(lat, 10, seed=1):
        spec = BakerSpec(a, lat)
        h = baker_monodromy(spec)
        x = away_from(interior_points(lat, 20, seed=2), lat, [a], 0.05)
        f = baker_eval(spec, x)
        for g, hv in zip(lat.generators, h.values()):
            ratio = baker_eval(spec, x + g) / f
            assert np.max(np.abs(ratio - hv)) < 1e-11 * max(1, abs(hv))


@pytest.mark.parametrize("k", [0, 1, 2])
def test_z2_monodromy_at_half_periods(lat, k):
    h = baker_monodromy(BakerSpec(lat.half_periods[k], lat))
    expected = [1 if k == j else -1 for j in (0, 2)]  # generator 2w1, 2w3
    for hv, e in zip(h.values(), expected):
        assert abs(hv - e) < 1e-11
        assert z2_sign(hv) == e


def test_square_omega2_ratio():
    spec = BakerSpec(SQUARE.omega2, SQUARE)
    x = np.array([0.3 + 0.1j, -0.4 + 0.6j])
    r = baker_eval(spec, x + 2 * SQUARE.omega1) / baker_eval(spec, x)
    assert np.all(np.abs(np.abs(r.real) - 1) < 1e-11) and np.all(np.abs(r.imag) < 1e-11)


def test_reciprocity(lat):
    for a in alphas(lat, 5, seed=3):
        h = baker_monodromy(BakerSpec(a, lat))
        g = baker_monodromy(BakerSpec(-a, lat))
        assert abs(h.h1 * g.h1 - 1) < 1e-11 * max(1, abs(h.h1))
        assert abs(h.h3 * g.h3 - 1) < 1e-11 * max(1, abs(h.h3))


def test_laurent_coefficients(lat):
    spec = BakerSpec(0.35 - 0.25j, lat)
    cm1, c0, c1, c2 = baker_laurent(spec)
    assert cm1 == 1 and c0 == 0
    r = TOL.contour_radius_factor * abs(2 * lat.omega1)
    f = lambda z: baker_eval(spec, z)
    assert abs(laurent_coefficient(f, 0, -1, r) - 1) < 1e-9
    assert abs(laurent_coefficient(f, 0, 0, r)) < 1e-9
    assert abs(laurent_coefficient(f, 0, 1, r) - c1) < 1e-8
    assert abs(laurent_coefficient(f, 0, 2, r) - c2) < 1e-6 * max(1, abs(c2))


def test_derivative(lat):
    spec = BakerSpec(0.3 + 0.45j, lat)
    x = away_from(interior_points(lat, 30, seed=4), lat, [spec.alpha], 0.1)
    h = 1e-6
    fd = (baker_eval(spec, x + h) - baker_eval(spec, x - h)) / (2 * h)
    d = baker_derivative(spec, x)
    assert np.max(np.abs(fd - d) / np.abs(d)) < 1e-7


# -- Hill's equation -------------------------------------------------------------


def test_hill_residual_random(lat):
    rng = np.random.default_rng(5)
    for a in alphas(lat, 10, seed=6):
        spec = BakerSpec(a, lat)
        x = interior_points(lat, 100, seed=int(rng.integers(1 << 30)), margin=0.05)
        x = away_from(x, lat, [a], 1e-2)
        assert np.max(hill_residual(spec, x)) < TOL.hill_residual


def test_hill_residual_branch_point(lat):
    spec = BakerSpec(lat.omega1, lat)
    x = away_from(interior_points(lat, 100, seed=7, margin=0.05), lat, [lat.omega1], 1e-2)
    assert np.max(hill_residual(spec, x)) < TOL.hill_residual


def test_hill_fourth_order():
    # at the default step 1e-4 the residual is roundoff-dominated; the order is
    # visible where truncation dominates
    spec = BakerSpec(0.3 + 0.4j, SQUARE)
    x = np.array([0.45 + 0.2j, -0.3 + 0.6j, 0.7 - 0.5j])
    r1 = hill_residual(spec, x, step=1e-2)
    r2 = hill_residual(spec, x, step=2e-2)
    ratio = r2 / r1
    assert np.all((ratio > 13) & (ratio < 19))


def test_hill_rejects_stencil_through_pole():
    with pytest.raises(PoleAtLatticePoint):
        hill_residual(BakerSpec(0.3, SQUARE), 1e-5 + 0j)


# -- multipliers -------------------------------------------------------------------


def test_multiplier_algebra():
    h = Multiplier(2 + 1j, -0.5j)
    assert (h * h.inverse()).is_trivial()
    c = h.conj()
    assert c.h1 == 2 - 1j
    with pytest.raises(ValueError):
        Multiplier(0, 1)


@given(st.floats(-3, 3), st.floats(-3, 3), st.floats(-3, 3), st.floats(-3, 3))
def test_solve_shift_round_trip(a, b, c, d):
    l1, l3 = complex(a, b), complex(c, d)
    h1, h3 = np.exp(l1), np.exp(l3)
    cc, al = solve_shift(h1, h3, SKEW)
    from foundry.elliptic import lattice_constants

    k = lattice_constants(SKEW)
    assert abs(np.exp(2 * cc * SKEW.omega1 - 2 * k.eta1 * al) - h1) < 1e-10 * max(1, abs(h1))
    assert abs(np.exp(2 * cc * SKEW.omega3 - 2 * k.eta3 * al) - h3) < 1e-10 * max(1, abs(h3))


def test_multiplier_basis_properties(lat):
    rng = np.random.default_rng(8)
    ends = [0, lat.omega1, 0.3 * lat.omega3 + 0.2 * lat.omega1]
    for _ in range(5):
        h = Multiplier(*np.exp(rng.normal(size=2) + 1j * rng.normal(size=2)))
        basis = multiplier_basis(h, ends, lat)
        x = away_from(interior_points(lat, 10, seed=9), lat, ends, 0.05)
        for f, p in zip(basis, ends):
            fx = f(x)
            for g, hv in zip(lat.generators, h.values()):
                assert np.max(np.abs(f(x + g) / fx - hv)) < 1e-10 * max(1, abs(hv))
            r = TOL.contour_radius_factor * abs(2 * lat.omega1)
            assert abs(contour_residue(f, p, r) - 1) < 1e-9
        # spans an n-dimensional space: values at probe points have full rank
        probe = away_from(interior_points(lat, 40, seed=10), lat, ends, 0.1)[:10]
        V = np.array([f(probe) for f in basis])
        s = np.linalg.svd(V, compute_uv=False)
        assert s[-1] > 1e-6 * s[0]


def test_multiplier_basis_errors():
    with pytest.raises(TrivialMultiplier):
        multiplier_basis(Multiplier(1, 1), [0, 0.5], SQUARE)
    # multiplier of exp(c x) alone (alpha on the lattice)
    c = 0.3 + 0.1j
    h = Multiplier(np.exp(2 * c * SQUARE.omega1), np.exp(2 * c * SQUARE.omega3))
    with pytest.raises(DegenerateAlpha):
        multiplier_basis(h, [0, 0.5], SQUARE)
    with pytest.raises(ValueError):
        multiplier_basis(Multiplier(2, 3), [0, 2 * SQUARE.omega1], SQUARE)


def test_basis_contains_half_period_baker():
    lat = SQUARE
    spec = BakerSpec(lat.omega2, lat)
    h = baker_monodromy(spec)
    ends = [0, lat.omega2]
    basis = multiplier_basis(h, ends, lat)
    x = away_from(interior_points(lat, 40, seed=11), lat, ends, 0.1)
    B = np.array([f(x) for f in basis]).T
    for target in (baker_eval(spec, x), baker_eval(spec, x - lat.omega2)):
        coef, *_ = np.linalg.lstsq(B, target, rcond=None)
        assert np.max(np.abs(B @ coef - target)) < 1e-9 * np.max(np.abs(target))


def test_shifted_baker_order_zero(lat):
    f = ShiftedBaker(lat, 0.2 + 0.1j, 0.3 + 0.4j, 0.7 - 0.2j)
    r = TOL.contour_radius_factor * abs(2 * lat.omega1)
    assert abs(laurent_coefficient(f, f.end, 0, r) - f.order_zero()) < 1e-8


# -- trivial multiplier ------------------------------------------------------------


def test_zeta_difference_basis(lat):
    ends = [0, 0.5 * lat.omega1 + 0.3 * lat.omega3, lat.omega2]
    basis = zeta_difference_basis(ends, lat)
    assert len(basis) == 3
    x = away_from(interior_points(lat, 20, seed=12), lat, ends, 0.05)
    for f in basis[:-1]:
        for g in lat.generators:
            assert np.max(np.abs(f(x + g) - f(x))) < 1e-12 * max(1, np.max(np.abs(f(x))))
        assert f.residue_at(f.p) == 1.0 and f.residue_at(f.q) == -1.0
    assert basis[-1](0.1) == 1


def test_two_end_order_zero_condition(lat):
    p = 0.37 * lat.omega1 + 0.21 * lat.omega3
    f, one = zeta_difference_basis([0, p], lat)
    # order-zero terms of a f + b: at 0 it is -a zeta(-p) + b, at p it is -a zeta(p)... both force a zeta(p) + b = 0
    A = np.array([[f.order_zero_at(0), 1], [f.order_zero_at(p), 1]])
    assert abs(A[0, 0] - zeta_w(p, lat)) < 1e-12 * max(1, abs(A[0, 0]))
    assert abs(A[1, 0] - zeta_w(p, lat)) < 1e-12 * max(1, abs(A[1, 0]))


def test_order_zero_at_translated_end(lat):
    p = 0.3 * lat.omega1
    f = zeta_difference_basis([0, p], lat)[0]
    W = lat.point(1, -1)
    r = TOL.contour_radius_factor * abs(2 * lat.omega1)
    assert abs(laurent_coefficient(f, W, 0, r) - f.order_zero_at(W)) < 1e-8


# -- additive monodromy -------------------------------------------------------------


def test_fix_additive_simple_cases():
    assert fix_additive_monodromy((0, 0), Multiplier(2, 3)) == 0
    h = Multiplier(2, 3)
    assert fix_additive_monodromy((1, 2), h) == pytest.approx(1)
    with pytest.raises(InconsistentPeriods):
        fix_additive_monodromy((1, 1), h)
    with pytest.raises(TrivialMultiplier):
        fix_additive_monodromy((1, 1), Multiplier(1, 1))


def test_fix_additive_round_trip(lat):
    """Integrate dPhi along paths, fix the constant, recover Phi."""
    spec = BakerSpec(0.3 + 0.35j, lat)
    h = baker_monodromy(spec)
    x0 = 0.41 * lat.omega1 + 0.33 * lat.omega3
    d = lambda z: baker_derivative(spec, z)

    def F(z):  # antiderivative with F(x0) = 0 along a straight path
        return segment_integral(d, x0, z, nodes=64, pieces=8)

    a = []
    for g in lat.generators:
        # F(x0 + g) - h F(x0) with F(x0) = 0
        path = segment_integral(d, x0, x0 + g / 2, nodes=64, pieces=8) + segment_integral(
            d, x0 + g / 2, x0 + g, nodes=64, pieces=8
        )
        a.append(path)
    b = fix_additive_monodromy(a, h)
    # F + b has multiplier h; Phi = F + Phi(x0) also does, so b = Phi(x0)
    assert abs(b - baker_eval(spec, x0)) < 1e-8 * max(1, abs(b))
    z = x0 + 0.1 + 0.05j
    assert abs(F(z) + b - baker_eval(spec, z)) < 1e-8 * max(1, abs(b))
