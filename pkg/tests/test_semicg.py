import cmath
import math
import random

import pytest

from vmw.exact import CGKey, cg_exact
from vmw.qnum import HalfInt, as_halfint, parity_phase
from vmw.semicg import (RegionError, RegionKind, beta_area, branch_parameters,
                        cg_allowed, cg_forbidden, cg_sq_avg, cg_wkb,
                        classify_region, coupling_geometry)

# reference sweep crossing allowed, turning, and forbidden regions
BENCH = (40, 10, 30, -15)


class TestBetaArea:
    def test_right_triangle(self):
        assert beta_area(3, 4, 5) == pytest.approx(24.0)

    def test_open_triangle_is_imaginary(self):
        # Heron product (5)(3)(3)(-1) = -45 for sides (1, 1, 3)
        beta = beta_area(1, 1, 3)
        assert beta.real == 0.0
        assert beta.imag == pytest.approx(math.sqrt(45), abs=1e-12)

    def test_degenerate_triangle(self):
        assert beta_area(0, 2, 2) == 0.0

    def test_rejects_negative_sides(self):
        with pytest.raises(ValueError):
            beta_area(-1, 2, 2)


class TestCouplingGeometry:
    def test_requires_projection_sum(self):
        with pytest.raises(ValueError):
            coupling_geometry(1, 0, 1, 0, 2, 1)

    def test_requires_triangle(self):
        with pytest.raises(ValueError):
            coupling_geometry(1, 0, 1, 0, 5, 0)

    def test_stretched_case_is_real_and_allowed(self):
        geom = coupling_geometry(3, 3, 2, 2, 5, 5)
        assert abs(geom.theta_total.imag) < 1e-9
        assert geom.beta.imag == 0.0 and geom.beta.real > 0.0

    def test_bench_interior_point(self):
        geom = coupling_geometry(*BENCH, 60, -5)
        assert abs(geom.theta_total.imag) < 1e-9
        assert geom.beta.real > 0.0
        assert classify_region(geom).kind is RegionKind.Allowed

    def test_bench_forbidden_point(self):
        geom = coupling_geometry(*BENCH, 69, -5)
        assert geom.beta.real == 0.0 and geom.beta.imag > 0.0
        assert abs(geom.theta_total.imag) > 0.0
        assert classify_region(geom).kind is RegionKind.Forbidden

    def test_geometry_closes_in_allowed_region(self):
        # the three placed vectors must satisfy the vector coupling triangle
        geom = coupling_geometry(*BENCH, 40, -5)
        lam = geom.lambdas
        assert lam[0] * cmath.cos(geom.phi1) + lam[1] * cmath.cos(geom.phi2) \
            == pytest.approx(lam[2], abs=1e-9)
        assert (lam[0] * cmath.sin(geom.phi1)
                - lam[1] * cmath.sin(geom.phi2)).real == pytest.approx(0.0, abs=1e-9)

    def test_branch_parameters_on_lattice(self):
        rng = random.Random(9)
        for _ in range(200):
            tj1, tj2 = rng.randint(1, 20), rng.randint(1, 20)
            tj3 = rng.randint(abs(tj1 - tj2), tj1 + tj2)
            if (tj1 + tj2 + tj3) % 2 or tj3 % 2:
                continue  # integer j3 only
            tm1, tm2 = rng.randint(-tj1, tj1), rng.randint(-tj2, tj2)
            if (tj1 + tm1) % 2 or (tj2 + tm2) % 2 or abs(tm1 + tm2) > tj3:
                continue
            geom = coupling_geometry(HalfInt(tj1), HalfInt(tm1), HalfInt(tj2),
                                     HalfInt(tm2), HalfInt(tj3),
                                     HalfInt(tm1 + tm2))
            _, c0, s0 = branch_parameters(geom)
            assert {abs(c0), abs(s0)} == {0.0, 1.0}


class TestRegionClassifier:
    def test_real_beta_is_allowed(self):
        geom = coupling_geometry(*BENCH, 40, -5)
        assert classify_region(geom).kind is RegionKind.Allowed

    def test_imaginary_beta_is_forbidden(self):
        geom = coupling_geometry(*BENCH, 70, -5)
        assert classify_region(geom).kind is RegionKind.Forbidden

    def test_small_beta_is_turning(self):
        geom = coupling_geometry(*BENCH, 65, -5)
        assert classify_region(geom).kind is RegionKind.Turning


class TestMeanSquare:
    def test_half_spin_desk_scale(self):
        # low-j accuracy is recorded, not asserted tightly: the local mean
        # should sit within a factor two of the exact square
        value = cg_sq_avg(0.5, 0.5, 0.5, -0.5, 1)
        exact_sq = cg_exact(CGKey.of(0.5, 0.5, 0.5, -0.5, 1, 0)) ** 2
        assert 0.5 < value / exact_sq < 2.0

    def test_large_area_limit(self):
        small = cg_sq_avg(*BENCH, 40)
        assert small < 0.1  # amplitude dies off as the area grows

    def test_region_error_outside_allowed(self):
        with pytest.raises(RegionError):
            cg_sq_avg(*BENCH, 70)

    def test_variant_ratio(self):
        std = cg_sq_avg(*BENCH, 40)
        var = cg_sq_avg(*BENCH, 40, variant=True)
        assert var / std == pytest.approx((2 * 40 + 1) / (2 * 40 + 2.0))


class TestClosedForms:
    def test_allowed_tracks_exact_inside(self):
        for j3 in range(20, 59):
            geom = coupling_geometry(*BENCH, j3, -5)
            if classify_region(geom).kind is not RegionKind.Allowed:
                continue
            exact = cg_exact(CGKey.of(*BENCH, j3, -5))
            assert cg_allowed(geom, j3) == pytest.approx(exact, abs=0.01)

    def test_allowed_amplitude_bound(self):
        for j3 in range(20, 59):
            geom = coupling_geometry(*BENCH, j3, -5)
            if classify_region(geom).kind is not RegionKind.Allowed:
                continue
            bound = 2.0 * math.sqrt((j3 + 1) / (math.pi * geom.beta.real))
            assert abs(cg_allowed(geom, j3)) <= bound + 1e-12

    def test_allowed_raises_elsewhere(self):
        with pytest.raises(RegionError):
            cg_allowed(coupling_geometry(*BENCH, 70, -5), 70)
        with pytest.raises(RegionError):
            cg_forbidden(coupling_geometry(*BENCH, 40, -5), 40)

    def test_forbidden_magnitude_ratio(self):
        # within a factor two of exact a few units past the turning point
        for j3 in (69, 70):
            geom = coupling_geometry(*BENCH, j3, -5)
            exact = cg_exact(CGKey.of(*BENCH, j3, -5))
            value = cg_forbidden(geom, j3)
            assert 0.5 < value / exact < 2.0
            assert value * exact > 0.0  # matching signs

    def test_forbidden_suppression_monotone(self):
        mags = [abs(cg_forbidden(coupling_geometry(*BENCH, j3, -5), j3))
                for j3 in (68, 69, 70)]
        assert mags[0] > mags[1] > mags[2]


class TestUniformSolution:
    def test_selection_violation_returns_zero(self):
        assert cg_wkb(1, 0, 1, 0, 2, 1) == 0.0
        assert cg_wkb(1, 1, 1, 1, 1, 2) == 0.0

    def test_bench_sweep_against_exact(self):
        for j3 in range(10, 71):
            exact = cg_exact(CGKey.of(*BENCH, j3, -5))
            wkb = cg_wkb(*BENCH, j3, -5)
            assert abs(wkb - exact) <= 0.05
            if abs(exact) > 0.01:
                assert wkb * exact > 0.0

    def test_low_j_racah_oracle(self):
        exact = cg_exact(CGKey.of(2, 0, 2, 0, 2, 0))
        assert exact == pytest.approx(-math.sqrt(2.0 / 7.0), abs=1e-12)
        assert cg_wkb(2, 0, 2, 0, 2, 0) == pytest.approx(exact, abs=0.05)

    def test_stretched_coefficient_overshoot_is_bounded(self):
        # the closed-envelope overshoot at the extreme stretched coefficient
        # converges to ~13% and never vanishes; exact value is 1
        for (j1, j2) in ((3, 2), (10, 8), (20, 15)):
            value = cg_wkb(j1, j1, j2, j2, j1 + j2, j1 + j2)
            assert cg_exact(CGKey.of(j1, j1, j2, j2, j1 + j2, j1 + j2)) == 1.0
            assert abs(value - 1.0) < 0.15

    def test_exchange_symmetry(self):
        rng = random.Random(10)
        checked = 0
        while checked < 120:
            tj1, tj2 = rng.randint(1, 16), rng.randint(1, 16)
            tj3 = rng.randint(abs(tj1 - tj2), tj1 + tj2)
            if (tj1 + tj2 + tj3) % 2:
                continue
            tm1, tm2 = rng.randint(-tj1, tj1), rng.randint(-tj2, tj2)
            if (tj1 + tm1) % 2 or (tj2 + tm2) % 2 or abs(tm1 + tm2) > tj3:
                continue
            args = [as_halfint(t / 2) for t in (tj1, tm1, tj2, tm2, tj3, tm1 + tm2)]
            direct = cg_wkb(*args)
            swapped = cg_wkb(args[2], args[3], args[0], args[1], args[4], args[5])
            phase = parity_phase(as_halfint((tj1 + tj2 - tj3) / 2))
            assert swapped == pytest.approx(phase * direct, abs=1e-6)
            checked += 1

    def test_half_integer_j3_through_slot_symmetry(self):
        rng = random.Random(11)
        checked = 0
        while checked < 60:
            tj1, tj2 = rng.randint(0, 14), rng.randint(0, 14)
            if (tj1 + tj2) % 2 == 0:
                continue
            tj3 = rng.randint(abs(tj1 - tj2), tj1 + tj2)
            if (tj1 + tj2 + tj3) % 2:
                continue
            tm1, tm2 = rng.randint(-tj1, tj1), rng.randint(-tj2, tj2)
            if (tj1 + tm1) % 2 or (tj2 + tm2) % 2 or abs(tm1 + tm2) > tj3:
                continue
            key = CGKey(HalfInt(tj1), HalfInt(tm1), HalfInt(tj2), HalfInt(tm2),
                        HalfInt(tj3), HalfInt(tm1 + tm2))
            exact = cg_exact(key)
            if abs(exact) < 0.02:
                continue
            wkb = cg_wkb(key.j1, key.m1, key.j2, key.m2, key.j3, key.m3)
            assert wkb * exact > 0.0
            checked += 1

    def test_agrees_with_closed_form_deep_inside(self):
        for j3 in range(22, 57):
            geom = coupling_geometry(*BENCH, j3, -5)
            if classify_region(geom).kind is not RegionKind.Allowed:
                continue
            assert abs(cg_wkb(*BENCH, j3, -5) - cg_allowed(geom, j3)) <= 0.02
