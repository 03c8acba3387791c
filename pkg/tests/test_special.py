import math
from fractions import Fraction

import numpy as np
import pytest
from scipy.special import airy as scipy_airy

from vmw.special import (ASYMPTOTIC_CUTOFF, SERIES_CUTOFF, acos_complex,
                         acosh_real_branch, airy_ai, airy_ai_prime, airy_bi,
                         airy_bi_prime, airy_all_unrestricted, std_normal_cdf,
                         std_normal_pdf)


def series_oracle_at_zero() -> tuple[float, float]:
    """Ai(0), Bi(0) from the gamma-function closed forms."""
    ai0 = 3.0 ** (-2.0 / 3.0) / math.gamma(2.0 / 3.0)
    bi0 = 3.0 ** (-1.0 / 6.0) / math.gamma(2.0 / 3.0)
    return ai0, bi0


class TestAiry:
    def test_origin_values(self):
        ai0, bi0 = series_oracle_at_zero()
        assert airy_ai(0.0) == pytest.approx(ai0, abs=1e-9)
        assert airy_bi(0.0) == pytest.approx(bi0, abs=1e-9)
        assert airy_ai(0.0) == pytest.approx(0.3550280539, abs=1e-9)
        assert airy_bi(0.0) == pytest.approx(0.6149266274, abs=1e-9)

    @pytest.mark.parametrize("x", [-5.0, 0.0, 3.0])
    def test_wronskian_spot_values(self, x):
        w = airy_ai(x) * airy_bi_prime(x) - airy_ai_prime(x) * airy_bi(x)
        assert w == pytest.approx(1.0 / math.pi, abs=1e-9)

    def test_wronskian_across_domain(self):
        worst = 0.0
        for x in np.linspace(-30.0, 10.0, 1201):
            ai, bi, aip, bip = airy_all_unrestricted(float(x))
            worst = max(worst, abs(ai * bip - aip * bi - 1.0 / math.pi))
        assert worst < 1e-9

    def test_ode_finite_difference(self):
        # truncation of the central difference is ~(x^2 Ai + 2 Ai') h^2 / 12,
        # which stays under 1e-6 at this spacing for |x| <= 6
        h = 1e-3
        for x in np.linspace(-6.0, 6.0, 25):
            x = float(x)
            second = (airy_ai(x + h) - 2.0 * airy_ai(x) + airy_ai(x - h)) / h**2
            assert second == pytest.approx(x * airy_ai(x), abs=1e-6)

    def test_matches_scipy(self):
        for x in np.linspace(-29.5, 9.5, 157):
            ai, bi, aip, bip = airy_all_unrestricted(float(x))
            sa, sap, sb, sbp = scipy_airy(float(x))
            for mine, ref in ((ai, sa), (bi, sb), (aip, sap), (bip, sbp)):
                assert abs(mine - ref) <= 1e-9 * max(1.0, abs(ref))

    def test_branch_overlap_at_series_cutoff(self):
        from vmw.special import _AI0, _AIP0, _BI0, _BIP0, _series_exact, _series_float
        for x0 in (-SERIES_CUTOFF, SERIES_CUTOFF):
            f, g, fp, gp = _series_float(x0)
            float_branch = (float(_AI0) * f + float(_AIP0) * g,
                            float(_BI0) * f + float(_BIP0) * g,
                            float(_AI0) * fp + float(_AIP0) * gp,
                            float(_BI0) * fp + float(_BIP0) * gp)
            exact_branch = _series_exact(x0)
            for lo, hi in zip(float_branch, exact_branch):
                assert abs(hi - lo) <= 1e-9 * max(1.0, abs(hi))

    def test_branch_overlap_at_asymptotic_cutoff(self):
        from vmw.special import (_asymptotic_neg, _asymptotic_pos, _series_exact)
        for x0, asym in ((-ASYMPTOTIC_CUTOFF, _asymptotic_neg),
                         (ASYMPTOTIC_CUTOFF, _asymptotic_pos)):
            for lo, hi in zip(_series_exact(x0), asym(x0)):
                assert abs(hi - lo) <= 1e-9 * max(1.0, abs(hi))

    def test_domain_guard(self):
        with pytest.raises(ValueError):
            airy_ai(10.5)
        with pytest.raises(ValueError):
            airy_bi(-31.0)

    def test_unrestricted_extends_beyond_domain(self):
        ai, _, _, _ = airy_all_unrestricted(-60.0)
        sa, _, _, _ = scipy_airy(-60.0)
        assert ai == pytest.approx(sa, abs=1e-10)


class TestNormal:
    def test_pdf_at_zero(self):
        assert std_normal_pdf(0.0) == pytest.approx(0.3989422804, abs=1e-10)

    def test_cdf_examples(self):
        assert std_normal_cdf(0.0) == 0.5
        # quadrature oracle for the upper-tail value
        xs = np.linspace(-12.0, 1.96, 2_000_001)
        quad = np.trapezoid(np.exp(-0.5 * xs * xs) / math.sqrt(2 * math.pi), xs)
        assert std_normal_cdf(1.96) == pytest.approx(quad, abs=1e-9)
        assert std_normal_cdf(1.96) == pytest.approx(0.9750021, abs=5e-7)

    def test_cdf_symmetry(self):
        for x in np.linspace(-8.0, 8.0, 101):
            assert abs(std_normal_cdf(float(x)) + std_normal_cdf(float(-x)) - 1.0) < 1e-14


class TestComplexArccos:
    def test_real_segment_matches_acos(self):
        for x in np.linspace(-1.0, 1.0, 21):
            z = acos_complex(complex(x))
            assert z.real == pytest.approx(math.acos(float(x)), abs=1e-12)
            assert abs(z.imag) < 1e-12

    def test_beyond_one_follows_log_form(self):
        # log-form oracle: acos z = -i log(z + i sqrt(1 - z^2))
        z = acos_complex(2.0)
        assert z.real == pytest.approx(0.0, abs=1e-12)
        assert z.imag == pytest.approx(math.acosh(2.0), abs=1e-12)
        assert z.imag == pytest.approx(1.3170, abs=1e-4)
        # left of the cut the log form lands in the lower half plane; the
        # cosine consistency check pins the branch
        z = acos_complex(-2.0)
        assert z.real == pytest.approx(math.pi, abs=1e-12)
        assert z.imag == pytest.approx(-math.acosh(2.0), abs=1e-12)
        import cmath
        assert cmath.cos(z) == pytest.approx(-2.0, abs=1e-12)

    def test_acosh_branch(self):
        assert acosh_real_branch(1.0) == 0.0
        assert acosh_real_branch(1.0 - 1e-13) == 0.0
        assert acosh_real_branch(2.0) == pytest.approx(math.acosh(2.0))
        with pytest.raises(ValueError):
            acosh_real_branch(0.9)
