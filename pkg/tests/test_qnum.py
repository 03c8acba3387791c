import math
import random

import pytest

from vmw.qnum import (EulerAngles, HalfInt, JM, NormConvention, as_halfint,
                      lambda_perp, m_range, parity_phase, theta_m, triangle_ok)


class TestHalfInt:
    def test_parse_forms(self):
        assert HalfInt.parse("7/2").twice == 7
        assert HalfInt.parse("3").twice == 6
        assert HalfInt.parse("3.5").twice == 7
        assert HalfInt.parse("-1/2").twice == -1

    def test_parse_rejects_non_half_integer(self):
        with pytest.raises(ValueError):
            HalfInt.parse("0.3")
        with pytest.raises(ValueError):
            HalfInt.parse("1/3")

    def test_str_round_trip(self):
        for twice in range(-9, 10):
            h = HalfInt(twice)
            assert HalfInt.parse(str(h)) == h

    def test_arithmetic_round_trip_exact(self):
        rng = random.Random(0)
        for _ in range(500):
            a = HalfInt(rng.randint(-200, 200))
            b = HalfInt(rng.randint(-200, 200))
            assert (a + b) - b == a
            assert -(-a) == a

    def test_float_and_fraction(self):
        h = HalfInt(7)
        assert float(h) == 3.5
        assert h.as_fraction() == 3.5
        assert h.jjp1() == 3.5 * 4.5

    def test_ordering_uses_value(self):
        assert HalfInt(3) < HalfInt(4)
        assert abs(HalfInt(-5)) == HalfInt(5)

    def test_parity_phase(self):
        assert parity_phase(HalfInt(4)) == 1
        assert parity_phase(HalfInt(6) - HalfInt(2)) == 1
        assert parity_phase(3) == -1
        with pytest.raises(ValueError):
            parity_phase(HalfInt(3))


class TestJM:
    def test_validation(self):
        JM(HalfInt(3), HalfInt(1))
        with pytest.raises(ValueError):
            JM(HalfInt(3), HalfInt(5))
        with pytest.raises(ValueError):
            JM(HalfInt(3), HalfInt(2))  # parity mismatch
        with pytest.raises(ValueError):
            JM(HalfInt(-2), HalfInt(0))


class TestEulerAngles:
    def test_wrapping_at_construction(self):
        ang = EulerAngles(phi=-0.5, theta=1.0, chi=7.0)
        assert 0.0 <= ang.phi < 2 * math.pi
        assert 0.0 <= ang.chi < 2 * math.pi
        assert ang.phi == pytest.approx(2 * math.pi - 0.5)

    def test_theta_range_enforced(self):
        with pytest.raises(ValueError):
            EulerAngles(0.0, 3.5, 0.0)


class TestThetaM:
    def test_half_spin_value(self):
        assert theta_m(0.5, 0.5, NormConvention.JPlusHalf) == pytest.approx(math.pi / 3)

    def test_sqrt_convention_oracle(self):
        # direct arccos evaluation; sin of the result is 0.30151
        angle = theta_m(10, 10, NormConvention.SqrtJJPlus1)
        assert angle == pytest.approx(math.acos(10 / math.sqrt(110)), abs=1e-12)
        assert math.sin(angle) == pytest.approx(math.sqrt(10.0 / 110.0), abs=1e-12)

    def test_zero_projection(self):
        for conv in NormConvention:
            assert theta_m(5, 0, conv) == pytest.approx(math.pi / 2)

    def test_domain_errors(self):
        with pytest.raises(ValueError):
            theta_m(0, 0)
        with pytest.raises(ValueError):
            theta_m(1, 2)

    def test_reflection_property(self):
        rng = random.Random(1)
        for _ in range(200):
            tj = rng.randint(1, 40)
            tm = rng.randrange(-tj, tj + 1, 2)
            j, m = HalfInt(tj), HalfInt(tm)
            assert theta_m(j, -m) == pytest.approx(math.pi - theta_m(j, m), abs=1e-12)


class TestTriangle:
    @pytest.mark.parametrize("j1,j2,j3,ok", [
        (0.5, 0.5, 1, True),
        (0.5, 0.5, 0.5, False),
        (40, 30, 5, False),
        (2, 3, 1, True),
        (1.5, 1, 0.5, True),
    ])
    def test_examples(self, j1, j2, j3, ok):
        assert triangle_ok(j1, j2, j3) is ok

    def test_rejects_negative(self):
        with pytest.raises(ValueError):
            triangle_ok(-1, 1, 1)


class TestLambdaPerp:
    def test_examples(self):
        assert lambda_perp(10, 10) == pytest.approx(math.sqrt(10.5**2 - 100), abs=1e-12)
        assert lambda_perp(5, 0) == pytest.approx(5.5)
        assert lambda_perp(40, 10) == pytest.approx(math.sqrt(40.5**2 - 100), abs=1e-12)
        assert lambda_perp(40, 10) == pytest.approx(39.2460, abs=5e-5)

    def test_pythagorean_identity(self):
        rng = random.Random(2)
        for _ in range(300):
            tj = rng.randint(0, 80)
            tm = rng.randrange(-tj, tj + 1, 2) if tj else 0
            j, m = HalfInt(tj), HalfInt(tm)
            lam = lambda_perp(j, m)
            big_j = (tj + 1) / 2.0
            assert lam * lam + float(m) ** 2 == pytest.approx(big_j**2, rel=1e-12)


def test_m_range_enumeration():
    values = [float(m) for m in m_range(HalfInt(3))]
    assert values == [-1.5, -0.5, 0.5, 1.5]


def test_as_halfint_accepts_mixed_inputs():
    assert as_halfint(2) == HalfInt(4)
    assert as_halfint(2.5) == HalfInt(5)
    assert as_halfint("5/2") == HalfInt(5)
    assert as_halfint(HalfInt(3)) == HalfInt(3)
