"""Transverse m-state correlations evaluated three ways (delocalization-angle
integral, closed-form sum, exact product-basis operators) and the geometric
gyromagnetic ratio.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction

from .exact import CGKey, cg_exact, pairwise_xx_expectation
from .qnum import HalfInt, HalfIntLike, as_halfint, m_range, triangle_ok
from .special import acos_complex


@dataclass(frozen=True)
class CorrelationInput:
    j1: HalfInt
    j2: HalfInt
    j3: HalfInt
    m3: HalfInt

    def __post_init__(self) -> None:
        if not triangle_ok(self.j1, self.j2, self.j3):
            raise ValueError(f"triangle rule fails for "
                             f"({self.j1}, {self.j2}, {self.j3})")
        if abs(self.m3.twice) > self.j3.twice:
            raise ValueError("|m3| <= j3 violated")

    @classmethod
    def of(cls, j1: HalfIntLike, j2: HalfIntLike, j3: HalfIntLike,
           m3: HalfIntLike) -> "CorrelationInput":
        return cls(*(as_halfint(v) for v in (j1, j2, j3, m3)))


@dataclass(frozen=True)
class CosPhi12:
    value: float
    in_range: bool  # False marks a classically forbidden configuration


def _m_perp_sq(j: HalfInt, m: HalfInt) -> float:
    return j.jjp1() - float(m) * float(m)


def cos_phi12(inp: CorrelationInput, m1: HalfIntLike) -> CosPhi12:
    """Azimuthal opening between the two coupled vectors for one decomposition
    term; values beyond [-1, 1] are reported as-is with a flag."""
    m1h = as_halfint(m1)
    m2h = inp.m3 - m1h
    p1_sq = _m_perp_sq(inp.j1, m1h)
    p2_sq = _m_perp_sq(inp.j2, m2h)
    if p1_sq <= 0.0 or p2_sq <= 0.0:
        raise ZeroDivisionError(
            "a transverse projection vanishes (zero angular momentum)")
    numerator = (inp.j3.jjp1() - inp.j1.jjp1() - inp.j2.jjp1()
                 - 2.0 * float(m1h) * float(m2h))
    value = numerator / (2.0 * math.sqrt(p1_sq) * math.sqrt(p2_sq))
    return CosPhi12(value, abs(value) <= 1.0)


def _terms(inp: CorrelationInput):
    for m1 in m_range(inp.j1):
        m2 = inp.m3 - m1
        if abs(m2.twice) > inp.j2.twice:
            continue
        c = cg_exact(CGKey(inp.j1, m1, inp.j2, m2, inp.j3, inp.m3))
        if c != 0.0:
            yield m1, m2, c * c


def mstate_correlation_vm(inp: CorrelationInput, quadrature_n: int = 256) -> float:
    """Transverse correlation by integrating the per-term projection product
    over the shared delocalization angle, cross-checked against the closed
    form before returning."""
    if quadrature_n < 64:
        raise ValueError("need at least 64 quadrature nodes")
    nodes = [2.0 * math.pi * (k + 0.5) / quadrature_n for k in range(quadrature_n)]
    total = 0.0
    for m1, m2, weight in _terms(inp):
        p1 = math.sqrt(_m_perp_sq(inp.j1, m1))
        p2 = math.sqrt(_m_perp_sq(inp.j2, m2))
        phi12 = acos_complex(complex(cos_phi12(inp, m1).value))
        acc = 0.0
        for big_phi in nodes:
            acc += (cmath.cos(phi12 + big_phi) * cmath.cos(complex(big_phi))).real
        total += weight * p1 * p2 * acc / quadrature_n
    closed = mstate_correlation_closed(inp)
    if abs(total - closed) >= 1e-10:
        raise AssertionError(
            f"angle integral {total} disagrees with closed form {closed}")
    return total


def mstate_correlation_closed(inp: CorrelationInput) -> float:
    """Closed-form sum over the decomposition weights; exact quantum result."""
    total = 0.0
    for m1, m2, weight in _terms(inp):
        bracket = (inp.j3.jjp1() - inp.j1.jjp1() - inp.j2.jjp1()
                   - 2.0 * float(m1) * float(m2))
        total += weight * bracket
    return 0.25 * total


def mstate_correlation_exact(inp: CorrelationInput) -> float:
    """Product-basis operator oracle for the same matrix element."""
    return pairwise_xx_expectation(inp.j1, inp.j2, inp.j3, inp.m3)


def g_factor(spin: HalfIntLike, projection: HalfIntLike) -> float:
    """(M + S cos(theta_M)) / M with cos(theta_M) = M/S, evaluated in exact
    rational arithmetic so the algebraic identity survives to the float."""
    s, m = as_halfint(spin), as_halfint(projection)
    if s.twice <= 0:
        raise ValueError("spin must be positive")
    if abs(m.twice) > s.twice or (s.twice - m.twice) % 2 != 0:
        raise ValueError(f"invalid projection {m} for spin {s}")
    if m.twice == 0:
        raise ZeroDivisionError("gyromagnetic ratio undefined at M = 0")
    s_frac, m_frac = s.as_fraction(), m.as_fraction()
    cos_theta = m_frac / s_frac
    return float((m_frac + s_frac * cos_theta) / m_frac)
