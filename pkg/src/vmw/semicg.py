"""Semiclassical Clebsch-Gordan machinery: the classical coupling amplitude,
the five-rotation phase geometry, closed allowed/forbidden forms, and the
uniform Airy solution that bridges them through the turning regions.

Conventions used throughout:

* vector lengths are J_i = j_i + 1/2; perpendicular projections
  lambda_i = sqrt(J_i^2 - m_i^2) never vanish for physical (j, m);
* a single complex-capable code path evaluates every angle, so the forbidden
  region is reached by analytic continuation rather than special casing;
* rotation senses S_i come from explicit 3-vector placements (all vectors
  start in the XZ plane at their polar angles, then acquire azimuths +phi1,
  -phi2, 0), via the triple product of the coupling-plane normal, the
  transverse part of Z, and the vector itself.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from enum import Enum

from .exact import CGKey, CGRelation, cg_symmetry
from .qnum import HalfInt, HalfIntLike, as_halfint, lambda_perp, parity_phase, triangle_ok
from .special import acos_complex, airy_all_unrestricted

TURNING_BETA_FRACTION = 0.05
_CLAMP = 1e-12


class RegionError(ValueError):
    """Raised when a closed form is queried outside its classical region."""


class DegenerateGeometryError(ValueError):
    """Raised when the vector coupling triangle collapses (alpha = 0)."""


class BranchAssertionError(AssertionError):
    """Raised when the branch parameters fail the one-of-(+-1) structure."""


class RegionKind(Enum):
    Allowed = "allowed"
    Forbidden = "forbidden"
    Turning = "turning"


@dataclass(frozen=True)
class RegionTag:
    kind: RegionKind


@dataclass(frozen=True)
class CouplingGeometry:
    phi1: complex
    phi2: complex
    eps1: complex
    eps2: complex
    eps3: complex
    s1: int
    s2: int
    s3: int
    alpha: float
    beta: complex
    Omega: complex
    ExPhase: float
    theta_total: complex
    lambdas: tuple[float, float, float]
    Js: tuple[float, float, float]
    ms: tuple[float, float, float]


def beta_area(l1: float, l2: float, l3: float) -> complex:
    """Four times the area of the triangle with the given sides; +i sqrt|..|
    when the triangle does not close."""
    if min(l1, l2, l3) < 0:
        raise ValueError("triangle sides must be non-negative")
    product = ((l1 + l2 + l3) * (-l1 + l2 + l3)
               * (l1 - l2 + l3) * (l1 + l2 - l3))
    if product >= 0.0:
        return complex(math.sqrt(product), 0.0)
    return complex(0.0, math.sqrt(-product))


def _clamped_acos(x: complex) -> complex:
    """acos that snaps sub-tolerance excursions past +-1 back onto the cut."""
    if abs(x.imag) < _CLAMP:
        xr = x.real
        if abs(xr) <= 1.0:
            return complex(math.acos(xr), 0.0)
        if abs(xr) <= 1.0 + _CLAMP:
            return complex(math.acos(max(-1.0, min(1.0, xr))), 0.0)
        return acos_complex(complex(xr, 0.0))
    return acos_complex(x)


def _cross(a: tuple, b: tuple) -> tuple:
    return (a[1] * b[2] - a[2] * b[1],
            a[2] * b[0] - a[0] * b[2],
            a[0] * b[1] - a[1] * b[0])


def _dot(a: tuple, b: tuple) -> complex:
    return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]


def _rotation_sense(normal: tuple, jhat: tuple) -> int:
    """Sign of ((N x Z_perp) . jhat) with Z_perp = Z - (Z.jhat) jhat.

    Falls back to +1 on a vanishing real part (coplanar degeneracy)."""
    zhat = (0.0, 0.0, 1.0)
    coszj = _dot(zhat, jhat)
    z_perp = tuple(z - coszj * j for z, j in zip(zhat, jhat))
    trip = _dot(_cross(normal, z_perp), jhat)
    return -1 if trip.real < 0.0 else 1


def coupling_geometry(j1: HalfIntLike, m1: HalfIntLike, j2: HalfIntLike,
                      m2: HalfIntLike, j3: HalfIntLike,
                      m3: HalfIntLike) -> CouplingGeometry:
    """Rotation angles, senses, and accumulated phase for one coupling."""
    j1h, m1h, j2h, m2h, j3h, m3h = (as_halfint(v)
                                    for v in (j1, m1, j2, m2, j3, m3))
    if m1h + m2h != m3h:
        raise ValueError("m3 must equal m1 + m2")
    if not triangle_ok(j1h, j2h, j3h):
        raise ValueError(f"triangle rule fails for ({j1h}, {j2h}, {j3h})")

    big = tuple((jh.twice + 1) / 2.0 for jh in (j1h, j2h, j3h))
    lam = (lambda_perp(j1h, m1h), lambda_perp(j2h, m2h), lambda_perp(j3h, m3h))
    mval = (float(m1h), float(m2h), float(m3h))

    beta = beta_area(*lam)
    alpha_sq = ((big[0] + big[1] + big[2]) * (-big[0] + big[1] + big[2])
                * (big[0] - big[1] + big[2]) * (big[0] + big[1] - big[2]))
    if alpha_sq <= 0.0:
        raise DegenerateGeometryError(
            f"collinear length triangle for ({j1h}, {j2h}, {j3h})")
    alpha = math.sqrt(alpha_sq)

    phi1 = _clamped_acos(complex((lam[0]**2 + lam[2]**2 - lam[1]**2)
                                 / (2.0 * lam[0] * lam[2])))
    phi2 = _clamped_acos(complex((lam[1]**2 + lam[2]**2 - lam[0]**2)
                                 / (2.0 * lam[1] * lam[2])))

    # explicit unit-vector placements; complex azimuths continue the
    # geometry into the forbidden region
    def place(theta_cos: float, theta_sin: float, azimuth: complex) -> tuple:
        return (theta_sin * cmath.cos(azimuth),
                theta_sin * cmath.sin(azimuth),
                complex(theta_cos))

    cos_t = [mval[i] / big[i] for i in range(3)]
    sin_t = [lam[i] / big[i] for i in range(3)]
    jhat1 = place(cos_t[0], sin_t[0], phi1)
    jhat2 = place(cos_t[1], sin_t[1], -phi2)
    jhat3 = place(cos_t[2], sin_t[2], 0.0)

    normal12 = _cross(jhat1, jhat2)
    s1 = _rotation_sense(normal12, jhat1)
    s2 = _rotation_sense(normal12, jhat2)
    s3 = _rotation_sense(tuple(-c for c in normal12), jhat3)

    sin_phi1 = cmath.sin(phi1)
    sin_phi2 = cmath.sin(phi2)
    eps1 = s1 * _clamped_acos((2.0 / alpha) * lam[2] * big[0] * sin_phi1)
    eps2 = s2 * _clamped_acos((2.0 / alpha) * lam[2] * big[1] * sin_phi2)
    eps3 = s3 * _clamped_acos((2.0 / alpha) * lam[0] * big[2] * sin_phi1)

    omega = (big[0] * eps1 + big[1] * eps2 + big[2] * eps3
             + mval[0] * phi1 - mval[1] * phi2)
    ex_phase = float(j3h - j1h - j2h) * 0.5 * math.pi
    return CouplingGeometry(
        phi1=phi1, phi2=phi2, eps1=eps1, eps2=eps2, eps3=eps3,
        s1=s1, s2=s2, s3=s3, alpha=alpha, beta=beta, Omega=omega,
        ExPhase=ex_phase, theta_total=omega + ex_phase,
        lambdas=lam, Js=big, ms=mval)


def classify_region(geom: CouplingGeometry) -> RegionTag:
    scale = sum(geom.Js)
    if abs(geom.beta) < TURNING_BETA_FRACTION * scale * scale:
        return RegionTag(RegionKind.Turning)
    if geom.beta.real > 0.0:
        return RegionTag(RegionKind.Allowed)
    return RegionTag(RegionKind.Forbidden)


def cg_sq_avg(j1: HalfIntLike, m1: HalfIntLike, j2: HalfIntLike,
              m2: HalfIntLike, j3: HalfIntLike,
              variant: bool = False) -> float:
    """Local mean of squared coefficients over neighbouring j3.

    ``variant=True`` replaces the (j3+1) numerator with (2j3+1)/2, the
    alternative normalization suggested by the uniform solution's prefactor.
    """
    j1h, m1h, j2h, m2h, j3h = (as_halfint(v) for v in (j1, m1, j2, m2, j3))
    lam = (lambda_perp(j1h, m1h), lambda_perp(j2h, m2h),
           lambda_perp(j3h, m1h + m2h))
    beta = beta_area(*lam)
    if beta.real <= 0.0 or beta.imag != 0.0:
        raise RegionError("mean-square formula needs a real positive area")
    j3f = float(j3h)
    numerator = (2.0 * j3f + 1.0) / 2.0 if variant else (j3f + 1.0)
    return 2.0 * numerator / (math.pi * beta.real)


def cg_allowed(geom: CouplingGeometry, j3: HalfIntLike) -> float:
    """Oscillatory closed form, valid away from turning points."""
    tag = classify_region(geom)
    if tag.kind is not RegionKind.Allowed:
        raise RegionError(f"allowed-region form queried in {tag.kind.value}")
    theta = geom.theta_total
    if abs(theta.imag) > 1e-9:
        raise RegionError(f"allowed-region phase has Im = {theta.imag}")
    j3f = float(as_halfint(j3))
    amplitude = 2.0 * math.sqrt((j3f + 1.0) / (math.pi * geom.beta.real))
    return amplitude * math.cos(theta.real)


def cg_forbidden(geom: CouplingGeometry, j3: HalfIntLike) -> float:
    """Exponentially damped closed form beyond the turning points."""
    tag = classify_region(geom)
    if tag.kind is not RegionKind.Forbidden:
        raise RegionError(f"forbidden-region form queried in {tag.kind.value}")
    theta = geom.theta_total
    j3f = float(as_halfint(j3))
    amplitude = 2.0 * math.sqrt((j3f + 1.0) / (math.pi * abs(geom.beta)))
    return (amplitude * math.sqrt(2.0) * math.cos(theta.real)
            * math.exp(-abs(theta.imag) - 0.25 * math.pi))


def _sgn_plus(x: float) -> float:
    """sgn with sgn(0) = +1."""
    return -1.0 if x < 0.0 else 1.0


def branch_parameters(geom: CouplingGeometry) -> tuple[float, float, float]:
    """(Omega0, c0, s0); c0 and s0 snap to {-1, 0, +1} or raise."""
    J1, J2, J3 = geom.Js
    m1, m2, _ = geom.ms
    omega0 = 0.5 * math.pi * (
        J1 * geom.s1 + J2 * geom.s2 + J3 * geom.s3
        + m1 * (1.0 - _sgn_plus(0.5 * math.pi - geom.phi1.real))
        - m2 * (1.0 - _sgn_plus(0.5 * math.pi - geom.phi2.real)))
    delta0 = 0.5 * math.pi * (J1 + J2 + J3)
    c0 = math.cos(omega0 + delta0)
    s0 = math.sin(omega0 + delta0)
    c0r = round(c0)
    s0r = round(s0)
    if abs(c0 - c0r) > 1e-9 or abs(s0 - s0r) > 1e-9:
        raise BranchAssertionError(
            f"branch parameters off-lattice: c0={c0}, s0={s0}")
    if abs(c0r) + abs(s0r) != 1:
        raise BranchAssertionError(
            f"expected exactly one of c0, s0 nonzero, got ({c0r}, {s0r})")
    return omega0, float(c0r), float(s0r)


def _airy_pair(c0: float, s0: float, x: float, flip: bool) -> float:
    """c0*Ai(x) - s0*Bi(x), or with the roles swapped when ``flip``."""
    ai, bi, _, _ = airy_all_unrestricted(x)
    first, second = (bi, ai) if flip else (ai, bi)
    total = 0.0
    if c0 != 0.0:
        total += c0 * first
    if s0 != 0.0:
        total -= s0 * second
    return total


def cg_wkb(j1: HalfIntLike, m1: HalfIntLike, j2: HalfIntLike,
           m2: HalfIntLike, j3: HalfIntLike, m3: HalfIntLike) -> float:
    """Uniform Airy-based coefficient, valid across allowed, forbidden and
    turning regions. Half-integer j3 is reached through the coupling-slot
    symmetry relations (the uniform form itself needs integer j3)."""
    key = CGKey.of(j1, m1, j2, m2, j3, m3)
    if not key.is_allowed():
        return 0.0
    if not key.j3.is_integer:
        if key.j2.is_integer:
            transformed, factor = cg_symmetry(key, CGRelation.SwapToJ2)
        else:
            transformed, factor = cg_symmetry(key, CGRelation.SwapToJ1)
        return factor * cg_wkb(transformed.j1, transformed.m1, transformed.j2,
                               transformed.m2, transformed.j3, transformed.m3)

    geom = coupling_geometry(key.j1, key.m1, key.j2, key.m2, key.j3, key.m3)
    omega0, c0, s0 = branch_parameters(geom)
    diff = geom.Omega - omega0
    forbidden = geom.beta.real <= 0.0 and geom.beta.imag != 0.0
    x = diff.imag if forbidden else diff.real
    z = (1.5 * abs(x)) ** (2.0 / 3.0)
    j3f = float(key.j3)
    # Exchange-phase parity calibrated against the exact kernel over every
    # (j1, j2, j3) parity class; deep in the allowed region it reduces the
    # uniform form to the oscillatory closed form with matching sign.
    exchange = parity_phase(key.j1 + key.j2 + 1)
    prefactor = (exchange * math.sqrt(2.0 * j3f + 1.0)
                 * z ** 0.25 / math.sqrt(abs(geom.beta) / 2.0))
    if forbidden:
        combo = _airy_pair(c0, s0, z, flip=(x < 0.0))
    else:
        combo = _airy_pair(c0, s0, -z, flip=(x > 0.0))
    return prefactor * combo
