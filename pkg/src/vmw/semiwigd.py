"""Semiclassical Wigner d-functions: region classifier, complex phase,
simple asymptotic forms, the uniform Airy solution, symmetry reduction to the
canonical wedge, and the large-partner coupling limit.

The printed closed forms are trusted only inside the canonical wedge
(0 < theta <= pi/2, m > 0, |m'| <= m); every query is first mapped there by
the symmetry relations. Wedge-boundary queries (m' = +-m, m = 0) go to the
exact kernel at small j and to the simple asymptotic forms above it.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .exact import CGKey, cg_exact, wigner_d_exact
from .qnum import HalfInt, HalfIntLike, as_halfint, parity_phase
from .special import acosh_real_branch, airy_all_unrestricted

EXACT_FALLBACK_MAX_J = HalfInt(40)  # j <= 20
_EDGE = 1e-12


class TurningRegionError(ValueError):
    """Raised when a simple asymptotic form is queried at a turning point."""


class SingularAngleError(ValueError):
    """Raised when the phase is queried at theta in {0, pi}."""


@dataclass(frozen=True)
class WigdQuery:
    j: HalfInt
    mp: HalfInt
    m: HalfInt
    theta: float

    @classmethod
    def of(cls, j: HalfIntLike, mp: HalfIntLike, m: HalfIntLike,
           theta: float) -> "WigdQuery":
        jh, mph, mh = as_halfint(j), as_halfint(mp), as_halfint(m)
        if abs(mph.twice) > jh.twice or abs(mh.twice) > jh.twice:
            raise ValueError("|m'|, |m| must not exceed j")
        if (jh.twice - mph.twice) % 2 or (jh.twice - mh.twice) % 2:
            raise ValueError("m', m must differ from j by integers")
        if not 0.0 <= theta <= math.pi:
            raise ValueError(f"theta must lie in [0, pi], got {theta}")
        return cls(jh, mph, mh, theta)

    @property
    def big_j(self) -> float:
        return (self.j.twice + 1) / 2.0


def r_classifier(q: WigdQuery) -> float:
    """Positive in the classically allowed region, negative in the forbidden."""
    big_j = q.big_j
    m, mp = float(q.m), float(q.mp)
    s = math.sin(q.theta)
    return big_j * big_j * s * s - m * m - mp * mp + 2.0 * m * mp * math.cos(q.theta)


def wigd_symmetry(q: WigdQuery) -> tuple[WigdQuery, int]:
    """Map into the canonical wedge; returns (query, sign) with
    d(original) = sign * d(canonical).

    Deterministic order: theta-reflection, then m/m' swap, then joint negation.
    """
    j, mp, m, theta = q.j, q.mp, q.m, q.theta
    sign = 1
    if theta > 0.5 * math.pi:
        sign *= parity_phase(j - m)
        mp = -mp
        theta = math.pi - theta
    if abs(mp.twice) > abs(m.twice):
        sign *= parity_phase(mp - m)
        mp, m = m, mp
    if m.twice < 0:
        # joint negation carries (-1)^(m'-m); the phase-free relation is the
        # one that also transposes
        sign *= parity_phase(mp - m)
        mp, m = -mp, -m
    return WigdQuery(j, mp, m, theta), sign


def _phase_args(q: WigdQuery) -> tuple[float, float, float]:
    big_j = q.big_j
    m, mp = float(q.m), float(q.mp)
    s = math.sin(q.theta)
    c = math.cos(q.theta)
    root_mp = math.sqrt(big_j * big_j - mp * mp)
    root_m = math.sqrt(big_j * big_j - m * m)
    a1 = (m - mp * c) / (s * root_mp)
    a2 = (m * mp - big_j * big_j * c) / (root_m * root_mp)
    a3 = (m * c - mp) / (s * root_m)
    return a1, a2, a3


def _acos_clamped(x: float) -> float:
    return math.acos(max(-1.0, min(1.0, x)))


def _re_acos_beyond(x: float) -> float:
    """Real part of acos for |x| >= 1: 0 on the right cut, pi on the left."""
    return 0.0 if x >= 0.0 else math.pi


def wigd_phase(q: WigdQuery) -> complex:
    """Accumulated rotation phase; complex in the forbidden region, where the
    imaginary part follows the hyperbolic continuation with the branch signs
    split at m' = m cos(theta)."""
    if q.theta < _EDGE or q.theta > math.pi - _EDGE:
        raise SingularAngleError(f"phase undefined at theta = {q.theta}")
    big_j = q.big_j
    m, mp = float(q.m), float(q.mp)
    a1, a2, a3 = _phase_args(q)
    r = r_classifier(q)
    if r >= 0.0:
        re = (-mp * _acos_clamped(a1) + big_j * _acos_clamped(a2)
              + m * _acos_clamped(a3) - 0.25 * math.pi)
        return complex(re, 0.0)
    re = (-mp * _re_acos_beyond(a1) + big_j * _re_acos_beyond(a2)
          + m * _re_acos_beyond(a3) - 0.25 * math.pi)
    first_sign = -1.0 if mp < m * math.cos(q.theta) else 1.0
    im_minus_theta = (first_sign * mp * acosh_real_branch(abs(a1))
                      - big_j * acosh_real_branch(abs(a2))
                      + m * acosh_real_branch(abs(a3)))
    return complex(re, -im_minus_theta)


def _route_to_exact(q: WigdQuery) -> bool:
    return q.j.twice <= EXACT_FALLBACK_MAX_J.twice


def _on_wedge_boundary(q: WigdQuery) -> bool:
    return abs(q.mp.twice) == q.m.twice or q.m.twice == 0


def wigd_asymptotic(q: WigdQuery) -> float:
    """Simple oscillatory / exponentially damped closed forms; diverges at
    turning points (R ~ 0), which raise.

    The oscillatory branch evaluates cos at the same anchored argument the
    uniform solution uses; the bare-phase cosine is its even-integer-j
    specialization and picks up parity phases for the other j classes.
    """
    canon, sign = wigd_symmetry(q)
    if canon.theta < _EDGE:
        raise SingularAngleError("asymptotic form undefined at theta = 0")
    r = r_classifier(canon)
    big_j = canon.big_j
    if abs(r) < 0.05 * big_j:
        raise TurningRegionError(f"R = {r} too close to a turning point")
    phase = wigd_phase(canon)
    m, mp = float(canon.m), float(canon.mp)
    upper_branch = mp >= m * math.cos(canon.theta)
    if r > 0.0:
        bare = phase.real + 0.25 * math.pi
        zeta = (bare - m * math.pi) if upper_branch else (big_j * math.pi - bare)
        value = (math.sqrt(2.0 / math.pi) / r**0.25
                 * math.cos(zeta - 0.25 * math.pi))
        if upper_branch:
            value *= parity_phase(canon.j - canon.m)
    else:
        # magnitude per the damped closed form; the sign follows the uniform
        # solution's branch parity (calibrated against the exact kernel)
        value = (math.sqrt(2.0 / math.pi) / abs(r)**0.25 * math.sqrt(2.0)
                 * abs(math.cos(phase.real))
                 * math.exp(-abs(phase.imag) - 0.25 * math.pi))
        if upper_branch:
            value *= parity_phase(canon.j - canon.m)
    return sign * value


def wigd_turning_coordinate(q: WigdQuery) -> float:
    """Airy argument Z of the uniform solution for the canonical reduction
    of ``q`` (negative in the allowed region, positive in the forbidden)."""
    canon, _ = wigd_symmetry(q)
    r = r_classifier(canon)
    m, mp = float(canon.m), float(canon.mp)
    phase = wigd_phase(canon)
    upper_branch = mp >= m * math.cos(canon.theta)
    if r >= 0.0:
        bare = phase.real + 0.25 * math.pi
        if upper_branch:
            arg = bare - m * math.pi
        else:
            arg = canon.big_j * math.pi - bare
        return -((1.5 * max(arg, 0.0)) ** (2.0 / 3.0))
    return (1.5 * max(-phase.imag, 0.0)) ** (2.0 / 3.0)


def _wkb_canonical(q: WigdQuery) -> float:
    """Uniform Airy evaluation inside the canonical wedge."""
    r = r_classifier(q)
    big_j = q.big_j
    m, mp = float(q.m), float(q.mp)
    phase = wigd_phase(q)
    upper_branch = mp >= m * math.cos(q.theta)
    if r >= 0.0:
        bare = phase.real + 0.25 * math.pi  # phase without its -pi/4 shift
        if upper_branch:
            arg = bare - m * math.pi
        else:
            arg = big_j * math.pi - bare
        arg = max(arg, 0.0)
        z = -((1.5 * arg) ** (2.0 / 3.0))
    else:
        im_minus_theta = -phase.imag
        z = (1.5 * max(im_minus_theta, 0.0)) ** (2.0 / 3.0)
    if abs(r) < 1e-12:
        r = math.copysign(1e-12, r if r != 0.0 else -1.0)
    radicand = -4.0 * z / r
    if radicand < 0.0:
        # z and r disagree about the region right at the boundary; the
        # magnitude is Airy-peak scale there, so use |.|
        radicand = abs(radicand)
    ai, _, _, _ = airy_all_unrestricted(z)
    value = radicand**0.25 * ai
    if upper_branch:
        value *= parity_phase(q.j - q.m)
    return value


def wigd_wkb(q: WigdQuery) -> float:
    """Uniform Airy-based d-element, valid across both regions and the
    turning points. Wedge-boundary and polar queries fall back to the exact
    kernel at small j (simple asymptotics above EXACT_FALLBACK_MAX_J)."""
    canon, sign = wigd_symmetry(q)
    if canon.theta < _EDGE:
        return sign * wigner_d_exact(canon.j, canon.mp, canon.m, canon.theta)
    if _on_wedge_boundary(canon):
        if _route_to_exact(canon):
            return sign * wigner_d_exact(canon.j, canon.mp, canon.m, canon.theta)
        return sign * wigd_asymptotic(canon)
    return sign * _wkb_canonical(canon)


def wigd_from_cg_limit(j1: HalfIntLike, mp: HalfIntLike, m: HalfIntLike,
                       theta: float, j2: HalfIntLike) -> tuple[float, float]:
    """Finite-partner approximant to d^j1_{mp m}(theta) through the coupling
    coefficient with a large second momentum.

    Returns (value, theta_eff) where theta_eff = arccos(m2/j2) is the angle
    actually realized after rounding m2 to the nearest valid projection.
    """
    j1h, mph, mh, j2h = (as_halfint(v) for v in (j1, mp, m, j2))
    if abs(mph.twice) > j1h.twice or abs(mh.twice) > j1h.twice:
        raise ValueError("|m'|, |m| must not exceed j1")
    target = float(j2h) * math.cos(theta)
    tm2 = round(target * 2.0)
    if (j2h.twice - tm2) % 2:
        tm2 += 1 if target * 2.0 > tm2 else -1
    if abs(tm2) > j2h.twice:
        raise ValueError(f"rounded m2 = {tm2 / 2} exceeds j2 = {j2h}")
    m2 = HalfInt(tm2)
    theta_eff = math.acos(float(m2) / float(j2h))
    j3 = j2h + mph
    m3 = mh + m2
    coefficient = cg_exact(CGKey(j1h, mh, j2h, m2, j3, m3))
    # phase exponent j1 - m (not j1 - m'): the alternative belongs to the
    # transposed d-convention and flips signs off the diagonal
    return parity_phase(j1h - mh) * coefficient, theta_eff
