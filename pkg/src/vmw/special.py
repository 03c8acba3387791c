"""Airy functions, the standard normal pdf/cdf, and complex arc-cosine helpers.

The Airy pair is evaluated from three explicitly budgeted branches:

* ``|x| <= SERIES_CUTOFF``: float Maclaurin series (exactly summed terms);
* ``SERIES_CUTOFF < |x| <= ASYMPTOTIC_CUTOFF``: the same series in exact
  rational arithmetic, so the cancellation between the two series solutions
  costs no precision;
* ``|x| > ASYMPTOTIC_CUTOFF``: optimally truncated asymptotic expansions
  (exponential forms for x > 0, oscillatory phase forms for x < 0).

Both cutoffs carry dedicated overlap tests; the guaranteed accuracy on the
validated domain is 1e-9 absolute, or relative where |value| > 1.
"""

from __future__ import annotations

import cmath
import math
from fractions import Fraction

SERIES_CUTOFF = 4.5
ASYMPTOTIC_CUTOFF = 7.0
DOMAIN_LO = -30.0
DOMAIN_HI = 10.0

# Ai(0), Ai'(0), Bi(0), Bi'(0) to 60 digits, stored as exact rationals so the
# rational-series branch loses nothing to the constants.
_AI0 = Fraction("0.355028053887817239260063186004183176397979174199177240583327")
_AIP0 = Fraction("-0.258819403792806798405183560189203963479091138354934582210002")
_BI0 = Fraction("0.614926627446000735150922369093613553594728188648596505040879")
_BIP0 = Fraction("0.448288357353826357914823710398828390866226799212262061082809")

_SQRT_PI = math.sqrt(math.pi)
_INV_SQRT_2PI = 1.0 / math.sqrt(2.0 * math.pi)


def _series_float(x: float) -> tuple[float, float, float, float]:
    """(f, g, f', g') by direct summation; fine while partial sums stay small."""
    f_terms = [1.0]
    g_terms = [x]
    fp_terms = [0.0]
    gp_terms = [1.0]
    a = 1.0   # coefficient of x^{3k} in f
    b = 1.0   # coefficient of x^{3k+1} in g, with the power folded in below
    xk_f = 1.0
    xk_g = x
    k = 0
    while True:
        a /= (3 * k + 3) * (3 * k + 2)
        b /= (3 * k + 4) * (3 * k + 3)
        xk_f *= x * x * x
        xk_g *= x * x * x
        k += 1
        tf = a * xk_f
        tg = b * xk_g
        f_terms.append(tf)
        g_terms.append(tg)
        fp_terms.append(3 * k * a * xk_f / x if x != 0.0 else 0.0)
        gp_terms.append((3 * k + 1) * b * xk_g / x if x != 0.0 else 0.0)
        if abs(tf) < 1e-20 and abs(tg) < 1e-20 and k > 3:
            break
    return (math.fsum(f_terms), math.fsum(g_terms),
            math.fsum(fp_terms), math.fsum(gp_terms))


def _series_exact(x: float) -> tuple[float, float, float, float]:
    """(Ai, Bi, Ai', Bi') with the series and their combination done in
    exact rational arithmetic; only the final conversion rounds."""
    xr = Fraction(x)
    x3 = xr * xr * xr
    f = Fraction(1)
    g = xr
    fp = Fraction(0)
    gp = Fraction(1)
    a = Fraction(1)
    b = Fraction(1)
    xf = Fraction(1)
    xg = xr
    k = 0
    # Terms decay factorially; 1e-40 leaves the double conversion exact.
    limit = Fraction(1, 10**40)
    while True:
        a /= (3 * k + 3) * (3 * k + 2)
        b /= (3 * k + 4) * (3 * k + 3)
        xf *= x3
        xg *= x3
        k += 1
        tf = a * xf
        tg = b * xg
        f += tf
        g += tg
        if x != 0.0:
            fp += 3 * k * tf / xr
            gp += (3 * k + 1) * tg / xr
        if abs(tf) < limit and abs(tg) < limit and k > 5:
            break
    ai = _AI0 * f + _AIP0 * g
    bi = _BI0 * f + _BIP0 * g
    aip = _AI0 * fp + _AIP0 * gp
    bip = _BI0 * fp + _BIP0 * gp
    return float(ai), float(bi), float(aip), float(bip)


def _asymptotic_sums(zeta: float) -> dict[str, float]:
    """Optimally truncated expansion sums over the u_k / v_k coefficients.

    Keys: ``u_alt``/``v_alt`` carry (-1)^k c_k zeta^{-k}; ``u_plus``/``v_plus``
    the all-plus versions; ``u_even``/``u_odd`` (and v counterparts) the
    parity-split oscillatory sums (-1)^k c_{2k} zeta^{-2k} and
    (-1)^k c_{2k+1} zeta^{-2k-1}. v_k keeps its sign: v_k = u_k (6k+1)/(1-6k).
    """
    sums = dict(u_alt=0.0, v_alt=0.0, u_plus=0.0, v_plus=0.0,
                u_even=0.0, u_odd=0.0, v_even=0.0, v_odd=0.0)
    u = 1.0
    v = 1.0
    prev = math.inf
    k = 0
    while True:
        zk = zeta**k
        tu = u / zk
        tv = v / zk
        alt = -1.0 if k % 2 else 1.0
        sums["u_alt"] += alt * tu
        sums["v_alt"] += alt * tv
        sums["u_plus"] += tu
        sums["v_plus"] += tv
        half, rem = divmod(k, 2)
        psign = -1.0 if half % 2 else 1.0
        if rem == 0:
            sums["u_even"] += psign * tu
            sums["v_even"] += psign * tv
        else:
            sums["u_odd"] += psign * tu
            sums["v_odd"] += psign * tv
        k += 1
        u *= (6 * k - 5) * (6 * k - 3) * (6 * k - 1) / (216.0 * k * (2 * k - 1))
        v = u * (6 * k + 1) / (1 - 6 * k)
        term = u / zeta**k
        if term >= prev or term < 1e-18 or k > 80:
            break
        prev = term
    return sums


def _asymptotic_pos(x: float) -> tuple[float, float, float, float]:
    zeta = (2.0 / 3.0) * x ** 1.5
    s = _asymptotic_sums(zeta)
    root = x ** 0.25
    damp = math.exp(-zeta)
    grow = math.exp(zeta)
    ai = damp / (2.0 * _SQRT_PI * root) * s["u_alt"]
    aip = -root * damp / (2.0 * _SQRT_PI) * s["v_alt"]
    bi = grow / (_SQRT_PI * root) * s["u_plus"]
    bip = root * grow / _SQRT_PI * s["v_plus"]
    return ai, bi, aip, bip


def _asymptotic_neg(x: float) -> tuple[float, float, float, float]:
    z = -x
    zeta = (2.0 / 3.0) * z ** 1.5
    s = _asymptotic_sums(zeta)
    w = zeta - 0.25 * math.pi
    c, sn = math.cos(w), math.sin(w)
    root = z ** 0.25
    ai = (c * s["u_even"] + sn * s["u_odd"]) / (_SQRT_PI * root)
    bi = (-sn * s["u_even"] + c * s["u_odd"]) / (_SQRT_PI * root)
    aip = root / _SQRT_PI * (sn * s["v_even"] - c * s["v_odd"])
    bip = root / _SQRT_PI * (c * s["v_even"] + sn * s["v_odd"])
    return ai, bi, aip, bip


def airy_all_unrestricted(x: float) -> tuple[float, float, float, float]:
    """(Ai, Bi, Ai', Bi') without the validated-domain guard.

    Branch accuracy degrades gracefully far outside the validated domain
    (used internally where uniform-WKB phases wander past it).
    """
    ax = abs(x)
    if ax <= SERIES_CUTOFF:
        f, g, fp, gp = _series_float(x)
        ai = float(_AI0) * f + float(_AIP0) * g
        bi = float(_BI0) * f + float(_BIP0) * g
        aip = float(_AI0) * fp + float(_AIP0) * gp
        bip = float(_BI0) * fp + float(_BIP0) * gp
        return ai, bi, aip, bip
    if ax <= ASYMPTOTIC_CUTOFF:
        return _series_exact(x)
    if x > 0:
        return _asymptotic_pos(x)
    return _asymptotic_neg(x)


def _check_domain(x: float) -> None:
    if not DOMAIN_LO <= x <= DOMAIN_HI:
        raise ValueError(f"Airy argument {x} outside validated domain "
                         f"[{DOMAIN_LO}, {DOMAIN_HI}]")


def airy_ai(x: float) -> float:
    _check_domain(x)
    return airy_all_unrestricted(x)[0]


def airy_bi(x: float) -> float:
    _check_domain(x)
    return airy_all_unrestricted(x)[1]


def airy_ai_prime(x: float) -> float:
    _check_domain(x)
    return airy_all_unrestricted(x)[2]


def airy_bi_prime(x: float) -> float:
    _check_domain(x)
    return airy_all_unrestricted(x)[3]


def std_normal_pdf(x: float) -> float:
    return _INV_SQRT_2PI * math.exp(-0.5 * x * x)


def std_normal_cdf(x: float) -> float:
    return 0.5 * (1.0 + math.erf(x / math.sqrt(2.0)))


def acos_complex(z: complex) -> complex:
    """Principal-branch arccos via the logarithm form.

    For real arguments beyond [-1, 1] the imaginary part lands in the upper
    half plane, matching the forbidden-region continuation convention.
    """
    z = complex(z)
    return -1j * cmath.log(z + 1j * cmath.sqrt(1.0 - z * z))


def acosh_real_branch(x: float) -> float:
    """acosh on [1, inf) with sub-1e-12 undershoot clamped to 1."""
    if x < 1.0:
        if x < 1.0 - 1e-12:
            raise ValueError(f"acosh argument {x} < 1")
        x = 1.0
    return math.acosh(x)
