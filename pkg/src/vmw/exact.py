"""Exact angular-momentum kernel: Clebsch-Gordan coefficients, Wigner d/D
matrix elements, and product-basis operator expectations.

Everything here is Condon-Shortley convention and serves as the ground truth
the semiclassical modules are tested against. Coefficients are evaluated in
exact integer arithmetic (the squared value is formed as an exact rational,
so the only rounding is the final square root); a log-factorial mode with
compensated summation is kept as an independent cross-check path.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from functools import lru_cache

import numpy as np

from .qnum import EulerAngles, HalfInt, HalfIntLike, as_halfint, m_range, triangle_ok

MAX_PRODUCT_DIM = 4096


@dataclass(frozen=True)
class CGKey:
    j1: HalfInt
    m1: HalfInt
    j2: HalfInt
    m2: HalfInt
    j3: HalfInt
    m3: HalfInt

    @classmethod
    def of(cls, j1: HalfIntLike, m1: HalfIntLike, j2: HalfIntLike,
           m2: HalfIntLike, j3: HalfIntLike, m3: HalfIntLike) -> "CGKey":
        return cls(*(as_halfint(v) for v in (j1, m1, j2, m2, j3, m3)))

    def is_allowed(self) -> bool:
        if (self.m1.twice + self.m2.twice) != self.m3.twice:
            return False
        if not triangle_ok(self.j1, self.j2, self.j3):
            return False
        for j, m in ((self.j1, self.m1), (self.j2, self.m2), (self.j3, self.m3)):
            if abs(m.twice) > j.twice or (j.twice - m.twice) % 2 != 0:
                return False
        return True


def _fact(n: int) -> int:
    if n < 0:
        raise ValueError(f"factorial of negative {n}")
    return math.factorial(n)


@lru_cache(maxsize=1 << 18)
def _cg_core(tj1: int, tm1: int, tj2: int, tm2: int, tj3: int, tm3: int) -> float:
    # All twice-values; selection rules already checked by the caller.
    # Integer factorial arguments (halves of even twice-sums).
    def h(x: int) -> int:
        assert x % 2 == 0
        return x // 2

    tri_num = (_fact(h(tj1 + tj2 - tj3)) * _fact(h(tj1 - tj2 + tj3))
               * _fact(h(-tj1 + tj2 + tj3)))
    tri_den = _fact(h(tj1 + tj2 + tj3) + 1)
    msq = (_fact(h(tj1 + tm1)) * _fact(h(tj1 - tm1))
           * _fact(h(tj2 + tm2)) * _fact(h(tj2 - tm2))
           * _fact(h(tj3 + tm3)) * _fact(h(tj3 - tm3)))

    k_lo = max(0, h(tj2 - tj3 - tm1), h(tj1 - tj3 + tm2))
    k_hi = min(h(tj1 + tj2 - tj3), h(tj1 - tm1), h(tj2 + tm2))
    if k_lo > k_hi:
        return 0.0
    ssum = Fraction(0)
    for k in range(k_lo, k_hi + 1):
        den = (_fact(k) * _fact(h(tj1 + tj2 - tj3) - k)
               * _fact(h(tj1 - tm1) - k) * _fact(h(tj2 + tm2) - k)
               * _fact(h(tj3 - tj2 + tm1) + k) * _fact(h(tj3 - tj1 - tm2) + k))
        term = Fraction(1, den)
        ssum += -term if k % 2 else term
    if ssum == 0:
        return 0.0
    # CG^2 as one exact rational in [0, 1]; a single sqrt rounds at the end.
    cg_sq = Fraction((tj3 + 1) * tri_num * msq, tri_den) * ssum * ssum
    value = math.sqrt(float(cg_sq))
    return value if ssum > 0 else -value


def _cg_log(key: CGKey) -> float:
    lg = math.lgamma

    def lfact(x: float) -> float:
        return lg(x + 1.0)

    j1, m1 = float(key.j1), float(key.m1)
    j2, m2 = float(key.j2), float(key.m2)
    j3, m3 = float(key.j3), float(key.m3)
    pref = 0.5 * (math.log(2 * j3 + 1)
                  + lfact(j1 + j2 - j3) + lfact(j1 - j2 + j3) + lfact(-j1 + j2 + j3)
                  - lfact(j1 + j2 + j3 + 1)
                  + lfact(j1 + m1) + lfact(j1 - m1) + lfact(j2 + m2) + lfact(j2 - m2)
                  + lfact(j3 + m3) + lfact(j3 - m3))
    k_lo = max(0, round(j2 - j3 - m1), round(j1 - j3 + m2))
    k_hi = min(round(j1 + j2 - j3), round(j1 - m1), round(j2 + m2))
    if k_lo > k_hi:
        return 0.0
    log_terms = []
    signs = []
    for k in range(k_lo, k_hi + 1):
        lt = -(lfact(k) + lfact(j1 + j2 - j3 - k) + lfact(j1 - m1 - k)
               + lfact(j2 + m2 - k) + lfact(j3 - j2 + m1 + k) + lfact(j3 - j1 - m2 + k))
        log_terms.append(lt)
        signs.append(-1.0 if k % 2 else 1.0)
    peak = max(log_terms)
    # compensated pairwise combination of the scaled terms
    scaled = sorted(s * math.exp(t - peak) for s, t in zip(signs, log_terms))
    ssum = math.fsum(scaled)
    return ssum * math.exp(peak + pref)


def cg_exact(key: CGKey, method: str = "exact") -> float:
    """Clebsch-Gordan coefficient <j1 m1, j2 m2 | j3 m3>.

    Returns 0 for any selection-rule violation. ``method`` selects the exact
    rational path ("exact") or the log-factorial cross-check path ("log").
    """
    if not key.is_allowed():
        return 0.0
    if method == "exact":
        return _cg_core(key.j1.twice, key.m1.twice, key.j2.twice,
                        key.m2.twice, key.j3.twice, key.m3.twice)
    if method == "log":
        return _cg_log(key)
    raise ValueError(f"unknown method {method!r}")


class CGRelation(Enum):
    """Coupling-slot exchanges that re-target which j lands in the third slot."""

    SwapToJ2 = "swap-to-j2"
    SwapToJ1 = "swap-to-j1"


def cg_symmetry(key: CGKey, relation: CGRelation) -> tuple[CGKey, float]:
    """Transformed key plus the factor such that
    ``cg(key) == factor * cg(transformed)``."""
    if relation is CGRelation.SwapToJ2:
        transformed = CGKey(key.j1, key.m1, key.j3, -key.m3, key.j2, -key.m2)
        expo = (key.j1 - key.m1).twice // 2
        factor = (-1.0 if expo % 2 else 1.0) * math.sqrt(
            (key.j3.twice + 1) / (key.j2.twice + 1))
        return transformed, factor
    if relation is CGRelation.SwapToJ1:
        # phase exponent j2 + m2 (not j2 - m2): the two differ for
        # half-integer j2, and only the former keeps the relation exact
        transformed = CGKey(key.j3, -key.m3, key.j2, key.m2, key.j1, -key.m1)
        expo = (key.j2 + key.m2).twice // 2
        factor = (-1.0 if expo % 2 else 1.0) * math.sqrt(
            (key.j3.twice + 1) / (key.j1.twice + 1))
        return transformed, factor
    raise ValueError(f"unknown relation {relation!r}")


@lru_cache(maxsize=1 << 16)
def _d_coeffs(tj: int, tmp: int, tm: int) -> tuple[tuple[int, int, int, float], ...]:
    """Per-k (cos-power, sin-power, sign, sqrt-coefficient) for the d sum."""

    def h(x: int) -> int:
        return x // 2

    num = (_fact(h(tj + tmp)) * _fact(h(tj - tmp))
           * _fact(h(tj + tm)) * _fact(h(tj - tm)))
    k_lo = max(0, h(tm - tmp))
    k_hi = min(h(tj + tm), h(tj - tmp))
    out = []
    for k in range(k_lo, k_hi + 1):
        den = (_fact(h(tj + tm) - k) * _fact(k)
               * _fact(h(tj - tmp) - k) * _fact(h(tmp - tm) + k))
        coeff = math.sqrt(float(Fraction(num, den * den)))
        sign = -1 if (h(tmp - tm) + k) % 2 else 1
        cos_pow = h(2 * tj + tm - tmp) - 2 * k
        sin_pow = h(tmp - tm) + 2 * k
        out.append((cos_pow, sin_pow, sign, coeff))
    return tuple(out)


def wigner_d_exact(j: HalfIntLike, mp: HalfIntLike, m: HalfIntLike,
                   theta: float) -> float:
    """Wigner small-d element <j mp| exp(-i theta Jy) |j m>.

    Deterministic ascending-k summation of the explicit alternating series.
    """
    jh, mph, mh = as_halfint(j), as_halfint(mp), as_halfint(m)
    if abs(mph.twice) > jh.twice or abs(mh.twice) > jh.twice:
        raise ValueError("|m'|, |m| must not exceed j")
    if (jh.twice - mph.twice) % 2 or (jh.twice - mh.twice) % 2:
        raise ValueError("m', m must differ from j by integers")
    c = math.cos(0.5 * theta)
    s = math.sin(0.5 * theta)
    total = 0.0
    for cos_pow, sin_pow, sign, coeff in _d_coeffs(jh.twice, mph.twice, mh.twice):
        total += sign * coeff * c**cos_pow * s**sin_pow
    return total


def wigner_D(j: HalfIntLike, mp: HalfIntLike, m: HalfIntLike,
             angles: EulerAngles) -> complex:
    """Full rotation matrix element in the active z-y-z convention."""
    jh, mph, mh = as_halfint(j), as_halfint(mp), as_halfint(m)
    d = wigner_d_exact(jh, mph, mh, angles.theta)
    return (cmath.exp(-1j * float(mph) * angles.phi) * d
            * cmath.exp(-1j * float(mh) * angles.chi))


def product_basis_index(j1: HalfInt, j2: HalfInt, m1: HalfInt, m2: HalfInt) -> int:
    i1 = (m1.twice + j1.twice) // 2
    i2 = (m2.twice + j2.twice) // 2
    return i1 * (j2.twice + 1) + i2


def coupled_state_product_basis(j1: HalfIntLike, j2: HalfIntLike,
                                j3: HalfIntLike, m3: HalfIntLike) -> np.ndarray:
    """|j3 m3> expanded over |j1 m1>|j2 m2>, as a unit-norm complex vector."""
    j1h, j2h, j3h, m3h = (as_halfint(v) for v in (j1, j2, j3, m3))
    if not triangle_ok(j1h, j2h, j3h) or abs(m3h.twice) > j3h.twice:
        raise ValueError(f"no coupled state for (j1={j1h}, j2={j2h}, "
                         f"j3={j3h}, m3={m3h})")
    dim = (j1h.twice + 1) * (j2h.twice + 1)
    if dim > MAX_PRODUCT_DIM:
        raise ValueError(f"product dimension {dim} exceeds cap {MAX_PRODUCT_DIM}")
    vec = np.zeros(dim, dtype=complex)
    for m1 in m_range(j1h):
        m2 = m3h - m1
        if abs(m2.twice) > j2h.twice:
            continue
        c = cg_exact(CGKey(j1h, m1, j2h, m2, j3h, m3h))
        if c != 0.0:
            vec[product_basis_index(j1h, j2h, m1, m2)] = c
    nrm = np.linalg.norm(vec)
    if nrm == 0.0:
        raise ValueError("selection rules leave a zero vector")
    return vec


@lru_cache(maxsize=256)
def _single_j_ops(tj: int) -> tuple[np.ndarray, ...]:
    """(jz, j+, j-, jx, jy, j^2) dense matrices on the |j m> basis."""
    dim = tj + 1
    ms = np.array([(-tj + 2 * i) / 2.0 for i in range(dim)])
    jz = np.diag(ms).astype(complex)
    jp = np.zeros((dim, dim), dtype=complex)
    jjp1 = tj * (tj + 2) / 4.0
    for i in range(dim - 1):
        m = ms[i]
        jp[i + 1, i] = math.sqrt(jjp1 - m * (m + 1))
    jm = jp.conj().T
    jx = 0.5 * (jp + jm)
    jy = -0.5j * (jp - jm)
    jsq = jjp1 * np.eye(dim, dtype=complex)
    return jz, jp, jm, jx, jy, jsq


def pairwise_xx_expectation(j1: HalfIntLike, j2: HalfIntLike,
                            j3: HalfIntLike, m3: HalfIntLike) -> float:
    """<j3 m3| j1x j2x |j3 m3> in the product basis, computed two independent
    ways (direct dense operator vs the ladder/Casimir identity) and
    cross-asserted before returning."""
    j1h, j2h, j3h, m3h = (as_halfint(v) for v in (j1, j2, j3, m3))
    vec = coupled_state_product_basis(j1h, j2h, j3h, m3h)
    z1, p1, mm1, x1, y1, sq1 = _single_j_ops(j1h.twice)
    z2, p2, mm2, x2, y2, sq2 = _single_j_ops(j2h.twice)
    eye1 = np.eye(j1h.twice + 1, dtype=complex)
    eye2 = np.eye(j2h.twice + 1, dtype=complex)

    direct_op = np.kron(x1, x2)
    a = float(np.real(vec.conj() @ direct_op @ vec))

    # identity route: build the squared total operator from its components
    tot = [np.kron(c1, eye2) + np.kron(eye1, c2)
           for c1, c2 in ((x1, x2), (y1, y2), (z1, z2))]
    j3sq = sum(t @ t for t in tot)
    ident_op = 0.25 * (j3sq - np.kron(sq1, eye2) - np.kron(eye1, sq2)
                       - 2.0 * np.kron(z1, z2)
                       + np.kron(p1, p2) + np.kron(mm1, mm2))
    b = float(np.real(vec.conj() @ ident_op @ vec))
    if abs(a - b) >= 1e-10:
        raise AssertionError(f"transverse-correlation routes disagree: {a} vs {b}")
    return a


def pairwise_yy_expectation(j1: HalfIntLike, j2: HalfIntLike,
                            j3: HalfIntLike, m3: HalfIntLike) -> float:
    """<j3 m3| j1y j2y |j3 m3>, direct dense-operator evaluation."""
    j1h, j2h, j3h, m3h = (as_halfint(v) for v in (j1, j2, j3, m3))
    vec = coupled_state_product_basis(j1h, j2h, j3h, m3h)
    _, _, _, _, y1, _ = _single_j_ops(j1h.twice)
    _, _, _, _, y2, _ = _single_j_ops(j2h.twice)
    return float(np.real(vec.conj() @ np.kron(y1, y2) @ vec))


def pairwise_zz_expectation(j1: HalfIntLike, j2: HalfIntLike,
                            j3: HalfIntLike, m3: HalfIntLike) -> float:
    """<j3 m3| j1z j2z |j3 m3>, direct dense-operator evaluation."""
    j1h, j2h, j3h, m3h = (as_halfint(v) for v in (j1, j2, j3, m3))
    vec = coupled_state_product_basis(j1h, j2h, j3h, m3h)
    z1, *_ = _single_j_ops(j1h.twice)
    z2, *_ = _single_j_ops(j2h.twice)
    return float(np.real(vec.conj() @ np.kron(z1, z2) @ vec))
