"""Acceptance suites: every criterion as an executable named check.

Each check returns (name, passed, detail). Suites are keyed both by their
criterion id (a1..a12) and by a descriptive alias; ``all`` runs everything.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from typing import Callable, Iterable

import numpy as np

from .correlations import (CorrelationInput, g_factor, mstate_correlation_closed,
                           mstate_correlation_exact, mstate_correlation_vm)
from .exact import (CGKey, CGRelation, cg_exact, cg_symmetry,
                    pairwise_yy_expectation, wigner_d_exact)
from .precession import PrecessionConfig, particle_ring, q_ring, to_field_frame, track_rotation
from .qnum import HalfInt, as_halfint, m_range, parity_phase
from .semicg import (RegionKind, cg_allowed, cg_sq_avg, cg_wkb, classify_region,
                     coupling_geometry)
from .semiwigd import (WigdQuery, r_classifier, wigd_from_cg_limit, wigd_wkb)
from .special import (airy_ai, airy_ai_prime, airy_bi, airy_bi_prime,
                      std_normal_cdf)
from .wavepacket import (WavepacketSpec, build_j_wavepacket,
                         clamped_gaussian_stats, measured_q_polar_angle,
                         operator_convergence_ratios, rectified_stats,
                         uncertainty_report)

# reference coupling sweep exercising allowed, turning, and forbidden regions
BENCH = dict(j1=40, m1=10, j2=30, m2=-15, m3=-5)
LOW_J_CASES = ((3, 1, 2, -1), (5, 2, 4, -2), (4, 1, 3, 0))


@dataclass
class CheckResult:
    name: str
    passed: bool
    detail: str


def _result(name: str, passed: bool, detail: str) -> CheckResult:
    return CheckResult(name, bool(passed), detail)


# --- a1: exact kernel integrity -------------------------------------------

def _a1_checks() -> list[CheckResult]:
    out = []
    worst = 0.0
    for tj1 in range(0, 13):
        for tj2 in range(0, 13):
            for tj3 in range(abs(tj1 - tj2), tj1 + tj2 + 1, 2):
                j1, j2, j3 = HalfInt(tj1), HalfInt(tj2), HalfInt(tj3)
                for m3 in m_range(j3):
                    total = 0.0
                    for m1 in m_range(j1):
                        m2 = m3 - m1
                        if abs(m2.twice) <= tj2:
                            total += cg_exact(CGKey(j1, m1, j2, m2, j3, m3)) ** 2
                    worst = max(worst, abs(total - 1.0))
    out.append(_result("cg-orthonormality(j<=6)", worst < 1e-12, f"worst |sum-1| = {worst:.3e}"))

    worst = 0.0
    for tj in range(1, 13):
        j = HalfInt(tj)
        dim = tj + 1
        for theta in np.linspace(0.02, math.pi - 0.02, 25):
            mat = np.array([[wigner_d_exact(j, mp, m, float(theta))
                             for m in m_range(j)] for mp in m_range(j)])
            worst = max(worst, float(np.abs(mat.T @ mat - np.eye(dim)).max()))
    out.append(_result("d-unitarity(j<=6)", worst < 1e-12, f"worst deviation = {worst:.3e}"))

    rng = random.Random(20240811)
    worst = 0.0
    for _ in range(300):
        tj = rng.randint(1, 12)
        tmp = rng.randrange(-tj, tj + 1, 2)
        tm = rng.randrange(-tj, tj + 1, 2)
        th = rng.uniform(0.05, math.pi - 0.05)
        j, mp, m = HalfInt(tj), HalfInt(tmp), HalfInt(tm)
        d = wigner_d_exact(j, mp, m, th)
        rels = [
            wigner_d_exact(j, -m, -mp, th),
            parity_phase(mp - m) * wigner_d_exact(j, m, mp, th),
            parity_phase(mp - m) * wigner_d_exact(j, -mp, -m, th),
            parity_phase(mp - m) * wigner_d_exact(j, mp, m, -th),
            parity_phase(j - m) * wigner_d_exact(j, -mp, m, math.pi - th),
        ]
        worst = max(worst, max(abs(d - r) for r in rels))
    out.append(_result("d-symmetries", worst < 1e-12, f"worst relation residual = {worst:.3e}"))

    rng = random.Random(7)
    worst = 0.0
    for _ in range(400):
        tj1, tj2 = rng.randint(0, 16), rng.randint(0, 16)
        tj3 = rng.randint(abs(tj1 - tj2), tj1 + tj2)
        if (tj1 + tj2 + tj3) % 2:
            continue
        tm1 = rng.randint(-tj1, tj1)
        tm2 = rng.randint(-tj2, tj2)
        if (tj1 + tm1) % 2 or (tj2 + tm2) % 2 or abs(tm1 + tm2) > tj3:
            continue
        key = CGKey(HalfInt(tj1), HalfInt(tm1), HalfInt(tj2), HalfInt(tm2),
                    HalfInt(tj3), HalfInt(tm1 + tm2))
        for rel in (CGRelation.SwapToJ2, CGRelation.SwapToJ1):
            t, f = cg_symmetry(key, rel)
            worst = max(worst, abs(cg_exact(key) - f * cg_exact(t)))
    out.append(_result("cg-slot-symmetries", worst < 1e-12, f"worst residual = {worst:.3e}"))
    return out


# --- a2: mean-square coefficient formula ----------------------------------

def _bench_exact(squared: bool = False) -> dict[int, float]:
    vals = {}
    for j3 in range(10, 71):
        v = cg_exact(CGKey.of(BENCH["j1"], BENCH["m1"], BENCH["j2"],
                              BENCH["m2"], j3, BENCH["m3"]))
        vals[j3] = v * v if squared else v
    return vals


def _bench_allowed_range() -> tuple[int, int]:
    allowed = []
    for j3 in range(10, 71):
        geom = coupling_geometry(BENCH["j1"], BENCH["m1"], BENCH["j2"],
                                 BENCH["m2"], j3, BENCH["m3"])
        if classify_region(geom).kind is RegionKind.Allowed:
            allowed.append(j3)
    return min(allowed), max(allowed)


def _a2_checks() -> list[CheckResult]:
    sq = _bench_exact(squared=True)
    lo, hi = _bench_allowed_range()
    window = np.array([1.0, 2.0, 3.0, 2.0, 1.0])
    window /= window.sum()
    worst = worst_var = 0.0
    for j3 in range(lo + 3, hi - 2):
        mean = float(np.dot(window, [sq[k] for k in range(j3 - 2, j3 + 3)]))
        std = cg_sq_avg(BENCH["j1"], BENCH["m1"], BENCH["j2"], BENCH["m2"], j3)
        var = cg_sq_avg(BENCH["j1"], BENCH["m1"], BENCH["j2"], BENCH["m2"], j3,
                        variant=True)
        worst = max(worst, abs(std - mean) / mean)
        worst_var = max(worst_var, abs(var - mean) / mean)
    detail = (f"windowed-mean rel err: (j3+1) form {worst:.3f}, "
              f"(2j3+1)/2 variant {worst_var:.3f}")
    return [_result("mean-square-vs-window", worst <= 0.10, detail)]


# --- a3: semiclassical coefficients ---------------------------------------

def _sweep_case(j1, m1, j2, m2, m3) -> list[CheckResult]:
    label = f"({j1},{m1},{j2},{m2})"
    exact = {}
    tj_lo = abs(as_halfint(j1).twice - as_halfint(j2).twice)
    tj_hi = as_halfint(j1).twice + as_halfint(j2).twice
    tm3 = as_halfint(m3).twice
    worst = 0.0
    sign_bad = 0
    for tj3 in range(tj_lo, tj_hi + 1, 2):
        if abs(tm3) > tj3:
            continue
        j3 = HalfInt(tj3)
        ex = cg_exact(CGKey.of(j1, m1, j2, m2, j3, m3))
        wk = cg_wkb(j1, m1, j2, m2, j3, m3)
        worst = max(worst, abs(wk - ex))
        if abs(ex) > 0.01 and ex * wk < 0:
            sign_bad += 1
        exact[tj3] = ex
    return [
        _result(f"wkb-abs-error{label}", worst <= 0.05, f"worst |wkb-exact| = {worst:.4f}"),
        _result(f"wkb-sign{label}", sign_bad == 0, f"{sign_bad} sign mismatches"),
    ]


def _a3_checks() -> list[CheckResult]:
    out = _sweep_case(BENCH["j1"], BENCH["m1"], BENCH["j2"], BENCH["m2"], BENCH["m3"])
    lo, hi = _bench_allowed_range()
    worst = 0.0
    for j3 in range(lo + 5, hi - 4):
        geom = coupling_geometry(BENCH["j1"], BENCH["m1"], BENCH["j2"],
                                 BENCH["m2"], j3, BENCH["m3"])
        ex = cg_exact(CGKey.of(BENCH["j1"], BENCH["m1"], BENCH["j2"],
                               BENCH["m2"], j3, BENCH["m3"]))
        worst = max(worst, abs(cg_allowed(geom, j3) - ex))
    out.append(_result("allowed-form-interior", worst <= 0.05,
                       f"worst |closed-exact| = {worst:.4f}"))
    for case in LOW_J_CASES:
        j1, m1, j2, m2 = case
        out.extend(_sweep_case(j1, m1, j2, m2, m1 + m2))
    return out


# --- a4: wigner-d uniform solution ----------------------------------------

def _a4_checks() -> list[CheckResult]:
    worst = 0.0
    worst_deep = 0.0
    for tj in range(1, 21):
        j = HalfInt(tj)
        big_j = (tj + 1) / 2.0
        for tmp in range(-tj, tj + 1, 2):
            for tm in range(-tj, tj + 1, 2):
                for k in range(1, 20):
                    theta = k * math.pi / 20.0
                    q = WigdQuery(j, HalfInt(tmp), HalfInt(tm), theta)
                    err = abs(wigd_wkb(q) - wigner_d_exact(j, HalfInt(tmp),
                                                           HalfInt(tm), theta))
                    worst = max(worst, err)
                    if r_classifier(q) > big_j:
                        worst_deep = max(worst_deep, err)
    return [
        _result("wigd-wkb-global", worst <= 0.05, f"worst error = {worst:.4f}"),
        _result("wigd-wkb-deep-allowed", worst_deep <= 0.01,
                f"worst deep-region error = {worst_deep:.4f}"),
    ]


# --- a5: coupling limit of the d-function ----------------------------------

def _a5_checks() -> list[CheckResult]:
    rng = random.Random(42)
    draws = 0
    monotone = 0
    failures = []
    while draws < 20:
        tj1 = rng.randint(1, 8)
        tmp = rng.randint(-tj1, tj1)
        tm = rng.randint(-tj1, tj1)
        if (tj1 - tmp) % 2 or (tj1 - tm) % 2:
            continue
        theta = rng.uniform(0.4, math.pi - 0.4)
        draws += 1
        errs = []
        for j2 in (50, 100, 200, 400):
            val, te = wigd_from_cg_limit(HalfInt(tj1), HalfInt(tmp),
                                         HalfInt(tm), theta, HalfInt(2 * j2))
            errs.append(abs(val - wigner_d_exact(HalfInt(tj1), HalfInt(tmp),
                                                 HalfInt(tm), te)))
        if all(errs[i + 1] < errs[i] for i in range(3)):
            monotone += 1
        else:
            failures.append((tj1 / 2, tmp / 2, tm / 2, round(theta, 2)))
    return [_result("limit-error-decreases", monotone == 20,
                    f"{monotone}/20 tuples monotone; failures: {failures}")]


# --- a6: uncertainty products ----------------------------------------------

def _a6_checks() -> list[CheckResult]:
    out = []
    report = uncertainty_report(WavepacketSpec.of(80, 40, 5.0, 5.0))
    for key in ("dm_dphi", "dj_dchi", "jsin_dtheta_dphi"):
        val = report.products[key]
        out.append(_result(f"product-{key}", abs(val - 0.5) <= 0.05,
                           f"{key} = {val:.4f} (target 0.5 +- 10%)"))
    for dm in (1, 2, 3, 5):
        rep = uncertainty_report(WavepacketSpec.of(80, 40, 5.0, float(dm)))
        ratio = rep.products["jsin_dtheta_over_dm"]
        out.append(_result(f"polar-ratio(dm={dm})", 0.9 <= ratio <= 1.1,
                           f"(J sin theta) dtheta / dm = {ratio:.4f}"))
    return out


# --- a7: rectified statistics -----------------------------------------------

def _a7_checks() -> list[CheckResult]:
    rng = random.Random(11)
    worst = 0.0
    nodes = 1_000_000
    for _ in range(60):
        tj = rng.randint(1, 40)
        tm = rng.randrange(-tj, tj + 1, 2)
        dm = rng.uniform(0.5, 6.0)
        j, m = tj / 2.0, tm / 2.0
        sigma = math.sqrt(2.0) * dm
        stats = rectified_stats(HalfInt(tj), HalfInt(tm), dm)
        xs = np.linspace(-j, j, nodes)
        pdf = np.exp(-0.5 * ((xs - m) / sigma) ** 2) / (sigma * math.sqrt(2 * math.pi))
        interior = np.trapezoid(pdf * xs, xs)
        interior_sq = np.trapezoid(pdf * xs * xs, xs)
        p_lo = std_normal_cdf((-j - m) / sigma)
        p_hi = 1.0 - std_normal_cdf((j - m) / sigma)
        mean = interior + (-j) * p_lo + j * p_hi
        second = interior_sq + j * j * (p_lo + p_hi)
        std = math.sqrt(max(second - mean * mean, 0.0))
        worst = max(worst, abs(stats.m_bar - mean), abs(stats.dm_bar - std))
    out = [_result("clamped-moments-vs-quadrature", worst < 1e-6,
                   f"worst |formula-quadrature| = {worst:.2e}")]

    worst_deg = 0.0
    for j in (5, 6, 8, 10, 12, 15, 20):
        for dm in (3, 4, 5):
            if math.sqrt(2.0) * dm > j:
                continue
            for frac in (0.0, 0.2, 0.4, 0.6, 0.8, 1.0):
                tm = round(2 * j * frac)
                if (2 * j - tm) % 2:
                    tm += 1
                tm = min(tm, 2 * j)
                spec = WavepacketSpec.of(j, tm / 2.0, 0.0, float(dm))
                lobe = measured_q_polar_angle(build_j_wavepacket(spec))
                pred = rectified_stats(spec.j_center, spec.m_center, dm).theta_bar
                worst_deg = max(worst_deg, abs(math.degrees(pred - lobe)))
    out.append(_result("corrected-angle-vs-lobe", worst_deg <= 2.0,
                       f"worst |predicted-measured| = {worst_deg:.2f} deg"))
    return out


# --- a8: reduced-operator eigenvalue checks ---------------------------------

def _a8_checks() -> list[CheckResult]:
    out = []
    for (j, m) in ((10, 3), (10, 10), (0.5, 0.5)):
        ratios = operator_convergence_ratios(j, m, h=0.02)
        ok = all(3.5 <= r <= 4.5 for r in ratios.values())
        detail = ", ".join(f"{k}: {v:.2f}" for k, v in ratios.items())
        out.append(_result(f"operator-convergence(j={j},m={m})", ok, detail))
    return out


# --- a9 / a10: correlations and gyromagnetic ratio ---------------------------

def _a9_checks() -> list[CheckResult]:
    worst = 0.0
    worst_yy = 0.0
    for tj1 in range(1, 9):
        for tj2 in range(1, 9):
            for tj3 in range(abs(tj1 - tj2), tj1 + tj2 + 1, 2):
                for tm3 in range(-tj3, tj3 + 1, 2):
                    inp = CorrelationInput(HalfInt(tj1), HalfInt(tj2),
                                           HalfInt(tj3), HalfInt(tm3))
                    vm = mstate_correlation_vm(inp, 64)
                    closed = mstate_correlation_closed(inp)
                    exact = mstate_correlation_exact(inp)
                    worst = max(worst, abs(vm - closed), abs(closed - exact))
                    worst_yy = max(worst_yy, abs(
                        exact - pairwise_yy_expectation(inp.j1, inp.j2,
                                                        inp.j3, inp.m3)))
    return [
        _result("three-way-agreement", worst < 1e-10, f"worst spread = {worst:.2e}"),
        _result("xx-equals-yy", worst_yy < 1e-12, f"worst |xx-yy| = {worst_yy:.2e}"),
    ]


def _a10_checks() -> list[CheckResult]:
    worst = 0.0
    for ts in range(1, 21):
        for tm in range(-ts, ts + 1, 2):
            if tm == 0:
                continue
            worst = max(worst, abs(g_factor(HalfInt(ts), HalfInt(tm)) - 2.0))
    return [_result("g-factor-identity", worst == 0.0,
                    f"worst |g-2| = {worst:.1e} (exact float identity required)")]


# --- a11: precession ---------------------------------------------------------

def _a11_checks() -> list[CheckResult]:
    omega = 1.0
    times = tuple(np.linspace(0.0, 2.0 * math.pi, 17))
    config = PrecessionConfig(WavepacketSpec.of(80, 40, 5.0, 5.0), omega, times)
    trace = track_rotation(config)
    slopes_j = np.diff(trace.j_azimuth) / np.diff(trace.times)
    slopes_p = np.diff(trace.particle_azimuth) / np.diff(trace.times)
    slope_err = max(float(np.abs(slopes_j / omega - 1.0).max()),
                    float(np.abs(slopes_p / omega - 1.0).max()))
    diff_drift = float(np.ptp(trace.j_azimuth - trace.particle_azimuth))
    norm_dev = float(np.abs(trace.norms - 1.0).max())
    chi_drift = float((trace.chi_widths.max() - trace.chi_widths.min())
                      / trace.chi_widths[0])
    base = to_field_frame(build_j_wavepacket(config.spec), config.axis_polar())
    revived = base.phased(omega * (2.0 * math.pi / omega))
    ring0, ring1 = particle_ring(base), particle_ring(revived)
    q0 = q_ring(base, 0.05)
    q1 = q_ring(revived, 0.05)
    revival = max(float(np.abs(ring1 - ring0).max()), float(np.abs(q1 - q0).max()))
    cell = 2.0 * math.pi / 720.0
    return [
        _result("azimuth-slopes", slope_err <= 0.05, f"worst slope rel err = {slope_err:.2e}"),
        _result("lobe-lock", diff_drift <= cell,
                f"azimuth difference drift = {diff_drift:.2e} (cell {cell:.4f})"),
        _result("norm-conservation", norm_dev <= 1e-12, f"worst |norm-1| = {norm_dev:.2e}"),
        _result("no-spreading", chi_drift <= 0.02, f"chi width drift = {chi_drift:.2e}"),
        _result("revival", revival <= 1e-8, f"worst pointwise density diff = {revival:.2e}"),
    ]


# --- a12: special functions --------------------------------------------------

def _a12_checks() -> list[CheckResult]:
    worst = 0.0
    for x in np.linspace(-10.0, 5.0, 1501):
        w = (airy_ai(float(x)) * airy_bi_prime(float(x))
             - airy_ai_prime(float(x)) * airy_bi(float(x)))
        worst = max(worst, abs(w - 1.0 / math.pi))
    out = [_result("airy-wronskian", worst <= 1e-9, f"worst |W - 1/pi| = {worst:.2e}")]

    # independent series oracles at the origin
    ai0 = 3.0 ** (-2.0 / 3.0) / math.gamma(2.0 / 3.0)
    bi0 = 3.0 ** (-1.0 / 6.0) / math.gamma(2.0 / 3.0)
    err = max(abs(airy_ai(0.0) - ai0), abs(airy_bi(0.0) - bi0))
    out.append(_result("airy-origin-values", err <= 1e-9, f"worst origin error = {err:.2e}"))

    worst = 0.0
    for x in np.linspace(-8.0, 8.0, 2001):
        worst = max(worst, abs(std_normal_cdf(float(x))
                               + std_normal_cdf(float(-x)) - 1.0))
    out.append(_result("normal-cdf-symmetry", worst <= 1e-14,
                       f"worst asymmetry = {worst:.2e}"))
    return out


SUITES: dict[str, tuple[str, Callable[[], list[CheckResult]]]] = {
    "a1": ("exact-kernel", _a1_checks),
    "a2": ("wigner-average", _a2_checks),
    "a3": ("semiclassical-cg", _a3_checks),
    "a4": ("wigd-wkb", _a4_checks),
    "a5": ("cg-limit", _a5_checks),
    "a6": ("uncertainty", _a6_checks),
    "a7": ("rectification", _a7_checks),
    "a8": ("operators", _a8_checks),
    "a9": ("correlations", _a9_checks),
    "a10": ("g-factor", _a10_checks),
    "a11": ("precession", _a11_checks),
    "a12": ("special-functions", _a12_checks),
}

ALIASES = {alias: key for key, (alias, _) in SUITES.items()}


def resolve_suite(name: str) -> list[str]:
    lowered = name.lower()
    if lowered == "all":
        return list(SUITES)
    if lowered in SUITES:
        return [lowered]
    if lowered in ALIASES:
        return [ALIASES[lowered]]
    raise KeyError(name)


def run_suite(name: str) -> list[tuple[str, CheckResult]]:
    results = []
    for key in resolve_suite(name):
        alias, fn = SUITES[key]
        for check in fn():
            results.append((f"{key}:{alias}", check))
    return results
