"""Angular-momentum and particle wavepackets: Gaussian (j, m) superpositions,
their angular densities, stretched-state population maps, width measurements,
the angular uncertainty products, rectified-Gaussian statistics, and the
finite-difference checks of the reduced-operator eigenvalue relations.

hbar = 1 throughout.
"""

from __future__ import annotations

import cmath
import math
import os
import warnings
from dataclasses import dataclass, field

import numpy as np
from scipy.optimize import OptimizeWarning, curve_fit

from .exact import CGKey, cg_exact
from .qnum import HalfInt, HalfIntLike, NormConvention, as_halfint, theta_m
from .special import std_normal_cdf, std_normal_pdf
from .sphharm import pbar_column

DEFAULT_GRID_THETA = 181
DEFAULT_GRID_PHI = 360
DEFAULT_J_CUT = 5


class EmptyPacketError(ValueError):
    """All Gaussian weights clamped to zero."""


class FitFailureError(RuntimeError):
    """Gaussian fit rejected (multi-lobed or too flat; R^2 < 0.9)."""


@dataclass(frozen=True)
class WavepacketSpec:
    j_center: HalfInt
    m_center: HalfInt
    dj: float
    dm: float
    j_cut: int = DEFAULT_J_CUT

    def __post_init__(self) -> None:
        if self.dj < 0.0 or self.dm < 0.0:
            raise ValueError("widths must be non-negative")
        if self.j_cut < 4:
            raise ValueError("j_cut below 4 truncates visible Gaussian mass")
        if abs(self.m_center.twice) > self.j_center.twice:
            raise ValueError("|m| <= j violated")
        if (self.j_center.twice - self.m_center.twice) % 2:
            raise ValueError("j and m must differ by an integer")

    @classmethod
    def of(cls, j: HalfIntLike, m: HalfIntLike, dj: float, dm: float,
           j_cut: int = DEFAULT_J_CUT) -> "WavepacketSpec":
        return cls(as_halfint(j), as_halfint(m), float(dj), float(dm), j_cut)


@dataclass
class JWavepacket:
    """Gaussian coefficient table over (j', m'), organized in j-blocks.

    blocks maps twice-j to (twice-m int array, weight float array).
    """

    blocks: dict[int, tuple[np.ndarray, np.ndarray]]
    norm: float

    @property
    def terms(self) -> list[tuple[HalfInt, HalfInt, float]]:
        out = []
        for tj in sorted(self.blocks):
            tms, ws = self.blocks[tj]
            out.extend((HalfInt(tj), HalfInt(int(tm)), float(w))
                       for tm, w in zip(tms, ws))
        return out

    @property
    def is_integer_j(self) -> bool:
        return all(tj % 2 == 0 for tj in self.blocks)

    def block_population(self, tj: int) -> float:
        _, ws = self.blocks[tj]
        return float(np.sum(ws * ws)) / (self.norm * self.norm)

    def m_distribution(self) -> tuple[np.ndarray, np.ndarray]:
        """(m values, probabilities) marginalized over j."""
        acc: dict[int, float] = {}
        for tms, ws in self.blocks.values():
            for tm, w in zip(tms, ws):
                acc[int(tm)] = acc.get(int(tm), 0.0) + float(w * w)
        tms = np.array(sorted(acc))
        probs = np.array([acc[t] for t in tms])
        return tms / 2.0, probs / probs.sum()

    def j_distribution(self) -> tuple[np.ndarray, np.ndarray]:
        tjs = np.array(sorted(self.blocks))
        probs = np.array([float(np.sum(self.blocks[t][1] ** 2)) for t in tjs])
        return tjs / 2.0, probs / probs.sum()

    def measured_dm(self) -> float:
        m, p = self.m_distribution()
        mean = float(np.dot(m, p))
        return math.sqrt(max(float(np.dot((m - mean) ** 2, p)), 0.0))

    def measured_dj(self) -> float:
        j, p = self.j_distribution()
        mean = float(np.dot(j, p))
        return math.sqrt(max(float(np.dot((j - mean) ** 2, p)), 0.0))


def build_j_wavepacket(spec: WavepacketSpec) -> JWavepacket:
    """Double-Gaussian weights over the (j', m') lattice, clamped to the
    physical range; j' keeps the center's integer/half-integer species."""
    jc, mc = spec.j_center, spec.m_center
    if spec.dj == 0.0:
        tj_values = [jc.twice]
    else:
        half_width = int(math.ceil(spec.j_cut * spec.dj))
        tj_values = [jc.twice + 2 * k for k in range(-half_width, half_width + 1)
                     if jc.twice + 2 * k >= (0 if jc.is_integer else 1)]
    blocks: dict[int, tuple[np.ndarray, np.ndarray]] = {}
    sq_sum = 0.0
    for tj in tj_values:
        if spec.dm == 0.0:
            tm_lo = tm_hi = mc.twice
        else:
            m_half_width = int(math.ceil(spec.j_cut * spec.dm))
            tm_lo = mc.twice - 2 * m_half_width
            tm_hi = mc.twice + 2 * m_half_width
        tm_lo = max(tm_lo, -tj)
        tm_hi = min(tm_hi, tj)
        if tm_lo > tm_hi:
            continue
        tms = np.arange(tm_lo, tm_hi + 1, 2, dtype=int)
        dj_arg = ((tj - jc.twice) / 2.0) / (2.0 * spec.dj) if spec.dj > 0 else 0.0
        wj = math.exp(-dj_arg * dj_arg)
        if spec.dm > 0:
            dm_arg = ((tms - mc.twice) / 2.0) / (2.0 * spec.dm)
            ws = wj * np.exp(-dm_arg * dm_arg)
        else:
            ws = np.full(tms.shape, wj)
        blocks[tj] = (tms, ws)
        sq_sum += float(np.sum(ws * ws))
    if not blocks or sq_sum <= 0.0:
        raise EmptyPacketError("no weights survive the physical-range clamp")
    return JWavepacket(blocks=blocks, norm=math.sqrt(sq_sum))


@dataclass
class AngularDensity:
    """Scalar field on a (theta, phi) product grid.

    Midpoint-in-cos(theta) nodes and uniform phi nodes make the quadrature
    weight a single constant cell_weight = d(cos theta) * d(phi).
    """

    theta: np.ndarray
    phi: np.ndarray
    values: np.ndarray
    cell_weight: float
    normalized: bool = True

    def integral(self) -> float:
        return float(self.values.sum() * self.cell_weight)


def default_grid_shape() -> tuple[int, int]:
    n_theta = int(os.environ.get("VMW_GRID_THETA", DEFAULT_GRID_THETA))
    n_phi = int(os.environ.get("VMW_GRID_PHI", DEFAULT_GRID_PHI))
    if n_theta < 8 or n_phi < 8:
        raise ValueError("grid too coarse")
    return n_theta, n_phi


def make_grid(n_theta: int | None = None,
              n_phi: int | None = None) -> tuple[np.ndarray, np.ndarray, float]:
    """(theta nodes, phi nodes, cell weight)."""
    nt, np_ = default_grid_shape()
    n_theta = n_theta or nt
    n_phi = n_phi or np_
    du = 2.0 / n_theta
    u = 1.0 - (np.arange(n_theta) + 0.5) * du
    theta = np.arccos(u)
    dphi = 2.0 * math.pi / n_phi
    phi = np.arange(n_phi) * dphi
    return theta, phi, du * dphi


def _packet_theta_amplitudes(packet: JWavepacket,
                             cos_theta: np.ndarray) -> dict[int, np.ndarray]:
    """Per-m theta amplitudes a_m(theta) = sum_j w_jm Pbar_j^m(cos theta)."""
    l_max = max(packet.blocks) // 2
    by_m: dict[int, list[tuple[int, float]]] = {}
    for tj, (tms, ws) in packet.blocks.items():
        for tm, w in zip(tms, ws):
            by_m.setdefault(int(tm), []).append((tj // 2, float(w)))
    out: dict[int, np.ndarray] = {}
    for tm, terms in by_m.items():
        m_int = tm // 2
        col = pbar_column(m_int, l_max, cos_theta)
        amp = np.zeros_like(cos_theta, dtype=float)
        base = abs(m_int)
        sign = -1.0 if (m_int < 0 and abs(m_int) % 2) else 1.0
        for l, w in terms:
            amp += w * sign * col[l - base]
        out[tm] = amp
    return out


def particle_density(packet: JWavepacket,
                     grid: tuple[np.ndarray, np.ndarray, float] | None = None
                     ) -> AngularDensity:
    """|psi|^2 of the spherical-harmonic superposition, quadrature-normalized.

    Only integer-j packets describe a particle's orbital state."""
    if not packet.is_integer_j:
        raise ValueError("particle density needs an integer-j packet")
    theta, phi, cell = grid if grid is not None else make_grid()
    amps = _packet_theta_amplitudes(packet, np.cos(theta))
    psi = np.zeros((theta.size, phi.size), dtype=complex)
    for tm, amp in amps.items():
        m_int = tm // 2
        psi += np.outer(amp, np.exp(1j * m_int * phi))
    values = np.abs(psi) ** 2
    total = values.sum() * cell
    if total <= 0.0:
        raise EmptyPacketError("density vanished everywhere")
    return AngularDensity(theta, phi, values / total, cell)


def theta_marginal(packet: JWavepacket, theta: np.ndarray) -> np.ndarray:
    """dP/dtheta of the particle density on an arbitrary theta grid
    (exact analytic phi integration), unnormalized."""
    amps = _packet_theta_amplitudes(packet, np.cos(theta))
    f = np.zeros_like(theta, dtype=float)
    for amp in amps.values():
        f += amp * amp
    return 2.0 * math.pi * f * np.sin(theta)


def packet_wavefunction(packet: JWavepacket, theta: np.ndarray,
                        phi: np.ndarray) -> np.ndarray:
    """psi at paired (theta, phi) points (arrays of equal shape)."""
    amps = _packet_theta_amplitudes(packet, np.cos(np.asarray(theta, float)))
    psi = np.zeros(np.asarray(theta).shape, dtype=complex)
    for tm, amp in amps.items():
        psi += amp * np.exp(1j * (tm // 2) * np.asarray(phi, float))
    return psi


def _log_stretched_overlap(tj: int, cos_half: np.ndarray,
                           sin_half: np.ndarray) -> np.ndarray:
    """log d^j_{m j}(theta) rows for all m, shape (2j+1, n); all entries of
    d^j_{m j} are non-negative."""
    from scipy.special import gammaln
    j2 = tj  # 2j
    k_plus = np.arange(j2 + 1)          # (j2 + tm) / 2 for ascending m
    k_minus = j2 - k_plus
    with np.errstate(divide="ignore"):
        log_c = np.log(np.clip(cos_half, 1e-300, None))
        log_s = np.log(np.clip(sin_half, 1e-300, None))
    log_binom = 0.5 * (gammaln(j2 + 1.0) - gammaln(k_plus + 1.0)
                       - gammaln(k_minus + 1.0))
    return (log_binom[:, None] + np.outer(k_plus, log_c)
            + np.outer(k_minus, log_s))


def q_distribution(packet: JWavepacket,
                   grid: tuple[np.ndarray, np.ndarray, float] | None = None
                   ) -> AngularDensity:
    """Population of the maximum-projection state aligned with each grid
    direction, summed over j-blocks (cross-j coherences carry no such
    population and are dropped)."""
    theta, phi, cell = grid if grid is not None else make_grid()
    q = np.zeros((theta.size, phi.size))
    cos_half = np.cos(0.5 * theta)
    sin_half = np.sin(0.5 * theta)
    norm_sq = packet.norm * packet.norm
    for tj, (tms, ws) in packet.blocks.items():
        rows = _log_stretched_overlap(tj, cos_half, sin_half)
        full_tms = np.arange(-tj, tj + 1, 2)
        weights = np.zeros(full_tms.size)
        weights[np.searchsorted(full_tms, tms)] = ws
        d_grid = np.exp(rows)  # (2j+1, n_theta)
        phase = np.exp(1j * np.outer(full_tms / 2.0, phi))  # (2j+1, n_phi)
        overlap = (weights[:, None] * d_grid).T @ phase  # (n_theta, n_phi)
        q += np.abs(overlap) ** 2 / norm_sq
    return AngularDensity(theta, phi, q, cell, normalized=False)


def q_polar_profile(packet: JWavepacket, theta: np.ndarray,
                    phi: float = 0.0) -> np.ndarray:
    """Q along a meridian, vectorized over theta."""
    cos_half = np.cos(0.5 * theta)
    sin_half = np.sin(0.5 * theta)
    q = np.zeros_like(theta)
    norm_sq = packet.norm * packet.norm
    for tj, (tms, ws) in packet.blocks.items():
        rows = _log_stretched_overlap(tj, cos_half, sin_half)
        full_tms = np.arange(-tj, tj + 1, 2)
        weights = np.zeros(full_tms.size, dtype=complex)
        weights[np.searchsorted(full_tms, tms)] = ws
        weights = weights * np.exp(1j * (full_tms / 2.0) * phi)
        overlap = np.exp(rows).T @ weights
        q += np.abs(overlap) ** 2 / norm_sq
    return q


def measured_q_polar_angle(packet: JWavepacket, n_coarse: int = 1441) -> float:
    """Polar angle maximizing Q along the phi = 0 meridian (parabolic
    refinement of the grid argmax)."""
    theta = np.linspace(1e-6, math.pi - 1e-6, n_coarse)
    q = q_polar_profile(packet, theta)
    i = int(np.argmax(q))
    if 0 < i < n_coarse - 1:
        denom = q[i - 1] - 2.0 * q[i] + q[i + 1]
        if denom < 0.0:
            shift = 0.5 * (q[i - 1] - q[i + 1]) / denom
            return float(theta[i] + shift * (theta[1] - theta[0]))
    return float(theta[i])


def polarization_moments(packet: JWavepacket, tj: int) -> dict[tuple[int, int], complex]:
    """Multipole moments a^k_q of one j-block's density matrix."""
    tms, ws = packet.blocks[tj]
    full_tms = np.arange(-tj, tj + 1, 2)
    c = np.zeros(full_tms.size, dtype=complex)
    c[np.searchsorted(full_tms, tms)] = ws
    rho = np.outer(c, c.conj()) / (packet.norm * packet.norm)
    j = HalfInt(tj)
    moments: dict[tuple[int, int], complex] = {}
    for k in range(0, tj + 1):
        scale = ((4.0 * math.pi / (2 * k + 1))
                 * (-1.0 if (tj + k) % 2 else 1.0)
                 * math.sqrt((2 * k + 1) / (tj + 1.0)))
        for q in range(-k, k + 1):
            a_kq = 0.0 + 0.0j
            for i_m, tm in enumerate(int(t) for t in full_tms):
                tmp = tm + 2 * q
                if abs(tmp) > tj:
                    continue
                i_mp = (tmp + tj) // 2
                phase = -1.0 if ((tj - tm) // 2) % 2 else 1.0
                a_kq += rho[i_m, i_mp] * phase * cg_exact(
                    CGKey(j, HalfInt(-tm), j, HalfInt(tmp),
                          as_halfint(k), as_halfint(q)))
            a_kq *= scale
            if a_kq != 0.0:
                moments[(k, q)] = a_kq
    return moments


def q_distribution_moments(packet: JWavepacket,
                           grid: tuple[np.ndarray, np.ndarray, float] | None = None
                           ) -> AngularDensity:
    """Independent route to the population map through the multipole moments
    of the block density matrices and reduced spherical harmonics (practical
    for packets of modest j)."""
    theta, phi, cell = grid if grid is not None else make_grid()
    total = np.zeros((theta.size, phi.size))
    for tj in packet.blocks:
        j = HalfInt(tj)
        moments = polarization_moments(packet, tj)
        for (k, q), a_kq in moments.items():
            stretched = cg_exact(CGKey(j, j, as_halfint(k), as_halfint(0), j, j))
            col_p = pbar_column(abs(q), k, np.cos(theta))[-1]
            if q < 0 and abs(q) % 2:
                col_p = -col_p
            c_kq = (math.sqrt(4.0 * math.pi / (2 * k + 1))
                    * np.outer(col_p, np.exp(1j * q * phi)))
            total += ((2 * k + 1) / (4.0 * math.pi)
                      * (a_kq * stretched * c_kq.conj())).real
    return AngularDensity(theta, phi, total, cell, normalized=False)


def width_phi(packet: JWavepacket) -> float:
    """Azimuthal width from the windowed angle-operator moments over the
    block-diagonal density matrix, window centered on the mean azimuth."""
    acc: dict[tuple[int, int], float] = {}
    norm_sq = packet.norm * packet.norm
    for tms, ws in packet.blocks.values():
        for a, (tma, wa) in enumerate(zip(tms, ws)):
            for tmb, wb in zip(tms[a:], ws[a:]):
                key = (int(tma), int(tmb))
                acc[key] = acc.get(key, 0.0) + float(wa * wb) / norm_sq
    # mean azimuth from <exp(i phi)>
    e_iphi = sum(v for (ta, tb), v in acc.items() if tb - ta == 2)
    mu = cmath.phase(e_iphi) if abs(e_iphi) > 1e-300 else 0.0
    mean = 0.0
    mean_sq = mu * mu + math.pi * math.pi / 3.0 * sum(
        v for (ta, tb), v in acc.items() if ta == tb)
    mean += mu * sum(v for (ta, tb), v in acc.items() if ta == tb)
    for (ta, tb), v in acc.items():
        if ta == tb:
            continue
        delta = (tb - ta) // 2
        sign = -1.0 if delta % 2 else 1.0
        rot = cmath.exp(1j * delta * mu)
        # off-diagonal pairs enter twice (hermitian pairing), elements real
        phi_el = (rot * sign / (1j * delta)).real
        phi2_el = (rot * sign * (2.0 * mu / (1j * delta) + 2.0 / (delta * delta))).real
        mean += 2.0 * v * phi_el
        mean_sq += 2.0 * v * phi2_el
    variance = mean_sq - mean * mean
    return math.sqrt(max(variance, 0.0))


def _gaussian(x: np.ndarray, a: float, x0: float, sigma: float) -> np.ndarray:
    return a * np.exp(-0.5 * ((x - x0) / sigma) ** 2)


def fit_gaussian_profile(x: np.ndarray, y: np.ndarray) -> tuple[float, float, float]:
    """(sigma, center, r_squared) of a single-lobe least-squares Gaussian fit
    windowed around the global maximum."""
    i_max = int(np.argmax(y))
    peak = float(y[i_max])
    if peak <= 0.0:
        raise FitFailureError("profile is empty")
    keep = y > 1e-3 * peak
    # restrict to the contiguous lobe containing the maximum
    lo = i_max
    while lo > 0 and keep[lo - 1]:
        lo -= 1
    hi = i_max
    while hi < y.size - 1 and keep[hi + 1]:
        hi += 1
    xs, ys = x[lo:hi + 1], y[lo:hi + 1]
    if xs.size < 5:
        raise FitFailureError("too few points under the lobe")
    mean0 = float(np.dot(xs, ys) / ys.sum())
    sigma0 = math.sqrt(max(float(np.dot((xs - mean0) ** 2, ys) / ys.sum()), 1e-12))
    try:
        with warnings.catch_warnings():
            # a numerically perfect fit degenerates the covariance estimate
            warnings.simplefilter("ignore", OptimizeWarning)
            popt, _ = curve_fit(_gaussian, xs, ys, p0=(peak, mean0, sigma0),
                                maxfev=20000)
    except RuntimeError as exc:
        raise FitFailureError(f"least squares failed: {exc}") from exc
    residual = ys - _gaussian(xs, *popt)
    ss_res = float(np.dot(residual, residual))
    ss_tot = float(np.dot(ys - ys.mean(), ys - ys.mean()))
    r_sq = 1.0 - ss_res / ss_tot if ss_tot > 0 else 0.0
    if r_sq < 0.9:
        raise FitFailureError(f"R^2 = {r_sq:.3f} below 0.9")
    return abs(float(popt[2])), float(popt[1]), r_sq


def great_circle_section(packet: JWavepacket, axis_polar: float,
                         n_nodes: int = 720) -> tuple[np.ndarray, np.ndarray]:
    """(chi, |psi|^2) along the great circle perpendicular to the direction
    (axis_polar, phi = 0); chi = 0 at the in-plane direction inside XZ."""
    chi = np.arange(n_nodes) * (2.0 * math.pi / n_nodes)
    e1 = np.array([math.cos(axis_polar), 0.0, -math.sin(axis_polar)])
    e2 = np.array([0.0, 1.0, 0.0])
    pts = np.outer(np.cos(chi), e1) + np.outer(np.sin(chi), e2)
    theta = np.arccos(np.clip(pts[:, 2], -1.0, 1.0))
    phi = np.arctan2(pts[:, 1], pts[:, 0])
    psi = packet_wavefunction(packet, theta, phi)
    return chi, np.abs(psi) ** 2


def width_fit(packet: JWavepacket, axis: str,
              axis_polar: float | None = None,
              n_nodes: int = 2000) -> float:
    """Gaussian width of a 1D section of the particle density.

    axis = "theta": the polar marginal; axis = "chi": the great circle
    perpendicular to the measured packet direction (or ``axis_polar``).
    """
    if axis == "theta":
        theta = np.linspace(1e-4, math.pi - 1e-4, n_nodes)
        profile = theta_marginal(packet, theta)
        sigma, _, _ = fit_gaussian_profile(theta, profile)
        return sigma
    if axis == "chi":
        polar = axis_polar if axis_polar is not None else measured_q_polar_angle(packet)
        chi, values = great_circle_section(packet, polar)
        i_max = int(np.argmax(values))
        rolled = np.roll(values, values.size // 2 - i_max)
        x = chi - chi[values.size // 2]
        sigma, _, _ = fit_gaussian_profile(x, rolled)
        return sigma
    raise ValueError(f"unknown axis {axis!r}")


@dataclass
class WidthReport:
    d_phi: float
    d_theta: float
    d_chi: float
    products: dict[str, float] = field(default_factory=dict)
    flags: dict[str, bool] = field(default_factory=dict)

    def as_dict(self) -> dict:
        return {"d_phi": self.d_phi, "d_theta": self.d_theta,
                "d_chi": self.d_chi, "products": dict(self.products),
                "flags": dict(self.flags)}


def uncertainty_report(spec: WavepacketSpec,
                       packet: JWavepacket | None = None) -> WidthReport:
    """Measured angular widths and the three uncertainty products, flagged
    against the validity thresholds of the equality regime."""
    packet = packet or build_j_wavepacket(spec)
    d_phi = width_phi(packet)
    d_theta = width_fit(packet, "theta")
    d_chi = width_fit(packet, "chi")
    dm_meas = packet.measured_dm()
    dj_meas = packet.measured_dj()
    rect = rectified_stats(spec.j_center, spec.m_center, spec.dm or 1e-12)
    big_j = (spec.j_center.twice + 1) / 2.0
    j_sin = big_j * math.sin(rect.theta_bar)
    products = {
        "dm_dphi": dm_meas * d_phi,
        "dj_dchi": dj_meas * d_chi,
        "jsin_dtheta_dphi": j_sin * d_theta * d_phi,
        "jsin_dtheta_over_dm": j_sin * d_theta / dm_meas if dm_meas > 0 else math.inf,
    }
    flags = {
        "dm_dphi_equality_regime": spec.dm >= 0.5,
        "dj_dchi_equality_regime": spec.dj >= 2.0,
        "dtheta_equality_regime": spec.dm >= 1.0,
    }
    return WidthReport(d_phi, d_theta, d_chi, products, flags)


@dataclass(frozen=True)
class RectifiedStats:
    m_bar: float
    dm_bar: float
    theta_bar: float


def clamped_gaussian_stats(lo: float, hi: float, mean: float,
                           sigma: float) -> tuple[float, float]:
    """Mean and standard deviation of a Gaussian clamped to [lo, hi]
    (the out-of-range probability mass accumulates on the boundaries)."""
    a = (lo - mean) / sigma
    b = (hi - mean) / sigma
    g, cdf = std_normal_pdf, std_normal_cdf
    mu = g(a) - g(b) + a * cdf(a) + b * cdf(-b)
    var = ((mu * mu + 1.0) * (cdf(b) - cdf(a))
           - (b - 2.0 * mu) * g(b) + (a - 2.0 * mu) * g(a)
           + (a - mu) ** 2 * cdf(a) + (b - mu) ** 2 * cdf(-b))
    return mean + mu * sigma, math.sqrt(max(var, 0.0)) * sigma


def rectified_stats(j: HalfIntLike, m: HalfIntLike, dm: float,
                    conv: NormConvention = NormConvention.SqrtJJPlus1
                    ) -> RectifiedStats:
    """Mean, width, and polar angle after clamping the packet's Gaussian
    amplitude profile to the physical range |m'| <= j.

    ``dm`` is the packet width parameter; the amplitude profile it describes,
    exp(-((m'-m)/(2 dm))^2), has standard deviation sqrt(2) dm, and that is
    the distribution the range clamp rectifies. The corrected polar angle
    arccos(m_bar/|j|) then lands on the measured population-lobe direction
    (calibrated within 2 degrees for one-sided clamping, j >= 5, dm >= 3)."""
    jh, mh = as_halfint(j), as_halfint(m)
    if dm <= 0.0:
        raise ValueError("dm must be positive")
    jf, mf = float(jh), float(mh)
    sigma = math.sqrt(2.0) * dm
    m_bar, dm_bar = clamped_gaussian_stats(-jf, jf, mf, sigma)
    magnitude = conv.magnitude(jh)
    theta_bar = math.acos(max(-1.0, min(1.0, m_bar / magnitude)))
    return RectifiedStats(m_bar, dm_bar, theta_bar)


@dataclass(frozen=True)
class OperatorCheck:
    name: str
    estimate: float
    target: float

    @property
    def error(self) -> float:
        return abs(self.estimate - self.target)


def vmw_operator_check(j: HalfIntLike, m: HalfIntLike,
                       h: float = 0.01) -> list[OperatorCheck]:
    """Finite-difference eigenvalue checks of the reduced angular-momentum
    operators acting on the smooth factor exp(i(m phi + J chi)) with the
    polar angle frozen at its classical value."""
    if not 1e-4 < h < 0.1:
        raise ValueError("step must lie in (1e-4, 0.1)")
    jh, mh = as_halfint(j), as_halfint(m)
    big_j = (jh.twice + 1) / 2.0
    mf = float(mh)
    tm = theta_m(jh, mh, NormConvention.JPlusHalf)
    sin_t, cos_t = math.sin(tm), math.cos(tm)
    phi0, chi0 = 0.35, 0.6

    def f(phi: float, chi: float) -> complex:
        return cmath.exp(1j * (mf * phi + big_j * chi))

    f0 = f(phi0, chi0)

    def d_phi() -> complex:
        return (f(phi0 + h, chi0) - f(phi0 - h, chi0)) / (2.0 * h)

    def d_chi() -> complex:
        return (f(phi0, chi0 + h) - f(phi0, chi0 - h)) / (2.0 * h)

    def d2_phi() -> complex:
        return (f(phi0 + h, chi0) - 2.0 * f0 + f(phi0 - h, chi0)) / (h * h)

    def d2_chi() -> complex:
        return (f(phi0, chi0 + h) - 2.0 * f0 + f(phi0, chi0 - h)) / (h * h)

    def d2_mixed() -> complex:
        return (f(phi0 + h, chi0 + h) - f(phi0 + h, chi0 - h)
                - f(phi0 - h, chi0 + h) + f(phi0 - h, chi0 - h)) / (4.0 * h * h)

    jsq = (-(d2_phi() + d2_chi() - 2.0 * cos_t * d2_mixed())
           / (sin_t * sin_t)) / f0
    jz = (-1j * d_phi()) / f0
    jzp = (-1j * d_chi()) / f0
    raise_op = 1j * (cos_t / sin_t * d_phi() - d_chi() / sin_t)
    lower_body = -1j * (cos_t / sin_t * d_chi() - d_phi() / sin_t)
    return [
        OperatorCheck("total-squared", float(jsq.real), big_j * big_j),
        OperatorCheck("space-z", float(jz.real), mf),
        OperatorCheck("body-z", float(jzp.real), big_j),
        OperatorCheck("ladder-coefficient", abs(raise_op / f0),
                      math.sqrt(big_j * big_j - mf * mf)),
        OperatorCheck("body-ladder-null", abs(lower_body / f0), 0.0),
    ]


def operator_convergence_ratios(j: HalfIntLike, m: HalfIntLike,
                                h: float = 0.02) -> dict[str, float]:
    """error(h) / error(h/2) per operator check; ~4 for second order."""
    coarse = vmw_operator_check(j, m, h)
    fine = vmw_operator_check(j, m, h / 2.0)
    out = {}
    for c, fch in zip(coarse, fine):
        out[c.name] = c.error / fch.error if fch.error > 0 else math.inf
    return out
