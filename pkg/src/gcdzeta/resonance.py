"""Resonator construction, Gaussian kernel pair, closed-form and
finite-interval moments, and extreme-value ratio experiments.

The full-line moments never touch quadrature: integrating |R(t)|^2 against
the kernel is, by the Gaussian Fourier identity, a finite double sum over
bucket pairs.  The finite-interval experiment integrates the same objects
over [T^beta, T] with composite Gauss-Legendre panels sized to the kernel
scale T/log T, evaluating zeta^(l)(1+it) by truncated Dirichlet series.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional, Sequence, Tuple

import numpy as np

from .errors import PrecisionError, ResourceLimitError
from .factored import FactoredInteger, IntegerSet
from .galsets import theorem7_construction
from .util import fsum_array

__all__ = [
    "GaussianKernel",
    "ResonanceParams",
    "Bucket",
    "Resonator",
    "build_resonator",
    "MomentM1",
    "moment_m1_closed",
    "moment_i_closed",
    "ZetaDerivLine",
    "zeta_deriv_line",
    "ResonanceExperiment",
    "resonance_experiment",
    "Section7Ratio",
    "section7_ratio",
]

# Gaussian factors below exp(-_WINDOW_EXPONENT) are dropped by the sparse
# pair walk in moment_i_closed; with positive weights this keeps relative
# accuracy near 1e-10 while making large cutoffs affordable.
_WINDOW_EXPONENT = 60.0


@dataclass(frozen=True)
class GaussianKernel:
    A: float

    def __post_init__(self):
        if self.A <= 0:
            raise ValueError("kernel width A must be positive")

    def phi(self, t):
        """e^(-t^2/(4A)) / sqrt(4*pi*A); integrates to 1."""
        return np.exp(-np.square(t) / (4.0 * self.A)) / math.sqrt(
            4.0 * math.pi * self.A)

    def phi_hat(self, xi):
        """Fourier transform e^(-A xi^2); phi_hat(0) = 1."""
        return np.exp(-self.A * np.square(xi))


@dataclass(frozen=True)
class ResonanceParams:
    beta: float
    kappa: float
    ell: int
    A: float

    def __post_init__(self):
        if not 0.0 <= self.beta < 1.0:
            raise ValueError("beta must lie in [0, 1)")
        if not 0.0 < self.kappa < 1.0 - self.beta:
            raise ValueError("kappa must lie in (0, 1 - beta)")
        if self.ell < 0:
            raise ValueError("ell must be >= 0")
        if self.A <= 0:
            raise ValueError("A must be positive")


@dataclass(frozen=True)
class Bucket:
    u: int
    m_u: FactoredInteger
    r: float


@dataclass(frozen=True)
class Resonator:
    T: float
    ratio: float
    buckets: Tuple[Bucket, ...]
    source_size: int

    def log_reps(self) -> np.ndarray:
        """log m_u per bucket, computed from factorizations (safe for
        elements too large for float conversion)."""
        return np.array([_log_value(b.m_u) for b in self.buckets])

    def weights(self) -> np.ndarray:
        return np.array([b.r for b in self.buckets])


def _log_value(fi: FactoredInteger) -> float:
    return math.fsum(e * math.log(p) for p, e in fi.factors)


def build_resonator(mset: IntegerSet, T: float) -> Resonator:
    """Bucket the set into multiplicative windows [q^u, q^(u+1)) with
    q = 1 + log(T)/T; keep each bucket's minimum and the square root of
    its population as the resonator coefficient."""
    if T < 10:
        raise ValueError("need T >= 10")
    q = 1.0 + math.log(T) / T
    log_q = math.log(q)
    groups = {}
    for el in mset:
        u = int(_log_value(el) / log_q)
        if u not in groups:
            groups[u] = [el, 0]
        groups[u][1] += 1
    buckets = tuple(
        Bucket(u=u, m_u=first, r=math.sqrt(count))
        for u, (first, count) in sorted(groups.items()))
    return Resonator(T=float(T), ratio=q, buckets=buckets,
                     source_size=len(mset))


@dataclass(frozen=True)
class MomentM1:
    exact: float
    paper_bound: float


def _theta_sum(a: float) -> float:
    """sum_{n>=0} e^(-a n^2) to machine precision (a > 0)."""
    total = 1.0
    for n in range(1, 100_000):
        term = math.exp(-a * n * n)
        total += term
        if term < 1e-18 * total:
            return total
    raise PrecisionError(f"theta series did not converge for a={a:g}")


def moment_m1_closed(res: Resonator, kernel: GaussianKernel) -> MomentM1:
    """Full-line first moment of |R|^2 against the scaled kernel.

    exact = (T/log T) * sum_{u,v} r_u r_v phi_hat((T/log T) log(m_u/m_v));
    paper_bound = (1 + 2 sum_{n>=0} phi_hat(n)) * (T/log T) * |source set|.
    """
    k = len(res.buckets)
    if k > 10_000:
        raise ResourceLimitError(f"{k} buckets exceeds the cap of 10000")
    scale = res.T / math.log(res.T)
    logs = res.log_reps()
    r = res.weights()
    rows = []
    for i in range(k):
        args = scale * (logs[i] - logs)
        rows.append(float(r[i] * np.sum(r * kernel.phi_hat(args))))
    exact = scale * fsum_array(rows)
    bound = (1.0 + 2.0 * _theta_sum(kernel.A)) * scale * res.source_size
    return MomentM1(exact=exact, paper_bound=bound)


def moment_i_closed(res: Resonator, kernel: GaussianKernel, ell: int,
                    cutoff: int, *, work_cap: float = 1e12) -> float:
    """(T/log T) * sum_{j,k<=cutoff} (log j log k)^l/(jk)
                 * sum_{u,v} r_u r_v phi_hat((T/log T) log(k m_u/(j m_v))).

    The quadruple sum collapses to an autocorrelation of one point list
    {log(k * m_u)} with weights r_u (log k)^l / k; after sorting, only
    pairs inside the Gaussian window contribute, so the walk is linear in
    the number of surviving pairs rather than quadratic in list size.
    """
    if ell < 0:
        raise ValueError("ell must be >= 0")
    if cutoff < 1:
        raise ValueError("cutoff must be >= 1")
    nb = len(res.buckets)
    if float(cutoff) ** 2 * nb ** 2 > work_cap:
        raise ResourceLimitError(
            f"cutoff^2 * buckets^2 = {float(cutoff)**2 * nb**2:.3g} exceeds "
            f"the work cap {work_cap:.3g}")
    scale = res.T / math.log(res.T)
    ks = np.arange(1, cutoff + 1, dtype=np.float64)
    log_ks = np.log(ks)
    wk = log_ks ** ell / ks if ell else 1.0 / ks
    logs = res.log_reps()
    r = res.weights()
    # point list over (bucket, k)
    xs = (logs[:, None] + log_ks[None, :]).ravel()
    ws = (r[:, None] * wk[None, :]).ravel()
    order = np.argsort(xs, kind="stable")
    xs = xs[order]
    ws = ws[order]
    delta = math.sqrt(_WINDOW_EXPONENT / kernel.A) / scale
    hi = np.searchsorted(xs, xs + delta, side="right")
    n = len(xs)
    parts = [float(np.sum(ws * ws))]  # zero-separation pairs (a == b)
    for i in range(n):
        j1 = hi[i]
        if j1 <= i + 1:
            continue
        dx = xs[i + 1:j1] - xs[i]
        parts.append(2.0 * ws[i] * float(
            np.sum(ws[i + 1:j1] * kernel.phi_hat(scale * dx))))
    return scale * fsum_array(parts)


@dataclass(frozen=True)
class ZetaDerivLine:
    value: complex
    error_scale: float


def _zeta_deriv_partial(ell: int, ts: np.ndarray, T_cut: float) -> np.ndarray:
    """(-1)^l sum_{k<=T_cut} (log k)^l k^(-1-it) for each t in ts."""
    kmax = int(math.floor(T_cut))
    out = np.zeros(len(ts), dtype=complex)
    block = max(1, int(2e7 / max(len(ts), 1)))
    for k0 in range(1, kmax + 1, block):
        k1 = min(k0 + block, kmax + 1)
        ks = np.arange(k0, k1, dtype=np.float64)
        lk = np.log(ks)
        coeff = (lk ** ell if ell else np.ones_like(ks)) / ks
        out += np.exp(-1j * np.outer(ts, lk)) @ coeff
    return (-1.0) ** ell * out


def zeta_deriv_line(ell: int, t: float, T_cut: float) -> ZetaDerivLine:
    """Truncated Dirichlet value of zeta^(l)(1+it) and its reported error
    scale (l!/eps^l) T_cut^eps / t with eps = 1/loglog(t+20)."""
    if ell < 0:
        raise ValueError("ell must be >= 0")
    if T_cut < 2:
        raise ValueError("need T_cut >= 2")
    value = complex(_zeta_deriv_partial(ell, np.array([float(t)]), T_cut)[0])
    eps = 1.0 / math.log(math.log(t + 20.0))
    if t > 0:
        scale = math.factorial(ell) / eps ** ell * T_cut ** eps / t
    else:
        scale = math.inf
    return ZetaDerivLine(value=value, error_scale=scale)


@dataclass(frozen=True)
class ResonanceExperiment:
    M1: float
    M2: float
    ratio: float
    sampled_max_sq: float


def _panel_nodes(lo: float, hi: float, panel_width: float,
                 quad_points: int) -> Tuple[np.ndarray, np.ndarray]:
    """Composite Gauss-Legendre nodes/weights on [lo, hi]."""
    n_panels = max(1, int(math.ceil((hi - lo) / panel_width)))
    per_panel = max(2, int(math.ceil(quad_points / n_panels)))
    base_x, base_w = np.polynomial.legendre.leggauss(per_panel)
    edges = np.linspace(lo, hi, n_panels + 1)
    nodes, weights = [], []
    for a, b in zip(edges[:-1], edges[1:]):
        half = 0.5 * (b - a)
        nodes.append(0.5 * (a + b) + half * base_x)
        weights.append(half * base_w)
    return np.concatenate(nodes), np.concatenate(weights)


def resonance_experiment(mset: IntegerSet, params: ResonanceParams,
                         T: float, quad_points: int) -> ResonanceExperiment:
    """Quadrature moments of |R|^2 and |zeta^(l)(1+it) R|^2 over [T^beta, T].

    Both integrands share positive weights, so ratio = M2/M1 is a weighted
    average of |zeta^(l)(1+it)|^2 over the nodes and can never exceed the
    sampled maximum.
    """
    if T > 1e6:
        raise ValueError("need T <= 1e6 (desk scale)")
    if quad_points < 1000:
        raise ValueError("need quad_points >= 1000")
    res = build_resonator(mset, T)
    kernel = GaussianKernel(params.A)
    lo, hi = T ** params.beta, T
    scale = T / math.log(T)
    ts, qw = _panel_nodes(lo, hi, scale, quad_points)
    logs = res.log_reps()
    r = res.weights()
    big_r = np.exp(-1j * np.outer(ts, logs)) @ r
    env = np.abs(big_r) ** 2 * kernel.phi(ts / scale)
    zvals = _zeta_deriv_partial(params.ell, ts, T)
    zsq = np.abs(zvals) ** 2
    m1 = float(np.sum(qw * env))
    m2 = float(np.sum(qw * env * zsq))
    if not m1 > 1e-300:
        raise PrecisionError(
            f"M1 = {m1:g} degenerate on [{lo:g}, {hi:g}]; kernel decay "
            "leaves no mass at these parameters")
    return ResonanceExperiment(M1=m1, M2=m2, ratio=m2 / m1,
                               sampled_max_sq=float(np.max(zsq)))


@dataclass(frozen=True)
class Section7Ratio:
    ratio: float
    factors: Tuple[float, float, float]


def section7_ratio(x: float, b: int, sigma: float) -> Section7Ratio:
    """Main-term moment ratio of the prime-power construction, with its
    three-factor split (convergent part, Mertens part, remainder)."""
    t7 = theorem7_construction(x, b, sigma)
    return Section7Ratio(ratio=t7.ratio,
                         factors=(t7.first_factor, t7.second_factor,
                                  t7.third_factor))
