"""Monte-Carlo shell integrals for the Ohsawa measure.

Everything here is floating point and only corroborates the exact layer.

Shell integrals ``int_{t < psi < t+1} g~ e^{-psi} dlambda`` are sampled in
log-radial variables ``r = e^u``: for a monomial weight the shell is then a
slab of width 1/2 in ``u_n`` above each point of the ``u'`` box, so no
sample is wasted however negative ``t`` is.  All integrands are radial in
each coordinate, so angular integrals are done exactly.

Sampling is split into fixed-size chunks, each with its own stream spawned
from ``SeedSequence(seed)``; chunk statistics are merged in chunk order,
which makes every estimate bit-identical for a given seed whatever the
number of worker threads.  Reusing the seed across ``t`` gives common
random numbers, so differences between shells are nearly noise-free.
"""

from __future__ import annotations

import csv
import enum
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Callable, Sequence

import numpy as np
from scipy import integrate, optimize

from .divisor import RationalLike, as_rational

CHUNK = 1 << 16
DEFAULT_SAMPLES = 1_000_000
DEFAULT_SEED = 0
DEFAULT_T_GRID = (-8.0, -12.0, -16.0, -20.0)
DEFAULT_EPS_GRID = tuple(2.0 ** -k for k in range(1, 9))

# Trend thresholds for the probes: factor-3 monotone growth is divergence,
# a relative step below 5% is convergence.
GROWTH_FACTOR = 3.0
CAUCHY_GAP = 0.05


class Extension(str, enum.Enum):
    """How ``g`` on ``Y = {z_n = 0}`` is extended off ``Y``."""

    PRODUCT_BUMP = "PRODUCT_BUMP"  # g(z') (1 - |z_n|^2)^2
    TAPERED = "TAPERED"  # g(z') (1 - |z_n|)


class Trend(str, enum.Enum):
    CONVERGENT = "CONVERGENT"
    DIVERGENT = "DIVERGENT"
    INCONCLUSIVE = "INCONCLUSIVE"


@dataclass(frozen=True)
class MonomialWeight:
    """``psi(z) = log(|z_n|^2 prod_{k <= N} |z_k|^{2 a_k})`` on ``C^n``."""

    n: int
    a: tuple[Fraction, ...] = ()

    def __post_init__(self) -> None:
        object.__setattr__(self, "a", tuple(as_rational(x) for x in self.a))
        if self.n < 2:
            raise ValueError("need n >= 2")
        if len(self.a) >= self.n:
            raise ValueError("need N < n exponents")
        if any(x < 0 for x in self.a):
            raise ValueError("exponents a_k must be >= 0")

    def exponents(self) -> np.ndarray:
        """``a_k`` for every coordinate of ``Y`` (zero past ``N``)."""
        out = np.zeros(self.n - 1)
        out[: len(self.a)] = [float(x) for x in self.a]
        return out


def quartic_profile(s: np.ndarray) -> np.ndarray:
    """``(1 - s^2)^2`` on ``|s| < 1``, zero outside; C^1 with compact support."""
    s = np.asarray(s, dtype=float)
    return np.where(np.abs(s) < 1.0, (1.0 - s * s) ** 2, 0.0)


@dataclass(frozen=True)
class BumpFunction:
    """``g(z') = prod_k phi((|z_k| - c_k) / h_k)`` on ``Y = C^{n-1}``.

    Supported in a product of annuli ``c_k - h_k <= |z_k| <= c_k + h_k``,
    which must lie in the punctured unit disc so the support avoids every
    coordinate hyperplane and stays inside the unit polydisc.
    """

    centers: tuple[float, ...]
    radii: tuple[float, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "centers", tuple(float(c) for c in self.centers))
        object.__setattr__(self, "radii", tuple(float(h) for h in self.radii))
        if len(self.centers) != len(self.radii) or not self.centers:
            raise ValueError("centers and radii must be non-empty and of equal length")
        for c, h in zip(self.centers, self.radii):
            if h <= 0 or c - h <= 0 or c + h >= 1:
                raise ValueError("each annulus must satisfy 0 < c - h < c + h < 1")

    @classmethod
    def annulus(cls, dim: int, lo: float = 0.4, hi: float = 0.6) -> BumpFunction:
        c, h = (lo + hi) / 2, (hi - lo) / 2
        return cls((c,) * dim, (h,) * dim)

    @property
    def r_min(self) -> float:
        return min(c - h for c, h in zip(self.centers, self.radii))

    def log_box(self) -> tuple[np.ndarray, np.ndarray]:
        c, h = np.array(self.centers), np.array(self.radii)
        return np.log(c - h), np.log(c + h)

    def __call__(self, moduli: np.ndarray) -> np.ndarray:
        """Evaluate on an array of moduli ``(..., n-1)``."""
        c, h = np.array(self.centers), np.array(self.radii)
        return np.prod(quartic_profile((np.asarray(moduli) - c) / h), axis=-1)


@dataclass(frozen=True)
class ShellEstimate:
    t: float
    value: float
    std_error: float
    samples: int
    seed: int

    def to_json(self) -> dict:
        return {"t": self.t, "estimate": self.value, "std_error": self.std_error, "samples": self.samples, "seed": self.seed}


# ---------------------------------------------------------------- MC engine


def _chunk_stats(vals: np.ndarray) -> tuple[int, float, float]:
    mean = float(np.mean(vals))
    return vals.size, mean, float(np.sum((vals - mean) ** 2))


def mc_mean(
    kernel: Callable[[np.random.Generator, int], np.ndarray],
    samples: int,
    seed: int,
    workers: int = 1,
) -> tuple[float, float]:
    """Mean and standard error of ``kernel`` over ``samples`` draws.

    ``kernel(rng, k)`` returns ``k`` weighted samples.  Chunk ``i`` always
    draws from ``SeedSequence(seed).spawn(...)[i]`` and the chunk moments are
    merged sequentially, so the result does not depend on ``workers``.
    """
    if samples < 2:
        raise ValueError("need at least two samples")
    n_chunks = -(-samples // CHUNK)
    sizes = [CHUNK] * (n_chunks - 1) + [samples - CHUNK * (n_chunks - 1)]
    streams = np.random.SeedSequence(seed).spawn(n_chunks)

    def run(i: int) -> tuple[int, float, float]:
        return _chunk_stats(np.asarray(kernel(np.random.default_rng(streams[i]), sizes[i]), dtype=float))

    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            stats = list(pool.map(run, range(n_chunks)))
    else:
        stats = [run(i) for i in range(n_chunks)]

    # Chan et al. pairwise merge, in chunk order.
    count, mean, m2 = stats[0]
    for k, mu, s2 in stats[1:]:
        total = count + k
        delta = mu - mean
        mean += delta * k / total
        m2 += s2 + delta * delta * count * k / total
        count = total
    var = m2 / (count - 1)
    return mean, math.sqrt(var / count)


def _ext_factor(extension: Extension, r: np.ndarray) -> np.ndarray:
    if extension is Extension.TAPERED:
        return np.maximum(0.0, 1.0 - r)
    if extension is Extension.PRODUCT_BUMP:
        return quartic_profile(r)
    raise ValueError(f"invalid extension tag {extension!r}")


# ---------------------------------------------------------------- monomial shells


def shell_integral(
    w: MonomialWeight,
    g: BumpFunction,
    extension: Extension | str = Extension.TAPERED,
    t: float = -16.0,
    samples: int = DEFAULT_SAMPLES,
    seed: int = DEFAULT_SEED,
    workers: int = 1,
) -> ShellEstimate:
    """Estimate ``int_{t < psi < t+1} g~ e^{-psi} dlambda_n``.

    With ``z_k = e^{u_k + i theta_k}`` each coordinate contributes
    ``e^{2u} du dtheta``, and ``e^{-psi}`` cancels the ``z_n`` factor, so the
    integrand over ``(u', u_n)`` is ``prod_k g_k e^{(2 - 2a_k) u_k}`` times
    the extension factor in ``|z_n|``, on the slab
    ``(t - 2 sum a_k u_k)/2 < u_n < (t + 1 - 2 sum a_k u_k)/2``.
    """
    try:
        extension = Extension(extension)
    except ValueError:
        raise ValueError(f"invalid extension tag {extension!r}") from None
    if t > -3:
        raise ValueError("shell_integral needs t <= -3")
    if samples < 10_000:
        raise ValueError("shell_integral needs at least 10^4 samples")
    if len(g.centers) != w.n - 1:
        raise ValueError("bump dimension must be n - 1")
    n = w.n
    a = w.exponents()
    lo, hi = g.log_box()
    # Largest admissible u' gives the lowest slab; if even that leaves the
    # unit disc in z_n, nothing is inside U.
    if (t - 2.0 * float(np.dot(a, hi))) / 2.0 >= 0.0:
        raise ValueError("empty effective sampling region")
    width = hi - lo
    const = (2.0 * math.pi) ** n * float(np.prod(width)) * 0.5

    def kernel(rng: np.random.Generator, k: int) -> np.ndarray:
        uni = rng.random((k, n))
        u = lo + uni[:, : n - 1] * width
        base = (t - 2.0 * (u @ a)) / 2.0
        un = base + 0.5 * uni[:, n - 1]
        radial = g(np.exp(u)) * np.exp(((2.0 - 2.0 * a) * u).sum(axis=1))
        return const * radial * _ext_factor(extension, np.exp(un))

    value, err = mc_mean(kernel, samples, seed, workers)
    return ShellEstimate(float(t), value, err, samples, seed)


def _radial_moment(g: BumpFunction, k: int, power: float) -> float:
    c, h = g.centers[k], g.radii[k]
    val, _ = integrate.quad(lambda r: float(quartic_profile((r - c) / h)) * r**power, c - h, c + h, epsabs=0, epsrel=1e-12, limit=200)
    return val


def limit_reference(w: MonomialWeight, g: BumpFunction) -> float:
    """``pi int_Y g / prod |z_k|^{2 a_k} dlambda_{n-1}`` by 1-D quadrature."""
    a = w.exponents()
    out = math.pi
    for k in range(w.n - 1):
        out *= 2.0 * math.pi * _radial_moment(g, k, 1.0 - 2.0 * a[k])
    return out


def decay_reference(w: MonomialWeight, g: BumpFunction) -> float:
    """``C`` in ``value(t) = L - C e^{t/2}`` for the tapered extension."""
    a = w.exponents()
    out = 2.0 * math.pi * (math.sqrt(math.e) - 1.0)
    for k in range(w.n - 1):
        out *= 2.0 * math.pi * _radial_moment(g, k, 1.0 - 3.0 * a[k])
    return out


@dataclass(frozen=True)
class LimitReport:
    t_grid: tuple[float, ...]
    values: tuple[float, ...]
    std_errors: tuple[float, ...]
    limit: float
    amplitude: float
    exponent: float
    residual: float
    reference: float
    relative_error: float
    fit_ok: bool
    message: str = ""

    def to_json(self) -> dict:
        return asdict(self)


def _fit_decay(ts: np.ndarray, vs: np.ndarray) -> tuple[float, float, float, float, bool, str]:
    """Least-squares fit of ``v(t) = L - C e^{kappa t}``."""
    kappa0 = 0.5
    steps = np.diff(ts)
    dv = np.diff(vs)
    if len(ts) >= 3 and np.allclose(steps, steps[0]) and dv[0] != 0 and dv[1] / dv[0] > 0:
        kappa0 = -math.log(dv[1] / dv[0]) / abs(steps[0]) if dv[1] != dv[0] else 0.5
        if not (0.0 < kappa0 < 10.0):
            kappa0 = 0.5

    def linear(kappa: float) -> np.ndarray:
        basis = np.column_stack([np.ones_like(ts), -np.exp(kappa * ts)])
        coef, *_ = np.linalg.lstsq(basis, vs, rcond=None)
        return coef

    L0, C0 = linear(kappa0)
    scale = max(abs(L0), 1e-300)

    def resid(p: np.ndarray) -> np.ndarray:
        L, C, kappa = p
        return (L - C * np.exp(kappa * ts) - vs) / scale

    try:
        sol = optimize.least_squares(resid, [L0, C0, kappa0], xtol=1e-15, ftol=1e-15, gtol=1e-15, max_nfev=2000)
    except Exception as exc:  # noqa: BLE001 - fit failures are reported, not fatal
        return float(L0), float(C0), kappa0, math.nan, False, f"fit failed: {exc}"
    L, C, kappa = (float(x) for x in sol.x)
    residual = float(np.sqrt(np.mean((L - C * np.exp(kappa * ts) - vs) ** 2)))
    ok = bool(sol.success) and math.isfinite(kappa)
    return L, C, kappa, residual, ok, "" if ok else sol.message


def limit_convergence_check(
    w: MonomialWeight,
    g: BumpFunction,
    t_grid: Sequence[float] = DEFAULT_T_GRID,
    samples: int = DEFAULT_SAMPLES,
    seed: int = DEFAULT_SEED,
    workers: int = 1,
) -> LimitReport:
    """Fit tapered shell integrals to ``L - C e^{kappa t}`` and compare ``L``
    with the quadrature value of the limit."""
    ts = [float(t) for t in t_grid]
    if len(ts) < 4:
        raise ValueError("insufficient grid: need at least 4 values of t")
    if any(b >= a for a, b in zip(ts, ts[1:])):
        raise ValueError("t_grid must be strictly decreasing")
    ests = [shell_integral(w, g, Extension.TAPERED, t, samples, seed, workers) for t in ts]
    vals = np.array([e.value for e in ests])
    L, C, kappa, residual, ok, msg = _fit_decay(np.array(ts), vals)
    ref = limit_reference(w, g)
    return LimitReport(
        tuple(ts),
        tuple(float(v) for v in vals),
        tuple(e.std_error for e in ests),
        L,
        C,
        kappa,
        residual,
        ref,
        abs(L - ref) / ref,
        ok,
        msg,
    )


@dataclass(frozen=True)
class IndependenceReport:
    t_values: tuple[float, ...]
    differences: tuple[float, ...]
    shrinks: bool
    extensions: tuple[str, str]

    def to_json(self) -> dict:
        return asdict(self)


def extension_independence_check(
    w: MonomialWeight,
    g: BumpFunction,
    t_values: Sequence[float] = (-10.0, -16.0),
    samples: int = DEFAULT_SAMPLES,
    seed: int = DEFAULT_SEED,
    extensions: tuple[Extension | str, Extension | str] = (Extension.TAPERED, Extension.PRODUCT_BUMP),
    workers: int = 1,
) -> IndependenceReport:
    """``|I_t(ext1) - I_t(ext2)|`` at each ``t`` with a shared seed; it should
    shrink as ``t`` decreases.  Identical extensions give exactly 0."""
    ts = [float(t) for t in t_values]
    if len(ts) < 2 or any(t > -10 for t in ts):
        raise ValueError("need at least two values of t, all <= -10")
    e1, e2 = (Extension(e) for e in extensions)
    diffs = []
    for t in ts:
        v1 = shell_integral(w, g, e1, t, samples, seed, workers).value
        v2 = shell_integral(w, g, e2, t, samples, seed, workers).value
        diffs.append(abs(v1 - v2))
    order = np.argsort(ts)[::-1]  # from largest t to most negative
    ordered = [diffs[i] for i in order]
    # Strict decrease, except that an exact zero may stay zero.
    shrinks = all(b < a or a == b == 0 for a, b in zip(ordered, ordered[1:]))
    return IndependenceReport(tuple(ts), tuple(diffs), shrinks, (e1.value, e2.value))


# ---------------------------------------------------------------- Fermat family


def _sphere_area(dim: int) -> float:
    """Area of the unit sphere ``S^{dim-1}`` in ``R^dim``."""
    return 2.0 * math.pi ** (dim / 2) / math.gamma(dim / 2)


def _truncated_exp(u: np.ndarray, kappa: float, lo: float, hi: float) -> tuple[np.ndarray, np.ndarray]:
    """Sample ``v`` on ``[lo, hi]`` with density proportional to ``e^{kappa v}``.

    Returns ``(v, density)``; written in terms of the distance from the
    heavy end so large ``|kappa (hi - lo)|`` does not overflow.
    """
    length = hi - lo
    if abs(kappa) * length < 1e-12:
        return lo + u * length, np.full_like(u, 1.0 / length)
    k = abs(kappa)
    norm = -math.expm1(-k * length)  # 1 - e^{-k L}
    y = -np.log1p(-u * norm) / k
    dens = k * np.exp(-k * y) / norm
    v = hi - y if kappa > 0 else lo + y
    return v, dens


def _fermat_roots(zp: np.ndarray, w: np.ndarray, d: int) -> np.ndarray:
    """All ``z_n`` with ``z_n^d + sum_j z'_j^d = w``; shape ``(k, d)``."""
    base = w - np.sum(zp**d, axis=1)
    root = np.power(base.astype(complex), 1.0 / d)
    turns = np.exp(2j * math.pi * np.arange(d) / d)
    return root[:, None] * turns[None, :]


def _sphere_points(normals: np.ndarray) -> np.ndarray:
    """Uniform points of ``S^{2m-1}`` as complex vectors in ``C^m``."""
    unit = normals / np.linalg.norm(normals, axis=1, keepdims=True)
    return unit[:, 0::2] + 1j * unit[:, 1::2]


def _check_fermat(n: int, d: int) -> None:
    if not 2 <= n <= 4:
        raise ValueError("probe supports 2 <= n <= 4")
    if not 1 <= d <= 6:
        raise ValueError("probe supports 1 <= d <= 6")


def _classify(values: Sequence[float]) -> Trend:
    v = list(values)
    if len(v) < 2:
        return Trend.INCONCLUSIVE
    growing = all(b >= a for a, b in zip(v, v[1:]))
    if growing and v[0] > 0 and v[-1] >= GROWTH_FACTOR * v[0]:
        return Trend.DIVERGENT
    gaps = [abs(b - a) / abs(b) if b else math.inf for a, b in zip(v, v[1:])]
    if gaps[-1] < CAUCHY_GAP and gaps[-1] <= gaps[0]:
        return Trend.CONVERGENT
    return Trend.INCONCLUSIVE


@dataclass(frozen=True)
class FermatProbe:
    n: int
    d: int
    t_grid: tuple[float, ...]
    estimates: tuple[ShellEstimate, ...]
    trend: Trend

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "d": self.d,
            "trend": self.trend.value,
            "estimates": [e.to_json() for e in self.estimates],
        }


def fermat_shell_integral(
    n: int, d: int, t: float, samples: int = DEFAULT_SAMPLES, seed: int = DEFAULT_SEED, workers: int = 1
) -> ShellEstimate:
    """``int_{t < log|f|^2 < t+1} g~ |f|^{-2} dlambda_n`` for
    ``f = z_1^d + ... + z_n^d`` and ``g~ = (1 - |z|^2)^2`` on the unit ball.

    Change variables ``z_n -> w = f(z)`` after splitting the integrand with
    the partition of unity ``|df/dz_j|^2 / |df|^2``; by symmetry all ``n``
    pieces are equal, and each becomes
    ``int ds dtheta int dlambda(z') sum_{roots} g~ / |df|^2`` with
    ``w = e^{s + i theta}``, ``s`` uniform on ``(t/2, (t+1)/2)``.  ``z'`` is
    sampled as ``rho * omega`` with ``log rho`` drawn from an exponential
    tilt matching the ``rho^{2(n-d)}`` profile above ``|w|^{1/d}`` and an
    exact ``rho^{2n-2}`` tail below it.
    """
    _check_fermat(n, d)
    if t > -3:
        raise ValueError("need t <= -3")
    m = n - 1
    area = _sphere_area(2 * m)
    const = n * math.pi * area  # n charts, (1/2)(2 pi) from (s, theta)
    v_lo = t / (2.0 * d) - 1.5
    core_rate = 2.0 * (n - d)
    tail_rate = 2.0 * m
    p_core = 0.85

    def kernel(rng: np.random.Generator, k: int) -> np.ndarray:
        uni = rng.random((k, 4))
        normals = rng.standard_normal((k, 2 * m))
        s = t / 2.0 + 0.5 * uni[:, 0]
        w = np.exp(s + 2j * math.pi * uni[:, 1])
        in_core = uni[:, 2] < p_core
        v_core, dens_core = _truncated_exp(uni[:, 3], core_rate, v_lo, 0.0)
        v_tail = v_lo + np.log1p(-uni[:, 3]) / tail_rate
        v = np.where(in_core, v_core, v_tail)
        q = np.where(in_core, p_core * dens_core, (1 - p_core) * tail_rate * np.exp(tail_rate * (v - v_lo)))
        rho = np.exp(v)
        zp = rho[:, None] * _sphere_points(normals)
        zn = _fermat_roots(zp, w, d)
        absq = np.sum(np.abs(zp) ** 2, axis=1)[:, None] + np.abs(zn) ** 2
        grad = d * d * (np.sum(np.abs(zp) ** (2 * (d - 1)), axis=1)[:, None] + np.abs(zn) ** (2 * (d - 1)))
        gt = np.where(absq < 1.0, (1.0 - absq) ** 2, 0.0)
        total = np.sum(gt / grad, axis=1)
        return const * total * rho ** (2 * m) / q

    value, err = mc_mean(kernel, samples, seed, workers)
    return ShellEstimate(float(t), value, err, samples, seed)


def fermat_probe(
    n: int,
    d: int,
    t_grid: Sequence[float] = DEFAULT_T_GRID,
    samples: int = DEFAULT_SAMPLES,
    seed: int = DEFAULT_SEED,
    workers: int = 1,
) -> FermatProbe:
    """Shell integrals for ``psi = log|z_1^d + ... + z_n^d|^2`` along ``t_grid``.

    Convergent as ``t -> -inf`` iff the Ohsawa measure has finite mass near
    the origin; the boundary case ``d = n`` grows only linearly in ``|t|``
    and may come out INCONCLUSIVE.
    """
    _check_fermat(n, d)
    ts = tuple(float(t) for t in t_grid)
    if any(b >= a for a, b in zip(ts, ts[1:])):
        raise ValueError("t_grid must be strictly decreasing")
    ests = tuple(fermat_shell_integral(n, d, t, samples, seed, workers) for t in ts)
    return FermatProbe(n, d, ts, ests, _classify([e.value for e in ests]))


@dataclass(frozen=True)
class TubeEstimate:
    epsilon: float
    value: float
    std_error: float
    samples: int
    seed: int

    def to_json(self) -> dict:
        return asdict(self)


@dataclass(frozen=True)
class DensityProbe:
    n: int
    d: int
    epsilon_grid: tuple[float, ...]
    estimates: tuple[TubeEstimate, ...]
    trend: Trend
    expected_convergent: bool = field(default=False)

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "d": self.d,
            "trend": self.trend.value,
            "expected_convergent": self.expected_convergent,
            "estimates": [e.to_json() for e in self.estimates],
        }


def tube_mass(
    n: int,
    d: int,
    epsilon: float,
    samples: int = DEFAULT_SAMPLES,
    seed: int = DEFAULT_SEED,
    workers: int = 1,
    tube: float = 0.05,
) -> TubeEstimate:
    """Co-area surrogate for ``int_{Y, eps < |z| < 1} dV_Y / sum_j |z_j|^{2(d-1)}``.

    For complex ``f`` the co-area formula reads
    ``int_{|f| < delta} h |df|^2 dlambda ~ pi delta^2 int_Y h dV_Y``; the
    tube ``{|f| < delta}`` with ``delta = tube * eps^d`` is sampled through
    the same ``z_n -> f`` chart change as :func:`fermat_shell_integral`, but
    with ``w`` uniform in the disc.
    """
    _check_fermat(n, d)
    if not 0 < epsilon < 1:
        raise ValueError("need 0 < epsilon < 1")
    m = n - 1
    area = _sphere_area(2 * m)
    delta = tube * epsilon**d
    v_lo = math.log(epsilon) - 3.0
    rate = 2.0 * (n - d)
    const = n * area

    def kernel(rng: np.random.Generator, k: int) -> np.ndarray:
        uni = rng.random((k, 3))
        normals = rng.standard_normal((k, 2 * m))
        w = delta * np.sqrt(uni[:, 0]) * np.exp(2j * math.pi * uni[:, 1])
        v, q = _truncated_exp(uni[:, 2], rate, v_lo, 0.0)
        rho = np.exp(v)
        zp = rho[:, None] * _sphere_points(normals)
        zn = _fermat_roots(zp, w, d)
        absq = np.sum(np.abs(zp) ** 2, axis=1)[:, None] + np.abs(zn) ** 2
        weight = np.sum(np.abs(zp) ** (2 * (d - 1)), axis=1)[:, None] + np.abs(zn) ** (2 * (d - 1))
        inside = (absq > epsilon * epsilon) & (absq < 1.0)
        total = np.sum(np.where(inside, 1.0 / weight, 0.0), axis=1)
        return const * total * rho ** (2 * m) / q

    value, err = mc_mean(kernel, samples, seed, workers)
    return TubeEstimate(float(epsilon), value, err, samples, seed)


def df_density_probe(
    n: int,
    d: int,
    epsilon_grid: Sequence[float] = DEFAULT_EPS_GRID,
    samples: int = DEFAULT_SAMPLES,
    seed: int = DEFAULT_SEED,
    workers: int = 1,
) -> DensityProbe:
    """Mass of ``dV_Y / |df|^2`` outside shrinking balls; finite in the limit
    iff ``d - 1 <= n - 2``."""
    _check_fermat(n, d)
    eps = tuple(float(e) for e in epsilon_grid)
    if len(eps) < 2 or any(b >= a for a, b in zip(eps, eps[1:])):
        raise ValueError("epsilon_grid must be strictly decreasing with at least two values")
    ests = tuple(tube_mass(n, d, e, samples, seed, workers) for e in eps)
    return DensityProbe(n, d, eps, ests, _classify([e.value for e in ests]), d - 1 <= n - 2)


def write_csv(path: str | Path, rows: Sequence[tuple[float, float]], header: tuple[str, str] = ("t", "value")) -> None:
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(header)
        writer.writerows(rows)


def weight(n: int, *a: RationalLike) -> MonomialWeight:
    return MonomialWeight(n, tuple(as_rational(x) for x in a))
