"""Quadrature-based spectral checks on R^d.

Kernel transform convention::

    f_kernel(x) = (2 pi)^{-d} \\int e^{i <xi, x>} f(p(xi)) d xi

Integrals use composite Gauss-Legendre panels on truncated boxes; the
truncation is doubled until the outer shell contributes less than
``0.1 * tol`` of the total.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np
from scipy import integrate

from ..envelope import EnvElement
from ..errors import InputError, TruncationDominates, ZeroMass
from ..grading import Grading, homogeneous_dimension
from ..systems import homogeneity_degree
from .symbols import _check_real, as_symbols

ORDER = 16
_NODES, _WEIGHTS = np.polynomial.legendre.leggauss(ORDER)


def gauss_legendre(a: float, b: float, panels: int) -> tuple[np.ndarray, np.ndarray]:
    """Composite Gauss-Legendre nodes/weights on [a, b]."""
    panels = max(1, int(panels))
    edges = np.linspace(a, b, panels + 1)
    half = 0.5 * np.diff(edges)
    mid = 0.5 * (edges[1:] + edges[:-1])
    x = (mid[:, None] + half[:, None] * _NODES[None, :]).ravel()
    w = (half[:, None] * _WEIGHTS[None, :]).ravel()
    return x, w


def _panels(R: float, width: float) -> int:
    return max(2, int(math.ceil(2 * R / width)))


def _tensor_integral(values: np.ndarray, weights: Sequence[np.ndarray]) -> complex:
    out = values
    for w in weights:
        out = np.tensordot(out, w, axes=([0], [0]))
    return out


def _grid_eval(fn: Callable, axes: Sequence[np.ndarray]) -> np.ndarray:
    mesh = np.stack(np.meshgrid(*axes, indexing="ij"), axis=-1)
    return fn(mesh)


def _composite(symbols, f):
    def g(xi):
        lam = np.stack([np.real(p(xi)) for p in symbols], axis=-1)
        return f(lam)

    return g


@dataclass
class _Truncation:
    radius: float
    tail: float


def _choose_radius(integrand: Callable, d: int, tol: float, width: float, r0: float = 1.0, rmax: float = 1024.0):
    """Double R until the shell [R, 2R] carries < 0.1*tol of the integral."""
    R = r0

    def total(r):
        x, w = gauss_legendre(-r, r, _panels(r, width))
        vals = _grid_eval(integrand, [x] * d)
        return float(np.real(_tensor_integral(vals, [w] * d)))

    prev = total(R)
    while True:
        cur = total(2 * R)
        shell = abs(cur - prev)
        if shell <= 0.1 * tol * max(abs(cur), 1e-300) or cur == 0.0:
            return _Truncation(2 * R, shell)
        R *= 2
        if 2 * R > rmax:
            raise TruncationDominates(f"tail still {shell:.3g} at radius {R}", radius=R, tail=shell)
        prev = cur


@dataclass
class KernelSample:
    axes: list
    values: np.ndarray
    xi_radius: float
    xi_nodes: int

    @property
    def grid(self) -> np.ndarray:
        return np.stack(np.meshgrid(*self.axes, indexing="ij"), axis=-1)


def _kernel_on_axes(g: Callable, d: int, axes: Sequence[np.ndarray], R: float, xmax: float, width: float) -> np.ndarray:
    # panels fine enough for the phase e^{i xi x} at |x| <= xmax
    w_eff = min(width, 8.0 / max(xmax, 1e-12))
    xi, wq = gauss_legendre(-R, R, _panels(R, w_eff))
    vals = _grid_eval(g, [xi] * d).astype(complex)
    out = vals
    for ax in axes:
        E = np.exp(1j * np.outer(xi, ax)) * wq[:, None]  # (nxi, nx)
        out = np.tensordot(out, E, axes=([0], [0]))
    return out / (2 * np.pi) ** d


def kernel_transform(
    system,
    f,
    axes: Sequence[np.ndarray] | None = None,
    extent: float = 10.0,
    points: int = 201,
    tol: float = 1e-6,
    width: float = 0.25,
) -> KernelSample:
    """Sample the convolution kernel of f(L) on a spatial grid."""
    syms = as_symbols(system)
    _check_real(syms)
    d = syms[0].nvars
    if axes is None:
        axes = [np.linspace(-extent, extent, points)] * d
    axes = [np.asarray(a, float) for a in axes]
    g = _composite(syms, f)
    trunc = _choose_radius(lambda xi: np.abs(g(xi)), d, tol, width)
    xmax = max(float(np.max(np.abs(a))) for a in axes)
    vals = _kernel_on_axes(g, d, axes, trunc.radius, xmax, width)
    return KernelSample(axes, vals, trunc.radius, 0)


@dataclass
class PlancherelResult:
    lhs: float
    rhs: float
    rel_err: float
    lhs_err: float
    rhs_err: float
    xi_radius: float
    x_radius: float
    tol: float

    @property
    def ok(self) -> bool:
        return self.rel_err < self.tol


def _rel(a, b):
    scale = max(abs(a), abs(b))
    return 0.0 if scale == 0 else abs(a - b) / scale


def plancherel_check(system, f, tol: float = 1e-6, width: float = 0.25) -> PlancherelResult:
    """int |f|^2 d sigma (frequency side) against ||f_kernel||_2^2 (space side)."""
    syms = as_symbols(system)
    _check_real(syms)
    d = syms[0].nvars
    g = _composite(syms, f)
    g2 = lambda xi: np.abs(g(xi)) ** 2  # noqa: E731
    if not np.any(np.abs(_grid_eval(g, [np.linspace(-8, 8, 65)] * d)) > 0):
        return PlancherelResult(0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, tol)
    t2 = _choose_radius(g2, d, tol, width)
    t1 = _choose_radius(lambda xi: np.abs(g(xi)), d, tol, width)
    R = max(t1.radius, t2.radius)

    def lhs_at(wd):
        x, w = gauss_legendre(-R, R, _panels(R, wd))
        return float(_tensor_integral(_grid_eval(g2, [x] * d), [w] * d)) / (2 * np.pi) ** d

    lhs = lhs_at(width)
    lhs_err = abs(lhs - lhs_at(width / 2))

    # kernel side: the kernel's spatial frequency is at most R
    xwidth = min(width * 8, 8.0 / R)

    def rhs_at(X, xw):
        x, w = gauss_legendre(-X, X, _panels(X, xw))
        k = _kernel_on_axes(g, d, [x] * d, R, X, width)
        return float(np.real(_tensor_integral(np.abs(k) ** 2, [w] * d)))

    X = 1.0
    prev = rhs_at(X, xwidth)
    while True:
        cur = rhs_at(2 * X, xwidth)
        if abs(cur - prev) <= 0.1 * tol * max(abs(cur), 1e-300):
            X *= 2
            break
        X *= 2
        if X > 4096:
            raise TruncationDominates("kernel tail does not decay within the spatial window", radius=X)
        prev = cur
    rhs = cur
    rhs_err = abs(rhs - rhs_at(X, xwidth / 2))
    return PlancherelResult(lhs, rhs, _rel(lhs, rhs), lhs_err, rhs_err, R, X, tol)


# ---------------------------------------------------------------------------
# masses of sigma on semialgebraic regions


def _section_length(constraints: Sequence[np.ndarray], R: float) -> float:
    """Length of {t in [-R, R] : q(t) >= 0 for all q} (q as low->high coefficients)."""
    cuts = [-R, R]
    for q in constraints:
        q = np.trim_zeros(np.asarray(q, float), "b")
        if len(q) > 1:
            roots = np.polynomial.polynomial.polyroots(q)
            cuts += [r.real for r in roots if abs(r.imag) <= 1e-9 * max(1.0, abs(r.real)) and -R < r.real < R]
    cuts = np.unique(cuts)
    total = 0.0
    for a, b in zip(cuts[:-1], cuts[1:]):
        mid = 0.5 * (a + b)
        if all(np.polynomial.polynomial.polyval(mid, q) >= 0 for q in constraints):
            total += b - a
    return total


def _region_mass(symbols, constraints_of, R: float, epsabs: float) -> float:
    """(2 pi)^{-d} * Lebesgue measure of the preimage inside [-R, R]^d.

    The last frequency coordinate is integrated exactly through polynomial
    roots; outer coordinates adaptively.
    """
    d = symbols[0].nvars

    def inner(outer: Sequence[float]) -> float:
        base = list(outer) + [0.0]
        lines = [p.restrict_line(base, d - 1) for p in symbols]
        return _section_length(constraints_of(lines), R)

    if d == 1:
        vol = inner([])
    else:

        def nested(prefix, depth):
            if depth == d - 1:
                return inner(prefix)
            val, _ = integrate.quad(lambda s: nested(prefix + [s], depth + 1), -R, R, epsabs=epsabs, epsrel=0, limit=400)
            return val

        vol = nested([], 0)
    return vol / (2 * np.pi) ** d


def _box_constraints(lower, upper):
    P = np.polynomial.polynomial

    def build(lines):
        out = []
        for q, a, b in zip(lines, lower, upper):
            out.append(P.polysub(q, [a]))
            out.append(P.polysub([b], q))
        return out

    return build


def _ball_constraints(radius):
    P = np.polynomial.polynomial

    def build(lines):
        s = [0.0]
        for q in lines:
            s = P.polyadd(s, P.polymul(q, q))
        return [P.polysub([radius**2], s)]

    return build


def _stable_mass(symbols, constraints_of, epsabs, r0=1.0, rmax=1 << 12):
    """Grow the frequency box until the preimage is contained in it."""
    R = r0
    prev = _region_mass(symbols, constraints_of, R, epsabs)
    while True:
        cur = _region_mass(symbols, constraints_of, 2 * R, epsabs)
        if abs(cur - prev) <= 10 * epsabs:
            return cur, 2 * R
        R *= 2
        if R > rmax:
            raise TruncationDominates("preimage of the region is unbounded", radius=R)
        prev = cur


def sigma_box(system, lower, upper, epsabs: float = 1e-10) -> float:
    syms = as_symbols(system)
    _check_real(syms)
    return _stable_mass(syms, _box_constraints(lower, upper), epsabs)[0]


def sigma_ball(system, radius: float, epsabs: float = 1e-10) -> float:
    syms = as_symbols(system)
    _check_real(syms)
    return _stable_mass(syms, _ball_constraints(radius), epsabs)[0]


@dataclass
class PolarResult:
    ratio: float
    target: float
    t: float
    Q_delta: object
    degrees: list
    mass: float
    dilated_mass: float

    @property
    def rel_err(self) -> float:
        return _rel(self.ratio, self.target)


def _op_list(ops) -> list:
    """An OperatorSystem, a single EnvElement or a sequence of them -> list."""
    if isinstance(ops, EnvElement):
        return [ops]
    return list(getattr(ops, "ops", ops))


def polar_decomposition_check(ops, grading: Grading, lower, upper, t: float) -> PolarResult:
    """sigma(epsilon_t A) / sigma(A) against t^{Q_delta} for a box A."""
    ops = _op_list(ops)
    degrees = [homogeneity_degree(grading, op) for op in ops]
    q = homogeneous_dimension(grading)
    m = sigma_box(ops, lower, upper)
    if m == 0:
        raise ZeroMass("the box carries no Plancherel mass", lower=list(lower), upper=list(upper))
    scale = [float(t) ** float(r) for r in degrees]
    md = sigma_box(ops, [a * s for a, s in zip(lower, scale)], [b * s for b, s in zip(upper, scale)])
    return PolarResult(md / m, float(t) ** float(q), float(t), q, degrees, m, md)


@dataclass
class ConvolutionResult:
    max_abs_dev: float
    axis: np.ndarray
    direct: np.ndarray
    convolved: np.ndarray
    reference_dev: float | None = None


def convolution_identity_check(system, f, g, extent: float = 20.0, step: float = 0.05, reference: Callable | None = None):
    """(fg)_kernel against the grid convolution g_kernel * f_kernel (1-D grid).

    ``reference`` (optional) is a closed-form kernel evaluated on the grid;
    ``reference_dev`` then reports max |g_kernel * f_kernel - reference|.
    """
    syms = as_symbols(system)
    if syms[0].nvars != 1:
        raise InputError("convolution_identity_check works on a 1-D grid")
    K = int(round(extent / step))
    x = np.arange(-K, K + 1) * step
    fk = kernel_transform(syms, f, axes=[x]).values
    gk = kernel_transform(syms, g, axes=[x]).values
    fg = kernel_transform(syms, lambda lam: f(lam) * g(lam), axes=[x]).values
    conv = np.convolve(gk, fk) * step  # length 4K+1, centred at 2K
    conv = conv[K : 3 * K + 1]
    dev = float(np.max(np.abs(conv - fg)))
    ref = None
    if reference is not None:
        ref = float(np.max(np.abs(conv - reference(x))))
    return ConvolutionResult(dev, x, fg, conv, ref)


@dataclass
class GrowthResult:
    radii: list
    masses: list
    slope: float
    bound: float
    margin: float

    @property
    def ok(self) -> bool:
        return self.slope <= self.bound + self.margin


def growth_check(system, radii: Sequence[float], margin: float = 0.25) -> GrowthResult:
    """sigma(|lambda|_2 <= a) for each radius and its log-log slope.

    The slope bound d / min(symbol degree) is the growth exponent obtained
    with p_* = sum_j lambda_j^{2N/deg_j}, N = lcm of the symbol degrees.
    """
    syms = as_symbols(system)
    _check_real(syms)
    d = syms[0].nvars
    masses = [sigma_ball(syms, a) for a in radii]
    if min(masses) <= 0:
        raise ZeroMass("a ball carries no Plancherel mass")
    slope = float(np.polyfit(np.log(radii), np.log(masses), 1)[0])
    bound = d / min(p.degree() for p in syms)
    return GrowthResult(list(radii), masses, slope, bound, margin)
