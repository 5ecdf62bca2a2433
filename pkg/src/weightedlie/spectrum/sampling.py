"""Weighted point clouds approximating the Plancherel measure.

Frequencies xi are drawn in the truncation box [-R, R]^d, mapped through the
symbol map, and each point carries mass (2 pi)^{-d} (2R)^d / N.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np
from scipy.spatial import cKDTree

from ..errors import InputError, ZeroMass
from ..poly import CommPoly
from .symbols import _check_real, as_symbols

SCHEMES = ("grid", "mc", "stratified")


@dataclass(frozen=True)
class SamplerConfig:
    """``samples`` is the total count; grid/stratified round it to m**d."""

    scheme: str = "stratified"
    samples: int = 10**6
    radius: float = 4.0
    seed: int = 0
    block: int = 1 << 16

    def __post_init__(self):
        if self.scheme not in SCHEMES:
            raise InputError(f"unknown sampling scheme {self.scheme!r}; choose from {SCHEMES}")
        if self.samples < 0 or self.radius <= 0:
            raise InputError("samples must be >= 0 and radius > 0")


@dataclass
class EmpiricalSpectrum:
    points: np.ndarray  # (S, n)
    weights: np.ndarray  # (S,)
    generator: dict = field(default_factory=dict)

    @property
    def dim(self) -> int:
        return self.points.shape[1]

    @property
    def mass(self) -> float:
        return float(np.sum(self.weights))

    def __len__(self):
        return len(self.weights)

    def mass_in_box(self, lower: Sequence[float], upper: Sequence[float]) -> float:
        """Mass of the half-open box prod [lower_j, upper_j)."""
        if len(self.weights) == 0:
            return 0.0
        lo, hi = np.asarray(lower, float), np.asarray(upper, float)
        inside = np.all((self.points >= lo) & (self.points < hi), axis=1)
        return float(np.sum(self.weights[inside]))

    def ratio(self, num_box, den_box) -> float:
        den = self.mass_in_box(*den_box)
        if den == 0:
            raise ZeroMass("reference box carries no sampled mass", box=den_box)
        return self.mass_in_box(*num_box) / den

    def dilate(self, degrees: Sequence[float], t: float) -> EmpiricalSpectrum:
        """epsilon_t: lambda_j -> t^{r_j} lambda_j, weights kept."""
        scale = float(t) ** np.asarray(degrees, float)
        return EmpiricalSpectrum(self.points * scale, self.weights.copy(), dict(self.generator, dilation=float(t)))

    def to_json(self) -> dict:
        return {
            "seed": self.generator.get("seed"),
            "scheme": self.generator.get("scheme"),
            "truncation": self.generator.get("truncation"),
            "points": [[*map(float, p), float(w)] for p, w in zip(self.points, self.weights)],
        }

    @classmethod
    def from_json(cls, doc: dict) -> EmpiricalSpectrum:
        rows = np.asarray(doc["points"], float)
        if rows.size == 0:
            return cls(np.zeros((0, 1)), np.zeros(0), {k: doc.get(k) for k in ("seed", "scheme", "truncation")})
        return cls(rows[:, :-1], rows[:, -1], {k: doc.get(k) for k in ("seed", "scheme", "truncation")})

    def write_json(self, path):
        with open(path, "w") as fh:
            json.dump(self.to_json(), fh)

    def write_csv(self, path):
        header = ",".join([f"lambda_{k + 1}" for k in range(self.dim)] + ["weight"])
        rows = np.column_stack([self.points, self.weights]) if len(self.weights) else np.zeros((0, self.dim + 1))
        np.savetxt(path, rows, delimiter=",", fmt="%.17g", header=header, comments="")


def _frequencies(d: int, cfg: SamplerConfig) -> np.ndarray:
    R = float(cfg.radius)
    if cfg.samples == 0:
        return np.zeros((0, d))
    if cfg.scheme == "mc":
        rng = np.random.Generator(np.random.Philox(key=cfg.seed))
        return rng.uniform(-R, R, size=(cfg.samples, d))
    m = max(1, int(round(cfg.samples ** (1.0 / d))))
    h = 2 * R / m
    cells = np.stack(np.meshgrid(*[np.arange(m)] * d, indexing="ij"), axis=-1).reshape(-1, d)
    if cfg.scheme == "grid":
        offset = np.full(cells.shape, 0.5)
    else:
        rng = np.random.Generator(np.random.Philox(key=cfg.seed))
        offset = rng.uniform(0.0, 1.0, size=cells.shape)
    return -R + (cells + offset) * h


def _evaluate(symbols: Sequence[CommPoly], xi: np.ndarray, block: int) -> np.ndarray:
    out = np.empty((len(xi), len(symbols)))
    for start in range(0, len(xi), block):
        chunk = xi[start : start + block]
        for j, p in enumerate(symbols):
            out[start : start + block, j] = p(chunk)
    return out


def spectrum_sample(system, cfg: SamplerConfig = SamplerConfig(), dilation: tuple | None = None) -> EmpiricalSpectrum:
    """Sample (Sigma, sigma) for a commuting system on R^d.

    ``dilation=(t, degrees)`` first maps each frequency coordinate j by
    t**degrees[j] (the dual dilation), then reweights by t**sum(degrees).
    """
    syms = as_symbols(system)
    _check_real(syms)
    d = syms[0].nvars
    xi = _frequencies(d, cfg)
    n = len(xi)
    w = (2 * cfg.radius) ** d / (2 * np.pi) ** d / n if n else 0.0
    weights = np.full(n, w)
    if dilation is not None:
        t, degs = dilation
        degs = np.asarray([float(x) for x in degs])
        xi = xi * float(t) ** degs
        weights = weights * float(t) ** float(np.sum(degs))
    pts = _evaluate(syms, xi, cfg.block) if n else np.zeros((0, len(syms)))
    gen = {
        "seed": cfg.seed,
        "scheme": cfg.scheme,
        "truncation": float(cfg.radius),
        "samples": n,
        "frequency_dim": d,
    }
    return EmpiricalSpectrum(pts, weights, gen)


def pushforward_change_of_generators(es: EmpiricalSpectrum, P: Sequence[CommPoly]) -> EmpiricalSpectrum:
    """Map every point through the polynomial map P: R^n -> R^n'; weights kept."""
    if isinstance(P, CommPoly):
        P = [P]
    for p in P:
        if p.nvars != es.dim:
            raise InputError(f"polynomial in {p.nvars} variables applied to a {es.dim}-dimensional spectrum")
    if len(es) == 0:
        return EmpiricalSpectrum(np.zeros((0, len(P))), np.zeros(0), dict(es.generator))
    pts = np.stack([np.real(p(es.points)) for p in P], axis=-1)
    return EmpiricalSpectrum(pts, es.weights.copy(), dict(es.generator, pushforward=[str(p) for p in P]))


def support_distance(a: EmpiricalSpectrum, b: EmpiricalSpectrum, lower=None, upper=None) -> float:
    """Symmetric Hausdorff distance between the clouds inside a window."""

    def clip(es):
        pts = es.points
        if lower is not None:
            keep = np.all((pts >= np.asarray(lower)) & (pts <= np.asarray(upper)), axis=1)
            pts = pts[keep]
        return pts

    pa, pb = clip(a), clip(b)
    if len(pa) == 0 or len(pb) == 0:
        raise ZeroMass("empty cloud inside the comparison window")
    da, _ = cKDTree(pb).query(pa)
    db, _ = cKDTree(pa).query(pb)
    return float(max(da.max(), db.max()))


def box_masses(es: EmpiricalSpectrum, edges: Sequence[Sequence[float]]) -> np.ndarray:
    """Masses on the product grid of half-open boxes defined by per-axis edges."""
    if len(edges) != es.dim:
        raise InputError("one edge list per spectral coordinate is required")
    hist, _ = np.histogramdd(es.points, bins=[np.asarray(e, float) for e in edges], weights=es.weights)
    return hist
