"""Command implementations behind the CLI; each returns a report dict.

Argument strings are resolved here so the functions can be driven from
tests without going through argparse.
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Sequence

import numpy as np

from .catalog import CatalogEntry, catalog_get, dump_algebra, resolve_source
from .envelope import check_derivation
from .errors import InputError, ValidationError
from .expr import parse_element, parse_poly, parse_vector
from .grading import Grading, homogeneous_dimension
from .lie import LieAlgebra
from .products import concat_weighted_bases, product
from .report import (
    contraction_section,
    grading_section,
    jsonable,
    new_report,
    rat,
    structure_section,
    system_section,
    tagged,
    weighted_section,
)
from .scalars import as_fraction
from .weighted import WeightedBasis
from . import spectrum as sp

# ---------------------------------------------------------------------------
# argument resolution


def _split(spec: str) -> list[str]:
    return [s.strip() for s in spec.split(",") if s.strip()]


def parse_assignments(spec: str) -> tuple[list[str] | None, list[str]]:
    """``"1,1,2"`` -> (None, values); ``"X1:1,X2:1"`` -> (names, values)."""
    items = _split(spec)
    if not items:
        raise InputError("empty list")
    if all(":" in it for it in items):
        names, vals = zip(*(it.split(":", 1) for it in items))
        return [n.strip() for n in names], [v.strip() for v in vals]
    if any(":" in it for it in items):
        raise InputError(f"mix of plain and NAME:VALUE entries in {spec!r}")
    return None, items


def resolve_grading(alg: LieAlgebra, spec: str | Sequence | None, entry: CatalogEntry | None = None) -> Grading | None:
    if spec is None:
        spec = entry.grading if entry is not None else None
        if spec is None:
            return None
    if isinstance(spec, str):
        names, vals = parse_assignments(spec)
        if names is not None:
            return Grading(alg, dict(zip(names, vals)))
        spec = vals
    if len(spec) != alg.dim:
        raise InputError(f"grading lists {len(spec)} degrees for an algebra of dimension {alg.dim}")
    return Grading(alg, list(spec))


def resolve_basis(
    alg: LieAlgebra,
    basis: str | Sequence[str] | None,
    weights: str | Sequence | None,
    entry: CatalogEntry | None = None,
) -> WeightedBasis | None:
    """Weighted basis from ``--basis`` / ``--weights`` or the catalog defaults.

    ``--weights X1:1,X2:1`` names the elements directly.  Plain weights pair
    with ``--basis`` if given, else with the catalog basis of the same length,
    else with the first ambient basis elements.
    """
    if isinstance(basis, str):
        basis = _split(basis)
    names = None
    if isinstance(weights, str):
        names, weights = parse_assignments(weights)
    if names is not None:
        if basis is not None:
            raise InputError("give either NAME:WEIGHT pairs or --basis, not both")
        basis = names
    if weights is None:
        if basis is not None:
            raise InputError("--basis needs --weights")
        if entry is None or entry.weights is None:
            return None
        basis, weights = entry.basis, entry.weights
    if basis is None:
        if entry is not None and entry.basis is not None and len(entry.basis) == len(weights):
            basis = entry.basis
        else:
            if len(weights) > alg.dim:
                raise InputError(f"{len(weights)} weights for an algebra of dimension {alg.dim}")
            basis = list(alg.names[: len(weights)])
    if len(basis) != len(weights):
        raise InputError(f"{len(basis)} basis elements but {len(weights)} weights")
    vectors = [parse_vector(b, alg) for b in basis]
    return WeightedBasis(alg, vectors, [as_fraction(w) for w in weights], labels=list(basis))


def resolve_derivation(alg: LieAlgebra, spec: str | dict | None):
    """``catalog:NAME``, ``"X1=X2;X2=-X1"`` or a name -> image mapping."""
    if spec is None:
        return None, None
    if isinstance(spec, str):
        if spec.startswith("catalog:"):
            spec = catalog_get(spec[len("catalog:") :]).derivation
            if spec is None:
                raise InputError("catalog entry carries no derivation")
        else:
            pairs = [p.strip() for p in spec.split(";") if p.strip()]
            mapping = {}
            for p in pairs:
                if "=" not in p:
                    raise InputError(f"derivation entries look like NAME=EXPR, got {p!r}")
                k, v = p.split("=", 1)
                mapping[k.strip()] = v.strip()
            spec = mapping
    for k in spec:
        alg.index(k)
    images = [parse_vector(spec.get(nm, "0"), alg) for nm in alg.names]
    check_derivation(alg, images)
    doc = {nm: alg.format_vector(v) for nm, v in zip(alg.names, images)}
    return images, doc


_INDEX = re.compile(r"\bX(\d+)\b")


def spectrum_entry(source: str | None, ops: Sequence[str]) -> CatalogEntry:
    """Explicit source, else the abelian algebra on X1..XN used by the operators."""
    if source is not None:
        return resolve_source(source)
    n = max((int(m) for op in ops for m in _INDEX.findall(op)), default=1)
    return catalog_get(f"abelian:{n}")


def parse_ops(alg: LieAlgebra, ops: Sequence[str]):
    if not ops:
        raise InputError("at least one --op is required")
    return [parse_element(op, alg) for op in ops]


def parse_box(spec: Sequence[str] | str, d: int) -> tuple[list[float], list[float]]:
    """``"0:1"`` (applied to every axis) or one ``lo:hi`` per axis."""
    if isinstance(spec, str):
        spec = [spec]
    parts = []
    for s in spec:
        try:
            lo, hi = s.split(":")
            parts.append((float(as_fraction(lo.strip())), float(as_fraction(hi.strip()))))
        except ValueError:
            raise InputError(f"box sides look like LO:HI, got {s!r}") from None
    if len(parts) == 1:
        parts = parts * d
    if len(parts) != d:
        raise InputError(f"box has {len(parts)} sides for {d} coordinates")
    if any(lo >= hi for lo, hi in parts):
        raise InputError("box sides need LO < HI")
    return [p[0] for p in parts], [p[1] for p in parts]


def parse_edges(spec: Sequence[str] | str, d: int) -> list[np.ndarray]:
    """``"0:4:20"`` -> 21 equally spaced edges, per axis or shared."""
    if isinstance(spec, str):
        spec = [spec]
    out = []
    for s in spec:
        try:
            lo, hi, n = s.split(":")
            lo, hi, n = float(as_fraction(lo)), float(as_fraction(hi)), int(n)
        except ValueError:
            raise InputError(f"edges look like LO:HI:N, got {s!r}") from None
        if n < 1 or lo >= hi:
            raise InputError(f"bad edges {s!r}")
        out.append(np.linspace(lo, hi, n + 1))
    if len(out) == 1:
        out = out * d
    if len(out) != d:
        raise InputError(f"{len(out)} edge specs for {d} coordinates")
    return out


# ---------------------------------------------------------------------------
# structural commands


def cmd_analyze(source: str, basis=None, weights=None, grading=None) -> dict:
    entry = resolve_source(source)
    alg = entry.lie_algebra()
    rep = new_report("analyze", source)
    rep["algebra"] = dump_algebra(alg)
    rep["structure"] = structure_section(alg)
    gr = resolve_grading(alg, grading, entry)
    rep["grading"] = grading_section(gr) if gr is not None else None
    wb = resolve_basis(alg, basis, weights, entry)
    if wb is not None:
        rep["weighted_basis"] = weighted_section(wb)
        rep["contraction"] = contraction_section(wb)
    else:
        rep["weighted_basis"] = None
        rep["contraction"] = None
    return rep


def cmd_contract(source: str, basis=None, weights=None) -> dict:
    entry = resolve_source(source)
    alg = entry.lie_algebra()
    wb = resolve_basis(alg, basis, weights, entry)
    if wb is None:
        raise InputError("contract needs a weighted basis (--weights, optionally --basis)")
    rep = new_report("contract", source)
    rep["algebra"] = dump_algebra(alg)
    rep["weighted_basis"] = weighted_section(wb)
    rep["contraction"] = contraction_section(wb)
    return rep


def cmd_check_system(source: str, ops: Sequence[str] | None = None, grading=None, derivation=None) -> tuple[dict, bool]:
    entry = resolve_source(source)
    alg = entry.lie_algebra()
    ops = list(ops) if ops else list(entry.ops or [])
    elems = parse_ops(alg, ops)
    gr = resolve_grading(alg, grading, entry)
    if derivation is None and entry.ops and ops == list(entry.ops):
        derivation = entry.derivation
    images, ddoc = resolve_derivation(alg, derivation)
    rep = new_report("check-system", source)
    rep["algebra"] = dump_algebra(alg)
    rep["grading"] = grading_section(gr) if gr is not None else None
    sec = system_section(elems, gr, images, ddoc)
    if alg.is_abelian() and sec["valid"]:
        sec["abelian_injectivity"] = _injectivity(elems, gr)
        v = sec["abelian_injectivity"]["verdict"]
        sec["subcoercivity"] = {"injective": "decided: injective", "not_injective": "decided: not injective"}.get(v, v)
    rep["system"] = sec
    if not sec["valid"]:
        rep["status"] = "invalid"
        rep["error"] = _system_failure(sec)
    return rep, sec["valid"]


def _injectivity(elems, gr) -> dict:
    try:
        v = sp.abelian_joint_injectivity(elems, gr)
    except ValidationError as exc:
        return {"verdict": "undecided", "reason": str(exc)}
    return {
        "verdict": v.verdict,
        "min_value": tagged(v.min_value, v.tolerance),
        "samples": v.samples,
        "witness": None if v.witness is None else [rat(x) for x in v.witness],
    }


def _system_failure(sec: dict) -> dict:
    for j, ok in enumerate(sec["self_adjoint"]):
        if not ok:
            return {
                "type": "NotSelfAdjoint",
                "message": f"operator {j} is not formally self-adjoint",
                "witness": {"index": j, "operator": sec["operators"][j]},
            }
    n = len(sec["operators"])
    for i in range(n):
        for j in range(i + 1, n):
            if sec["commutators"][i][j] != "0":
                return {
                    "type": "NotCommuting",
                    "message": f"operators {i} and {j} do not commute",
                    "witness": {"pair": [i, j], "commutator": sec["commutators"][i][j]},
                }
    raise AssertionError("invalid system without a failing check")  # pragma: no cover


def cmd_product(sources: Sequence[str], weights: Sequence[str] | None = None, bases: Sequence[str] | None = None) -> dict:
    if len(sources) < 2:
        raise InputError("product needs at least two algebras")
    entries = [resolve_source(s) for s in sources]
    factors = [e.lie_algebra() for e in entries]
    pa = product(factors)
    rep = new_report("product", " * ".join(sources))
    rep["factors"] = [dump_algebra(a) for a in factors]
    rep["algebra"] = dump_algebra(pa.total)
    rep["structure"] = structure_section(pa.total)
    weights = list(weights or [None] * len(entries))
    bases = list(bases or [None] * len(entries))
    if len(weights) != len(entries) or len(bases) != len(entries):
        raise InputError("give --weights (and --basis) once per factor, or not at all")
    wbs = [resolve_basis(a, b, w, e) for a, b, w, e in zip(factors, bases, weights, entries)]
    if all(wb is not None for wb in wbs):
        cat = concat_weighted_bases(pa, wbs)
        rep["concatenated"] = {
            "weighted_basis": weighted_section(cat.basis),
            "filtration_additive": cat.filtration_additive,
            "functorial": cat.functorial,
            "contraction": contraction_section(cat.basis),
            "factor_Q_delta": [rat(k.homogeneous_dimension) for k in cat.factor_contractions],
        }
    else:
        rep["concatenated"] = None
    return rep


# ---------------------------------------------------------------------------
# spectral commands


def _spectrum_setup(source, ops):
    entry = spectrum_entry(source, ops)
    alg = entry.lie_algebra()
    elems = parse_ops(alg, ops)
    syms = sp.as_symbols(elems)  # NonAbelian on non-abelian algebras
    return entry, alg, elems, syms


def _spectrum_header(sub: str, source, alg, elems, syms) -> dict:
    rep = new_report(f"spectrum {sub}", source or f"catalog:abelian:{alg.dim}")
    rep["algebra"] = dump_algebra(alg)
    rep["system"] = {"operators": [str(d) for d in elems], "symbols": [str(p) for p in syms]}
    return rep


def cmd_spectrum_plancherel(ops, f="exp(-lambda)", source=None, tol=1e-6) -> dict:
    _, alg, elems, syms = _spectrum_setup(source, ops)
    m = sp.multiplier(f, len(elems))
    r = sp.plancherel_check(elems, m, tol=tol)
    rep = _spectrum_header("plancherel", source, alg, elems, syms)
    rep["plancherel"] = {
        "multiplier": m.describe(),
        "lhs": tagged(r.lhs, max(r.lhs_err, tol * abs(r.lhs))),
        "rhs": tagged(r.rhs, max(r.rhs_err, tol * abs(r.rhs))),
        "rel_err": tagged(r.rel_err, tol),
        "xi_radius": tagged(r.xi_radius, 0.0),
        "x_radius": tagged(r.x_radius, 0.0),
        "ok": r.ok,
    }
    return rep


def cmd_spectrum_polar(ops, source=None, grading=None, box="0:1", t="2", tol=1e-4) -> dict:
    entry, alg, elems, syms = _spectrum_setup(source, ops)
    gr = resolve_grading(alg, grading, entry) or Grading(alg, [1] * alg.dim)
    lower, upper = parse_box(box, len(elems))
    tq = as_fraction(t)
    r = sp.polar_decomposition_check(elems, gr, lower, upper, float(tq))
    rep = _spectrum_header("polar", source, alg, elems, syms)
    rep["polar"] = {
        "t": rat(tq),
        "box": {"lower": [tagged(x, 0.0) for x in lower], "upper": [tagged(x, 0.0) for x in upper]},
        "degrees": [rat(x) for x in r.degrees],
        "Q_delta": rat(r.Q_delta),
        "mass": tagged(r.mass, 1e-10),
        "dilated_mass": tagged(r.dilated_mass, 1e-10),
        "ratio": tagged(r.ratio, tol, relative=True),
        "target": tagged(r.target, 0.0),
        "rel_err": tagged(r.rel_err, tol),
        "ok": r.rel_err < tol,
    }
    return rep


def _mass_table(edges, masses, tol, reference=None) -> list:
    rows = []
    for idx in np.ndindex(*masses.shape):
        row = {
            "lower": [tagged(edges[a][i], 0.0) for a, i in enumerate(idx)],
            "upper": [tagged(edges[a][i + 1], 0.0) for a, i in enumerate(idx)],
            "mass": tagged(masses[idx], tol, relative=True),
        }
        if reference is not None:
            row["reference"] = tagged(reference[idx], tol, relative=True)
        rows.append(row)
    return rows


def _max_rel(a, b) -> float:
    keep = np.maximum(np.abs(a), np.abs(b)) > 0
    if not np.any(keep):
        return 0.0
    return float(np.max(np.abs(a[keep] - b[keep]) / np.maximum(np.abs(a[keep]), np.abs(b[keep]))))


def cmd_spectrum_sample(
    ops, source=None, scheme="stratified", samples=10**6, radius=4.0, seed=0, edges=None, tol=0.02, points=None, cloud=None
) -> dict:
    _, alg, elems, syms = _spectrum_setup(source, ops)
    cfg = sp.SamplerConfig(scheme=scheme, samples=samples, radius=radius, seed=seed)
    es = sp.spectrum_sample(elems, cfg)
    rep = _spectrum_header("sample", source, alg, elems, syms)
    sec = {
        "seed": seed,
        "scheme": scheme,
        "samples": len(es),
        "truncation": tagged(radius, 0.0),
        "total_mass": tagged(es.mass, tol, relative=True),
    }
    if edges is not None:
        e = parse_edges(edges, len(elems))
        sec["boxes"] = _mass_table(e, sp.box_masses(es, e), tol)
    rep["sample"] = sec
    if points is not None:
        es.write_csv(points)
    if cloud is not None:
        es.write_json(cloud)
    return rep


def cmd_spectrum_pushforward(
    ops, P, ref_ops=None, source=None, samples=10**6, radius=4.0, ref_radius=None, seed=0, edges="0:4:20", tol=0.02, points=None
) -> dict:
    """Pushforward of (Sigma, sigma) of ``ops`` under P, optionally against direct sampling of ``ref_ops``."""
    _, alg, elems, syms = _spectrum_setup(source, ops)
    polys = [parse_poly(p, len(elems)) for p in P]
    cfg = sp.SamplerConfig(samples=samples, radius=radius, seed=seed)
    pushed = sp.pushforward_change_of_generators(sp.spectrum_sample(elems, cfg), polys)
    e = parse_edges(edges, len(polys))
    mp = sp.box_masses(pushed, e)
    rep = _spectrum_header("pushforward", source, alg, elems, syms)
    sec = {"P": [str(p) for p in polys], "seed": seed, "samples": len(pushed), "truncation": tagged(radius, 0.0)}
    if ref_ops:
        ref = parse_ops(alg, ref_ops)
        # independent stream and truncation for the direct path
        rcfg = sp.SamplerConfig(samples=samples, radius=ref_radius or radius, seed=seed + 1)
        md = sp.box_masses(sp.spectrum_sample(ref, rcfg), e)
        dev = _max_rel(mp, md)
        sec.update(
            reference_operators=[str(d) for d in ref],
            boxes=_mass_table(e, mp, tol, reference=md),
            max_rel_dev=tagged(dev, tol),
            ok=dev <= tol,
        )
    else:
        sec["boxes"] = _mass_table(e, mp, tol)
    rep["pushforward"] = sec
    if points is not None:
        pushed.write_csv(points)
    return rep


def cmd_spectrum_kernel(
    ops, f="exp(-lambda)", g=None, source=None, extent=20.0, step=0.05, heat=None, tol=1e-5, table=11
) -> dict:
    _, alg, elems, syms = _spectrum_setup(source, ops)
    d = len(elems)
    fm = sp.multiplier(f, d)
    rep = _spectrum_header("kernel", source, alg, elems, syms)
    K = int(round(extent / step))
    x = np.arange(-K, K + 1) * step
    sec = {"multiplier": fm.describe(), "grid": {"extent": tagged(extent, 0.0), "step": tagged(step, 0.0), "points": len(x)}}
    ks = sp.kernel_transform(elems, fm, axes=[x] * d if d == 1 else None)
    if d == 1:
        pick = np.linspace(0, len(x) - 1, table).round().astype(int)
        sec["values"] = [
            {"x": tagged(x[k], 0.0), "re": tagged(ks.values[k].real, tol), "im": tagged(ks.values[k].imag, tol)} for k in pick
        ]
    sec["xi_radius"] = tagged(ks.xi_radius, 0.0)
    if g is not None:
        gm = sp.multiplier(g, d)
        ref = None
        if heat is not None:
            T = float(as_fraction(heat))
            ref = lambda y: np.exp(-(y**2) / (4 * T)) / np.sqrt(4 * np.pi * T)  # noqa: E731
        c = sp.convolution_identity_check(elems, fm, gm, extent=extent, step=step, reference=ref)
        conv = {"g": gm.describe(), "max_abs_dev": tagged(c.max_abs_dev, tol), "ok": c.max_abs_dev < tol}
        if ref is not None:
            conv["heat_time"] = rat(as_fraction(heat))
            conv["heat_dev"] = tagged(c.reference_dev, tol)
            conv["ok"] = conv["ok"] and c.reference_dev < tol
        sec["convolution"] = conv
    rep["kernel"] = sec
    return rep


def cmd_spectrum_growth(ops, source=None, radii="1,2,4,8,16", margin=0.25) -> dict:
    _, alg, elems, syms = _spectrum_setup(source, ops)
    rs = [float(as_fraction(r)) for r in _split(radii)] if isinstance(radii, str) else [float(r) for r in radii]
    if len(rs) < 2 or any(r <= 0 for r in rs):
        raise InputError("growth needs at least two positive radii")
    r = sp.growth_check(elems, rs, margin=margin)
    rep = _spectrum_header("growth", source, alg, elems, syms)
    rep["growth"] = {
        "radii": [tagged(a, 0.0) for a in r.radii],
        "masses": [tagged(m, 1e-10) for m in r.masses],
        "slope": tagged(r.slope, 1e-6),
        "bound": tagged(r.bound, 0.0),
        "margin": tagged(r.margin, 0.0),
        "ok": r.ok,
    }
    return rep


def cmd_catalog(name: str | None = None) -> dict:
    from .catalog import catalog_list

    rep = new_report("catalog", "catalog:" + (name or ""))
    if name is None:
        rep["entries"] = catalog_list()
        return rep
    e = catalog_get(name)
    rep["entry"] = {
        "name": e.name,
        "description": e.description,
        "algebra": e.algebra,
        "basis": e.basis,
        "weights": e.weights,
        "grading": e.grading,
        "ops": e.ops,
        "derivation": e.derivation,
    }
    return rep
