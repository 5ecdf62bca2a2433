"""JSON reports.

Every exact rational is written as a ``"p/q"`` string.  Every float is
wrapped as ``{"value": x, "tolerance": tol, "relative": bool}`` so the
document never carries an untagged float.
"""

from __future__ import annotations

import json
import math
from fractions import Fraction
from typing import Sequence

import numpy as np

from .catalog import dump_algebra
from .envelope import EnvElement, check_invariant
from .errors import Inhomogeneous, NoCommonMultiple, ValidationError
from .grading import Grading, quasiequivalence_report
from .lie import LieAlgebra, descending_central_series, guivarch_growth_degree
from .scalars import GaussRational, fmt_fraction
from .systems import analyze_system, build_homogeneous_delta, common_multiple, homogeneity_degree, OperatorSystem
from .weighted import (
    WeightedBasis,
    compute_filtration,
    contract,
    is_canonically_isomorphic,
    is_reduced_strict,
    is_reduced_weak,
    reduce_basis,
)

SCHEMA_VERSION = "1.0"
NOT_DECIDED = "not decided symbolically"


def rat(q) -> str:
    return fmt_fraction(Fraction(q))


def tagged(x: float, tolerance: float | None, relative: bool = False) -> dict:
    x = float(x)
    if not math.isfinite(x):
        raise ValueError(f"refusing to serialize non-finite value {x}")
    return {"value": x, "tolerance": None if tolerance is None else float(tolerance), "relative": relative}


def jsonable(obj):
    """Witness payloads -> JSON values (rationals as strings, floats tagged)."""
    if isinstance(obj, bool) or obj is None or isinstance(obj, (int, str)):
        return obj
    if isinstance(obj, Fraction):
        return rat(obj)
    if isinstance(obj, GaussRational):
        return obj.to_json()
    if isinstance(obj, EnvElement):
        return str(obj)
    if isinstance(obj, (float, np.floating)):
        return tagged(obj, None)
    if isinstance(obj, np.integer):
        return int(obj)
    if isinstance(obj, dict):
        return {str(k): jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple, np.ndarray)):
        return [jsonable(v) for v in obj]
    return str(obj)


def new_report(command: str, source: str) -> dict:
    return {"schema_version": SCHEMA_VERSION, "command": command, "source": source, "status": "ok"}


def error_section(exc: Exception) -> dict:
    out = {
        "type": type(exc).__name__,
        "message": str(exc),
        "witness": jsonable(getattr(exc, "witness", {})),
    }
    if hasattr(exc, "position"):
        out["position"] = exc.position
    return out


def _numpy_scalar(o):
    if isinstance(o, np.bool_):
        return bool(o)
    if isinstance(o, np.integer):
        return int(o)
    raise TypeError(f"{type(o).__name__} is not serializable in a report")


def dumps(report: dict) -> str:
    return json.dumps(report, indent=2, ensure_ascii=False, default=_numpy_scalar) + "\n"


def untagged_floats(doc, path="$") -> list[str]:
    """Paths of floats that are not the ``value``/``tolerance`` of a tagged float."""
    out = []
    if isinstance(doc, float):
        return [path]
    if isinstance(doc, dict):
        is_tag = set(doc) == {"value", "tolerance", "relative"}
        for k, v in doc.items():
            if is_tag and k in ("value", "tolerance"):
                continue
            out += untagged_floats(v, f"{path}.{k}")
    elif isinstance(doc, list):
        for k, v in enumerate(doc):
            out += untagged_floats(v, f"{path}[{k}]")
    return out


# ---------------------------------------------------------------------------
# structural sections


def vector_entry(alg: LieAlgebra, v: Sequence) -> dict:
    return {"expr": alg.format_vector(v), "coords": [rat(c) for c in v]}


def structure_section(alg: LieAlgebra) -> dict:
    series = descending_central_series(alg)
    out = {
        "jacobi": True,
        "abelian": alg.is_abelian(),
        "center_dim": alg.center().dim,
        "central_series": {"dims": series.dims, "nilpotent": series.nilpotent, "step": series.step},
        "Q_G": guivarch_growth_degree(alg) if series.nilpotent else None,
    }
    return out


def grading_section(gr: Grading) -> dict:
    q = quasiequivalence_report(gr)
    return {
        "degrees": {nm: rat(d) for nm, d in zip(gr.algebra.names, gr.degrees)},
        "levels": [rat(x) for x in gr.levels()],
        "Q_delta": rat(q.Q_delta),
        "Q_G": q.Q_G,
        "stratified": q.stratified,
        "dichotomy_ok": q.dichotomy_ok,
    }


def contraction_section(wb: WeightedBasis) -> dict:
    reduced = reduce_basis(wb)
    k = contract(reduced)
    g = k.algebra
    doc = dump_algebra(g)
    return {
        "reduced_from": None if reduced is wb else [lb for lb in wb.labels],
        "basis": [{"label": lb, "weight": rat(w)} for lb, w in zip(reduced.labels, reduced.weights)],
        "names": list(g.names),
        "levels": [rat(x) for x in k.levels],
        "brackets": doc["brackets"],
        "section": [
            {"name": nm, "level": rat(lv), **vector_entry(wb.algebra, col)}
            for nm, lv, col in zip(g.names, k.levels, k.section)
        ],
        "Q_delta": rat(k.homogeneous_dimension),
        "graded": True,
        "canonically_isomorphic": is_canonically_isomorphic(k),
    }


def weighted_section(wb: WeightedBasis) -> dict:
    alg = wb.algebra
    f = compute_filtration(wb)
    strict = is_reduced_strict(wb, f)
    strict_doc = {"value": strict.reduced, "weight": None, "witness": None, "combination": None}
    if not strict.reduced:
        strict_doc.update(
            weight=rat(strict.weight),
            witness=vector_entry(alg, strict.witness),
            combination={wb.labels[j]: rat(c) for j, c in sorted(strict.combination.items())},
        )
    return {
        "elements": [
            {"label": lb, "weight": rat(w), **vector_entry(alg, v)} for lb, w, v in zip(wb.labels, wb.weights, wb.vectors)
        ],
        "filtration": {"jumps": [rat(x) for x in f.jumps], "dims": f.dims, "graded_dims": f.graded_dims},
        "reduced_weak": is_reduced_weak(wb, f),
        "reduced_strict": strict_doc,
    }


def system_section(ops: Sequence[EnvElement], grading: Grading | None = None, derivation=None, derivation_doc=None) -> dict:
    a = analyze_system(ops, grading)
    out = {
        "operators": [str(d) for d in a.ops],
        "self_adjoint": list(a.self_adjoint),
        "commutators": [[str(c) for c in row] for row in a.commutators],
        "commuting": a.commuting,
        "valid": a.valid,
        "degrees": None if a.degrees is None else [None if d is None else rat(d) for d in a.degrees],
        "invariance": None,
        "delta": None,
        "subcoercivity": NOT_DECIDED,
    }
    if derivation is not None:
        out["invariance"] = {
            "derivation": derivation_doc,
            "verdicts": [check_invariant(derivation, d) for d in a.ops],
        }
    if a.valid and a.degrees is not None and all(d is not None for d in a.degrees):
        try:
            common_multiple(a.degrees)
        except NoCommonMultiple:
            return out
        sys = OperatorSystem(tuple(a.ops), tuple(a.degrees), validated=True)
        delta, M = build_homogeneous_delta(sys, grading)
        out["delta"] = {
            "M": M,
            "powers": [rat(Fraction(2 * M) / r) for r in a.degrees],
            "degree": rat(homogeneity_degree(grading, delta)),
            "terms": len(delta.terms),
            "expression": str(delta),
        }
    return out
