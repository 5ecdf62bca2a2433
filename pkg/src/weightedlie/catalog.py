"""Built-in algebras, weighted bases, gradings and operator systems.

Names are stable identifiers; new entries are appended, never renamed.
``abelian:N``, ``hN`` and ``A*B`` products are generated on demand.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from fractions import Fraction

from .errors import InputError, UnknownName
from .lie import LieAlgebra
from .scalars import as_fraction, fmt_fraction

_N23 = {
    "dim": 5,
    "names": ["X1", "X2", "Y", "T1", "T2"],
    "brackets": [
        {"lhs": "X1", "rhs": "X2", "coeffs": {"Y": "1"}},
        {"lhs": "X1", "rhs": "Y", "coeffs": {"T1": "1"}},
        {"lhs": "X2", "rhs": "Y", "coeffs": {"T2": "1"}},
    ],
}

_SL2 = {
    "dim": 3,
    "names": ["H", "E", "F"],
    "brackets": [
        {"lhs": "H", "rhs": "E", "coeffs": {"E": "2"}},
        {"lhs": "H", "rhs": "F", "coeffs": {"F": "-2"}},
        {"lhs": "E", "rhs": "F", "coeffs": {"H": "1"}},
    ],
}

N23_SYSTEM_3 = ["-(X1^2 + X2^2)", "2*X2*T1 - 2*X1*T2 - Y^2", "-(T1^2 + T2^2)"]
N23_SYSTEM_4 = ["-(X1^2 + X2^2)", "2*X2*T1 - 2*X1*T2 - Y^2", "-i*T1", "-i*T2"]
# simultaneous rotation of span{X1, X2} and span{T1, T2}
SO2_DERIVATION = {"X1": "X2", "X2": "-X1", "Y": "0", "T1": "T2", "T2": "-T1"}


@dataclass
class CatalogEntry:
    name: str
    algebra: dict
    description: str = ""
    basis: list | None = None
    weights: list | None = None
    grading: list | None = None
    ops: list | None = None
    derivation: dict | None = None

    def lie_algebra(self) -> LieAlgebra:
        return load_algebra(self.algebra)


def _heisenberg(n: int) -> dict:
    if n == 1:
        names = ["X", "Y", "Z"]
        br = [{"lhs": "X", "rhs": "Y", "coeffs": {"Z": "1"}}]
    else:
        names = [f"X{k}" for k in range(1, n + 1)] + [f"Y{k}" for k in range(1, n + 1)] + ["Z"]
        br = [{"lhs": f"X{k}", "rhs": f"Y{k}", "coeffs": {"Z": "1"}} for k in range(1, n + 1)]
    return {"dim": 2 * n + 1, "names": names, "brackets": br}


def _abelian(n: int) -> dict:
    return {"dim": n, "names": [f"X{k}" for k in range(1, n + 1)], "brackets": []}


_STATIC = {
    "sl2": lambda: CatalogEntry("sl2", _SL2, "sl(2) with [H,E]=2E, [H,F]=-2F, [E,F]=H", basis=["E", "F"], weights=["1", "1"]),
    "n23": lambda: CatalogEntry(
        "n23",
        _N23,
        "free 3-step nilpotent algebra on two generators",
        basis=["X1", "X2"],
        weights=["1", "1"],
        grading=["1", "1", "2", "3", "3"],
    ),
    "footnote-basis": lambda: CatalogEntry(
        "footnote-basis",
        _N23,
        "n23 with the weakly-but-not-strictly reduced basis X1, X2, Y+T1, T1, T2",
        basis=["X1", "X2", "Y+T1", "T1", "T2"],
        weights=["1", "1", "3", "3", "3"],
        grading=["1", "1", "2", "3", "3"],
    ),
    "n23-system-3": lambda: CatalogEntry(
        "n23-system-3",
        _N23,
        "three commuting SO2-invariant operators on n23",
        grading=["1", "1", "2", "3", "3"],
        ops=list(N23_SYSTEM_3),
        derivation=dict(SO2_DERIVATION),
    ),
    "n23-system-4": lambda: CatalogEntry(
        "n23-system-4",
        _N23,
        "four commuting operators on n23 (not all SO2-invariant)",
        grading=["1", "1", "2", "3", "3"],
        ops=list(N23_SYSTEM_4),
        derivation=dict(SO2_DERIVATION),
    ),
    "so2-derivation": lambda: CatalogEntry(
        "so2-derivation", _N23, "infinitesimal SO2 rotation acting on n23", derivation=dict(SO2_DERIVATION)
    ),
}


def catalog_list() -> list[str]:
    return ["abelian:N", "h1", "hN"] + list(_STATIC) + ["A*B"]


def _product_entry(name: str, left: CatalogEntry, right: CatalogEntry) -> CatalogEntry:
    from .products import product

    pa = product([left.lie_algebra(), right.lie_algebra()])
    doc = dump_algebra(pa.total)
    entry = CatalogEntry(name, doc, f"direct product {left.name} x {right.name}")
    if left.weights and right.weights and left.basis and right.basis:
        basis = []
        for l, side in enumerate((left, right)):
            off = pa.offsets[l]
            rename = {nm: pa.total.names[off + k] for k, nm in enumerate(pa.factors[l].names)}
            basis += [_rename_expr(b, rename) for b in side.basis]
        entry.basis, entry.weights = basis, list(left.weights) + list(right.weights)
    return entry


def _rename_expr(expr: str, rename: dict) -> str:
    return re.sub(r"[A-Za-z_][A-Za-z0-9_]*", lambda m: rename.get(m.group(0), m.group(0)), expr)


def catalog_get(name: str) -> CatalogEntry:
    name = name.strip()
    if "*" in name:
        left, right = name.split("*", 1)
        return _product_entry(name, catalog_get(left), catalog_get(right))
    m = re.fullmatch(r"abelian:(\d+)", name)
    if m and int(m.group(1)) >= 1:
        n = int(m.group(1))
        return CatalogEntry(name, _abelian(n), f"abelian R^{n}", basis=[f"X{k}" for k in range(1, n + 1)], weights=["1"] * n, grading=["1"] * n)
    m = re.fullmatch(r"h(\d+)", name)
    if m and int(m.group(1)) >= 1:
        n = int(m.group(1))
        doc = _heisenberg(n)
        gens = doc["names"][:-1]
        return CatalogEntry(name, doc, f"Heisenberg algebra h_{n}", basis=gens, weights=["1"] * len(gens), grading=["1"] * (2 * n) + ["2"])
    if name in _STATIC:
        return _STATIC[name]()
    raise UnknownName(f"unknown catalog entry {name!r}; known: {', '.join(catalog_list())}")


def load_algebra(doc: dict) -> LieAlgebra:
    """AlgebraFile JSON document -> validated LieAlgebra (omitted brackets are zero)."""
    if not isinstance(doc, dict):
        raise InputError("algebra file must be a JSON object")
    try:
        names = doc["names"]
    except KeyError:
        raise InputError("algebra file needs a 'names' list") from None
    if not isinstance(names, list) or not all(isinstance(n, str) and n.isidentifier() and n != "i" for n in names):
        raise InputError("'names' must be a list of identifiers (and not 'i')")
    if "dim" in doc and doc["dim"] != len(names):
        raise InputError(f"dim {doc['dim']} does not match {len(names)} names")
    relations = {}
    for br in doc.get("brackets", []):
        try:
            key = (br["lhs"], br["rhs"])
            coeffs = br.get("coeffs", {})
        except (KeyError, TypeError):
            raise InputError(f"malformed bracket entry {br!r}") from None
        if not isinstance(coeffs, dict):
            raise InputError(f"malformed coeffs in {br!r}")
        if isinstance(coeffs, dict) and any(isinstance(v, float) for v in coeffs.values()):
            raise InputError("structure constants must be exact: write them as 'p/q' strings")
        relations[key] = coeffs
    return LieAlgebra.from_relations(names, relations)


def dump_algebra(alg: LieAlgebra) -> dict:
    """Canonical AlgebraFile document."""
    brackets = []
    for (i, j), v in alg.table.items():
        brackets.append(
            {
                "lhs": alg.names[i],
                "rhs": alg.names[j],
                "coeffs": {alg.names[k]: fmt_fraction(c) for k, c in enumerate(v) if c},
            }
        )
    return {"dim": alg.dim, "names": list(alg.names), "brackets": brackets}


def resolve_source(source: str) -> CatalogEntry:
    """``catalog:NAME`` or a path to an AlgebraFile."""
    if source.startswith("catalog:"):
        return catalog_get(source[len("catalog:") :])
    try:
        with open(source) as fh:
            doc = json.load(fh)
    except OSError as exc:
        raise InputError(f"cannot read {source}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise InputError(f"{source} is not valid JSON: {exc}") from None
    load_algebra(doc)
    entry = CatalogEntry(source, doc)
    for key in ("basis", "weights", "grading", "ops", "derivation"):
        if key in doc:
            setattr(entry, key, doc[key])
    return entry
