"""JSON documents for algebras, modules, bimodules, triples, and censuses.

Every document is an object with a ``"kind"``. Algebras come in several
forms::

    {"kind": "algebra", "form": "truncated", "p": 2, "t": 2}
    {"kind": "algebra", "form": "structure", "p": 2, "table": [...], "unit": [...], "radical": [...]}
    {"kind": "algebra", "form": "quiver", "p": 2, "vertices": 2, "arrows": [[0, 1]], "relations": []}
    {"kind": "algebra", "form": "t2", "base": <algebra>}
    {"kind": "algebra", "form": "triangular", "r": <algebra>, "s": <algebra>, "bimodule": <bimodule>}
    {"kind": "algebra", "form": "opposite", "base": <algebra>}

Wherever a document is expected, a reference ``{"ref": "path.json",
"digest": "..."}`` may appear instead; paths are relative to the referring
file and the digest (``Algebra.digest``) must match the loaded algebra.
Matrices are arrays of rows of residues.
"""

from __future__ import annotations

import json
import os
import tempfile
from pathlib import Path
from typing import Any, Optional, Union

import numpy as np

from .algebra import Algebra, QuiverPresentation, quotient_path_algebra, truncated_polynomial
from .modules import Module
from .triangular import Bimodule, TriangularAlgebra, TripleModule, build_triangular, t2


class InputError(ValueError):
    """A document failed to parse or referenced inconsistent data."""


Loaded = Union[Algebra, TriangularAlgebra, Module, Bimodule, TripleModule]


def _need(doc: dict, key: str, where: str):
    if not isinstance(doc, dict):
        raise InputError(f"{where}: expected an object")
    if key not in doc:
        raise InputError(f"{where}: missing field '{key}'")
    return doc[key]


def _array(v, where: str, ndim: int) -> np.ndarray:
    try:
        a = np.array(v, dtype=np.int64)
    except (ValueError, TypeError) as exc:
        raise InputError(f"{where}: not a rectangular integer array ({exc})") from None
    if a.size == 0:
        a = a.reshape((0,) * ndim) if a.ndim != ndim else a
    if a.ndim != ndim:
        raise InputError(f"{where}: expected a {ndim}-d array, got {a.ndim}-d")
    return a


class Loader:
    """Resolves documents and references, caching each file once."""

    def __init__(self):
        self._files: dict[Path, Loaded] = {}

    def load_file(self, path: Union[str, Path]) -> Loaded:
        path = Path(path).resolve()
        if path in self._files:
            return self._files[path]
        try:
            text = path.read_text()
        except OSError as exc:
            raise InputError(f"{path}: cannot read ({exc.strerror})") from None
        try:
            doc = json.loads(text)
        except json.JSONDecodeError as exc:
            raise InputError(f"{path}: line {exc.lineno} column {exc.colno}: {exc.msg}") from None
        obj = self.load(doc, path.parent, str(path))
        self._files[path] = obj
        return obj

    def load(self, doc: Any, base: Path, where: str) -> Loaded:
        if isinstance(doc, dict) and "ref" in doc:
            obj = self.load_file(base / doc["ref"])
            want = doc.get("digest")
            if want is not None:
                alg = obj.gamma if isinstance(obj, TriangularAlgebra) else obj
                if not isinstance(alg, Algebra):
                    raise InputError(f"{where}: digest given for a non-algebra reference")
                if alg.digest != want:
                    raise InputError(f"{where}: digest mismatch for {doc['ref']}: file has {alg.digest}, "
                                     f"reference says {want}")
            return obj
        kind = _need(doc, "kind", where)
        try:
            if kind == "algebra":
                return self._algebra(doc, base, where)
            if kind == "module":
                return self._module(doc, base, where)
            if kind == "bimodule":
                return self._bimodule(doc, base, where)
            if kind == "triple":
                return self._triple(doc, base, where)
        except InputError:
            raise
        except (ValueError, IndexError, TypeError) as exc:
            raise InputError(f"{where}: {exc}") from None
        raise InputError(f"{where}: unknown kind '{kind}'")

    def _plain_algebra(self, doc, base, where) -> Algebra:
        obj = self.load(doc, base, where)
        if isinstance(obj, TriangularAlgebra):
            return obj.gamma
        if not isinstance(obj, Algebra):
            raise InputError(f"{where}: expected an algebra")
        return obj

    def _triangular(self, doc, base, where) -> TriangularAlgebra:
        obj = self.load(doc, base, where)
        if not isinstance(obj, TriangularAlgebra):
            raise InputError(f"{where}: expected a triangular algebra")
        return obj

    def _algebra(self, doc, base, where):
        form = _need(doc, "form", where)
        name = doc.get("name", "")
        if form == "truncated":
            a = truncated_polynomial(int(_need(doc, "p", where)), int(_need(doc, "t", where)))
        elif form == "structure":
            table = _array(_need(doc, "table", where), f"{where}.table", 3)
            d = table.shape[0]
            rad = _array(doc.get("radical", []), f"{where}.radical", 2).reshape(-1, d)
            idem = doc.get("idempotents")
            a = Algebra(int(_need(doc, "p", where)), table, _array(_need(doc, "unit", where), f"{where}.unit", 1),
                        rad, None if idem is None else _array(idem, f"{where}.idempotents", 2),
                        None if doc.get("generators") is None else tuple(doc["generators"]))
        elif form == "quiver":
            rels = []
            for k, rel in enumerate(doc.get("relations", [])):
                terms = _need(rel, "terms", f"{where}.relations[{k}]")
                rels.append({tuple(path): int(c) for path, c in terms})
            q = QuiverPresentation(int(_need(doc, "vertices", where)),
                                   [tuple(a) for a in doc.get("arrows", [])], rels, doc.get("truncation"))
            a = quotient_path_algebra(q, int(_need(doc, "p", where)))
        elif form == "t2":
            g = t2(self._plain_algebra(_need(doc, "base", where), base, f"{where}.base"))
            if name:
                g.gamma.name = name
            return g
        elif form == "triangular":
            r = self._plain_algebra(_need(doc, "r", where), base, f"{where}.r")
            s = self._plain_algebra(_need(doc, "s", where), base, f"{where}.s")
            m = self.load(_need(doc, "bimodule", where), base, f"{where}.bimodule")
            if not isinstance(m, Bimodule):
                raise InputError(f"{where}.bimodule: expected a bimodule")
            # rebind to the algebra objects used here so identity checks hold
            m = Bimodule(s, r, m.left_actions, m.right_actions) if m.left.same_as(s) and m.right.same_as(r) else m
            g = build_triangular(r, s, m)
            if name:
                g.gamma.name = name
            return g
        elif form == "opposite":
            return self._plain_algebra(_need(doc, "base", where), base, f"{where}.base").opposite()
        else:
            raise InputError(f"{where}: unknown algebra form '{form}'")
        if name:
            a.name = name
        return a

    def _module(self, doc, base, where) -> Module:
        a = self._plain_algebra(_need(doc, "algebra", where), base, f"{where}.algebra")
        acts = _array(_need(doc, "actions", where), f"{where}.actions", 3)
        if acts.shape[0] != a.dim:
            if acts.size == 0:
                acts = np.zeros((a.dim, 0, 0), dtype=np.int64)
            else:
                raise InputError(f"{where}.actions: {acts.shape[0]} matrices for an algebra of dimension {a.dim}")
        if acts.shape[1] != acts.shape[2]:
            raise InputError(f"{where}.actions: matrices are not square")
        return Module(a, acts, name=doc.get("name", ""))

    def _bimodule(self, doc, base, where) -> Bimodule:
        s = self._plain_algebra(_need(doc, "left", where), base, f"{where}.left")
        r = self._plain_algebra(_need(doc, "right", where), base, f"{where}.right")
        la_ = _array(_need(doc, "left_actions", where), f"{where}.left_actions", 3)
        ra_ = _array(_need(doc, "right_actions", where), f"{where}.right_actions", 3)
        if la_.shape[0] != s.dim or ra_.shape[0] != r.dim:
            raise InputError(f"{where}: action counts do not match the algebra dimensions")
        return Bimodule(s, r, la_, ra_)

    def _triple(self, doc, base, where) -> TripleModule:
        g = self._triangular(_need(doc, "algebra", where), base, f"{where}.algebra")
        x = self._component(_need(doc, "x", where), base, f"{where}.x", g.r)
        y = self._component(_need(doc, "y", where), base, f"{where}.y", g.s)
        tens_dim = _tensor_dim(g, x)
        phi = _array(_need(doc, "phi", where), f"{where}.phi", 2)
        if phi.size == 0:
            phi = phi.reshape(y.dim, tens_dim)
        if phi.shape != (y.dim, tens_dim):
            raise InputError(f"{where}.phi: expected shape {(y.dim, tens_dim)}, got {phi.shape}")
        return TripleModule(g, x, y, phi, name=doc.get("name", ""))

    def _component(self, doc, base, where, alg: Algebra) -> Module:
        m = self.load(doc, base, where)
        if not isinstance(m, Module):
            raise InputError(f"{where}: expected a module")
        if not m.algebra.same_as(alg):
            raise InputError(f"{where}: module is over {m.algebra!r}, expected {alg!r}")
        return Module(alg, m.actions, m.name)


def _tensor_dim(g: TriangularAlgebra, x: Module) -> int:
    from .triangular import tensor_MX

    return tensor_MX(g.m, x).module.dim


def load(path: Union[str, Path]) -> Loaded:
    return Loader().load_file(path)


def loads(doc: Union[str, dict], base: Union[str, Path] = ".") -> Loaded:
    if isinstance(doc, str):
        try:
            doc = json.loads(doc)
        except json.JSONDecodeError as exc:
            raise InputError(f"line {exc.lineno} column {exc.colno}: {exc.msg}") from None
    return Loader().load(doc, Path(base), "<document>")


# ---------------------------------------------------------------------------
# Serialization.


def _lst(a: np.ndarray) -> list:
    return np.asarray(a, dtype=np.int64).tolist()


def algebra_doc(a: Algebra) -> dict:
    if a.meta.get("family") == "truncated" and not a.meta.get("opposite"):
        doc = {"kind": "algebra", "form": "truncated", "p": a.p, "t": a.meta["t"]}
        return {**doc, "name": a.name} if a.name else doc
    doc = {"kind": "algebra", "form": "structure", "p": a.p, "table": _lst(a.table), "unit": _lst(a.unit),
           "radical": _lst(a.radical)}
    if a.idempotents is not None:
        doc["idempotents"] = _lst(a.idempotents)
    doc["generators"] = list(a.generators)
    if a.name:
        doc["name"] = a.name
    return doc


def bimodule_doc(m: Bimodule, left=None, right=None) -> dict:
    return {"kind": "bimodule", "left": left or algebra_doc(m.left), "right": right or algebra_doc(m.right),
            "left_actions": _lst(m.left_actions), "right_actions": _lst(m.right_actions)}


def triangular_doc(g: TriangularAlgebra) -> dict:
    r, s = algebra_doc(g.r), algebra_doc(g.s)
    return {"kind": "algebra", "form": "triangular", "r": r, "s": s, "bimodule": bimodule_doc(g.m, s, r),
            "name": g.gamma.name}


def module_doc(x: Module, algebra: Optional[dict] = None) -> dict:
    doc = {"kind": "module", "algebra": algebra or algebra_doc(x.algebra), "actions": _lst(x.actions)}
    if x.name:
        doc["name"] = x.name
    return doc


def triple_doc(t: TripleModule, algebra: Optional[dict] = None) -> dict:
    g = t.gamma
    gdoc = algebra or triangular_doc(g)
    return {"kind": "triple", "algebra": gdoc,
            "x": module_doc(t.x, _sub(gdoc, "r", g.r)),
            "y": module_doc(t.y, _sub(gdoc, "s", g.s)),
            "phi": _lst(t.phi), **({"name": t.name} if t.name else {})}


def _sub(gdoc: dict, side: str, alg: Algebra) -> dict:
    if gdoc.get("form") == "triangular" and isinstance(gdoc.get(side), dict) and "ref" not in gdoc[side]:
        return gdoc[side]
    return algebra_doc(alg)


def ref(path: Union[str, Path], obj: Union[Algebra, TriangularAlgebra]) -> dict:
    alg = obj.gamma if isinstance(obj, TriangularAlgebra) else obj
    return {"ref": str(path), "digest": alg.digest}


def _flat(v) -> bool:
    return not isinstance(v, (dict, list)) or (isinstance(v, list) and all(_flat(u) and not isinstance(u, list)
                                                                           for u in v))


def _fmt(v, indent: int) -> str:
    pad = " " * indent
    if isinstance(v, dict):
        if not v:
            return "{}"
        items = [f'{pad} {json.dumps(k)}: {_fmt(u, indent + 1)}' for k, u in v.items()]
        return "{\n" + ",\n".join(items) + "\n" + pad + "}"
    if isinstance(v, list) and not _flat(v):
        # one innermost row per line
        if all(isinstance(u, list) and _flat(u) for u in v):
            return "[" + ", ".join(json.dumps(u) for u in v) + "]"
        items = [pad + " " + _fmt(u, indent + 1) for u in v]
        return "[\n" + ",\n".join(items) + "\n" + pad + "]"
    return json.dumps(v)


def dumps(doc: dict) -> str:
    """JSON with matrices kept compact (one matrix per line)."""
    return _fmt(doc, 0) + "\n"


def write_atomic(path: Union[str, Path], text: str) -> Path:
    """Write through a temporary file in the same directory, then rename."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(prefix=f".{path.name}.", dir=path.parent)
    try:
        with os.fdopen(fd, "w") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise
    return path


def census_doc(census, config: Optional[dict] = None) -> dict:
    g = census.triangular
    entries = []
    for e in census.entries:
        item = {"label": e.label, "dims": list(e.dims), "tag": e.verdict.tag.value}
        if e.triple is not None:
            item.update({"x": _lst(e.triple.x.actions), "y": _lst(e.triple.y.actions), "phi": _lst(e.triple.phi)})
        else:
            item["actions"] = _lst(e.module.actions)
        entries.append(item)
    return {"kind": "census", "algebra": triangular_doc(g) if g is not None else algebra_doc(census.algebra),
            "bound": census.bound, "complete": census.complete, "strategy": census.strategy,
            "seed": census.seed, "config": config or {}, "entries": entries}


def load_census(path: Union[str, Path]) -> tuple[Union[Algebra, TriangularAlgebra], list]:
    """The algebra and the list of representatives (triples or modules) of a census file."""
    path = Path(path)
    try:
        doc = json.loads(path.read_text())
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: line {exc.lineno} column {exc.colno}: {exc.msg}") from None
    if doc.get("kind") != "census":
        raise InputError(f"{path}: not a census document")
    alg = Loader().load(doc["algebra"], path.parent, f"{path}.algebra")
    reps = []
    for k, item in enumerate(doc["entries"]):
        if isinstance(alg, TriangularAlgebra):
            x = Module(alg.r, _array(item["x"], f"entries[{k}].x", 3).reshape(alg.r.dim, *[item["dims"][0]] * 2))
            y = Module(alg.s, _array(item["y"], f"entries[{k}].y", 3).reshape(alg.s.dim, *[item["dims"][1]] * 2))
            phi = _array(item["phi"], f"entries[{k}].phi", 2)
            reps.append(TripleModule(alg, x, y, phi.reshape(y.dim, _tensor_dim(alg, x)), name=item.get("label", "")))
        else:
            reps.append(Module(alg, _array(item["actions"], f"entries[{k}].actions", 3)))
    return alg, reps
