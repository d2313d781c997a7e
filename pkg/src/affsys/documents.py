"""JSON documents: {"kind", "version": "1", "payload"}.

Documents name elements and points; indices never leave the process.
``dumps`` is canonical (sorted keys, carrier order preserved), so
dumps(load(text)) == text for any canonical document.
"""

from __future__ import annotations

import json
import os
from typing import Any

from .algebra import FiniteAlgebra, Hom, Variety, validate_algebra
from .catalog import BUILTINS
from .errors import ParseError, SchemaError, ValidationError
from .free import FinNatSet
from .spaces import AffineSpace, validate_space
from .systems import AffineSystem, SystemMorphism, validate_system

VERSION = "1"
KINDS = ("algebra", "space", "system", "morphism", "report")

_INTERNED: dict[str, FiniteAlgebra] = {}


# --------------------------------------------------------------------------
# payloads


def algebra_payload(A: FiniteAlgebra) -> dict:
    p: dict[str, Any] = {"variety": A.variety.value, "elements": list(A.names)}
    if A.variety is not Variety.SET:
        p["le"] = [[A.names[a], A.names[b]] for a, b in A.covers()]
    if A.variety is Variety.UQUANT:
        p["tensor"] = {
            A.names[a]: {A.names[b]: A.names[A.mul(a, b)] for b in range(A.n)} for a in range(A.n)
        }
        p["unit"] = A.names[A.unit]
    return p


def intern_algebra(A: FiniteAlgebra) -> FiniteAlgebra:
    """One object per distinct algebra, so systems loaded from separate
    files share their L."""
    key = json.dumps(algebra_payload(A), sort_keys=True)
    return _INTERNED.setdefault(key, A)


def algebra_from_payload(p: dict) -> FiniteAlgebra:
    try:
        variety = Variety(p["variety"])
        names = p["elements"]
    except (KeyError, TypeError, ValueError) as e:
        raise SchemaError(f"bad algebra payload: {e}") from e
    if not isinstance(names, list) or len(set(map(str, names))) != len(names):
        raise SchemaError("elements must be a list of distinct names")
    pairs = [tuple(map(str, pr)) for pr in p.get("le", [])]
    if any(len(pr) != 2 for pr in pairs):
        raise SchemaError("le must be a list of pairs")
    return validate_algebra(variety, names, pairs, p.get("tensor"), p.get("unit"))


def space_payload(s: AffineSpace) -> dict:
    return {
        "L": algebra_payload(s.L),
        "points": list(s.points),
        "opens": [{s.points[x]: s.L.names[v] for x, v in enumerate(alpha)} for alpha in s.opens],
    }


def _function(L: FiniteAlgebra, points, d: dict, what: str) -> tuple:
    if not isinstance(d, dict) or set(d) != set(points):
        raise SchemaError(f"{what} must assign a value of L to every point")
    try:
        return tuple(L.el(str(d[x])) for x in points)
    except KeyError as e:
        raise SchemaError(f"{what}: unknown element of L {e}") from e


def space_from_payload(p: dict) -> AffineSpace:
    try:
        L = intern_algebra(algebra_from_payload(p["L"]))
        points = [str(x) for x in p["points"]]
        opens = [_function(L, points, o, "open") for o in p["opens"]]
    except KeyError as e:
        raise SchemaError(f"space payload lacks {e}") from e
    return validate_space(L, points, opens, autoclose=bool(p.get("autoclose", False)))


def system_payload(s: AffineSystem) -> dict:
    return {
        "L": algebra_payload(s.L),
        "points": list(s.points),
        "algebra": algebra_payload(s.A),
        "kappa": {
            s.A.names[a]: {s.points[x]: s.L.names[v] for x, v in enumerate(row)}
            for a, row in enumerate(s.kappa)
        },
    }


def system_from_payload(p: dict) -> AffineSystem:
    try:
        L = intern_algebra(algebra_from_payload(p["L"]))
        A = algebra_from_payload(p["algebra"])
        points = [str(x) for x in p["points"]]
        kd = p["kappa"]
    except KeyError as e:
        raise SchemaError(f"system payload lacks {e}") from e
    if not isinstance(kd, dict) or set(kd) != set(A.names):
        raise SchemaError("kappa must have one entry per element of the algebra")
    kappa = [_function(L, points, kd[a], f"kappa[{a}]") for a in A.names]
    return validate_system(L, points, A, kappa)


def hom_payload(h: Hom) -> dict:
    return h.named()


def morphism_payload(m: SystemMorphism) -> dict:
    return {
        "source": system_payload(m.source),
        "target": system_payload(m.target),
        "f": {m.source.points[x]: m.target.points[y] for x, y in enumerate(m.f)},
        "phi": {m.target.A.names[a]: m.source.A.names[b] for a, b in enumerate(m.phi.map)},
    }


def morphism_from_payload(p: dict) -> SystemMorphism:
    try:
        src = system_from_payload(p["source"])
        tgt = system_from_payload(p["target"])
        fd, pd = p["f"], p["phi"]
    except KeyError as e:
        raise SchemaError(f"morphism payload lacks {e}") from e
    try:
        pidx = {x: i for i, x in enumerate(tgt.points)}
        f = tuple(pidx[str(fd[x])] for x in src.points)
        phi = tuple(src.A.el(str(pd[a])) for a in tgt.A.names)
    except KeyError as e:
        raise SchemaError(f"morphism maps are incomplete: {e}") from e
    return SystemMorphism(src, tgt, f, Hom(tgt.A, src.A, phi))


# --------------------------------------------------------------------------
# envelopes


def envelope(kind: str, payload) -> dict:
    return {"kind": kind, "version": VERSION, "payload": payload}


def dumps(doc: dict) -> str:
    return json.dumps(doc, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def to_document(obj) -> dict:
    if isinstance(obj, FiniteAlgebra):
        return envelope("algebra", algebra_payload(obj))
    if isinstance(obj, AffineSpace):
        return envelope("space", space_payload(obj))
    if isinstance(obj, AffineSystem):
        return envelope("system", system_payload(obj))
    if isinstance(obj, SystemMorphism):
        return envelope("morphism", morphism_payload(obj))
    return envelope("report", jsonable(obj))


_LOADERS = {
    "algebra": algebra_from_payload,
    "space": space_from_payload,
    "system": system_from_payload,
    "morphism": morphism_from_payload,
    "report": lambda p: p,
}


def parse_document(doc) -> tuple[str, Any]:
    if not isinstance(doc, dict):
        raise SchemaError("document must be a JSON object")
    kind, version = doc.get("kind"), doc.get("version")
    if kind not in KINDS:
        raise SchemaError(f"unknown document kind {kind!r}")
    if version != VERSION:
        raise SchemaError(f"unsupported version {version!r}")
    if "payload" not in doc:
        raise SchemaError("document has no payload")
    return kind, _LOADERS[kind](doc["payload"])


def loads(text: str) -> tuple[str, Any]:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as e:
        raise ParseError(str(e)) from e
    return parse_document(doc)


def load(path: str) -> tuple[str, Any]:
    if path == "-":
        import sys

        return loads(sys.stdin.read())
    try:
        with open(path, encoding="utf-8") as fh:
            return loads(fh.read())
    except UnicodeDecodeError as e:
        raise ParseError(str(e)) from e


def load_kind(path: str, kind: str):
    got, obj = load(path)
    if got != kind:
        raise SchemaError(f"{path}: expected a {kind} document, got {got}")
    return obj


def save(obj, path: str | None = None) -> str:
    text = dumps(to_document(obj))
    if path:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)
    return text


def resolve_L(ref: str, variety: Variety | str | None = None) -> FiniteAlgebra:
    """An algebra document path, or the name of a built-in algebra."""
    if os.path.exists(ref):
        return intern_algebra(load_kind(ref, "algebra"))
    name = ref[:-5] if ref.endswith(".json") else ref
    if name in BUILTINS:
        return intern_algebra(BUILTINS[name](Variety(variety or "frame")))
    raise ValidationError(f"no algebra file or built-in named {ref!r}")


# --------------------------------------------------------------------------
# generic conversion for reports


def jsonable(obj):
    from .verify import SuiteReport

    if obj is None or isinstance(obj, (bool, int, float, str)):
        return obj
    if isinstance(obj, SuiteReport):
        return obj.to_dict()
    if isinstance(obj, FinNatSet):
        return list(obj.items)
    if isinstance(obj, Variety):
        return obj.value
    if isinstance(obj, Hom):
        return hom_payload(obj)
    if isinstance(obj, FiniteAlgebra):
        return algebra_payload(obj)
    if isinstance(obj, AffineSpace):
        return space_payload(obj)
    if isinstance(obj, AffineSystem):
        return system_payload(obj)
    if isinstance(obj, SystemMorphism):
        return morphism_payload(obj)
    if isinstance(obj, dict):
        return {str(k): jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple, set, frozenset)):
        return [jsonable(v) for v in obj]
    if hasattr(obj, "item"):  # numpy scalar
        return obj.item()
    return repr(obj)
