"""JSON fixture schemas and exact (de)serialization.

Every fixture carries ``"schema": 1`` and is validated strictly: unknown
keys are rejected, so a typo fails loudly instead of silently defaulting.
All scalars and coefficient-algebra elements travel as the textual exact
format of the coeff module (golden files are byte-stable because element
serialization is canonically ordered).
"""

from __future__ import annotations

import json

from .coeff import (
    CoefficientAlgebra,
    DualExtension,
    GrassmannAlgebra,
    SuperNumbers,
    field_by_name,
    parse_element,
)
from .errors import SchemaError, StructuralError
from .liesuper import LieSuperalgebraData, from_matrices
from .shcp import HarishChandraPair
from .smat import BUILTIN_GROUPS, SuperMatrix
from .gp import EvenTok, GroupWord, NormalForm, OddTok

SCHEMA_VERSION = 1


def _require_keys(obj, required, optional=(), where="fixture"):
    if not isinstance(obj, dict):
        raise SchemaError(f"{where}: expected an object")
    missing = [k for k in required if k not in obj]
    if missing:
        raise SchemaError(f"{where}: missing keys {missing}")
    unknown = [k for k in obj if k not in required and k not in optional]
    if unknown:
        raise SchemaError(f"{where}: unknown keys {unknown}")


def _check_schema(obj, where):
    if obj.get("schema") != SCHEMA_VERSION:
        raise SchemaError(f"{where}: schema version must be {SCHEMA_VERSION}")


# -- fields and coefficient algebras -----------------------------------------


def load_field(tag, where="field"):
    if not isinstance(tag, str):
        raise SchemaError(f"{where}: field tag must be a string")
    try:
        return field_by_name(tag)
    except StructuralError as e:
        raise SchemaError(f"{where}: {e}") from None


def load_coeff(obj, where="coeff") -> CoefficientAlgebra:
    _require_keys(obj, ["type"], ["field", "rank", "inner"], where)
    t = obj["type"]
    if t == "grassmann":
        _require_keys(obj, ["type", "field", "rank"], (), where)
        if not isinstance(obj["rank"], int):
            raise SchemaError(f"{where}: rank must be an integer")
        return GrassmannAlgebra(load_field(obj["field"], where), obj["rank"])
    if t == "super_numbers":
        _require_keys(obj, ["type", "field"], (), where)
        return SuperNumbers(load_field(obj["field"], where))
    if t == "dual":
        _require_keys(obj, ["type", "inner"], (), where)
        return DualExtension(load_coeff(obj["inner"], where + ".inner"))
    raise SchemaError(f"{where}: unknown coefficient algebra type {t!r}")


def dump_coeff(algebra) -> dict:
    if isinstance(algebra, SuperNumbers):
        return {"type": "super_numbers", "field": algebra.field.name}
    if isinstance(algebra, GrassmannAlgebra):
        return {"type": "grassmann", "field": algebra.field.name, "rank": algebra.rank}
    if isinstance(algebra, DualExtension):
        return {"type": "dual", "inner": dump_coeff(algebra.inner)}
    raise StructuralError(f"cannot serialize {algebra!r}")


# -- matrices ------------------------------------------------------------------


def load_scalar_matrix(field, rows, where="matrix"):
    if not isinstance(rows, list) or not all(isinstance(r, list) for r in rows):
        raise SchemaError(f"{where}: expected a list of rows")
    try:
        return [[field.parse(str(v)) for v in row] for row in rows]
    except (StructuralError, ValueError) as e:
        raise SchemaError(f"{where}: bad scalar literal ({e})") from None


def load_matrix(shape, algebra, rows, where="matrix") -> SuperMatrix:
    n = shape[0] + shape[1]
    if not isinstance(rows, list) or len(rows) != n or any(
            not isinstance(r, list) or len(r) != n for r in rows):
        raise SchemaError(f"{where}: expected {n}x{n} entries")
    try:
        entries = [[parse_element(algebra, str(v)) for v in row] for row in rows]
    except StructuralError as e:
        raise SchemaError(f"{where}: bad entry ({e})") from None
    return SuperMatrix(shape, algebra, entries)


def dump_matrix(m: SuperMatrix):
    return m.to_strings()


# -- Lie superalgebra fixtures ---------------------------------------------------


def load_lie(obj, where="lie") -> LieSuperalgebraData:
    _require_keys(obj, ["schema", "field", "kind"],
                  ["shape", "even", "odd", "d_plus", "d_minus",
                   "ee", "eo", "oo", "q2", "rho"], where)
    _check_schema(obj, where)
    field = load_field(obj["field"], where)
    kind = obj["kind"]
    if kind == "matrices":
        _require_keys(obj, ["schema", "field", "kind", "shape", "even", "odd"], (), where)
        shape = obj["shape"]
        if (not isinstance(shape, list) or len(shape) != 2
                or not all(isinstance(v, int) and v >= 0 for v in shape)):
            raise SchemaError(f"{where}: shape must be [p, q]")
        even = [load_scalar_matrix(field, m, f"{where}.even[{i}]")
                for i, m in enumerate(obj["even"])]
        odd = [load_scalar_matrix(field, m, f"{where}.odd[{i}]")
               for i, m in enumerate(obj["odd"])]
        return from_matrices(shape[0], shape[1], even, odd, field)
    if kind == "constants":
        _require_keys(obj, ["schema", "field", "kind", "d_plus", "d_minus",
                            "ee", "eo", "oo", "q2"], ["rho", "shape"], where)

        def vec(v, w):
            if not isinstance(v, list):
                raise SchemaError(f"{w}: expected a list")
            return [field.parse(str(c)) for c in v]

        ee = [[vec(v, f"{where}.ee") for v in row] for row in obj["ee"]]
        eo = [[vec(v, f"{where}.eo") for v in row] for row in obj["eo"]]
        oo = [[vec(v, f"{where}.oo") for v in row] for row in obj["oo"]]
        q2 = [vec(v, f"{where}.q2") for v in obj["q2"]]
        shape = tuple(obj["shape"]) if "shape" in obj else None
        rho_even = rho_odd = None
        if "rho" in obj:
            _require_keys(obj["rho"], ["even", "odd"], (), f"{where}.rho")
            rho_even = [load_scalar_matrix(field, m, f"{where}.rho.even")
                        for m in obj["rho"]["even"]]
            rho_odd = [load_scalar_matrix(field, m, f"{where}.rho.odd")
                       for m in obj["rho"]["odd"]]
        try:
            return LieSuperalgebraData(field, obj["d_plus"], obj["d_minus"],
                                       ee, eo, oo, q2, shape=shape,
                                       rho_even=rho_even, rho_odd=rho_odd)
        except StructuralError as e:
            raise SchemaError(f"{where}: {e}") from None
    raise SchemaError(f"{where}: unknown lie fixture kind {kind!r}")


# -- pair fixtures ------------------------------------------------------------


def load_group(obj, where="even_group"):
    _require_keys(obj, ["name", "p", "q"], (), where)
    name = obj["name"]
    if name not in BUILTIN_GROUPS:
        raise SchemaError(f"{where}: unknown group {name!r}; "
                          f"builtins: {sorted(BUILTIN_GROUPS)}")
    if not isinstance(obj["p"], int) or not isinstance(obj["q"], int):
        raise SchemaError(f"{where}: p and q must be integers")
    return BUILTIN_GROUPS[name](obj["p"], obj["q"])


def load_pair(obj, where="pair") -> HarishChandraPair:
    _require_keys(obj, ["schema", "even_group", "lie"], (), where)
    _check_schema(obj, where)
    group = load_group(obj["even_group"], where + ".even_group")
    lie = load_lie(obj["lie"], where + ".lie")
    try:
        return HarishChandraPair(group, lie)
    except StructuralError as e:
        raise SchemaError(f"{where}: {e}") from None


# -- words ----------------------------------------------------------------------


def load_word(obj, pair, algebra, where="word") -> GroupWord:
    _require_keys(obj, ["schema", "tokens"], (), where)
    _check_schema(obj, where)
    toks = []
    for t, entry in enumerate(obj["tokens"]):
        loc = f"{where}.tokens[{t}]"
        if not isinstance(entry, dict) or len(entry) != 1:
            raise SchemaError(f"{loc}: token must be a one-key object")
        if "odd" in entry:
            spec = entry["odd"]
            if not (isinstance(spec, list) and len(spec) == 2
                    and isinstance(spec[0], int)):
                raise SchemaError(f"{loc}: odd token is [index, eta-string]")
            try:
                eta = parse_element(algebra, str(spec[1]))
            except StructuralError as e:
                raise SchemaError(f"{loc}: {e}") from None
            toks.append(OddTok(spec[0] - 1, eta))  # fixtures are 1-based
        elif "even" in entry:
            toks.append(EvenTok(load_matrix(pair.shape, algebra, entry["even"], loc)))
        else:
            raise SchemaError(f"{loc}: token key must be 'odd' or 'even'")
    try:
        return GroupWord(pair, algebra, toks)
    except StructuralError as e:
        raise SchemaError(f"{where}: {e}") from None


def dump_normal_form(nf: NormalForm) -> dict:
    return {
        "schema": SCHEMA_VERSION,
        "orientation": nf.orientation,
        "etas": [e.to_str() for e in nf.etas],
        "g_plus": dump_matrix(nf.g_plus),
    }


def loads(text, where="fixture"):
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        raise SchemaError(f"{where}: invalid JSON ({e})") from None
