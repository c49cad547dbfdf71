"""JSON ingestion and canonical report serialization.

Scalars are strings (``"2/3"``, ``"4"``) so files stay exact.  An algebra file::

    {"field": "F3",
     "basis": [["1", 0], ["x", 1]],
     "unit": "1",
     "mul": [["x", "x", {}]],
     "diff": {"x": {}},
     "curvature": {},
     "retraction": {"1": "1"}}

``mul`` lists products ``[a, b, {c: coef}]``; products with the unit may be
omitted.  An empty ``basis`` means the ground field.
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import Any, Mapping

from .cdga import CurvedDGA, ground_algebra
from .graded import GradedSpace
from .scalars import Field, Matrix
from .twisted import RightModule, TwistedModule, conv_space

VERSION = "0.1.0"


class InputError(ValueError):
    """Malformed input file (exit code 2 in the CLI)."""


def _load(source: str | Path | Mapping) -> dict:
    if isinstance(source, Mapping):
        return dict(source)
    try:
        return json.loads(Path(source).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise InputError(f"cannot read {source}: {exc}") from exc


def parse_field(text: str, p: int | None = None) -> Field:
    if p is not None:
        return Field(p)
    try:
        return Field.from_descriptor(text)
    except ValueError as exc:
        raise InputError(str(exc)) from exc


def algebra_from_json(source, field: Field | None = None) -> CurvedDGA:
    data = _load(source)
    try:
        F = field or Field.from_descriptor(data.get("field", "F3"))
        basis = [(str(n), int(d)) for n, d in data.get("basis", [])]
        name = data.get("name", "")
        if not basis:
            return ground_algebra(F)
        products = {(a, b): dict(v) for a, b, v in data.get("mul", [])}
        return CurvedDGA.build(F, basis, data.get("unit", basis[0][0]), products,
                               data.get("diff"), data.get("curvature"), data.get("retraction"),
                               name=name)
    except (KeyError, TypeError, ValueError) as exc:
        raise InputError(f"bad algebra file: {exc}") from exc


def algebra_to_json(A: CurvedDGA) -> dict:
    F, S = A.field, A.space

    def named(v):
        return {S.names[k]: F.format(c) for k, c in enumerate(v) if c}

    unit = [S.names[k] for k, c in enumerate(A.unit) if c]
    out: dict[str, Any] = {"field": F.descriptor, "basis": [list(b) for b in S.basis]}
    out["unit"] = unit[0] if len(unit) == 1 and A.unit[S.index(unit[0])] == 1 else named(A.unit)
    out["mul"] = [[S.names[i], S.names[j], named(A.mul[i][j])]
                  for i in range(A.dim) for j in range(A.dim)]
    out["diff"] = {S.names[j]: named(A.diff.column(j)) for j in range(A.dim)}
    out["curvature"] = named(A.curvature)
    if A.retraction is not None:
        out["retraction"] = named(A.retraction)
    return out


def vector_from_names(space: GradedSpace, data: Mapping, F: Field) -> tuple:
    v = [F.zero] * space.dim
    for k, c in data.items():
        try:
            v[space.index(k)] = F(c)
        except KeyError as exc:
            raise InputError(f"unknown basis element {k!r}") from exc
    return tuple(v)


def vector_to_names(space: GradedSpace, v) -> dict:
    return {space.names[k]: space.field.format(c) for k, c in enumerate(v) if c}


def module_from_json(source, A: CurvedDGA):
    """A :class:`TwistedModule` or :class:`RightModule` over ``A``.

    ``{"kind": "twisted", "V": [[name, deg], ...], "x": {"v->w⊗a": coef}}``,
    ``{"kind": "module", "basis": ..., "action": {a: {m: {m': c}}}, "diff": {m: {m': c}}}``,
    ``{"kind": "regular", "shift": n}`` or ``{"kind": "trivial", "degree": n}``.
    """
    data = _load(source)
    F = A.field
    kind = data.get("kind", "twisted")
    try:
        if kind == "twisted":
            V = GradedSpace(F, tuple((str(n), int(d)) for n, d in data["V"]))
            x = vector_from_names(conv_space(V, V, A), data.get("x", {}), F)
            return TwistedModule(A, V, x, name=data.get("name", ""))
        if kind == "regular":
            return RightModule.regular(A).shift(int(data.get("shift", 0)))
        if kind == "trivial":
            return RightModule.trivial(A, int(data.get("degree", 0)))
        if kind == "module":
            S = GradedSpace(F, tuple((str(n), int(d)) for n, d in data["basis"]))

            def mat(table):
                cols = [vector_from_names(S, table.get(m, {}), F) for m in S.names]
                return Matrix.from_columns(F, cols, S.dim)

            acts = []
            for a in A.space.names:
                if a in data.get("action", {}):
                    acts.append(mat(data["action"][a]))
                elif A.unit == A.basis_vector(A.space.index(a)):
                    acts.append(Matrix.identity(F, S.dim))
                else:
                    acts.append(Matrix.zeros(F, S.dim, S.dim))
            M = RightModule(A, S, acts, mat(data.get("diff", {})), name=data.get("name", ""))
            cert = M.check()
            if not cert.ok:
                raise InputError(f"module axioms fail: {cert.failures[:3]}")
            return M
    except (KeyError, TypeError) as exc:
        raise InputError(f"bad module file: {exc}") from exc
    raise InputError(f"unknown module kind {kind!r}")


def twisted_to_json(M: TwistedModule) -> dict:
    return {"kind": "twisted", "V": [list(b) for b in M.V.basis], "x": M.coords()}


def canonical_json(obj: Any) -> str:
    """Stable serialization: sorted keys, no whitespace variance, trailing newline."""
    return json.dumps(obj, sort_keys=True, ensure_ascii=False, indent=2, default=_default) + "\n"


def _default(o):
    if hasattr(o, "to_json"):
        return o.to_json()
    if isinstance(o, (set, frozenset, tuple)):
        return list(o)
    return str(o)


def envelope(command: list[str], field: Field, params: Mapping, payload: Mapping,
             scope: Mapping, ok: bool) -> dict:
    """The report wrapper every CLI command emits."""
    return {"tool": "koszulkit", "version": VERSION, "command": list(command),
            "field": field.descriptor, "parameters": dict(params), "ok": ok,
            "scope": dict(scope), "result": dict(payload)}


__all__ = ["InputError", "algebra_from_json", "algebra_to_json", "module_from_json",
           "twisted_to_json", "canonical_json", "envelope", "parse_field",
           "vector_from_names", "vector_to_names", "VERSION"]
