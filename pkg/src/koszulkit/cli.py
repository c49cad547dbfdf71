"""``koszulkit`` command line.

Exit codes: 0 when the certificate or verdict is positive, 1 for a mathematical
failure (the report says which identity), 2 for usage or input errors.
"""

from __future__ import annotations

import argparse
import json
import re
import sys
from typing import Callable

from . import barcobar as bc
from .cdga import CurvedDGA, check_axioms, split_by_retraction
from .gallery import SCENARIOS
from .graded import GradedSpace
from .io import (InputError, algebra_from_json, algebra_to_json, canonical_json, envelope,
                 module_from_json, parse_field, twisted_to_json, vector_from_names,
                 vector_to_names)
from .mc import enumerate_mc, is_mc, mc_residual, twist_algebra
from .scalars import Field
from .twisted import (ModuleMap, TwistedModule, TwistedMorphism, adjunction_check,
                      cohomology, conv_space, functor_F_at, functor_G_at, hom_complex,
                      hom_into_module, path_object, quasi_iso_check, weak_equiv_oracle)

DEFAULT_FIELD = "F3"
DEFAULT_WINDOW = 4
DEFAULT_BOUND = 2
MC_BOUND = 12
GALLERY_DEFAULT_P = {"kx2": 3, "adjunction": 3, "representability": 2}


class Report:
    def __init__(self, ok: bool, payload: dict, scope: dict | None = None, text: str = ""):
        self.ok, self.payload, self.scope, self.text = ok, payload, scope or {}, text


# argument helpers ------------------------------------------------------------


def _field_override(args) -> Field | None:
    if args.p is not None:
        return Field(args.p)
    if args.field is not None:
        return parse_field(args.field)
    return None


def _default_field(args) -> Field:
    return _field_override(args) or parse_field(DEFAULT_FIELD)


def _algebra(args, path) -> CurvedDGA:
    A = algebra_from_json(path, _field_override(args))
    args._field = getattr(args, "_field", None) or A.field
    cert = check_axioms(A)
    if not cert.ok:
        raise _Failure(Report(False, {"check_axioms": cert.to_json()}, text="algebra fails its axioms"))
    return A


_TERM = re.compile(r"^\s*([+-]?)\s*(?:([0-9]+(?:/[0-9]+)?)\s*\*?\s*)?([^\s+*-][^\s+*]*)?\s*$")


def parse_element(text: str, space: GradedSpace, F: Field) -> tuple:
    """``"0"``, ``"x"``, ``"2*x + y"`` or a JSON object ``{"x": "2"}``."""
    text = text.strip()
    if text.startswith("{"):
        return vector_from_names(space, json.loads(text), F)
    v = [F.zero] * space.dim
    if text in ("", "0"):
        return tuple(v)
    for chunk in re.findall(r"[+-]?[^+-]+", text):
        bare = chunk.strip().lstrip("+-").strip()
        if bare in space.names:
            k = space.index(bare)
            c = F.neg(F.one) if chunk.strip().startswith("-") else F.one
            v[k] = F.add(v[k], c)
            continue
        m = _TERM.match(chunk)
        if not m:
            raise InputError(f"cannot parse term {chunk!r}")
        sign, coef, name = m.groups()
        c = F(coef) if coef else F.one
        if sign == "-":
            c = F.neg(c)
        if name is None:
            raise InputError(f"term {chunk!r} has no basis element")
        try:
            k = space.index(name)
        except KeyError as exc:
            raise InputError(f"unknown basis element {name!r}") from exc
        v[k] = F.add(v[k], c)
    return tuple(v)


def _retraction(arg: str | None, A: CurvedDGA):
    if arg is None:
        return None
    return parse_element(arg, A.space, A.field)


def _morphism(spec: str, M, N):
    """``identity``, ``zero`` or a JSON file/object with ``phi`` (twisted) or ``matrix`` (modules)."""
    if isinstance(M, TwistedModule) != isinstance(N, TwistedModule):
        raise InputError("source and target must both be twisted or both be plain modules")
    twisted = isinstance(M, TwistedModule)
    if spec in ("identity", "id"):
        if twisted:
            if M != N:
                raise InputError("identity needs equal source and target")
            return TwistedMorphism.identity(M)
        return ModuleMap.identity(M)
    if spec == "zero":
        return TwistedMorphism.zero(M, N) if twisted else ModuleMap.zero(M, N)
    data = json.loads(spec) if spec.strip().startswith("{") else json.loads(open(spec).read())
    F = M.algebra.field if twisted else M.field
    if twisted:
        phi = vector_from_names(conv_space(M.V, N.V, M.algebra), data.get("phi", {}), F)
        try:
            return TwistedMorphism(M, N, phi)
        except ValueError as exc:
            raise InputError(str(exc)) from exc
    from .scalars import Matrix
    cols = [vector_from_names(N.space, data.get("matrix", {}).get(m, {}), F) for m in M.space.names]
    f = ModuleMap(M, N, Matrix.from_columns(F, cols, N.dim))
    cert = f.check()
    if not cert.ok:
        raise InputError(f"not a module map: {cert.failures[:3]}")
    return f


def _as_module(M):
    return M.to_module() if isinstance(M, TwistedModule) else M


class _Failure(Exception):
    def __init__(self, report: Report):
        self.report = report


# commands -------------------------------------------------------------------


def cmd_check(args) -> Report:
    A = algebra_from_json(args.algebra, _field_override(args))
    args._field = A.field
    cert = check_axioms(A)
    return Report(cert.ok, {"certificate": cert.to_json(), "dim": A.dim,
                            "graded_dims": A.space.graded_dims()},
                  text=f"check_axioms: {'ok' if cert.ok else 'FAILED'} (dim {A.dim})")


def cmd_mc(args) -> Report:
    A = _algebra(args, args.algebra)
    if args.action == "list":
        mcs = enumerate_mc(A, bound=args.mc_bound, jobs=args.jobs)
        elems = [vector_to_names(A.space, z.coords) for z in mcs]
        return Report(True, {"count": len(mcs), "elements": elems},
                      {"enumeration_bound": args.mc_bound, "exhaustive": True},
                      text=f"|MC| = {len(mcs)}")
    if args.element is None:
        raise InputError("mc verify needs an element")
    x = parse_element(args.element, A.space, A.field)
    cert = is_mc(A, x)
    res = vector_to_names(A.space, mc_residual(A, x))
    return Report(cert.ok, {"certificate": cert.to_json(), "residual": res},
                  text=f"is_mc: {'ok' if cert.ok else 'FAILED'}; residual {res or 0}")


def cmd_twist(args) -> Report:
    A = _algebra(args, args.algebra)
    b = parse_element(args.element, A.space, A.field)
    At = twist_algebra(A, b)
    cert = check_axioms(At)
    return Report(cert.ok, {"algebra": algebra_to_json(At), "certificate": cert.to_json(),
                            "curvature": vector_to_names(A.space, At.curvature)},
                  text=f"twisted algebra: axioms {'ok' if cert.ok else 'FAILED'}, "
                       f"curvature {vector_to_names(A.space, At.curvature) or 0}")


def _derivation_table(D: bc.GeneratorDerivation) -> dict:
    names = D.algebra.generators.names
    return {n: v.to_json() for n, v in zip(names, D.values)}


def cmd_cobar(args) -> Report:
    A = _algebra(args, args.algebra)
    om = bc.cobar(A, args.window, _retraction(args.retraction, A))
    cert = om.square_certificate()
    gens = [list(b) for b in om.algebra.generators.basis]
    return Report(cert.ok, {"generators": gens, "differential": _derivation_table(om.differential),
                            "curvature": om.curvature.to_json(), "square": cert.to_json()},
                  {**om.scope, "d2_checked_word_lengths": cert.scope["checked_word_lengths"]},
                  text=_derivation_text(om.differential, om.curvature, cert))


def _derivation_text(D, curv, cert) -> str:
    lines = [f"d({n}) = {v!r}" for n, v in zip(D.algebra.generators.names, D.values)]
    lines.append(f"curvature = {curv!r}")
    lines.append(f"d² certificate: {'ok' if cert.ok else 'FAILED'} up to word length "
                 f"{cert.scope['checked_word_lengths']}")
    return "\n".join(lines)


def cmd_bar(args) -> Report:
    A = _algebra(args, args.algebra)
    D = bc.bar_differential(A, args.window, _retraction(args.retraction, A))
    sq_reduced = bc.square_zero_certificate(D.xi1, curvature=D.curvature)
    sq_full = bc.square_zero_certificate(D.xi)
    literal = {n: D.identity_residual(k).to_json()
               for k, n in enumerate(D.reduced.generators.names)}
    literal_ok = all(D.identity_residual(k).is_zero_upto()
                     for k in range(D.reduced.ngens))
    ok = sq_reduced.ok and sq_full.ok
    payload = {"xi1": _derivation_table(D.xi1), "g": D.g.to_json(),
               "curvature": D.curvature.to_json(),
               "curvature_substituted": D.curvature_substituted.to_json(),
               "reduced_square": sq_reduced.to_json(), "full_square": sq_full.to_json(),
               "literal_identity_residuals": literal, "literal_identity_holds": literal_ok}
    return Report(ok, payload, dict(D.scope),
                  text=_derivation_text(D.xi1, D.curvature, sq_reduced)
                  + f"\nξ² = 0 on τ-extension: {'ok' if sq_full.ok else 'FAILED'}")


def cmd_bar_points(args) -> Report:
    A = _algebra(args, args.algebra)
    B = _algebra(args, args.other)
    pts = bc.bar_points(A, B, args.convention, args.mc_bound)
    space = pts[0].host.space if pts else None
    elems = [vector_to_names(space, z.coords) for z in pts]
    return Report(True, {"count": len(pts), "points": elems, "convention": args.convention},
                  {"enumeration_bound": args.mc_bound, "exhaustive": True},
                  text=f"{len(pts)} points ({args.convention} convention)")


def cmd_cobar_maps(args) -> Report:
    C = _algebra(args, args.algebra)
    A = _algebra(args, args.other)
    cert = bc.representability_check(C, A, args.mc_bound)
    maps = bc.cobar_maps(C, A, args.mc_bound)
    sc = split_by_retraction(C)
    gens = [f"t[{n}]" for n in sc.bar_space.names]
    listing = [{g: vector_to_names(A.space, im) for g, im in zip(gens, m.images)} for m in maps]
    return Report(cert.ok, {"count": len(maps), "maps": listing, "bijection": cert.to_json()},
                  {"enumeration_bound": args.mc_bound},
                  text=f"{len(maps)} maps; bijection with MC(Ā⊗C̄): {'ok' if cert.ok else 'FAILED'}")


def cmd_retraction_iso(args) -> Report:
    A = _algebra(args, args.algebra)
    eps = parse_element(args.eps, A.space, A.field)
    eps2 = parse_element(args.eps2, A.space, A.field)
    cert = bc.change_retraction_check(A, eps, eps2, args.window)
    return Report(cert.ok, {"certificate": cert.to_json()}, cert.scope,
                  text=f"change of retraction: {'ok' if cert.ok else 'FAILED'}")


def cmd_resolution(args) -> Report:
    F = _default_field(args)
    degs = [int(d) for d in args.degrees.split(",") if d.strip()]
    V = GradedSpace(F, tuple((f"v{i}", d) for i, d in enumerate(degs)))
    cert = bc.resolution_exactness(V, args.max_length)
    return Report(cert.ok, {"certificate": cert.to_json()}, {"max_word_length": args.max_length},
                  text="\n".join(f"n={n}: dims {r['dims']} ranks {r['ranks']} "
                                 f"{'exact' if r['exact'] else 'NOT exact'}"
                                 for n, r in cert.scope["table"].items()))


def cmd_hom(args) -> Report:
    A = _algebra(args, args.algebra)
    M = module_from_json(args.source, A)
    N = module_from_json(args.target, A)
    if not isinstance(M, TwistedModule):
        raise InputError("the source of hom must be a twisted module")
    c = hom_complex(M, N) if isinstance(N, TwistedModule) else hom_into_module(M, N)
    h = cohomology(c)
    return Report(c.certificate.ok, {"dim": c.space.dim, "cohomology": h,
                                     "square": c.certificate.to_json()},
                  text=f"H = {h}")


def cmd_weq(args) -> Report:
    A = _algebra(args, args.algebra)
    M = module_from_json(args.source, A)
    N = module_from_json(args.target, A)
    f = _morphism(args.morphism, M, N)
    v = weak_equiv_oracle(f, args.bound, jobs=args.jobs, mc_bound=args.mc_bound)
    return Report(v.ok, v.to_json(), {"test_dimension_bound": args.bound, "one_sided": True},
                  text=f"{type(v).__name__}: {json.dumps(v.to_json(), ensure_ascii=False)}")


def cmd_quasi_iso(args) -> Report:
    A = _algebra(args, args.algebra)
    M = module_from_json(args.source, A)
    N = module_from_json(args.target, A)
    f = _morphism(args.morphism, M, N)
    q = quasi_iso_check(f)
    return Report(q, {"quasi_isomorphism": q}, text=f"quasi-isomorphism: {q}")


def cmd_path_object(args) -> Report:
    A = _algebra(args, args.algebra)
    M = module_from_json(args.module, A)
    P = path_object(M, bound=args.bound, jobs=args.jobs)
    return Report(P.certificate.ok, {"certificate": P.certificate.to_json(),
                                     "cylinder_dim": P.cylinder.dim},
                  {"test_dimension_bound": args.bound},
                  text=f"path object: {'ok' if P.certificate.ok else 'FAILED'}")


def _point(args, A, B):
    from .cdga import tensor_cdga
    AB = tensor_cdga(A, B)
    return parse_element(args.point, AB.space, A.field)


def cmd_functor_f(args) -> Report:
    A = _algebra(args, args.algebra)
    B = _algebra(args, args.other)
    M = _as_module(module_from_json(args.module, A))
    T = functor_F_at(_point(args, A, B), M, B)
    cert = T.to_module().check()
    return Report(cert.ok, {"module": twisted_to_json(T), "dim": T.V.dim * B.dim,
                            "axioms": cert.to_json()},
                  text=f"F_x M: {T!r}; module axioms {'ok' if cert.ok else 'FAILED'}")


def cmd_functor_g(args) -> Report:
    A = _algebra(args, args.algebra)
    B = _algebra(args, args.other)
    N = _as_module(module_from_json(args.module, B))
    T = functor_G_at(_point(args, A, B), N, A)
    cert = T.certificate()
    return Report(cert.ok, {"module": twisted_to_json(T), "mc": cert.to_json()},
                  text=f"G_x N: {T!r}; MC {'ok' if cert.ok else 'FAILED'}")


def cmd_adjoint(args) -> Report:
    A = _algebra(args, args.algebra)
    B = _algebra(args, args.other)
    M = _as_module(module_from_json(args.module, A))
    N = _as_module(module_from_json(args.module_b, B))
    cert = adjunction_check(_point(args, A, B), M, N)
    return Report(cert.ok, {"certificate": cert.to_json()},
                  text=f"adjunction: {'ok' if cert.ok else 'FAILED'} {cert.scope}")


def cmd_gallery(args) -> Report:
    p = args.p if args.p is not None else GALLERY_DEFAULT_P[args.name]
    r = SCENARIOS[args.name](p)
    args._field = Field(p)
    return Report(r.ok, r.payload, r.scope,
                  text=f"gallery {r.name}: {'ok' if r.ok else 'FAILED'}\n"
                       + json.dumps(r.payload, ensure_ascii=False, sort_keys=True))


# parser -----------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--field", help="Q or Fp (default F3, or the algebra file's field)")
    common.add_argument("--p", type=int, help="shorthand for --field Fp")
    common.add_argument("--window", type=int, default=DEFAULT_WINDOW)
    common.add_argument("--bound", type=int, default=DEFAULT_BOUND,
                        help="test-module dimension bound")
    common.add_argument("--mc-bound", type=int, default=MC_BOUND,
                        help="maximum number of enumerated coordinates")
    common.add_argument("--jobs", type=int, default=1)
    out = common.add_mutually_exclusive_group()
    out.add_argument("--json", dest="fmt", action="store_const", const="json")
    out.add_argument("--text", dest="fmt", action="store_const", const="text")
    common.set_defaults(fmt="text")

    parser = argparse.ArgumentParser(prog="koszulkit", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name: str, fn: Callable, help_: str, *positionals, **options):
        sp = sub.add_parser(name, parents=[common], help=help_)
        for pos in positionals:
            if isinstance(pos, tuple):
                sp.add_argument(pos[0], **pos[1])
            else:
                sp.add_argument(pos)
        for opt, kw in options.items():
            sp.add_argument("--" + opt.replace("_", "-"), **kw)
        sp.set_defaults(func=fn)
        return sp

    add("check", cmd_check, "certify the axioms of an algebra file", "algebra")
    add("mc", cmd_mc, "list or verify Maurer-Cartan elements", "algebra",
        ("action", {"choices": ["list", "verify"]}), ("element", {"nargs": "?"}))
    add("twist", cmd_twist, "twist an algebra by a degree-1 element", "algebra", "element")
    add("cobar", cmd_cobar, "cobar construction on a window", "algebra",
        retraction={"default": None})
    add("bar", cmd_bar, "reduced bar differential and curvature", "algebra",
        retraction={"default": None})
    add("bar-points", cmd_bar_points, "points of the extended bar construction", "algebra", "other",
        convention={"choices": ["curved", "augmented"], "default": "curved"})
    add("cobar-maps", cmd_cobar_maps, "dg maps from the cobar construction", "algebra", "other")
    add("retraction-iso", cmd_retraction_iso, "change-of-retraction isomorphism", "algebra",
        eps={"required": True}, eps2={"required": True})
    add("resolution", cmd_resolution, "exactness of the bimodule resolution",
        degrees={"default": "0"}, max_length={"type": int, "default": 4})
    add("hom", cmd_hom, "Hom complex cohomology", "algebra", "source", "target")
    for name, fn, help_ in (("weq", cmd_weq, "weak-equivalence oracle"),
                            ("quasi-iso", cmd_quasi_iso, "quasi-isomorphism check")):
        add(name, fn, help_, "algebra", "source", "target", morphism={"default": "identity"})
    add("path-object", cmd_path_object, "path-object factorization", "algebra", "module")
    add("functor-f", cmd_functor_f, "F at a point x of A⊗B", "algebra", "other", "module",
        point={"required": True})
    add("functor-g", cmd_functor_g, "G at a point x of A⊗B", "algebra", "other", "module",
        point={"required": True})
    add("adjoint", cmd_adjoint, "compare Hom(G N, M) with Hom(F M, N)", "algebra", "other",
        "module", "module_b", point={"required": True})
    gp = add("gallery", cmd_gallery, "scripted scenarios with golden outputs",
             ("name", {"choices": sorted(SCENARIOS)}))
    gp.set_defaults(p=None)
    return parser


def _params(args) -> dict:
    skip = {"func", "fmt", "command"}
    return {k: v for k, v in sorted(vars(args).items())
            if k not in skip and not k.startswith("_") and v is not None}


def main(argv: list[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        report = args.func(args)
    except _Failure as exc:
        report = exc.report
    except (InputError, ValueError, KeyError) as exc:
        print(f"koszulkit: error: {exc}", file=sys.stderr)
        return 2
    field = getattr(args, "_field", None) or _default_field(args)
    if args.fmt == "json":
        sys.stdout.write(canonical_json(envelope(argv, field, _params(args), report.payload,
                                                 report.scope, report.ok)))
    else:
        print(report.text or ("ok" if report.ok else "FAILED"))
    return 0 if report.ok else 1


if __name__ == "__main__":
    sys.exit(main())
