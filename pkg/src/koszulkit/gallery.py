"""Scripted scenarios with golden outcomes, shared by the CLI and the demos."""

from __future__ import annotations

from dataclasses import dataclass, field

from .barcobar import bar_points, representability_check
from .cdga import ground_algebra, small_example_algebra, tensor_cdga, truncated_polynomial
from .graded import GradedSpace
from .mc import enumerate_mc
from .randoms import make_rng, random_augmented_algebra
from .scalars import GF
from .twisted import RightModule, TwistedModule, adjunction_check, cohomology, hom_complex


@dataclass
class GalleryResult:
    name: str
    ok: bool
    payload: dict
    scope: dict = field(default_factory=dict)


def kx2(p: int = 3) -> GalleryResult:
    """``A₀ = k[x]/x²`` with ``|x| = 1``: its MC set, the Hom table of rank-one twists, bar points."""
    F = GF(p)
    A = small_example_algebra(F)
    mcs = enumerate_mc(A)
    line = GradedSpace(F, (("v", 0),))
    mods = [TwistedModule(A, line, z.coords, name=f"{F.format(z.coords[1])}x") for z in mcs]
    table = []
    ok = len(mcs) == p
    for i, M in enumerate(mods):
        row = []
        for j, N in enumerate(mods):
            h = cohomology(hom_complex(M, N))
            row.append({str(d): v for d, v in sorted(h.items())})
            expected = {0: 1, 1: 1} if i == j else {0: 0, 1: 0}
            ok &= h == expected
        table.append(row)
    points = len(bar_points(A, ground_algebra(F)))
    ok &= points == p
    payload = {"mc": [F.format(z.coords[1]) + "·x" for z in mcs], "mc_count": len(mcs),
               "hom_cohomology": table, "bar_points_over_k": points}
    return GalleryResult("kx2", ok, payload, {"enumeration": "exhaustive over F_p"})


def adjunction(p: int = 3) -> GalleryResult:
    """``A₀``, ``B = k[t]/t²`` and ``x = x⊗t``: both sides of the adjunction agree."""
    F = GF(p)
    A = small_example_algebra(F)
    B = truncated_polynomial(F, 2, 0, "t")
    x = tensor_cdga(A, B).vector({"x⊗t": 1})
    cases = {"A0,B": (RightModule.regular(A), RightModule.regular(B)),
             "k,B": (RightModule.trivial(A), RightModule.regular(B)),
             "A0,k": (RightModule.regular(A), RightModule.trivial(B)),
             "k,k": (RightModule.trivial(A), RightModule.trivial(B))}
    payload, ok = {}, True
    for name, (M, N) in cases.items():
        cert = adjunction_check(x, M, N)
        ok &= cert.ok
        payload[name] = cert.to_json()
    return GalleryResult("adjunction", ok, payload, {"point": "x⊗t"})


def representability(p: int = 2, pairs: int = 20, seed: int = 0) -> GalleryResult:
    """``cobar_maps(C, A)`` against ``MC(Ā⊗C̄)`` for named and seeded random pairs."""
    F = GF(p)
    rng = make_rng(seed)
    named = [(truncated_polynomial(F, 2, 0, "ε"), small_example_algebra(F)),
             (truncated_polynomial(F, 3, 0, "ε"), small_example_algebra(F)),
             (ground_algebra(F), small_example_algebra(F))]
    rand = [(random_augmented_algebra(F, rng), random_augmented_algebra(F, rng))
            for _ in range(pairs)]
    rows, ok = [], True
    for C, A in named + rand:
        cert = representability_check(C, A)
        ok &= cert.ok
        rows.append({"C": list(C.degrees), "A": list(A.degrees), **cert.scope, "ok": cert.ok})
    return GalleryResult("representability", ok, {"pairs": rows},
                         {"seed": seed, "random_pairs": pairs})


SCENARIOS = {"kx2": kx2, "adjunction": adjunction, "representability": representability}

__all__ = ["GalleryResult", "kx2", "adjunction", "representability", "SCENARIOS"]
