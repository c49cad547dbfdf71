"""Random certified algebras and modules for property-style checks.

Everything is driven by an explicit :class:`random.Random`; the seed comes
from the ``KOSZULKIT_SEED`` environment variable when not given.
"""

from __future__ import annotations

import os
import random
from typing import Sequence

from .cdga import CurvedDGA, check_axioms, endo_convolution
from .graded import GradedSpace
from .mc import twist_algebra
from .scalars import Field, Matrix, kernel_basis, vec_zero

DEGREES = (-1, 0, 1, 2)


def make_rng(seed: int | None = None) -> random.Random:
    if seed is None:
        seed = int(os.environ.get("KOSZULKIT_SEED", "0"))
    return random.Random(seed)


def _random_scalar(F: Field, rng: random.Random):
    # over Q, small integers keep the exact arithmetic cheap
    return F(rng.randrange(F.p)) if F.is_finite else F(rng.randint(-2, 2))


def _random_vector(F: Field, rng: random.Random, n: int, allowed: Sequence[int], density=0.6):
    v = [F.zero] * n
    for i in allowed:
        if rng.random() < density:
            v[i] = _random_scalar(F, rng)
    return tuple(v)


def _table(F, degs, rng, reduced: bool):
    n = len(degs)
    mul = [[None] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            if i == 0:
                mul[i][j] = tuple(F.one if k == j else F.zero for k in range(n))
            elif j == 0:
                mul[i][j] = tuple(F.one if k == i else F.zero for k in range(n))
            else:
                allowed = [k for k in range(n) if degs[k] == degs[i] + degs[j]
                           and not (reduced and k == 0)]
                mul[i][j] = _random_vector(F, rng, n, allowed)
    return mul


def _basis(degs):
    return tuple([("1", 0)] + [(f"e{i}", d) for i, d in enumerate(degs[1:], 1)])


def random_graded_algebra(F: Field, rng: random.Random, dim: int | None = None,
                          reduced: bool = False, degrees=DEGREES, tries: int = 400) -> CurvedDGA:
    """Associative unital graded algebra with zero differential and curvature.

    ``reduced=True`` keeps ``Ā·Ā ⊂ Ā`` so ``ε(e_0 = 1) = 1`` is an augmentation.
    """
    for _ in range(tries):
        n = dim or rng.randint(1, 3)
        degs = [0] + [rng.choice(degrees) for _ in range(n - 1)]
        space = GradedSpace(F, _basis(degs))
        mul = _table(F, degs, rng, reduced)
        unit = tuple(F.one if k == 0 else F.zero for k in range(n))
        A = CurvedDGA(space, unit, mul, Matrix.zeros(F, n, n))
        if check_axioms(A).ok:
            return A
    raise RuntimeError("failed to sample an associative algebra")


def random_retraction(A: CurvedDGA, rng: random.Random) -> tuple:
    F = A.field
    eps = [F.zero] * A.dim
    eps[0] = F.one
    for i in range(1, A.dim):
        if A.space.degree(i) == 0:
            eps[i] = _random_scalar(F, rng)
    return tuple(eps)


def random_curved_algebra(F: Field, rng: random.Random, dim: int | None = None,
                          tries: int = 400) -> CurvedDGA:
    """Certified curved dg algebra with a random retraction.

    A random graded algebra gets a random differential and curvature by
    rejection; failing that it is twisted by a random degree-1 element, which
    always yields a certified curved algebra.
    """
    A = random_graded_algebra(F, rng, dim)
    n = A.dim
    degs = A.degrees
    for _ in range(tries // 4):
        cols = [vec_zero(F, n)] + [
            _random_vector(F, rng, n, [k for k in range(1, n) if degs[k] == degs[j] + 1])
            for j in range(1, n)]
        h = _random_vector(F, rng, n, [k for k in range(n) if degs[k] == 2])
        B = A.replace(diff=Matrix.from_columns(F, cols, n), curvature=h)
        if check_axioms(B).ok and (B.is_curved() or not B.diff.is_zero()):
            A = B
            break
    ones = A.degree_part(1)
    if ones:
        b = _random_vector(F, rng, n, ones, density=0.8)
        A = twist_algebra(A, b)
    return A.with_retraction(random_retraction(A, rng))


def random_augmented_algebra(F: Field, rng: random.Random, dim: int | None = None,
                             tries: int = 400) -> CurvedDGA:
    """Certified uncurved dg algebra with augmentation ``ε(e_i) = 0`` for ``i > 0``."""
    A = random_graded_algebra(F, rng, dim, reduced=True)
    n = A.dim
    degs = A.degrees
    eps = tuple(F.one if k == 0 else F.zero for k in range(n))
    for _ in range(tries // 4):
        cols = [vec_zero(F, n)] + [
            _random_vector(F, rng, n, [k for k in range(1, n) if degs[k] == degs[j] + 1])
            for j in range(1, n)]
        B = A.replace(diff=Matrix.from_columns(F, cols, n), retraction=eps)
        if check_axioms(B).ok:
            return B
    return A.with_retraction(eps)


def random_twisted_module(A: CurvedDGA, rng: random.Random, max_dim: int = 2,
                          mc_bound: int = 8):
    """A twisted module ``(U, z)`` with ``z`` drawn uniformly from ``MC(End(U)⊗A)``."""
    from .mc import enumerate_mc
    from .twisted import TwistedModule
    F = A.field
    for _ in range(20):
        n = rng.randint(1, max_dim)
        degs = sorted(rng.choice((-1, 0, 0, 1)) for _ in range(n))
        U = GradedSpace(F, tuple((f"u{i}", d) for i, d in enumerate(degs)))
        try:
            mcs = enumerate_mc(endo_convolution(U, A), bound=mc_bound)
        except ValueError:
            continue
        if mcs:
            return TwistedModule(A, U, rng.choice(mcs).coords, name="T", check=False)
    raise RuntimeError("no twisted module within the enumeration bound")


def random_right_module(A: CurvedDGA, rng: random.Random, max_dim: int = 3):
    """A small right dg module over an uncurved augmented ``A``, certified."""
    from .twisted import RightModule, direct_sum_modules
    for _ in range(20):
        kind = rng.choice(("trivial", "regular", "twisted", "sum"))
        if kind == "trivial":
            M = RightModule.trivial(A, rng.choice((-1, 0, 1)))
        elif kind == "regular":
            M = RightModule.regular(A).shift(rng.choice((-1, 0, 1)))
        elif kind == "twisted":
            M = random_twisted_module(A, rng, max_dim=1).to_module()
        else:
            M = direct_sum_modules(RightModule.trivial(A, rng.choice((0, 1))),
                                   RightModule.trivial(A, rng.choice((0, 1))))
        if M.dim <= max_dim:
            return M
    return RightModule.trivial(A)


def random_morphism(M, N, rng: random.Random):
    """A uniformly random degree-0 cycle of ``hom_complex(M, N)`` over F_p."""
    from .twisted import TwistedMorphism, hom_complex
    c = hom_complex(M, N)
    F = M.field
    idx = c.space.indices_in_degree(0)
    rows = c.space.indices_in_degree(1)
    phi = [F.zero] * c.space.dim
    if idx:
        sub = c.differential.submatrix(rows, idx) if rows else Matrix.zeros(F, 0, len(idx))
        for v in kernel_basis(sub):
            s = _random_scalar(F, rng)
            for i, a in zip(idx, v):
                phi[i] = F.add(phi[i], F.mul(s, a))
    return TwistedMorphism(M, N, phi)


__all__ = ["make_rng", "random_morphism", "random_graded_algebra", "random_curved_algebra",
           "random_augmented_algebra", "random_retraction", "random_twisted_module",
           "random_right_module"]
