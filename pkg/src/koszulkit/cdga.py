"""Finite-dimensional curved dg algebras given by structure constants.

A presentation stores the multiplication table ``mul[i][j]`` (coordinates of
``e_i e_j``), the differential as a matrix whose column ``j`` is ``d(e_j)``,
the curvature vector ``h`` and optionally a retraction ``ε: A -> k`` with
``ε(1) = 1``.  The axioms are not assumed; :func:`check_axioms` certifies them
and reports every violated identity together with a witness.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from typing import Mapping, Sequence

from .graded import GradedSpace, hom_space, koszul_sign, parity_sign, tensor
from .scalars import (Field, Matrix, NoSolution, solve_linear, unit_vector, vec_add,
                      vec_is_zero, vec_scale, vec_sub, vec_zero)


@dataclass
class Certificate:
    """Outcome of a verification: ``ok`` plus one record per failed identity."""

    ok: bool
    failures: list = dc_field(default_factory=list)
    scope: dict = dc_field(default_factory=dict)

    def __bool__(self):
        return self.ok

    @classmethod
    def from_failures(cls, failures, scope=None) -> "Certificate":
        return cls(not failures, list(failures), dict(scope or {}))

    def names(self) -> list[str]:
        return [f["identity"] for f in self.failures]

    def to_json(self) -> dict:
        return {"ok": self.ok, "failures": self.failures, "scope": self.scope}


class CurvedDGA:
    """A curved dg algebra presentation; the uncurved case has ``h = 0``."""

    def __init__(self, space: GradedSpace, unit: Sequence, mul: Sequence, diff: Matrix,
                 curvature: Sequence | None = None, retraction: Sequence | None = None,
                 name: str = ""):
        F = space.field
        n = space.dim
        self.space = space
        self.field = F
        self.name = name
        self.unit = tuple(F(a) for a in unit)
        if len(self.unit) != n:
            raise ValueError("unit has wrong length")
        if len(mul) != n or any(len(row) != n for row in mul):
            raise ValueError("multiplication table has wrong shape")
        self.mul = tuple(tuple(tuple(F(a) for a in v) for v in row) for row in mul)
        if any(len(v) != n for row in self.mul for v in row):
            raise ValueError("multiplication table entries have wrong length")
        if (diff.rows, diff.cols) != (n, n):
            raise ValueError("differential has wrong shape")
        self.diff = diff
        self.curvature = tuple(F(a) for a in curvature) if curvature is not None else vec_zero(F, n)
        if len(self.curvature) != n:
            raise ValueError("curvature has wrong length")
        self.retraction = tuple(F(a) for a in retraction) if retraction is not None else None
        if self.retraction is not None and len(self.retraction) != n:
            raise ValueError("retraction has wrong length")
        self._terms = [(i, j, k, c) for i in range(n) for j in range(n)
                       for k, c in enumerate(self.mul[i][j]) if c]
        self._dcols = [diff.column(j) for j in range(n)]

    # construction ---------------------------------------------------------

    @classmethod
    def build(cls, field: Field, basis: Sequence[tuple[str, int]], unit: Mapping | str,
              products: Mapping | None = None, diff: Mapping | None = None,
              curvature: Mapping | None = None, retraction: Mapping | None = None,
              name: str = "") -> "CurvedDGA":
        """Build from name-keyed data; missing products of the unit follow the unit law.

        ``products[(a, b)]``, ``diff[a]``, ``curvature`` and ``retraction`` are
        mappings from basis names to coefficients.
        """
        space = GradedSpace(field, tuple(basis))
        n = space.dim

        def vec(data):
            v = [field.zero] * n
            for k, c in (data or {}).items():
                v[space.index(k)] = field(c)
            return tuple(v)

        u = unit_vector(field, n, space.index(unit)) if isinstance(unit, str) else vec(unit)
        products = products or {}
        unit_index = space.index(unit) if isinstance(unit, str) else None
        mul = [[vec_zero(field, n) for _ in range(n)] for _ in range(n)]
        for i, (a, _) in enumerate(space.basis):
            for j, (b, _) in enumerate(space.basis):
                if (a, b) in products:
                    mul[i][j] = vec(products[(a, b)])
                elif unit_index is not None and i == unit_index:
                    mul[i][j] = unit_vector(field, n, j)
                elif unit_index is not None and j == unit_index:
                    mul[i][j] = unit_vector(field, n, i)
        cols = [vec((diff or {}).get(a)) for a, _ in space.basis]
        d = Matrix.from_columns(field, cols, n)
        ret = vec(retraction) if retraction is not None else None
        return cls(space, u, mul, d, vec(curvature), ret, name=name)

    def replace(self, **kw) -> "CurvedDGA":
        args = dict(space=self.space, unit=self.unit, mul=self.mul, diff=self.diff,
                    curvature=self.curvature, retraction=self.retraction, name=self.name)
        args.update(kw)
        return CurvedDGA(**args)

    def with_retraction(self, retraction: Sequence | None) -> "CurvedDGA":
        return self.replace(retraction=retraction)

    # arithmetic -----------------------------------------------------------

    @property
    def dim(self) -> int:
        return self.space.dim

    @property
    def degrees(self) -> list[int]:
        return self.space.degrees

    def basis_vector(self, i: int) -> tuple:
        return unit_vector(self.field, self.dim, i)

    def vector(self, data: Mapping) -> tuple:
        v = [self.field.zero] * self.dim
        for k, c in data.items():
            v[self.space.index(k)] = self.field(c)
        return tuple(v)

    def product(self, u: Sequence, v: Sequence) -> tuple:
        F = self.field
        out = [0] * self.dim
        for i, j, k, c in self._terms:
            a = u[i]
            if a:
                b = v[j]
                if b:
                    out[k] += a * b * c
        return tuple(F(x) for x in out)

    def d(self, v: Sequence) -> tuple:
        F = self.field
        out = [0] * self.dim
        for j, a in enumerate(v):
            if a:
                for i, c in enumerate(self._dcols[j]):
                    if c:
                        out[i] += a * c
        return tuple(F(x) for x in out)

    def homogeneous_parts(self, v: Sequence) -> dict[int, tuple]:
        parts: dict[int, list] = {}
        for i, a in enumerate(v):
            if a:
                deg = self.space.degree(i)
                parts.setdefault(deg, [self.field.zero] * self.dim)[i] = a
        return {d: tuple(p) for d, p in parts.items()}

    def commutator(self, u: Sequence, v: Sequence) -> tuple:
        """Graded commutator ``[u, v] = uv - (-1)^(|u||v|) vu``, extended bilinearly."""
        F = self.field
        out = vec_zero(F, self.dim)
        for du, pu in self.homogeneous_parts(u).items():
            for dv, pv in self.homogeneous_parts(v).items():
                t = vec_sub(F, self.product(pu, pv),
                            vec_scale(F, F.sign(koszul_sign(du, dv)), self.product(pv, pu)))
                out = vec_add(F, out, t)
        return out

    def epsilon(self, v: Sequence):
        if self.retraction is None:
            raise ValueError("algebra has no retraction")
        F = self.field
        return F(sum(a * b for a, b in zip(self.retraction, v)))

    def degree_part(self, d: int) -> list[int]:
        return self.space.indices_in_degree(d)

    def is_augmented(self) -> bool:
        """True when the retraction is a dg algebra map killing the curvature."""
        if self.retraction is None:
            return False
        F = self.field
        n = self.dim
        for i in range(n):
            if self.epsilon(self.d(self.basis_vector(i))) != 0:
                return False
            for j in range(n):
                lhs = self.epsilon(self.mul[i][j])
                rhs = F.mul(self.retraction[i], self.retraction[j])
                if lhs != rhs:
                    return False
        return self.epsilon(self.curvature) == 0

    def is_curved(self) -> bool:
        return not vec_is_zero(self.curvature)

    def __repr__(self):
        tag = f" {self.name}" if self.name else ""
        return f"<CurvedDGA{tag} dim={self.dim} over {self.field.descriptor}>"

    def __eq__(self, other):
        return (isinstance(other, CurvedDGA) and self.space == other.space
                and self.unit == other.unit and self.mul == other.mul
                and self.diff == other.diff and self.curvature == other.curvature
                and self.retraction == other.retraction)

    def __hash__(self):
        return hash((self.space, self.unit, self.mul, self.curvature))


# axioms ---------------------------------------------------------------------


def _fmt(F, v):
    return [F.format(a) for a in v]


def check_axioms(A: CurvedDGA) -> Certificate:
    """Check grading, unit, associativity, Leibniz, ``d² = [h,-]``, ``dh = 0``."""
    F = A.field
    S = A.space
    n = A.dim
    deg = S.degrees
    names = S.names
    fails = []

    def fail(identity, witness, lhs=None, rhs=None):
        rec = {"identity": identity, "witness": list(witness)}
        if lhs is not None:
            rec["lhs"] = _fmt(F, lhs)
        if rhs is not None:
            rec["rhs"] = _fmt(F, rhs)
        fails.append(rec)

    e = [A.basis_vector(i) for i in range(n)]

    for i in range(n):
        for j in range(n):
            if not S.is_homogeneous(A.mul[i][j], deg[i] + deg[j]):
                fail("mul-degree", (names[i], names[j]), A.mul[i][j])
    for j in range(n):
        if not S.is_homogeneous(A._dcols[j], deg[j] + 1):
            fail("diff-degree", (names[j],), A._dcols[j])
    if not S.is_homogeneous(A.curvature, 2):
        fail("curvature-degree", (), A.curvature)
    if vec_is_zero(A.unit):
        fail("unit-nonzero", ())
    elif not S.is_homogeneous(A.unit, 0):
        fail("unit-degree", (), A.unit)
    if A.retraction is not None:
        if A.epsilon(A.unit) != F.one:
            fail("retraction-unit", (), [A.epsilon(A.unit)], [F.one])
        if any(a != 0 and deg[i] != 0 for i, a in enumerate(A.retraction)):
            fail("retraction-degree", ())

    for i in range(n):
        left = A.product(A.unit, e[i])
        right = A.product(e[i], A.unit)
        if left != e[i]:
            fail("unit-left", (names[i],), left, e[i])
        if right != e[i]:
            fail("unit-right", (names[i],), right, e[i])

    for i in range(n):
        for j in range(n):
            eij = A.mul[i][j]
            for k in range(n):
                lhs = A.product(eij, e[k])
                rhs = A.product(e[i], A.mul[j][k])
                if lhs != rhs:
                    fail("associativity", (names[i], names[j], names[k]), lhs, rhs)

    de = [A.d(v) for v in e]
    for i in range(n):
        for j in range(n):
            lhs = A.d(A.mul[i][j])
            rhs = vec_add(F, A.product(de[i], e[j]),
                          vec_scale(F, F.sign(parity_sign(deg[i])), A.product(e[i], de[j])))
            if lhs != rhs:
                fail("leibniz", (names[i], names[j]), lhs, rhs)

    for i in range(n):
        lhs = A.d(de[i])
        rhs = A.commutator(A.curvature, e[i])
        if lhs != rhs:
            fail("curvature", (names[i],), lhs, rhs)
    dh = A.d(A.curvature)
    if not vec_is_zero(dh):
        fail("d(h)=0", (), dh, vec_zero(F, n))
    return Certificate.from_failures(fails)


# constructions ---------------------------------------------------------------


def tensor_cdga(A: CurvedDGA, B: CurvedDGA) -> CurvedDGA:
    """``A⊗B`` with ``(a⊗b)(a'⊗b') = (-1)^(|b||a'|) aa'⊗bb'``, ``d = d⊗1 + 1⊗d``, ``h = h⊗1 + 1⊗h``."""
    if A.field != B.field:
        raise ValueError("field mismatch in tensor product")
    F = A.field
    na, nb = A.dim, B.dim
    S = tensor(A.space, B.space)
    N = na * nb
    da, db = A.degrees, B.degrees

    def idx(i, j):
        return i * nb + j

    def tens(u, v):
        out = [F.zero] * N
        for i, a in enumerate(u):
            if a:
                for j, b in enumerate(v):
                    if b:
                        out[idx(i, j)] = F.mul(a, b)
        return out

    mul = [[None] * N for _ in range(N)]
    for i in range(na):
        for j in range(nb):
            for k in range(na):
                for l in range(nb):
                    s = F.sign(koszul_sign(db[j], da[k]))
                    mul[idx(i, j)][idx(k, l)] = tuple(vec_scale(F, s, tens(A.mul[i][k], B.mul[j][l])))
    cols = []
    for i in range(na):
        for j in range(nb):
            c1 = tens(A._dcols[i], B.basis_vector(j))
            c2 = tens(A.basis_vector(i), B._dcols[j])
            cols.append(vec_add(F, c1, vec_scale(F, F.sign(parity_sign(da[i])), c2)))
    h = vec_add(F, tens(A.curvature, B.unit), tens(A.unit, B.curvature))
    ret = None
    if A.retraction is not None and B.retraction is not None:
        ret = tens(A.retraction, B.retraction)
    name = f"{A.name}⊗{B.name}" if A.name and B.name else ""
    return CurvedDGA(S, tens(A.unit, B.unit), mul, Matrix.from_columns(F, cols, N), h, ret, name=name)


def end_algebra(V: GradedSpace) -> CurvedDGA:
    """``End(V)`` with composition product, zero differential and curvature.

    Basis element ``v->w`` (index ``iv*dim + iw``) sends ``v`` to ``w``.
    """
    F = V.field
    n = V.dim
    S = hom_space(V, V)
    N = n * n
    mul = [[vec_zero(F, N) for _ in range(N)] for _ in range(N)]
    # (v->w) ∘ (v'->w') = δ(w', v) (v'->w)
    for v in range(n):
        for w in range(n):
            for v2 in range(n):
                mul[v * n + w][v2 * n + v] = unit_vector(F, N, v2 * n + w)
    unit = [F.zero] * N
    for v in range(n):
        unit[v * n + v] = F.one
    return CurvedDGA(S, unit, mul, Matrix.zeros(F, N, N), name="End")


def endo_convolution(V: GradedSpace, A: CurvedDGA) -> CurvedDGA:
    """``End(V)⊗A``: the algebra whose Maurer-Cartan elements twist ``V⊗A``."""
    if V.field != A.field:
        raise ValueError("field mismatch")
    return tensor_cdga(end_algebra(V), A)


def opposite(A: CurvedDGA) -> CurvedDGA:
    """``a·b = (-1)^(|a||b|) ba``, same differential, curvature ``-h``."""
    F = A.field
    deg = A.degrees
    n = A.dim
    mul = [[vec_scale(F, F.sign(koszul_sign(deg[i], deg[j])), A.mul[j][i]) for j in range(n)]
           for i in range(n)]
    return A.replace(mul=mul, curvature=vec_scale(F, F.sign(-1), A.curvature),
                     name=f"{A.name}^op" if A.name else "")


def unit_pivot(A: CurvedDGA) -> int:
    """Index of the first basis vector on which the unit has a nonzero coordinate."""
    for i, a in enumerate(A.unit):
        if a:
            return i
    raise ValueError("zero unit")


@dataclass(frozen=True)
class RetractionSplit:
    """Components of the structure maps on ``Ā = ker ε`` (index set ``bar_indices``).

    ``bar_basis`` lists ``ē_i = e_i - ε(e_i)·1`` for the basis vectors other
    than the unit pivot.  Scalars-valued components are the ``ε``-parts.
    """

    algebra: CurvedDGA
    epsilon: tuple
    bar_indices: tuple
    bar_space: GradedSpace
    bar_basis: tuple          # vectors in A
    m_Abar: tuple             # [i][j] -> coordinates in Ā
    m_k: tuple                # [i][j] -> scalar
    d_Abar: tuple             # [i] -> coordinates in Ā
    d_k: tuple                # [i] -> scalar
    h_Abar: tuple             # coordinates in Ā
    h_k: object               # always zero for a degree-0 retraction

    def bar_coords(self, v: Sequence) -> tuple[object, tuple]:
        return _decompose(self.algebra, self.epsilon, self.bar_basis, v)

    def reassemble(self) -> CurvedDGA:
        """Rebuild the presentation in the original basis from the five components."""
        A = self.algebra
        F = A.field
        n = A.dim
        m = len(self.bar_basis)

        def lift(scalar, coords):
            out = vec_scale(F, scalar, A.unit)
            for c, b in zip(coords, self.bar_basis):
                if c:
                    out = vec_add(F, out, vec_scale(F, c, b))
            return out

        # the basis {1} ∪ Ā in terms of the original basis, and its inverse
        new_basis = [A.unit] + list(self.bar_basis)
        inv = _inverse_columns(F, new_basis, n)

        def to_new(v):
            return [F(sum(inv[r][i] * v[i] for i in range(n))) for r in range(n)]

        # structure constants in the new basis
        new_mul = [[None] * n for _ in range(n)]
        new_mul[0][0] = lift(F.one, [F.zero] * m)
        for i in range(m):
            bi = self.bar_basis[i]
            new_mul[0][i + 1] = bi
            new_mul[i + 1][0] = bi
            for j in range(m):
                new_mul[i + 1][j + 1] = lift(self.m_k[i][j], self.m_Abar[i][j])
        new_d = [vec_zero(F, n)] + [lift(self.d_k[i], self.d_Abar[i]) for i in range(m)]
        h = lift(self.h_k, self.h_Abar)
        # convert back: e_j = Σ inv[r][j] new_r
        mul = [[None] * n for _ in range(n)]
        ecoords = [to_new(A.basis_vector(j)) for j in range(n)]
        for i in range(n):
            for j in range(n):
                acc = vec_zero(F, n)
                for r, a in enumerate(ecoords[i]):
                    if a:
                        for s, b in enumerate(ecoords[j]):
                            if b:
                                acc = vec_add(F, acc, vec_scale(F, F.mul(a, b), new_mul[r][s]))
                mul[i][j] = acc
        cols = []
        for j in range(n):
            acc = vec_zero(F, n)
            for r, a in enumerate(ecoords[j]):
                if a:
                    acc = vec_add(F, acc, vec_scale(F, a, new_d[r]))
            cols.append(acc)
        return A.replace(mul=mul, diff=Matrix.from_columns(F, cols, n), curvature=h)


def _inverse_columns(F: Field, columns: Sequence[Sequence], n: int) -> list[list]:
    P = Matrix.from_columns(F, columns, n)
    inv_cols = []
    for i in range(n):
        sol = solve_linear(P, unit_vector(F, n, i))
        if isinstance(sol, NoSolution):
            raise ValueError("basis change is singular")
        inv_cols.append(sol.particular)
    return [[inv_cols[j][r] for j in range(n)] for r in range(n)]


def _decompose(A: CurvedDGA, eps: Sequence, bar_basis: Sequence, v: Sequence):
    F = A.field
    s = F(sum(a * b for a, b in zip(eps, v)))
    rest = vec_sub(F, v, vec_scale(F, s, A.unit))
    if not bar_basis:
        if not vec_is_zero(rest):
            raise ValueError("vector not in span")
        return s, ()
    P = Matrix.from_columns(F, bar_basis, A.dim)
    sol = solve_linear(P, rest)
    if isinstance(sol, NoSolution):
        raise ValueError("ε-kernel decomposition failed")
    return s, sol.particular


def split_by_retraction(A: CurvedDGA, epsilon: Sequence | None = None) -> RetractionSplit:
    F = A.field
    eps = tuple(F(a) for a in (epsilon if epsilon is not None else A.retraction or ()))
    if len(eps) != A.dim:
        raise ValueError("a retraction vector of full length is required")
    if F(sum(a * b for a, b in zip(eps, A.unit))) != F.one:
        raise ValueError("retraction must satisfy ε(1) = 1")
    if any(a != 0 and A.space.degree(i) != 0 for i, a in enumerate(eps)):
        raise ValueError("retraction must have degree 0")
    piv = unit_pivot(A)
    idx = tuple(i for i in range(A.dim) if i != piv)
    bar_basis = tuple(vec_sub(F, A.basis_vector(i), vec_scale(F, eps[i], A.unit)) for i in idx)
    bar_space = GradedSpace(F, tuple(A.space.basis[i] for i in idx))

    def dec(v):
        return _decompose(A, eps, bar_basis, v)

    m_A, m_k = [], []
    for bi in bar_basis:
        row_A, row_k = [], []
        for bj in bar_basis:
            s, c = dec(A.product(bi, bj))
            row_A.append(tuple(c))
            row_k.append(s)
        m_A.append(tuple(row_A))
        m_k.append(tuple(row_k))
    d_A, d_k = [], []
    for bi in bar_basis:
        s, c = dec(A.d(bi))
        d_A.append(tuple(c))
        d_k.append(s)
    s, hc = dec(A.curvature)
    return RetractionSplit(A, eps, idx, bar_space, bar_basis, tuple(m_A), tuple(m_k),
                           tuple(d_A), tuple(d_k), tuple(hc), s)


# a few named algebras -----------------------------------------------------------


def ground_algebra(field: Field) -> CurvedDGA:
    """``A = k`` (so ``Ā = 0``)."""
    return CurvedDGA.build(field, [("1", 0)], "1", retraction={"1": 1}, name="k")


def truncated_polynomial(field: Field, n: int, degree: int = 0, var: str = "x") -> CurvedDGA:
    """``k[x]/x^n`` with ``|x| = degree``, augmented, zero differential."""
    names = ["1"] + [var if i == 1 else f"{var}^{i}" for i in range(1, n)]
    basis = [(nm, i * degree) for i, nm in enumerate(names)]
    products = {}
    for i in range(1, n):
        for j in range(1, n):
            products[(names[i], names[j])] = {names[i + j]: 1} if i + j < n else {}
    return CurvedDGA.build(field, basis, "1", products, retraction={"1": 1},
                           name=f"k[{var}]/{var}^{n}")


def small_example_algebra(field: Field) -> CurvedDGA:
    """``k[x]/x²`` with ``|x| = 1`` and zero differential."""
    return truncated_polynomial(field, 2, degree=1, var="x")


def involution_algebra(field: Field, retraction_y=0) -> CurvedDGA:
    """``k[y]/(y² - 1)`` with ``|y| = 0``; the retraction is not multiplicative."""
    return CurvedDGA.build(field, [("1", 0), ("y", 0)], "1", {("y", "y"): {"1": 1}},
                           retraction={"1": 1, "y": retraction_y}, name="k[y]/(y²-1)")


__all__ = [
    "CurvedDGA", "Certificate", "check_axioms", "tensor_cdga", "end_algebra",
    "endo_convolution", "opposite", "split_by_retraction", "RetractionSplit",
    "ground_algebra", "truncated_polynomial", "small_example_algebra",
    "involution_algebra", "unit_pivot",
]
