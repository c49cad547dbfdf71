"""Maurer-Cartan elements: verification, enumeration over F_p, twisting."""

from __future__ import annotations

import itertools
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .cdga import Certificate, CurvedDGA, tensor_cdga
from .graded import GradedSpace, parity_sign
from .scalars import Matrix, vec_add, vec_is_zero, vec_scale, vec_zero

DEFAULT_MC_BOUND = 12


def _require_degree_one(A: CurvedDGA, x: Sequence) -> tuple:
    if len(x) != A.dim:
        raise ValueError(f"element has length {len(x)}, algebra has dimension {A.dim}")
    x = tuple(A.field(a) for a in x)
    if not A.space.is_homogeneous(x, 1):
        raise ValueError("Maurer-Cartan candidates must be homogeneous of degree 1")
    return x


def mc_residual(A: CurvedDGA, x: Sequence) -> tuple:
    """``h + dx + x²``."""
    F = A.field
    return vec_add(F, vec_add(F, A.curvature, A.d(x)), A.product(x, x))


def is_mc(A: CurvedDGA, x: Sequence) -> Certificate:
    x = _require_degree_one(A, x)
    r = mc_residual(A, x)
    if vec_is_zero(r):
        return Certificate(True)
    F = A.field
    return Certificate(False, [{"identity": "h+dx+x^2=0", "witness": [F.format(a) for a in x],
                                "residual": [F.format(a) for a in r]}])


class MCElement:
    """A degree-1 element of ``host`` whose Maurer-Cartan equation has been checked."""

    __slots__ = ("host", "coords")

    def __init__(self, host: CurvedDGA, coords: Sequence):
        cert = is_mc(host, coords)
        if not cert.ok:
            raise ValueError(f"not a Maurer-Cartan element: residual {cert.failures[0]['residual']}")
        self.host = host
        self.coords = tuple(host.field(a) for a in coords)

    def __eq__(self, other):
        return isinstance(other, MCElement) and self.host.space == other.host.space and self.coords == other.coords

    def __hash__(self):
        return hash(self.coords)

    def __repr__(self):
        F = self.host.field
        terms = [f"{F.format(a)}*{n}" for a, (n, _) in zip(self.coords, self.host.space.basis) if a]
        return f"MCElement({' + '.join(terms) or '0'})"


# enumeration ----------------------------------------------------------------


def _mc_polynomial(A: CurvedDGA):
    """Residual of the MC equation as a quadratic polynomial on degree-1 coordinates."""
    ones = A.degree_part(1)
    twos = A.degree_part(2)
    p = A.field.p
    n1 = len(ones)
    h = np.array([int(A.curvature[k]) for k in twos], dtype=np.int64)
    D = np.zeros((len(twos), n1), dtype=np.int64)
    Q = np.zeros((len(twos), n1, n1), dtype=np.int64)
    for a, i in enumerate(ones):
        col = A.d(A.basis_vector(i))
        for r, k in enumerate(twos):
            D[r, a] = int(col[k])
        for b, j in enumerate(ones):
            prod = A.mul[i][j]
            for r, k in enumerate(twos):
                Q[r, a, b] = int(prod[k])
    return ones, h % p, D % p, Q % p


def _scan_block(args):
    p, n1, start, stop, h, D, Q = args
    idx = np.arange(start, stop, dtype=np.int64)
    X = np.empty((len(idx), n1), dtype=np.int64)
    rem = idx.copy()
    for c in range(n1 - 1, -1, -1):
        X[:, c] = rem % p
        rem //= p
    R = np.broadcast_to(h, (len(idx), len(h))).copy()
    if len(h):
        R += X @ D.T
        R %= p
        R += np.einsum("ci,kij,cj->ck", X, Q, X, optimize=True)
        R %= p
        ok = ~R.any(axis=1)
    else:
        ok = np.ones(len(idx), dtype=bool)
    return X[ok]


def enumerate_mc(A: CurvedDGA, bound: int = DEFAULT_MC_BOUND, jobs: int = 1,
                 block: int = 1 << 16) -> list[MCElement]:
    """All Maurer-Cartan elements of ``A`` over F_p, in lexicographic coordinate order."""
    F = A.field
    if not F.is_finite:
        raise ValueError("enumeration needs a finite field; over Q use is_mc/solve_linear "
                         "on special cases instead")
    ones, h, D, Q = _mc_polynomial(A)
    n1 = len(ones)
    if n1 > bound:
        raise ValueError(f"degree-1 part has {n1} coordinates, enumeration bound is {bound}")
    p = F.p
    total = p ** n1
    tasks = [(p, n1, s, min(s + block, total), h, D, Q) for s in range(0, total, block)]
    if jobs > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as ex:
            chunks = list(ex.map(_scan_block, tasks))
    else:
        chunks = [_scan_block(t) for t in tasks]
    rows = [tuple(int(a) for a in r) for c in chunks for r in c]
    rows.sort()
    out = []
    for r in rows:
        v = [F.zero] * A.dim
        for a, i in zip(r, ones):
            v[i] = a
        out.append(MCElement(A, v))
    return out


def degree_one_candidates(A: CurvedDGA):
    """Every degree-1 vector of ``A`` in lexicographic order (small fields only)."""
    ones = A.degree_part(1)
    F = A.field
    for r in itertools.product(F.elements(), repeat=len(ones)):
        v = [F.zero] * A.dim
        for a, i in zip(r, ones):
            v[i] = a
        yield tuple(v)


# twisting --------------------------------------------------------------------


def twist_algebra(A: CurvedDGA, b: Sequence) -> CurvedDGA:
    """``A^b``: differential ``d + [b, -]``, curvature ``h + db + b²``.  ``b`` need not be MC."""
    b = _require_degree_one(A, b)
    F = A.field
    cols = []
    for j in range(A.dim):
        e = A.basis_vector(j)
        cols.append(vec_add(F, A.d(e), A.commutator(b, e)))
    h = mc_residual(A, b)
    return A.replace(diff=Matrix.from_columns(F, cols, A.dim), curvature=h)


class LeftModule:
    """Finite-dimensional left module: ``action[k]`` is left multiplication by ``e_k``."""

    def __init__(self, algebra: CurvedDGA, space: GradedSpace, action: Sequence[Matrix],
                 diff: Matrix):
        if space.field != algebra.field:
            raise ValueError("field mismatch")
        if len(action) != algebra.dim:
            raise ValueError("one action matrix per algebra basis element is required")
        self.algebra = algebra
        self.space = space
        self.action = tuple(action)
        self.diff = diff

    @classmethod
    def regular(cls, A: CurvedDGA, y: Sequence | None = None) -> "LeftModule":
        """``A`` acting on itself from the left.

        The differential is ``m ↦ dm - (-1)^|m| m·y``; with ``y ∈ MC(A)`` its
        square is ``h·(-)``, so this is a curved module even when ``h ≠ 0``.
        ``y = None`` means ``y = 0``, which needs ``h`` central.
        """
        F = A.field
        n = A.dim
        acts = [Matrix.from_columns(F, [A.mul[k][j] for j in range(n)], n) for k in range(n)]
        if y is None:
            return cls(A, A.space, acts, A.diff)
        y = _require_degree_one(A, y)
        cols = []
        for j in range(n):
            e = A.basis_vector(j)
            s = F.sign(-parity_sign(A.space.degree(j)))
            cols.append(vec_add(F, A.d(e), vec_scale(F, s, A.product(e, y))))
        return cls(A, A.space, acts, Matrix.from_columns(F, cols, n))

    def act(self, a: Sequence, m: Sequence) -> tuple:
        F = self.algebra.field
        out = vec_zero(F, self.space.dim)
        for k, c in enumerate(a):
            if c:
                out = vec_add(F, out, vec_scale(F, c, self.action[k].apply(m)))
        return out

    def check(self) -> Certificate:
        """Grading, unit, associativity, Leibniz and ``d² = h·(-)``."""
        A = self.algebra
        F = A.field
        S = self.space
        n, m = A.dim, S.dim
        fails = []
        em = [tuple(F.one if i == j else F.zero for i in range(m)) for j in range(m)]
        for j in range(m):
            if not S.is_homogeneous(self.diff.apply(em[j]), S.degree(j) + 1):
                fails.append({"identity": "diff-degree", "witness": [S.names[j]]})
            for k in range(n):
                if not S.is_homogeneous(self.action[k].apply(em[j]), S.degree(j) + A.space.degree(k)):
                    fails.append({"identity": "action-degree", "witness": [A.space.names[k], S.names[j]]})
            if self.act(A.unit, em[j]) != em[j]:
                fails.append({"identity": "unit", "witness": [S.names[j]]})
            for a in range(n):
                ea = A.basis_vector(a)
                for b in range(n):
                    lhs = self.act(A.mul[a][b], em[j])
                    rhs = self.act(ea, self.act(A.basis_vector(b), em[j]))
                    if lhs != rhs:
                        fails.append({"identity": "associativity",
                                      "witness": [A.space.names[a], A.space.names[b], S.names[j]]})
                lhs = self.diff.apply(self.act(ea, em[j]))
                rhs = vec_add(F, self.act(A.d(ea), em[j]),
                              vec_scale(F, F.sign(parity_sign(A.space.degree(a))),
                                        self.act(ea, self.diff.apply(em[j]))))
                if lhs != rhs:
                    fails.append({"identity": "leibniz", "witness": [A.space.names[a], S.names[j]]})
            d2 = self.diff.apply(self.diff.apply(em[j]))
            if d2 != self.act(A.curvature, em[j]):
                fails.append({"identity": "curvature", "witness": [S.names[j]]})
        return Certificate.from_failures(fails)


def twist_left_module(M: LeftModule, x: MCElement | Sequence) -> LeftModule:
    """``M^[x]``: same action, differential ``d + x·(-)``, a module over ``A^x``."""
    cert = M.check()
    if not cert.ok:
        raise ValueError(f"input is not a left dg module: {cert.failures[0]}")
    A = M.algebra
    coords = x.coords if isinstance(x, MCElement) else _require_degree_one(A, x)
    F = A.field
    X = Matrix.zeros(F, M.space.dim, M.space.dim)
    for k, c in enumerate(coords):
        if c:
            X = X + M.action[k].scale(c)
    return LeftModule(twist_algebra(A, coords), M.space, M.action, M.diff + X)


# algebra maps -----------------------------------------------------------------


@dataclass(frozen=True)
class AlgebraMap:
    """A strict map of curved dg algebras given by its matrix (column j = image of e_j)."""

    source: CurvedDGA
    target: CurvedDGA
    matrix: Matrix

    def __call__(self, v: Sequence) -> tuple:
        return self.matrix.apply(v)

    def check(self) -> Certificate:
        S, T = self.source, self.target
        fails = []
        if self(S.unit) != T.unit:
            fails.append({"identity": "unit", "witness": []})
        for i in range(S.dim):
            ei = S.basis_vector(i)
            fi = self(ei)
            if not T.space.is_homogeneous(fi, S.space.degree(i)):
                fails.append({"identity": "degree", "witness": [S.space.names[i]]})
            if self(S.d(ei)) != T.d(fi):
                fails.append({"identity": "commutes-with-d", "witness": [S.space.names[i]]})
            for j in range(S.dim):
                if self(S.mul[i][j]) != T.product(fi, self(S.basis_vector(j))):
                    fails.append({"identity": "multiplicative",
                                  "witness": [S.space.names[i], S.space.names[j]]})
        if self(S.curvature) != T.curvature:
            fails.append({"identity": "curvature", "witness": []})
        return Certificate.from_failures(fails)

    @classmethod
    def identity(cls, A: CurvedDGA) -> "AlgebraMap":
        return cls(A, A, Matrix.identity(A.field, A.dim))


def tensor_left_identity(A: CurvedDGA, phi: AlgebraMap) -> AlgebraMap:
    """``1⊗φ: A⊗B -> A⊗B'`` (degree 0, so no signs)."""
    B, B2 = phi.source, phi.target
    F = A.field
    src = tensor_cdga(A, B)
    tgt = tensor_cdga(A, B2)
    cols = []
    for i in range(A.dim):
        for j in range(B.dim):
            col = [F.zero] * tgt.dim
            img = phi.matrix.column(j)
            for l, c in enumerate(img):
                if c:
                    col[i * B2.dim + l] = c
            cols.append(col)
    return AlgebraMap(src, tgt, Matrix.from_columns(F, cols, tgt.dim))


def mc_pushforward(x: MCElement, A: CurvedDGA, phi: AlgebraMap) -> MCElement:
    """``(1⊗φ)(x)`` for ``x`` in ``A⊗B``; the result is re-verified."""
    cert = phi.check()
    if not cert.ok:
        raise ValueError(f"not a strict map of curved dg algebras: {cert.failures[0]}")
    ext = tensor_left_identity(A, phi)
    if x.host.dim != ext.source.dim:
        raise ValueError("x does not live in A⊗source(φ)")
    y = ext(x.coords)
    try:
        return MCElement(ext.target, y)
    except ValueError as exc:  # pragma: no cover - would indicate a sign bug
        raise AssertionError(f"pushforward lost the Maurer-Cartan property: {exc}") from exc


__all__ = [
    "MCElement", "is_mc", "mc_residual", "enumerate_mc", "twist_algebra", "LeftModule",
    "twist_left_module", "AlgebraMap", "mc_pushforward", "tensor_left_identity",
    "degree_one_candidates", "DEFAULT_MC_BOUND",
]
