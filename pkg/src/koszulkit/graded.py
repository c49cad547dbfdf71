"""Z-graded vector spaces with named bases and homogeneous linear maps.

Conventions: ``(ΣV)^i = V^(i+1)``, so suspending lowers the degree label of a
basis vector by one; ``(V*)^i = (V^-i)*``.  Every sign in the package comes
from :func:`koszul_sign`, i.e. ``(f⊗g)(v⊗w) = (-1)^(|g||v|) f(v)⊗g(w)``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Sequence

from .scalars import Field, Matrix


def koszul_sign(a: int, b: int) -> int:
    """``(-1)^(a*b)`` as a Python int."""
    return -1 if (a * b) % 2 else 1


def parity_sign(a: int) -> int:
    return -1 if a % 2 else 1


@dataclass(frozen=True)
class GradedSpace:
    field: Field
    basis: tuple  # ((name, degree), ...)

    def __post_init__(self):
        basis = tuple((str(n), int(d)) for n, d in self.basis)
        object.__setattr__(self, "basis", basis)
        names = [n for n, _ in basis]
        if len(set(names)) != len(names):
            raise ValueError(f"basis names are not unique: {names}")
        object.__setattr__(self, "_index", {n: i for i, n in enumerate(names)})

    @property
    def dim(self) -> int:
        return len(self.basis)

    @property
    def names(self) -> list[str]:
        return [n for n, _ in self.basis]

    @property
    def degrees(self) -> list[int]:
        return [d for _, d in self.basis]

    def degree(self, i: int) -> int:
        return self.basis[i][1]

    def index(self, name: str) -> int:
        return self._index[name]

    def graded_dims(self) -> dict[int, int]:
        out: dict[int, int] = {}
        for _, d in self.basis:
            out[d] = out.get(d, 0) + 1
        return dict(sorted(out.items()))

    def indices_in_degree(self, d: int) -> list[int]:
        return [i for i, (_, e) in enumerate(self.basis) if e == d]

    def is_homogeneous(self, v: Sequence, degree: int) -> bool:
        return all(a == 0 or self.basis[i][1] == degree for i, a in enumerate(v))

    def vector_degree(self, v: Sequence) -> int | None:
        """Degree of a nonzero homogeneous vector, None for zero; raises if inhomogeneous."""
        degs = {self.basis[i][1] for i, a in enumerate(v) if a != 0}
        if not degs:
            return None
        if len(degs) > 1:
            raise ValueError(f"vector is not homogeneous (degrees {sorted(degs)})")
        return degs.pop()

    def __repr__(self):
        body = ", ".join(f"{n}:{d}" for n, d in self.basis)
        return f"GradedSpace[{self.field.descriptor}]({body})"


def ground(field: Field, name: str = "1") -> GradedSpace:
    return GradedSpace(field, ((name, 0),))


_SUSP = re.compile(r"^Σ(-?\d+)\((.*)\)$")


def _shift_name(name: str, n: int) -> str:
    m = _SUSP.match(name)
    if m:
        n += int(m.group(1))
        name = m.group(2)
    return name if n == 0 else f"Σ{n}({name})"


def suspend(V: GradedSpace, n: int = 1) -> GradedSpace:
    """``Σ^n V`` with ``(Σ^n V)^i = V^(i+n)``."""
    if n == 0:
        return V
    return GradedSpace(V.field, tuple((_shift_name(name, n), d - n) for name, d in V.basis))


def dual(V: GradedSpace) -> GradedSpace:
    """Dual basis in negated degrees, sorted by (degree, original name)."""
    entries = sorted(((-d, name) for name, d in V.basis))
    return GradedSpace(V.field, tuple((f"{name}*", d) for d, name in entries))


def direct_sum(*spaces: GradedSpace, tags: Sequence[str] | None = None) -> GradedSpace:
    if not spaces:
        raise ValueError("empty direct sum")
    F = spaces[0].field
    tags = tags or [str(i) for i in range(len(spaces))]
    basis = []
    for tag, S in zip(tags, spaces):
        if S.field != F:
            raise ValueError("field mismatch")
        basis.extend((f"{tag}:{n}", d) for n, d in S.basis)
    return GradedSpace(F, tuple(basis))


def tensor(V: GradedSpace, W: GradedSpace) -> GradedSpace:
    if V.field != W.field:
        raise ValueError("field mismatch in tensor product")
    return GradedSpace(V.field, tuple((f"{v}⊗{w}", dv + dw)
                                      for v, dv in V.basis for w, dw in W.basis))


def tensor_index(V: GradedSpace, W: GradedSpace, i: int, j: int) -> int:
    return i * W.dim + j


def hom_space(V: GradedSpace, W: GradedSpace) -> GradedSpace:
    """Elementary maps ``v -> w`` of degree ``|w| - |v|``, ordered by (v, w)."""
    if V.field != W.field:
        raise ValueError("field mismatch in hom space")
    return GradedSpace(V.field, tuple((f"{v}->{w}", dw - dv)
                                      for v, dv in V.basis for w, dw in W.basis))


@dataclass(frozen=True)
class GradedMap:
    """Homogeneous linear map; column ``j`` of ``matrix`` is the image of basis vector ``j``."""

    source: GradedSpace
    target: GradedSpace
    degree: int
    matrix: Matrix

    def __post_init__(self):
        m = self.matrix
        if (m.rows, m.cols) != (self.target.dim, self.source.dim):
            raise ValueError("matrix shape does not match source/target dimensions")
        for j, (_, dj) in enumerate(self.source.basis):
            for i, (_, di) in enumerate(self.target.basis):
                if m[i, j] != 0 and di != dj + self.degree:
                    raise ValueError(
                        f"map of degree {self.degree} sends {self.source.basis[j][0]} "
                        f"(deg {dj}) to {self.target.basis[i][0]} (deg {di})")

    @classmethod
    def zero(cls, source: GradedSpace, target: GradedSpace, degree: int = 0) -> "GradedMap":
        return cls(source, target, degree, Matrix.zeros(source.field, target.dim, source.dim))

    @classmethod
    def identity(cls, V: GradedSpace) -> "GradedMap":
        return cls(V, V, 0, Matrix.identity(V.field, V.dim))

    @property
    def field(self) -> Field:
        return self.source.field

    def __call__(self, v: Sequence) -> tuple:
        return self.matrix.apply(v)

    def block(self, d: int) -> Matrix:
        """The component ``source^d -> target^(d + degree)``."""
        rows = self.target.indices_in_degree(d + self.degree)
        cols = self.source.indices_in_degree(d)
        return self.matrix.submatrix(rows, cols)

    def compose(self, other: "GradedMap") -> "GradedMap":
        """``self ∘ other``."""
        if other.target != self.source:
            raise ValueError("maps are not composable")
        return GradedMap(other.source, self.target, self.degree + other.degree,
                         self.matrix @ other.matrix)

    def __add__(self, other: "GradedMap") -> "GradedMap":
        if (self.source, self.target, self.degree) != (other.source, other.target, other.degree):
            raise ValueError("cannot add maps with different shapes or degrees")
        return GradedMap(self.source, self.target, self.degree, self.matrix + other.matrix)

    def scale(self, c) -> "GradedMap":
        return GradedMap(self.source, self.target, self.degree, self.matrix.scale(c))


def koszul_apply(f: GradedMap, g: GradedMap) -> GradedMap:
    """``f⊗g`` on ``source(f)⊗source(g)`` with ``(f⊗g)(v⊗w) = (-1)^(|g||v|) f(v)⊗g(w)``."""
    if f.field != g.field:
        raise ValueError("field mismatch")
    F = f.field
    S = tensor(f.source, g.source)
    T = tensor(f.target, g.target)
    n_t2 = g.target.dim
    cols = []
    for i, (_, dv) in enumerate(f.source.basis):
        fv = f.matrix.column(i)
        s = F.sign(koszul_sign(g.degree, dv))
        for j in range(g.source.dim):
            gw = g.matrix.column(j)
            col = [F.zero] * T.dim
            for a, fa in enumerate(fv):
                if not fa:
                    continue
                c = F.mul(s, fa)
                for b, gb in enumerate(gw):
                    if gb:
                        col[a * n_t2 + b] = F.mul(c, gb)
            cols.append(col)
    return GradedMap(S, T, f.degree + g.degree, Matrix.from_columns(F, cols, T.dim))


__all__ = [
    "GradedSpace", "GradedMap", "koszul_sign", "parity_sign", "suspend", "dual", "tensor",
    "tensor_index", "hom_space", "koszul_apply", "direct_sum", "ground",
]
