"""Exact scalars over Q and F_p, and the dense linear algebra built on them.

Field elements are plain Python values: ``int`` in ``range(p)`` for a prime
field and :class:`fractions.Fraction` for the rationals.  Every routine takes
the field explicitly, so no element ever has to know which field it lives in.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, Sequence


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    i = 2
    while i * i <= p:
        if p % i == 0:
            return False
        i += 1
    return True


class Field:
    """The ground field: ``Field()`` is Q, ``Field(p)`` is F_p."""

    __slots__ = ("p",)

    def __init__(self, p: int | None = None):
        if p is not None:
            p = int(p)
            if not _is_prime(p):
                raise ValueError(f"{p} is not prime")
        object.__setattr__(self, "p", p)

    def __setattr__(self, name, value):
        raise AttributeError("Field is immutable")

    def __reduce__(self):
        return (Field, (self.p,))

    @classmethod
    def rationals(cls) -> "Field":
        return cls(None)

    @classmethod
    def prime(cls, p: int) -> "Field":
        return cls(p)

    @property
    def is_finite(self) -> bool:
        return self.p is not None

    @property
    def characteristic(self) -> int:
        return 0 if self.p is None else self.p

    def __eq__(self, other):
        return isinstance(other, Field) and other.p == self.p

    def __hash__(self):
        return hash(("Field", self.p))

    def __repr__(self):
        return "Field(Q)" if self.p is None else f"Field(F_{self.p})"

    @property
    def descriptor(self) -> str:
        return "Q" if self.p is None else f"F{self.p}"

    @classmethod
    def from_descriptor(cls, text: str) -> "Field":
        text = str(text).strip()
        if text in ("Q", "QQ", "rationals"):
            return cls(None)
        if text[:1] in ("F", "p"):
            text = text[1:].lstrip("_")
        return cls(int(text))

    # arithmetic -----------------------------------------------------------

    def __call__(self, value) -> int | Fraction:
        """Coerce ``value`` (int, Fraction or string like ``"2/3"``) into the field."""
        if isinstance(value, str):
            value = Fraction(value.strip())
        if self.p is None:
            return Fraction(value)
        if isinstance(value, Fraction):
            if value.denominator == 1:
                return int(value.numerator) % self.p
            return (value.numerator % self.p) * self.inv(value.denominator % self.p) % self.p
        return int(value) % self.p

    @property
    def zero(self):
        return 0 if self.p is not None else Fraction(0)

    @property
    def one(self):
        return 1 if self.p is not None else Fraction(1)

    def add(self, a, b):
        return (a + b) % self.p if self.p is not None else a + b

    def sub(self, a, b):
        return (a - b) % self.p if self.p is not None else a - b

    def mul(self, a, b):
        return (a * b) % self.p if self.p is not None else a * b

    def neg(self, a):
        return (-a) % self.p if self.p is not None else -a

    def inv(self, a):
        if self.p is None:
            if a == 0:
                raise ZeroDivisionError("inverse of zero")
            return 1 / Fraction(a)
        a %= self.p
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        # extended Euclid
        r0, r1, s0, s1 = self.p, a, 0, 1
        while r1:
            q = r0 // r1
            r0, r1 = r1, r0 - q * r1
            s0, s1 = s1, s0 - q * s1
        return s0 % self.p

    def inv_fermat(self, a):
        if self.p is None:
            raise ValueError("Fermat inverse only exists over F_p")
        return pow(a % self.p, self.p - 2, self.p)

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def sign(self, s: int):
        """The image of ``+1`` or ``-1`` in the field."""
        return self.one if s > 0 else self.neg(self.one)

    def elements(self) -> list[int]:
        if self.p is None:
            raise ValueError("Q is not enumerable")
        return list(range(self.p))

    def format(self, a) -> str:
        if self.p is None:
            a = Fraction(a)
            return str(a.numerator) if a.denominator == 1 else f"{a.numerator}/{a.denominator}"
        return str(int(a))


QQ = Field(None)


def GF(p: int) -> Field:
    return Field(p)


# vectors ------------------------------------------------------------------


def vec_zero(field: Field, n: int) -> tuple:
    return (field.zero,) * n


def vec_add(field: Field, u: Sequence, v: Sequence) -> tuple:
    return tuple(field.add(a, b) for a, b in zip(u, v))


def vec_sub(field: Field, u: Sequence, v: Sequence) -> tuple:
    return tuple(field.sub(a, b) for a, b in zip(u, v))


def vec_scale(field: Field, c, u: Sequence) -> tuple:
    return tuple(field.mul(c, a) for a in u)


def vec_is_zero(u: Iterable) -> bool:
    return all(a == 0 for a in u)


def unit_vector(field: Field, n: int, i: int) -> tuple:
    return tuple(field.one if j == i else field.zero for j in range(n))


# matrices -----------------------------------------------------------------


@dataclass(frozen=True)
class Matrix:
    """Dense row-major matrix over a field."""

    field: Field
    rows: int
    cols: int
    entries: tuple

    def __post_init__(self):
        if self.rows < 0 or self.cols < 0:
            raise ValueError("negative matrix shape")
        if len(self.entries) != self.rows * self.cols:
            raise ValueError(
                f"entries has length {len(self.entries)}, expected {self.rows * self.cols}"
            )

    @classmethod
    def from_rows(cls, field: Field, rows: Sequence[Sequence], cols: int | None = None) -> "Matrix":
        rows = [list(r) for r in rows]
        if cols is None:
            cols = len(rows[0]) if rows else 0
        for r in rows:
            if len(r) != cols:
                raise ValueError("ragged rows")
        return cls(field, len(rows), cols, tuple(field(a) for r in rows for a in r))

    @classmethod
    def from_columns(cls, field: Field, columns: Sequence[Sequence], rows: int) -> "Matrix":
        cols = len(columns)
        data = [[field.zero] * cols for _ in range(rows)]
        for j, c in enumerate(columns):
            if len(c) != rows:
                raise ValueError("column length mismatch")
            for i, a in enumerate(c):
                data[i][j] = field(a)
        return cls.from_rows(field, data, cols)

    @classmethod
    def zeros(cls, field: Field, rows: int, cols: int) -> "Matrix":
        return cls(field, rows, cols, (field.zero,) * (rows * cols))

    @classmethod
    def identity(cls, field: Field, n: int) -> "Matrix":
        return cls(field, n, n, tuple(field.one if i == j else field.zero
                                      for i in range(n) for j in range(n)))

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> tuple:
        return self.entries[i * self.cols:(i + 1) * self.cols]

    def column(self, j: int) -> tuple:
        return tuple(self.entries[i * self.cols + j] for i in range(self.rows))

    def to_rows(self) -> list[list]:
        return [list(self.row(i)) for i in range(self.rows)]

    def transpose(self) -> "Matrix":
        return Matrix(self.field, self.cols, self.rows,
                      tuple(self[i, j] for j in range(self.cols) for i in range(self.rows)))

    def apply(self, v: Sequence) -> tuple:
        if len(v) != self.cols:
            raise ValueError("dimension mismatch")
        F = self.field
        out = []
        for i in range(self.rows):
            acc = F.zero
            base = i * self.cols
            for j, a in enumerate(v):
                if a:
                    e = self.entries[base + j]
                    if e:
                        acc = acc + e * a
            out.append(F(acc) if F.p is not None else acc)
        return tuple(out)

    def __matmul__(self, other: "Matrix") -> "Matrix":
        if self.cols != other.rows:
            raise ValueError("shape mismatch in product")
        F = self.field
        ocols = [other.column(j) for j in range(other.cols)]
        data = []
        for i in range(self.rows):
            r = self.row(i)
            nz = [(k, a) for k, a in enumerate(r) if a]
            for c in ocols:
                acc = 0
                for k, a in nz:
                    b = c[k]
                    if b:
                        acc += a * b
                data.append(F(acc))
        return Matrix(F, self.rows, other.cols, tuple(data))

    def __add__(self, other: "Matrix") -> "Matrix":
        self._same_shape(other)
        return Matrix(self.field, self.rows, self.cols, vec_add(self.field, self.entries, other.entries))

    def __sub__(self, other: "Matrix") -> "Matrix":
        self._same_shape(other)
        return Matrix(self.field, self.rows, self.cols, vec_sub(self.field, self.entries, other.entries))

    def scale(self, c) -> "Matrix":
        return Matrix(self.field, self.rows, self.cols, vec_scale(self.field, self.field(c), self.entries))

    def is_zero(self) -> bool:
        return vec_is_zero(self.entries)

    def _same_shape(self, other):
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ValueError("shape mismatch")

    def submatrix(self, rows: Sequence[int], cols: Sequence[int]) -> "Matrix":
        return Matrix(self.field, len(rows), len(cols),
                      tuple(self[i, j] for i in rows for j in cols))

    def __repr__(self):
        body = "; ".join(" ".join(self.field.format(a) for a in self.row(i)) for i in range(self.rows))
        return f"Matrix({self.rows}x{self.cols} over {self.field.descriptor}: [{body}])"


def rref(m: Matrix) -> tuple[list[list], list[int]]:
    """Reduced row echelon form and pivot columns.

    Pivots are the first nonzero entry scanning columns left to right and
    rows top to bottom, so the output is reproducible bit for bit.
    """
    F = m.field
    a = m.to_rows()
    pivots: list[int] = []
    r = 0
    for c in range(m.cols):
        piv = next((i for i in range(r, m.rows) if a[i][c] != 0), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        inv = F.inv(a[r][c])
        a[r] = [F.mul(inv, x) for x in a[r]]
        for i in range(m.rows):
            if i != r and a[i][c] != 0:
                f = a[i][c]
                ar = a[r]
                a[i] = [F.sub(x, F.mul(f, y)) if y else x for x, y in zip(a[i], ar)]
        pivots.append(c)
        r += 1
        if r == m.rows:
            break
    return a, pivots


def rank(m: Matrix) -> int:
    if m.rows == 0 or m.cols == 0:
        return 0
    if m.field.p is not None:
        return _rank_mod_p(m)
    return len(rref(m)[1])


def _rank_mod_p(m: Matrix) -> int:
    p = m.field.p
    a = [list(m.row(i)) for i in range(m.rows)]
    r = 0
    ncols = m.cols
    for c in range(ncols):
        piv = None
        for i in range(r, len(a)):
            if a[i][c]:
                piv = i
                break
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        inv = pow(a[r][c], p - 2, p)
        ar = [(x * inv) % p for x in a[r]]
        a[r] = ar
        for i in range(r + 1, len(a)):
            f = a[i][c]
            if f:
                a[i] = [(x - f * y) % p for x, y in zip(a[i], ar)]
        r += 1
        if r == len(a):
            break
    return r


def kernel_basis(m: Matrix) -> list[tuple]:
    """Basis of the null space, one vector per free column in increasing order.

    Each vector has a 1 in its free coordinate and 0 in the other free
    coordinates, which pins the basis down canonically.
    """
    F = m.field
    if m.rows == 0:
        return [unit_vector(F, m.cols, j) for j in range(m.cols)]
    red, pivots = rref(m)
    pivset = set(pivots)
    basis = []
    for free in range(m.cols):
        if free in pivset:
            continue
        v = [F.zero] * m.cols
        v[free] = F.one
        for row, pc in enumerate(pivots):
            v[pc] = F.neg(red[row][free])
        basis.append(tuple(v))
    return basis


class NoSolution:
    """The linear system is inconsistent."""

    def __repr__(self):
        return "NoSolution()"

    def __eq__(self, other):
        return isinstance(other, NoSolution)

    def __hash__(self):
        return hash("NoSolution")


@dataclass(frozen=True)
class Affine:
    """Solution set ``particular + span(kernel)``."""

    particular: tuple
    kernel: tuple

    def __iter__(self) -> Iterator:
        yield self.particular
        yield self.kernel


def solve_linear(m: Matrix, b: Sequence) -> NoSolution | Affine:
    F = m.field
    if len(b) != m.rows:
        raise ValueError(f"right-hand side has length {len(b)}, matrix has {m.rows} rows")
    aug = Matrix.from_rows(F, [list(m.row(i)) + [b[i]] for i in range(m.rows)], m.cols + 1)
    red, pivots = rref(aug)
    if m.cols in pivots:
        return NoSolution()
    x = [F.zero] * m.cols
    for row, pc in enumerate(pivots):
        x[pc] = red[row][m.cols]
    return Affine(tuple(x), tuple(kernel_basis(m)))


def in_span(field: Field, vectors: Sequence[Sequence], v: Sequence) -> bool:
    if not vectors:
        return vec_is_zero(v)
    m = Matrix.from_columns(field, vectors, len(v))
    return not isinstance(solve_linear(m, v), NoSolution)


__all__ = [
    "Field", "QQ", "GF", "Matrix", "rref", "rank", "kernel_basis", "solve_linear",
    "NoSolution", "Affine", "in_span", "vec_add", "vec_sub", "vec_scale", "vec_zero",
    "vec_is_zero", "unit_vector",
]
