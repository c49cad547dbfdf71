"""Word-length windows of tensor algebras, bar/cobar differentials, representability.

Elements of a :class:`TruncatedTensorAlgebra` are finite combinations of words
of length at most ``window``.  Each element records ``exact``: the largest
word length up to which its coefficients are known to be correct.  Words
pushed past the window are dropped, and anything they could have influenced
is excluded from ``exact``.  Identity checks compare only exact components.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field as dc_field
from typing import Iterable, Mapping, Sequence

from .cdga import Certificate, CurvedDGA, RetractionSplit, split_by_retraction, tensor_cdga
from .graded import GradedSpace, koszul_sign, parity_sign
from .mc import MCElement, enumerate_mc, is_mc
from .scalars import Matrix, rank, vec_add, vec_scale, vec_zero

Word = tuple


class TruncatedTensorAlgebra:
    """Tensor algebra on ``generators`` kept up to word length ``window``."""

    def __init__(self, generators: GradedSpace, window: int):
        if window < 1:
            raise ValueError("window must be positive")
        self.generators = generators
        self.window = window
        self.field = generators.field
        self._deg = generators.degrees

    @property
    def ngens(self) -> int:
        return self.generators.dim

    def word_degree(self, w: Word) -> int:
        return sum(self._deg[i] for i in w)

    def word_name(self, w: Word) -> str:
        return "·".join(self.generators.names[i] for i in w) if w else "1"

    def words(self, length: int) -> Iterable[Word]:
        return itertools.product(range(self.ngens), repeat=length)

    def all_words(self, max_length: int) -> list[Word]:
        return [w for n in range(max_length + 1) for w in self.words(n)]

    def element(self, terms: Mapping[Word, object] | None = None, exact: int | None = None) -> "Element":
        return Element(self, terms or {}, self.window if exact is None else exact)

    def one(self) -> "Element":
        return self.element({(): self.field.one})

    def gen(self, i: int | str) -> "Element":
        if isinstance(i, str):
            i = self.generators.index(i)
        return self.element({(i,): self.field.one})

    def zero(self) -> "Element":
        return self.element()

    def __repr__(self):
        return f"<T({', '.join(self.generators.names)}) window={self.window}>"


class Element:
    __slots__ = ("algebra", "terms", "exact")

    def __init__(self, algebra: TruncatedTensorAlgebra, terms: Mapping[Word, object], exact: int):
        F = algebra.field
        clean = {}
        for w, c in terms.items():
            if len(w) > algebra.window:
                continue
            c = F(c)
            if c != 0:
                clean[tuple(w)] = c
        self.algebra = algebra
        self.terms = clean
        self.exact = min(exact, algebra.window)

    # arithmetic -------------------------------------------------------------

    def _combine(self, other: "Element", s) -> "Element":
        F = self.algebra.field
        out = dict(self.terms)
        for w, c in other.terms.items():
            out[w] = F.add(out.get(w, F.zero), F.mul(s, c))
        return Element(self.algebra, out, min(self.exact, other.exact))

    def __add__(self, other: "Element") -> "Element":
        return self._combine(other, self.algebra.field.one)

    def __sub__(self, other: "Element") -> "Element":
        return self._combine(other, self.algebra.field.neg(self.algebra.field.one))

    def __neg__(self) -> "Element":
        return self.scale(-1)

    def scale(self, c) -> "Element":
        F = self.algebra.field
        c = F(c)
        return Element(self.algebra, {w: F.mul(c, a) for w, a in self.terms.items()}, self.exact)

    def __mul__(self, other: "Element") -> "Element":
        N = self.algebra.window
        out: dict = {}
        for u, a in self.terms.items():
            for v, b in other.terms.items():
                if len(u) + len(v) > N:
                    continue
                w = u + v
                out[w] = out.get(w, 0) + a * b
        return Element(self.algebra, out, min(self.exact, other.exact))

    def homogeneous_parts(self) -> dict[int, "Element"]:
        parts: dict[int, dict] = {}
        for w, c in self.terms.items():
            parts.setdefault(self.algebra.word_degree(w), {})[w] = c
        return {d: Element(self.algebra, t, self.exact) for d, t in parts.items()}

    def commutator(self, other: "Element") -> "Element":
        """Graded commutator, extended bilinearly over homogeneous parts."""
        out = self.algebra.element(exact=min(self.exact, other.exact))
        for du, u in self.homogeneous_parts().items():
            for dv, v in other.homogeneous_parts().items():
                out = out + u * v - (v * u).scale(koszul_sign(du, dv))
        return out

    def substitute(self, images: Sequence["Element"]) -> "Element":
        """Image under the algebra map sending generator ``i`` to ``images[i]``."""
        A = self.algebra
        out = A.element(exact=min([self.exact] + [e.exact for e in images]))
        for w, c in self.terms.items():
            term = A.one()
            for i in w:
                term = term * images[i]
            out = out + term.scale(c)
        return out

    def negate_generators(self) -> "Element":
        """Replace every generator ``t`` by ``-t``."""
        return Element(self.algebra, {w: (c if len(w) % 2 == 0 else self.algebra.field.neg(c))
                                      for w, c in self.terms.items()}, self.exact)

    # comparison ---------------------------------------------------------------

    def truncate(self, length: int) -> "Element":
        return Element(self.algebra, {w: c for w, c in self.terms.items() if len(w) <= length},
                       min(self.exact, length))

    def is_zero_upto(self, length: int | None = None) -> bool:
        L = self.exact if length is None else min(length, self.exact)
        return all(len(w) > L for w in self.terms)

    def agrees_with(self, other: "Element", length: int | None = None) -> bool:
        return (self - other).is_zero_upto(length)

    def max_length(self) -> int:
        return max((len(w) for w in self.terms), default=-1)

    def min_length(self) -> int:
        return min((len(w) for w in self.terms), default=10 ** 9)

    def is_zero(self) -> bool:
        return not self.terms

    def sorted_terms(self) -> list[tuple[Word, object]]:
        A = self.algebra
        return sorted(self.terms.items(), key=lambda t: (A.word_degree(t[0]), len(t[0]), t[0]))

    def to_json(self) -> list:
        A = self.algebra
        return [[A.word_name(w), A.field.format(c)] for w, c in self.sorted_terms()]

    def __eq__(self, other):
        return isinstance(other, Element) and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __repr__(self):
        A = self.algebra
        if not self.terms:
            return "0"
        return " + ".join(f"{A.field.format(c)}*{A.word_name(w)}" for w, c in self.sorted_terms())


class GeneratorDerivation:
    """Derivation of degree ``degree`` determined by its values on generators."""

    def __init__(self, algebra: TruncatedTensorAlgebra, values: Sequence[Element], degree: int):
        if len(values) != algebra.ngens:
            raise ValueError("one value per generator is required")
        for i, v in enumerate(values):
            for w in v.terms:
                if algebra.word_degree(w) != algebra._deg[i] + degree:
                    raise ValueError(f"value on {algebra.generators.names[i]} is not of degree "
                                     f"{algebra._deg[i] + degree}")
        self.algebra = algebra
        self.values = tuple(values)
        self.degree = degree
        self._shortest = min((v.min_length() for v in values), default=10 ** 9)

    def __call__(self, x: Element) -> Element:
        A = self.algebra
        F = A.field
        deg = A._deg
        out: dict = {}
        N = A.window
        for w, c in x.terms.items():
            prefix_deg = 0
            for pos, g in enumerate(w):
                s = c if koszul_sign(self.degree, prefix_deg) > 0 else F.neg(c)
                pre, post = w[:pos], w[pos + 1:]
                for v, a in self.values[g].terms.items():
                    nw = pre + v + post
                    if len(nw) > N:
                        continue
                    out[nw] = out.get(nw, 0) + s * a
                prefix_deg += deg[g]
        exact = x.exact
        if self._shortest == 0:
            exact -= 1
        exact = min([exact] + [v.exact for v in self.values])
        return Element(A, out, exact)

    def __add__(self, other: "GeneratorDerivation") -> "GeneratorDerivation":
        if other.degree != self.degree:
            raise ValueError("degree mismatch")
        return GeneratorDerivation(self.algebra, [a + b for a, b in zip(self.values, other.values)],
                                   self.degree)

    def on_generator(self, i: int) -> Element:
        return self.values[i]

    def square_on(self, x: Element) -> Element:
        return self(self(x))

    def table(self) -> list:
        A = self.algebra
        return [[A.generators.names[i], v.to_json()] for i, v in enumerate(self.values)]


def inner_derivation(algebra: TruncatedTensorAlgebra, b: Element) -> GeneratorDerivation:
    """``[b, -]`` for homogeneous ``b``."""
    parts = b.homogeneous_parts()
    if len(parts) > 1:
        raise ValueError("inner derivation needs a homogeneous element")
    deg = next(iter(parts)) if parts else 1
    return GeneratorDerivation(algebra, [b.commutator(algebra.gen(i)) for i in range(algebra.ngens)],
                               deg)


# bar and cobar ----------------------------------------------------------------


def _generator_space(split: RetractionSplit, prefix: str = "t") -> GradedSpace:
    """``Σ⁻¹Ā*``: one generator per basis vector of ``Ā``, of degree ``1 - |ē|``."""
    F = split.algebra.field
    return GradedSpace(F, tuple((f"{prefix}[{n}]", 1 - d) for n, d in split.bar_space.basis))


def _dual_structure(split: RetractionSplit, T: TruncatedTensorAlgebra, offset: int = 0):
    """Linear-plus-quadratic values dualising ``m_Ā, d_Ā`` (the ``f_k``), ``m_k, d_k`` (``g``),
    and the constants dualising ``h_Ā`` (the ``a_k``).

    Generator ``offset + i`` of ``T`` is dual to ``ē_i``.
    """
    F = split.algebra.field
    bdeg = split.bar_space.degrees
    m = len(bdeg)
    tdeg = [1 - d for d in bdeg]
    f = [dict() for _ in range(m)]
    g: dict = {}
    for i in range(m):
        lin = F(-parity_sign(tdeg[i]))
        for k, c in enumerate(split.d_Abar[i]):
            if c:
                w = (offset + i,)
                f[k][w] = F.add(f[k].get(w, F.zero), F.mul(lin, c))
        if split.d_k[i]:
            w = (offset + i,)
            g[w] = F.add(g.get(w, F.zero), F.mul(lin, split.d_k[i]))
        for j in range(m):
            s = F(koszul_sign(bdeg[i], tdeg[j]))
            w = (offset + i, offset + j)
            for k, c in enumerate(split.m_Abar[i][j]):
                if c:
                    f[k][w] = F.add(f[k].get(w, F.zero), F.mul(s, c))
            if split.m_k[i][j]:
                g[w] = F.add(g.get(w, F.zero), F.mul(s, split.m_k[i][j]))
    consts = [split.h_Abar[k] for k in range(m)]
    return f, g, consts


@dataclass
class BarDifferential:
    """Reduced semi-complete bar data of ``A`` relative to a retraction, on a window."""

    split: RetractionSplit
    reduced: TruncatedTensorAlgebra       # generators t_i
    xi1: GeneratorDerivation
    g: Element                             # τ-free part of ξ(τ), in ``reduced``
    curvature: Element                     # certified curvature of (reduced, ξ₁)
    curvature_substituted: Element         # -g(-t)
    full: TruncatedTensorAlgebra           # generators τ, t_i
    xi: GeneratorDerivation
    xi2: GeneratorDerivation
    scope: dict = dc_field(default_factory=dict)

    @property
    def window(self) -> int:
        return self.reduced.window

    def identity_residual(self, k: int) -> Element:
        """``ξ₁²(t_k) + (-1)^|t_k| [g, t_k]``, the uncorrected form."""
        T = self.reduced
        t = T.gen(k)
        return self.xi1(self.xi1(t)) + self.g.commutator(t).scale(parity_sign(T._deg[k]))

    def curvature_residual(self, k: int) -> Element:
        """``ξ₁²(t_k) - [H, t_k]`` with ``H`` the certified curvature."""
        T = self.reduced
        t = T.gen(k)
        return self.xi1(self.xi1(t)) - self.curvature.commutator(t)


def bar_differential(A: CurvedDGA, window: int, epsilon: Sequence | None = None) -> BarDifferential:
    """The derivation ``ξ = ξ₁ + ξ₂`` on ``T(τ, t_i)`` and its reduced part on ``T(t_i)``.

    ``ξ(t_k) = [τ, t_k] + f_k(t) + a_k`` and ``ξ(τ) = g(t) + τ²``.
    """
    if window < 2:
        raise ValueError("window must be at least 2")
    split = split_by_retraction(A, epsilon)
    gens = _generator_space(split)
    m = gens.dim
    T = TruncatedTensorAlgebra(gens, window)
    f, g, consts = _dual_structure(split, T)
    F = A.field
    vals = []
    for k in range(m):
        terms = dict(f[k])
        if consts[k]:
            terms[()] = consts[k]
        vals.append(T.element(terms))
    xi1 = GeneratorDerivation(T, vals, 1)
    g_el = T.element(g)

    full_gens = GradedSpace(F, (("τ", 1),) + gens.basis)
    TT = TruncatedTensorAlgebra(full_gens, window)
    f2, g2, _ = _dual_structure(split, TT, offset=1)
    tau = TT.gen(0)
    xi1_full, xi2_full = [TT.zero()], [TT.element(g2) + tau * tau]
    for k in range(m):
        tk = TT.gen(k + 1)
        terms = dict(f2[k])
        if consts[k]:
            terms[()] = consts[k]
        xi1_full.append(TT.element(terms))
        xi2_full.append(tau.commutator(tk))
    xi1f = GeneratorDerivation(TT, xi1_full, 1)
    xi2f = GeneratorDerivation(TT, xi2_full, 1)
    xi = xi1f + xi2f
    curvature = -g_el
    scope = {"window": window, "exact_generator_values": window,
             "exact_square_on_generators": window - (1 if any(consts) else 0)}
    return BarDifferential(split, T, xi1, g_el, curvature, (-g_el).negate_generators(),
                           TT, xi, xi2f, scope)


@dataclass
class Cobar:
    algebra: TruncatedTensorAlgebra
    differential: GeneratorDerivation
    curvature: Element
    split: RetractionSplit
    scope: dict

    @property
    def window(self) -> int:
        return self.algebra.window

    def square_certificate(self) -> Certificate:
        return square_zero_certificate(self.differential, curvature=self.curvature)


def cobar(C: CurvedDGA, window: int, epsilon: Sequence | None = None) -> Cobar:
    """``ΩC = TΣ⁻¹C̄*`` on a window, split by ``ε`` (the augmentation when present)."""
    if window < 2:
        raise ValueError("window must be at least 2 (d² is not checkable otherwise)")
    if C.dim == 1:
        split = split_by_retraction(C, epsilon)
        T = TruncatedTensorAlgebra(GradedSpace(C.field, ()), window)
        return Cobar(T, GeneratorDerivation(T, [], 1), T.zero(), split, {"window": window})
    bar = bar_differential(C, window, epsilon)
    return Cobar(bar.reduced, bar.xi1, bar.curvature, bar.split, dict(bar.scope))


def square_zero_certificate(D: GeneratorDerivation, max_length: int | None = None,
                            curvature: Element | None = None) -> Certificate:
    """Check ``D² = [H, -]`` (``H = 0`` by default) on every word up to ``max_length``.

    The default ``max_length`` keeps every output component inside the window.
    Records, per word length, whether the check was exact.
    """
    T = D.algebra
    growth = max((v.max_length() for v in D.values), default=1) - 1
    if max_length is None:
        max_length = max(T.window - 2 * max(growth, 0), 0)
    fails = []
    exact_by_length = {}
    H = curvature if curvature is not None and not curvature.is_zero() else None
    for n in range(max_length + 1):
        all_exact = True
        for w in T.words(n):
            x = T.element({w: T.field.one})
            r = D(D(x))
            if H is not None:
                r = r - H.commutator(x)
            target = n + 2 * max(growth, 0)
            if r.exact < min(target, T.window):
                all_exact = False
            if not r.is_zero_upto():
                fails.append({"identity": "d^2=[H,-]", "witness": [T.word_name(w)],
                              "residual": r.to_json()})
        exact_by_length[n] = all_exact
    return Certificate.from_failures(fails, {"window": T.window, "checked_word_lengths": max_length,
                                             "exact_by_length": exact_by_length})


def change_retraction_check(A: CurvedDGA, eps: Sequence, eps2: Sequence, window: int) -> Certificate:
    """Certify that the ``ε'``-bar is the ``ε``-bar twisted by ``b = b_{ε-ε'}``."""
    F = A.field
    B1 = bar_differential(A, window, eps)
    B2 = bar_differential(A, window, eps2)
    T = B1.reduced
    diff = [F.sub(F(a), F(b)) for a, b in zip(eps, eps2)]
    b = T.element({(k,): diff[i] for k, i in enumerate(B1.split.bar_indices) if diff[i]})
    twisted = B1.xi1 + inner_derivation(T, b) if not b.is_zero() else B1.xi1
    curv = B1.curvature + B1.xi1(b) + b * b
    L = window - 2
    fails = []
    for w in T.all_words(L):
        x = T.element({w: F.one})
        lhs = twisted(x)
        rhs = B2.xi1(x)
        if not lhs.agrees_with(rhs, L):
            fails.append({"identity": "differential", "witness": [T.word_name(w)],
                          "lhs": lhs.to_json(), "rhs": rhs.to_json()})
    if not curv.agrees_with(B2.curvature, L):
        fails.append({"identity": "curvature", "witness": [],
                      "lhs": curv.to_json(), "rhs": B2.curvature.to_json()})
    return Certificate.from_failures(fails, {"window": window, "checked_word_lengths": L,
                                             "b": b.to_json()})



# representability ----------------------------------------------------------------


def reduced_tensor_degree_one(A: CurvedDGA, C: CurvedDGA):
    """``A⊗C`` together with the degree-1 coordinates of ``Ā⊗C̄`` inside it."""
    sa = split_by_retraction(A)
    sc = split_by_retraction(C)
    AC = tensor_cdga(A, C)
    return AC, sa, sc


def _reduced_mc(A: CurvedDGA, C: CurvedDGA) -> list[MCElement]:
    """``MC(Ā, C̄)``: degree-1 ``x ∈ Ā⊗C̄`` with ``dx + x² = 0`` in ``A⊗C``."""
    F = A.field
    AC, sa, sc = reduced_tensor_degree_one(A, C)
    pairs = [(i, j) for i in range(len(sa.bar_basis)) for j in range(len(sc.bar_basis))
             if sa.bar_space.degree(i) + sc.bar_space.degree(j) == 1]
    vecs = []
    for i, j in pairs:
        u, v = sa.bar_basis[i], sc.bar_basis[j]
        vec = [F.zero] * AC.dim
        for a, ua in enumerate(u):
            if ua:
                for b, vb in enumerate(v):
                    if vb:
                        vec[a * C.dim + b] = F.mul(ua, vb)
        vecs.append(tuple(vec))
    out = []
    for coeffs in itertools.product(F.elements(), repeat=len(vecs)):
        x = vec_zero(F, AC.dim)
        for c, v in zip(coeffs, vecs):
            if c:
                x = vec_add(F, x, vec_scale(F, c, v))
        if is_mc(AC, x).ok:
            out.append(MCElement(AC, x))
    return out


def bar_points(A: CurvedDGA, B: CurvedDGA, convention: str = "curved",
               bound: int = 12) -> list[MCElement]:
    """Finite-dimensional points of the extended bar construction of ``A`` with values in ``B``.

    ``convention="curved"`` returns ``MC(A⊗B)``; ``"augmented"`` returns
    ``MC(Ā⊗B̄)`` and needs augmentations on both algebras.
    """
    if convention == "curved":
        return enumerate_mc(tensor_cdga(A, B), bound=bound)
    if convention == "augmented":
        for X in (A, B):
            if not X.is_augmented():
                raise ValueError("augmented convention needs augmented algebras")
        _, sa, sc = reduced_tensor_degree_one(A, B)
        n = sum(1 for i in range(len(sa.bar_basis)) for j in range(len(sc.bar_basis))
                if sa.bar_space.degree(i) + sc.bar_space.degree(j) == 1)
        if n > bound:
            raise ValueError(f"{n} coordinates exceed the enumeration bound {bound}")
        return _reduced_mc(A, B)
    raise ValueError(f"unknown convention {convention!r}")


@dataclass(frozen=True)
class CobarMap:
    """Algebra map ``ΩC -> A`` given by images of the generators (vectors in ``A``)."""

    images: tuple

    def as_mc_vector(self, C: CurvedDGA, A: CurvedDGA) -> tuple:
        """The element ``-Σ α_k ⊗ c_k`` of ``A⊗C`` matching this map."""
        F = A.field
        sc = split_by_retraction(C)
        x = vec_zero(F, A.dim * C.dim)
        for alpha, c in zip(self.images, sc.bar_basis):
            for a, ua in enumerate(alpha):
                if ua:
                    for b, vb in enumerate(c):
                        if vb:
                            k = a * C.dim + b
                            x = x[:k] + (F.sub(x[k], F.mul(ua, vb)),) + x[k + 1:]
        return x


def _evaluate(A: CurvedDGA, el: Element, images: Sequence[tuple]) -> tuple:
    F = A.field
    out = vec_zero(F, A.dim)
    for w, c in el.terms.items():
        v = A.unit
        for i in w:
            v = A.product(v, images[i])
        out = vec_add(F, out, vec_scale(F, c, v))
    return out


def cobar_maps(C: CurvedDGA, A: CurvedDGA, bound: int = 12) -> list[CobarMap]:
    """All augmented dg maps ``ΩC -> A``: generators go to ``Ā`` and ``d`` is respected.

    The dg condition is checked on generators only; ``d`` of a generator has
    word length at most 2 so no truncation is involved.
    """
    F = A.field
    if not F.is_finite:
        raise ValueError("enumeration needs a finite field")
    if not A.is_augmented() or not C.is_augmented():
        raise ValueError("cobar_maps needs augmented algebras")
    om = cobar(C, 2)
    T = om.algebra
    sa = split_by_retraction(A)
    choices = []
    for k in range(T.ngens):
        deg = T._deg[k]
        basis = [sa.bar_basis[i] for i in range(len(sa.bar_basis)) if sa.bar_space.degree(i) == deg]
        choices.append(basis)
    ncoords = sum(len(c) for c in choices)
    if ncoords > bound:
        raise ValueError(f"{ncoords} coordinates exceed the enumeration bound {bound}")
    per_gen = []
    for basis in choices:
        opts = []
        for coeffs in itertools.product(F.elements(), repeat=len(basis)):
            v = vec_zero(F, A.dim)
            for c, b in zip(coeffs, basis):
                if c:
                    v = vec_add(F, v, vec_scale(F, c, b))
            opts.append(v)
        per_gen.append(opts)
    out = []
    for images in itertools.product(*per_gen):
        ok = True
        for k in range(T.ngens):
            lhs = _evaluate(A, om.differential.values[k], images)
            if lhs != A.d(images[k]):
                ok = False
                break
        if ok:
            out.append(CobarMap(tuple(images)))
    return out


def representability_check(C: CurvedDGA, A: CurvedDGA, bound: int = 12) -> Certificate:
    """Match ``cobar_maps(C, A)`` with ``MC(Ā⊗C̄)`` element by element."""
    maps = cobar_maps(C, A, bound)
    points = bar_points(A, C, "augmented", bound)
    from_maps = sorted(m.as_mc_vector(C, A) for m in maps)
    from_points = sorted(tuple(x.coords) for x in points)
    fails = []
    if from_maps != from_points:
        fails.append({"identity": "bijection", "witness": [],
                      "only_maps": len(set(from_maps) - set(from_points)),
                      "only_points": len(set(from_points) - set(from_maps))})
    return Certificate.from_failures(fails, {"cobar_maps": len(maps), "bar_points": len(points),
                                             "enumeration_bound": bound})


# bimodule resolution --------------------------------------------------------------


def resolution_exactness(V: GradedSpace, max_length: int) -> Certificate:
    """Exactness of ``TV⊗V⊗TV -> TV⊗TV -> TV -> 0`` in each word length ``n ≤ max_length``.

    ``d(u⊗v⊗w) = uv⊗w - u⊗vw`` and ``m(u⊗w) = uw``.
    """
    F = V.field
    d = V.dim
    fails = []
    table = {}
    def words(L):
        return list(itertools.product(range(d), repeat=L))

    for n in range(max_length + 1):
        tv = {w: i for i, w in enumerate(words(n))}
        mid = [(a, b) for k in range(n + 1) for a in words(k) for b in words(n - k)]
        mid_index = {p: i for i, p in enumerate(mid)}
        left = [(a, v, b) for k in range(n) for a in words(k) for v in range(d)
                for b in words(n - 1 - k)]
        dcols = []
        for a, v, b in left:
            col = [F.zero] * len(mid)
            col[mid_index[(a + (v,), b)]] = F.add(col[mid_index[(a + (v,), b)]], F.one)
            j = mid_index[(a, (v,) + b)]
            col[j] = F.sub(col[j], F.one)
            dcols.append(col)
        mcols = []
        for a, b in mid:
            col = [F.zero] * len(tv)
            col[tv[a + b]] = F.one
            mcols.append(col)
        Dm = Matrix.from_columns(F, dcols, len(mid))
        Mm = Matrix.from_columns(F, mcols, len(tv))
        rd, rm = rank(Dm), rank(Mm)
        dims = (len(left), len(mid), len(tv))
        composite_zero = (Mm @ Dm).is_zero() if left else True
        exact = (rd == dims[0] and rm == dims[2] and rd + rm == dims[1] and composite_zero)
        table[n] = {"dims": list(dims), "ranks": [rd, rm], "exact": exact}
        if not exact:
            fails.append({"identity": "exactness", "witness": [n], "dims": list(dims),
                          "ranks": [rd, rm]})
    return Certificate.from_failures(fails, {"max_word_length": max_length, "table": table})


__all__ = [
    "TruncatedTensorAlgebra", "Element", "GeneratorDerivation", "inner_derivation",
    "BarDifferential", "bar_differential", "Cobar", "cobar", "square_zero_certificate",
    "change_retraction_check", "bar_points", "cobar_maps", "CobarMap", "resolution_exactness",
    "representability_check",
]
