#!/usr/bin/env python3
"""
🔁 Moduły nad k[ε] (ε² = 0, k = 𝔽_p) - drugi przykład struktury Frobeniusa

Kategoria abelowa ze wszystkimi ciągami krótkimi dokładnymi. Obiekty
projektywne = injektywne = moduły wolne k[ε]^b; kategoria stabilna to
Hom modulo odwzorowania faktoryzujące się przez moduł wolny.

Postać normalna: k^a ⊕ k[ε]^b, baza (u_1..u_a, v_1, εv_1, ..., v_b, εv_b).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import NamedTuple

import numpy as np

from chain_complex import OK, Validation
from exact_linalg import (
    ExactMatrix, PresentedGroup, Ring, RingMismatch, ShapeMismatch, Subquotient, block_matrix,
    cokernel_projection, image_basis, inverse, kernel_basis, random_matrix, random_unimodular,
    rank, smith_form, solve_linear, split_surjection_witness, subquotient,
)

# ===== STAŁE KONFIGURACYJNE =====
DEFAULT_PRIME = 2       # ciało domyślne (testy wyczerpujące nad 𝔽₂)
MAX_DIM = 4             # maksymalny wymiar losowego modułu

_FREE_BLOCK = ((0, 0), (1, 0))   # ε na k[ε] w bazie (1, ε)


def default_field() -> Ring:
    return Ring.prime_field(DEFAULT_PRIME)


@dataclass(frozen=True)
class KEpsModule:
    """Przestrzeń k^dim z nilpotentnym ε (eps·eps = 0)"""

    field: Ring
    dim: int
    eps: ExactMatrix

    def __post_init__(self):
        if not self.field.is_field:
            raise ValueError("❌ Moduły k[ε] tylko nad ciałem 𝔽_p")
        if self.eps.ring != self.field:
            raise RingMismatch(f"❌ ε nad {self.eps.ring}, moduł nad {self.field}")
        if self.eps.shape != (self.dim, self.dim):
            raise ShapeMismatch(f"❌ ε ma kształt {self.eps.shape}, wymiar {self.dim}")
        if not (self.eps @ self.eps).is_zero():
            raise ValueError("❌ ε² ≠ 0")

    @classmethod
    def normal_form(cls, field: Ring, a: int, b: int) -> "KEpsModule":
        """k^a ⊕ k[ε]^b"""
        free = ExactMatrix.from_rows(field, _FREE_BLOCK)
        blocks = [ExactMatrix.zeros(field, 1, 1)] * a + [free] * b
        sizes = [1] * a + [2] * b
        grid = [[blocks[i] if i == j else None for j in range(len(sizes))] for i in range(len(sizes))]
        eps = block_matrix(field, sizes, sizes, grid) if sizes else ExactMatrix.zeros(field, 0, 0)
        return cls(field, a + 2 * b, eps)

    @classmethod
    def trivial(cls, field: Ring | None = None) -> "KEpsModule":
        """k z ε = 0"""
        return cls.normal_form(field or default_field(), 1, 0)

    @classmethod
    def free(cls, rank: int = 1, field: Ring | None = None) -> "KEpsModule":
        return cls.normal_form(field or default_field(), 0, rank)

    @classmethod
    def zero(cls, field: Ring | None = None) -> "KEpsModule":
        return cls.normal_form(field or default_field(), 0, 0)

    def identity(self) -> "KEpsHom":
        return KEpsHom(self, self, ExactMatrix.identity(self.field, self.dim))

    def __str__(self) -> str:
        d = decompose(self)
        return f"k^{d.a} ⊕ k[ε]^{d.b} nad {self.field}"


@dataclass(frozen=True)
class KEpsHom:
    """matrix: source → target z matrix·ε = ε·matrix"""

    source: KEpsModule
    target: KEpsModule
    matrix: ExactMatrix

    def __post_init__(self):
        if self.source.field != self.target.field:
            raise RingMismatch(f"❌ Homomorfizm z modułu nad {self.source.field} do {self.target.field}")
        if self.matrix.shape != (self.target.dim, self.source.dim):
            raise ShapeMismatch(f"❌ Macierz {self.matrix.shape}, oczekiwano {(self.target.dim, self.source.dim)}")
        if self.matrix @ self.source.eps != self.target.eps @ self.matrix:
            raise ValueError("❌ Macierz nie komutuje z ε")

    @property
    def field(self) -> Ring:
        return self.source.field

    def is_zero(self) -> bool:
        return self.matrix.is_zero()

    def _same_ends(self, other: "KEpsHom"):
        if self.source != other.source or self.target != other.target:
            raise ValueError("❌ Homomorfizmy o różnych źródłach lub celach")

    def __add__(self, other: "KEpsHom") -> "KEpsHom":
        self._same_ends(other)
        return KEpsHom(self.source, self.target, self.matrix + other.matrix)

    def __sub__(self, other: "KEpsHom") -> "KEpsHom":
        self._same_ends(other)
        return KEpsHom(self.source, self.target, self.matrix - other.matrix)

    def __neg__(self) -> "KEpsHom":
        return self.scale(-1)

    def scale(self, c: int) -> "KEpsHom":
        return KEpsHom(self.source, self.target, self.matrix.scale(c))

    def __matmul__(self, other: "KEpsHom") -> "KEpsHom":
        if other.target != self.source:
            raise ValueError("❌ Złożenie: cel pierwszego homomorfizmu ≠ źródło drugiego")
        return KEpsHom(other.source, self.target, self.matrix @ other.matrix)


def zero_hom(source: KEpsModule, target: KEpsModule) -> KEpsHom:
    return KEpsHom(source, target, ExactMatrix.zeros(source.field, target.dim, source.dim))


# ===== ROZKŁAD NA POSTAĆ NORMALNĄ =====

class Decomposition(NamedTuple):
    a: int
    b: int
    normal: KEpsModule
    to_normal: KEpsHom
    from_normal: KEpsHom


def _complement(sub: ExactMatrix, ambient_dim: int) -> ExactMatrix:
    """Kolumny uzupełniające bazę `sub` do bazy k^ambient_dim"""
    sf = smith_form(sub)
    return inverse(sf.u).select(cols=range(sf.rank, ambient_dim))


def decompose(m: KEpsModule) -> Decomposition:
    """m ≅ k^a ⊕ k[ε]^b, a = dim - 2·rank(ε), b = rank(ε)"""
    ring = m.field
    images = image_basis(m.eps)
    b = images.cols
    lifts = solve_linear(m.eps, images)
    kernel = kernel_basis(m.eps)
    inside = solve_linear(kernel, images)
    extra = kernel @ _complement(inside, kernel.cols)
    a = extra.cols
    columns = [extra.column(j) for j in range(a)]
    for j in range(b):
        columns += [lifts.column(j), images.column(j)]
    change = ExactMatrix.from_columns(ring, m.dim, columns)
    normal = KEpsModule.normal_form(ring, a, b)
    back = KEpsHom(normal, m, change)
    return Decomposition(a, b, normal, KEpsHom(m, normal, inverse(change)), back)


def is_free(m: KEpsModule) -> bool:
    return decompose(m).a == 0


# ===== PRZESTRZENIE HOMOMORFIZMÓW =====

def hom_space(m: KEpsModule, n: KEpsModule) -> ExactMatrix:
    """Baza Hom(m, n): kolumny = macierze spłaszczone wierszami"""
    if m.field != n.field:
        raise RingMismatch(f"❌ Hom między modułami nad {m.field} i {n.field}")
    size = n.dim * m.dim

    def commutator(values):
        x = ExactMatrix(m.field, n.dim, m.dim, tuple(values))
        return (x @ m.eps - n.eps @ x).flat()

    return kernel_basis(ExactMatrix.from_linear_function(m.field, size, size, commutator))


def hom_from_vector(m: KEpsModule, n: KEpsModule, vector) -> KEpsHom:
    values = vector.column(0) if isinstance(vector, ExactMatrix) else list(vector)
    return KEpsHom(m, n, ExactMatrix(m.field, n.dim, m.dim, tuple(values)))


def hom_to_vector(f: KEpsHom) -> ExactMatrix:
    return ExactMatrix.column_vector(f.field, f.matrix.flat())


def _homs(m: KEpsModule, n: KEpsModule) -> list[KEpsHom]:
    basis = hom_space(m, n)
    return [hom_from_vector(m, n, basis.column(j)) for j in range(basis.cols)]


# ===== CIĄGI KRÓTKIE, POKRYCIA WOLNE =====

class KEpsSes(NamedTuple):
    """K ↣ F ↠ M"""
    i: KEpsHom
    p: KEpsHom

    def check(self) -> Validation:
        if self.i.target != self.p.source:
            return Validation(False, None, "❌ Cel i ≠ źródło p")
        if not (self.p @ self.i).is_zero():
            return Validation(False, None, "❌ p·i ≠ 0")
        if rank(self.i.matrix) != self.i.source.dim:
            return Validation(False, None, "❌ i nie jest injekcją")
        if rank(self.p.matrix) != self.p.target.dim:
            return Validation(False, None, "❌ p nie jest surjekcją")
        if self.i.source.dim + self.p.target.dim != self.i.target.dim:
            return Validation(False, None, "❌ Ciąg nie jest dokładny w środku")
        return OK


def _doubled(m: KEpsModule) -> KEpsModule:
    """V ⊕ V z ε(v, w) = (0, v); wolny rangi dim V"""
    ring, d = m.field, m.dim
    eps = block_matrix(ring, [d, d], [d, d], [[None, None], [ExactMatrix.identity(ring, d), None]])
    return KEpsModule(ring, 2 * d, eps)


def free_cover(m: KEpsModule) -> KEpsSes:
    """(V, -ε) ↣ V ⊕ V ↠ m,  q(v, w) = v + ε w,  i(w) = (-ε w, w)"""
    ring, d = m.field, m.dim
    cover = _doubled(m)
    kernel = KEpsModule(ring, d, -m.eps)
    one = ExactMatrix.identity(ring, d)
    q = KEpsHom(cover, m, block_matrix(ring, [d], [d, d], [[one, m.eps]]))
    i = KEpsHom(kernel, cover, block_matrix(ring, [d, d], [d], [[-m.eps], [one]]))
    return KEpsSes(i, q)


def free_envelope(m: KEpsModule) -> KEpsSes:
    """m ↣ V ⊕ V ↠ (V, -ε),  j(v) = (ε v, v),  c(x, y) = x - ε y"""
    ring, d = m.field, m.dim
    envelope = _doubled(m)
    quotient = KEpsModule(ring, d, -m.eps)
    one = ExactMatrix.identity(ring, d)
    j = KEpsHom(m, envelope, block_matrix(ring, [d, d], [d], [[m.eps], [one]]))
    c = KEpsHom(envelope, quotient, block_matrix(ring, [d], [d, d], [[one, -m.eps]]))
    return KEpsSes(j, c)


def section(ses: KEpsSes) -> KEpsHom | None:
    """Homomorfizm s z p·s = 1 (ciąg rozszczepialny) albo None"""
    m, big = ses.p.target, ses.p.source
    basis = hom_space(m, big)
    system = ExactMatrix.from_linear_function(
        m.field, basis.cols, m.dim * m.dim,
        lambda v: (ses.p.matrix @ hom_from_vector(m, big, basis @ ExactMatrix.column_vector(m.field, v)).matrix).flat())
    solution = solve_linear(system, hom_to_vector(m.identity()))
    return None if solution is None else hom_from_vector(m, big, basis @ solution)


def kernel(f: KEpsHom) -> KEpsHom:
    """Włożenie jądra"""
    basis = kernel_basis(f.matrix)
    eps = solve_linear(basis, f.source.eps @ basis)
    return KEpsHom(KEpsModule(f.field, basis.cols, eps), f.source, basis)


def cokernel(f: KEpsHom) -> KEpsHom:
    """Rzut na kokernel"""
    proj = cokernel_projection(f.matrix)
    lift = split_surjection_witness(proj)
    eps = proj @ f.target.eps @ lift
    return KEpsHom(f.target, KEpsModule(f.field, proj.rows, eps), proj)


def twisted_extension(a: KEpsModule, c: KEpsModule, twist: ExactMatrix) -> KEpsSes:
    """a ↣ a ⊕_t c ↠ c, ε = [[ε_a, t], [0, ε_c]] przy ε_a t + t ε_c = 0"""
    ring = a.field
    eps = block_matrix(ring, [a.dim, c.dim], [a.dim, c.dim], [[a.eps, twist], [None, c.eps]])
    middle = KEpsModule(ring, a.dim + c.dim, eps)
    i = KEpsHom(a, middle, block_matrix(ring, [a.dim, c.dim], [a.dim], [[ExactMatrix.identity(ring, a.dim)], [None]]))
    p = KEpsHom(middle, c, block_matrix(ring, [c.dim], [a.dim, c.dim], [[None, ExactMatrix.identity(ring, c.dim)]]))
    return KEpsSes(i, p)


def random_extension(rng: np.random.Generator, a: KEpsModule, c: KEpsModule) -> KEpsSes:
    size = a.dim * c.dim

    def anticommutator(values):
        t = ExactMatrix(a.field, a.dim, c.dim, tuple(values))
        return (a.eps @ t + t @ c.eps).flat()

    twists = kernel_basis(ExactMatrix.from_linear_function(a.field, size, size, anticommutator))
    t = twists @ random_matrix(rng, a.field, twists.cols, 1)
    return twisted_extension(a, c, ExactMatrix(a.field, a.dim, c.dim, tuple(t.column(0))))


def random_basis_change(rng: np.random.Generator, m: KEpsModule) -> KEpsHom:
    """Izomorfizm m → m′ z ε′ = u ε u⁻¹"""
    u = random_unimodular(rng, m.field, m.dim)
    return KEpsHom(m, KEpsModule(m.field, m.dim, u @ m.eps @ inverse(u)), u)


# ===== SUMY PROSTE =====

def direct_sum(m: KEpsModule, n: KEpsModule) -> KEpsModule:
    if m.field != n.field:
        raise RingMismatch(f"❌ Suma prosta modułów nad {m.field} i {n.field}")
    eps = block_matrix(m.field, [m.dim, n.dim], [m.dim, n.dim], [[m.eps, None], [None, n.eps]])
    return KEpsModule(m.field, m.dim + n.dim, eps)


def column_hom(f: KEpsHom, g: KEpsHom) -> KEpsHom:
    """(f; g): X → Y ⊕ Z"""
    if f.source != g.source:
        raise ValueError("❌ (f; g) wymaga wspólnego źródła")
    matrix = block_matrix(f.field, [f.target.dim, g.target.dim], [f.source.dim], [[f.matrix], [g.matrix]])
    return KEpsHom(f.source, direct_sum(f.target, g.target), matrix)


def row_hom(f: KEpsHom, g: KEpsHom) -> KEpsHom:
    """(f, g): X ⊕ Y → Z"""
    if f.target != g.target:
        raise ValueError("❌ (f, g) wymaga wspólnego celu")
    matrix = block_matrix(f.field, [f.target.dim], [f.source.dim, g.source.dim], [[f.matrix, g.matrix]])
    return KEpsHom(direct_sum(f.source, g.source), f.target, matrix)


# ===== KATEGORIA STABILNA =====

@dataclass(frozen=True)
class StableHom:
    """Hom(m, n) modulo odwzorowania przez moduły wolne"""

    source: KEpsModule
    target: KEpsModule
    group: PresentedGroup
    generators: tuple[KEpsHom, ...]
    _quotient: Subquotient = field(repr=False, compare=False)

    def reduce(self, f: KEpsHom) -> tuple[int, ...]:
        if f.source != self.source or f.target != self.target:
            raise ValueError("❌ Homomorfizm spoza Hom(m, n)")
        return self._quotient.reduce(hom_to_vector(f))


def stable_hom(m: KEpsModule, n: KEpsModule) -> StableHom:
    """Przez wolne faktoryzuje się dokładnie obraz q∘(−) dla pokrycia q: F ↠ n"""
    if m.field != n.field:
        raise RingMismatch(f"❌ Hom stabilny między modułami nad {m.field} i {n.field}")
    q = free_cover(n).p
    through = [hom_to_vector(q @ phi) for phi in _homs(m, q.source)]
    ring, size = m.field, n.dim * m.dim
    boundaries = ExactMatrix.from_columns(ring, size, [v.column(0) for v in through])
    quotient = subquotient(hom_space(m, n), boundaries)
    generators = tuple(hom_from_vector(m, n, g) for g in quotient.generators)
    return StableHom(m, n, quotient.group, generators, quotient)


def factors_through_free(f: KEpsHom) -> bool:
    """Niezależny test: f = β∘j dla otoczki j: m ↣ F′"""
    j = free_envelope(f.source).i
    envelope = j.target
    basis = hom_space(envelope, f.target)
    system = ExactMatrix.from_linear_function(
        f.field, basis.cols, f.target.dim * f.source.dim,
        lambda v: (hom_from_vector(envelope, f.target,
                                   basis @ ExactMatrix.column_vector(f.field, v)).matrix @ j.matrix).flat())
    return solve_linear(system, hom_to_vector(f)) is not None


# ===== EXT¹ =====

def ext1_keps(m: KEpsModule, n: KEpsModule, presentation: str = "minimal") -> PresentedGroup:
    """
    Ext¹(m, n). "minimal": z rozkładu, Ext¹(k, n) = ker ε_n / im ε_n,
    więc wymiar = a(m)·a(n). "cover": kokernel Hom(F, n) → Hom(K, n) dla K ↣ F ↠ m.
    """
    if m.field != n.field:
        raise RingMismatch(f"❌ Ext¹ między modułami nad {m.field} i {n.field}")
    if presentation == "minimal":
        return PresentedGroup(m.field, (), decompose(m).a * decompose(n).a)
    if presentation != "cover":
        raise ValueError(f"❌ Nieznana prezentacja: {presentation}")
    ses = free_cover(m)
    k = ses.i.source
    restricted = [hom_to_vector(phi @ ses.i) for phi in _homs(ses.i.target, n)]
    boundaries = ExactMatrix.from_columns(m.field, n.dim * k.dim, [v.column(0) for v in restricted])
    return subquotient(hom_space(k, n), boundaries).group


# ===== FAKTORYZACJA I RÓWNOWAŻNOŚCI STABILNE =====

def factor_trivcof_fib(f: KEpsHom) -> tuple[KEpsHom, KEpsHom]:
    """f = p∘i,  i = (1; 0): m → m ⊕ F,  p = (f, q) dla pokrycia q: F ↠ n"""
    m = f.source
    q = free_cover(f.target).p
    i = column_hom(m.identity(), zero_hom(m, q.source))
    return i, row_hom(f, q)


def is_stable_equivalence(f: KEpsHom) -> bool:
    """f jest izomorfizmem stabilnym ⟺ jądro p z faktoryzacji jest wolne"""
    _, p = factor_trivcof_fib(f)
    return is_free(kernel(p).source)


# ===== LOSOWANIE =====

def random_module(rng: np.random.Generator, field: Ring | None = None, max_dim: int = MAX_DIM) -> KEpsModule:
    """Postać normalna w losowej bazie"""
    field = field or default_field()
    dim = int(rng.integers(0, max_dim + 1))
    b = int(rng.integers(0, dim // 2 + 1))
    return random_basis_change(rng, KEpsModule.normal_form(field, dim - 2 * b, b)).target


def random_hom(rng: np.random.Generator, m: KEpsModule, n: KEpsModule) -> KEpsHom:
    basis = hom_space(m, n)
    coeffs = random_matrix(rng, m.field, basis.cols, 1)
    return hom_from_vector(m, n, basis @ coeffs)
