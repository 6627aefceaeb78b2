#!/usr/bin/env python3
"""
🔗 Ograniczone kompleksy łańcuchowe wolnych modułów nad ℤ i 𝔽_p

Kompleksy, odwzorowania łańcuchowe, homotopie, przesunięcie, stożek,
suma prosta, kompleks Hom i homologia. Konwencje znaków:
  (Σ^k X)_n = X_{n-k}, różniczka mnożona przez (-1)^k
  C(f)_n = X_{n-1} ⊕ Y_n,  d(x, y) = (-d_X x, d_Y y - f x)
  Hom^k: (∂h)_n = d_Y h_n - (-1)^k h_{n-1} d_X
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Mapping, NamedTuple

import numpy as np

from exact_linalg import (
    ExactMatrix, GF2, Ring, RingMismatch, ShapeMismatch, ZZ,
    PresentedGroup, Subquotient, block_matrix, kernel_basis, random_matrix, solve_linear,
    inverse, random_unimodular, subquotient, vstack,
)

# ===== STAŁE KONFIGURACYJNE =====
MAX_RANK = 3        # maksymalna ranga w jednym stopniu (losowanie)
MAX_SPAN = 3        # maksymalna liczba stopni losowego kompleksu
ENTRY_BOUND = 3     # wpisy losowe z [-ENTRY_BOUND, ENTRY_BOUND]


class Validation(NamedTuple):
    """Werdykt sprawdzenia: (ok, stopień naruszenia, komunikat)"""
    ok: bool
    degree: int | None = None
    message: str = ""


OK = Validation(True, None, "✅ OK")


@dataclass(frozen=True)
class ChainComplex:
    """Kompleks X_min ← ... ← X_max; differentials[k] = d_{min+k}: X_{min+k} → X_{min+k-1}"""

    ring: Ring
    min_degree: int
    ranks: tuple[int, ...]
    differentials: tuple[ExactMatrix, ...]

    def __post_init__(self):
        ranks, diffs = tuple(int(r) for r in self.ranks), tuple(self.differentials)
        if len(ranks) != len(diffs):
            raise ShapeMismatch(f"❌ {len(ranks)} rang i {len(diffs)} różniczek")
        for d in diffs:
            if d.ring != self.ring:
                raise RingMismatch(f"❌ Różniczka nad {d.ring} w kompleksie nad {self.ring}")
        low = self.min_degree
        # zerowe stopnie na brzegach nie niosą informacji
        while ranks and ranks[0] == 0:
            ranks, diffs, low = ranks[1:], diffs[1:], low + 1
            if diffs:
                diffs = (ExactMatrix.zeros(self.ring, 0, ranks[0]),) + diffs[1:]
        while ranks and ranks[-1] == 0:
            ranks, diffs = ranks[:-1], diffs[:-1]
        object.__setattr__(self, "ranks", ranks)
        object.__setattr__(self, "differentials", diffs)
        object.__setattr__(self, "min_degree", low if ranks else 0)

    # ===== KONSTRUKTORY =====

    @classmethod
    def from_matrices(cls, ring: Ring, matrices: Mapping[int, ExactMatrix],
                      ranks: Mapping[int, int] | None = None) -> "ChainComplex":
        """Kompleks z różniczek {n: d_n}; rangi wynikają z kształtów"""
        known: dict[int, int] = dict(ranks or {})

        def settle(n: int, r: int):
            if known.setdefault(n, r) != r:
                raise ShapeMismatch(f"❌ Stopień {n}: sprzeczne rangi {known[n]} i {r}")

        for n, d in matrices.items():
            settle(n, d.cols)
            settle(n - 1, d.rows)
        degrees = [n for n, r in known.items() if r > 0]
        if not degrees:
            return zero_complex(ring)
        low, high = min(degrees), max(degrees)
        rank_list = tuple(known.get(n, 0) for n in range(low, high + 1))
        diffs = []
        for n in range(low, high + 1):
            d = matrices.get(n)
            if d is None:
                d = ExactMatrix.zeros(ring, known.get(n - 1, 0), known.get(n, 0))
            diffs.append(d)
        return cls(ring, low, rank_list, tuple(diffs))

    @classmethod
    def concentrated(cls, ring: Ring, degree: int = 0, rank: int = 1) -> "ChainComplex":
        return cls(ring, degree, (rank,), (ExactMatrix.zeros(ring, 0, rank),))

    # ===== DOSTĘP =====

    @property
    def max_degree(self) -> int:
        return self.min_degree + len(self.ranks) - 1

    @property
    def degrees(self) -> range:
        return range(self.min_degree, self.max_degree + 1)

    @property
    def is_zero(self) -> bool:
        return not self.ranks

    @property
    def total_rank(self) -> int:
        return sum(self.ranks)

    def rank(self, n: int) -> int:
        k = n - self.min_degree
        return self.ranks[k] if 0 <= k < len(self.ranks) else 0

    def d(self, n: int) -> ExactMatrix:
        """d_n: X_n → X_{n-1} (macierz zerowa poza zakresem)"""
        k = n - self.min_degree
        if 0 <= k < len(self.ranks):
            return self.differentials[k]
        return ExactMatrix.zeros(self.ring, self.rank(n - 1), self.rank(n))

    def validate(self) -> Validation:
        """Kształty różniczek i d_{n-1} d_n = 0 w każdym stopniu"""
        for n in self.degrees:
            d = self.d(n)
            expected = (self.rank(n - 1), self.rank(n))
            if d.shape != expected:
                return Validation(False, n, f"❌ d_{n} ma kształt {d.shape}, oczekiwano {expected}")
        for n in self.degrees:
            if n - 1 in self.degrees and not (self.d(n - 1) @ self.d(n)).is_zero():
                return Validation(False, n - 1, f"❌ d_{n - 1}·d_{n} ≠ 0 (przez X_{n - 1})")
        return OK

    def identity(self) -> "ChainMap":
        return ChainMap.from_components(self, self, {n: ExactMatrix.identity(self.ring, self.rank(n)) for n in self.degrees})

    def __str__(self) -> str:
        if self.is_zero:
            return f"0 (nad {self.ring})"
        lines = [f"Kompleks nad {self.ring}:"]
        for n in reversed(self.degrees):
            lines.append(f"  X_{n} = {self.ring}^{self.rank(n)}   d_{n} = {self.d(n)}")
        return "\n".join(lines)


def zero_complex(ring: Ring = ZZ) -> ChainComplex:
    return ChainComplex(ring, 0, (), ())


@dataclass(frozen=True)
class ChainMap:
    """f: X → Y; components[k] = f_{n} dla n = source.min_degree + k"""

    source: ChainComplex
    target: ChainComplex
    components: tuple[ExactMatrix, ...]

    def __post_init__(self):
        if self.source.ring != self.target.ring:
            raise RingMismatch(f"❌ Odwzorowanie z kompleksu nad {self.source.ring} do {self.target.ring}")
        if len(self.components) != len(self.source.ranks):
            raise ShapeMismatch(f"❌ {len(self.components)} składowych dla {len(self.source.ranks)} stopni źródła")
        for n, c in zip(self.source.degrees, self.components):
            expected = (self.target.rank(n), self.source.rank(n))
            if c.shape != expected:
                raise ShapeMismatch(f"❌ Stopień {n}: składowa {c.shape}, oczekiwano {expected}")

    @classmethod
    def from_components(cls, source: ChainComplex, target: ChainComplex,
                        components: Mapping[int, ExactMatrix]) -> "ChainMap":
        """Brakujące stopnie wypełniane zerami"""
        ring = source.ring
        for n, c in components.items():
            if n not in source.degrees and c.rows * c.cols:
                raise ShapeMismatch(f"❌ Składowa w stopniu {n} poza źródłem")
        comps = tuple(components.get(n, ExactMatrix.zeros(ring, target.rank(n), source.rank(n)))
                      for n in source.degrees)
        return cls(source, target, comps)

    @property
    def ring(self) -> Ring:
        return self.source.ring

    def component(self, n: int) -> ExactMatrix:
        if n in self.source.degrees:
            return self.components[n - self.source.min_degree]
        return ExactMatrix.zeros(self.ring, self.target.rank(n), self.source.rank(n))

    def validate(self) -> Validation:
        """d_Y f_n = f_{n-1} d_X w każdym stopniu"""
        for n in self.source.degrees:
            if self.target.d(n) @ self.component(n) != self.component(n - 1) @ self.source.d(n):
                return Validation(False, n, f"❌ d·f_{n} ≠ f_{n - 1}·d")
        return OK

    def is_zero(self) -> bool:
        return all(c.is_zero() for c in self.components)

    def _same_ends(self, other: "ChainMap"):
        if self.source != other.source or self.target != other.target:
            raise ValueError("❌ Odwzorowania o różnych źródłach lub celach")

    def __add__(self, other: "ChainMap") -> "ChainMap":
        self._same_ends(other)
        return ChainMap(self.source, self.target, tuple(a + b for a, b in zip(self.components, other.components)))

    def __sub__(self, other: "ChainMap") -> "ChainMap":
        self._same_ends(other)
        return ChainMap(self.source, self.target, tuple(a - b for a, b in zip(self.components, other.components)))

    def __neg__(self) -> "ChainMap":
        return self.scale(-1)

    def scale(self, c: int) -> "ChainMap":
        return ChainMap(self.source, self.target, tuple(m.scale(c) for m in self.components))

    def __matmul__(self, other: "ChainMap") -> "ChainMap":
        """self ∘ other"""
        if other.target != self.source:
            raise ValueError("❌ Złożenie: cel pierwszego odwzorowania ≠ źródło drugiego")
        return ChainMap.from_components(other.source, self.target,
                                        {n: self.component(n) @ other.component(n) for n in other.source.degrees})

    def __str__(self) -> str:
        parts = [f"f_{n} = {self.component(n)}" for n in self.source.degrees]
        return "ChainMap(" + ", ".join(parts) + ")"


def zero_map(source: ChainComplex, target: ChainComplex) -> ChainMap:
    return ChainMap.from_components(source, target, {})


def identity(x: ChainComplex) -> ChainMap:
    return x.identity()


@dataclass(frozen=True)
class Homotopy:
    """h: f ≃ g, h_n: X_n → Y_{n+1}, d h + h d = g - f"""

    f: ChainMap
    g: ChainMap
    components: tuple[ExactMatrix, ...]

    def __post_init__(self):
        self.f._same_ends(self.g)
        x, y = self.f.source, self.f.target
        if len(self.components) != len(x.ranks):
            raise ShapeMismatch("❌ Homotopia: liczba składowych ≠ liczba stopni źródła")
        for n, h in zip(x.degrees, self.components):
            if h.shape != (y.rank(n + 1), x.rank(n)):
                raise ShapeMismatch(f"❌ Homotopia: h_{n} ma kształt {h.shape}")

    @classmethod
    def from_components(cls, f: ChainMap, g: ChainMap, components: Mapping[int, ExactMatrix]) -> "Homotopy":
        x, y = f.source, f.target
        return cls(f, g, tuple(components.get(n, ExactMatrix.zeros(x.ring, y.rank(n + 1), x.rank(n)))
                               for n in x.degrees))

    def component(self, n: int) -> ExactMatrix:
        x, y = self.f.source, self.f.target
        if n in x.degrees:
            return self.components[n - x.min_degree]
        return ExactMatrix.zeros(x.ring, y.rank(n + 1), x.rank(n))

    def verify(self) -> Validation:
        x, y = self.f.source, self.f.target
        for n in x.degrees:
            lhs = y.d(n + 1) @ self.component(n) + self.component(n - 1) @ x.d(n)
            if lhs != self.g.component(n) - self.f.component(n):
                return Validation(False, n, f"❌ d·h_{n} + h_{n - 1}·d ≠ g_{n} - f_{n}")
        return OK


# ===== PRZESUNIĘCIE, STOŻEK, SUMA PROSTA =====

def shift(x: ChainComplex, k: int) -> ChainComplex:
    """Σ^k X: (Σ^k X)_n = X_{n-k}, różniczka razy (-1)^k"""
    sign = -1 if k % 2 else 1
    return ChainComplex(x.ring, x.min_degree + k, x.ranks, tuple(d.scale(sign) for d in x.differentials))


def shift_map(f: ChainMap, k: int) -> ChainMap:
    return ChainMap(shift(f.source, k), shift(f.target, k), f.components)


def cone(f: ChainMap) -> tuple[ChainComplex, ChainMap, ChainMap]:
    """(C(f), włożenie Y → C(f), rzut C(f) → ΣX)"""
    x, y, ring = f.source, f.target, f.ring
    degrees = set(range(x.min_degree + 1, x.max_degree + 2)) | set(y.degrees)
    if not degrees or (x.is_zero and y.is_zero):
        c = zero_complex(ring)
        return c, zero_map(y, c), zero_map(c, shift(x, 1))
    matrices = {}
    for n in range(min(degrees), max(degrees) + 1):
        matrices[n] = block_matrix(
            ring, [x.rank(n - 2), y.rank(n - 1)], [x.rank(n - 1), y.rank(n)],
            [[x.d(n - 1).scale(-1), None], [f.component(n - 1).scale(-1), y.d(n)]])
    ranks = {n: x.rank(n - 1) + y.rank(n) for n in matrices}
    c = ChainComplex.from_matrices(ring, matrices, ranks)
    sx = shift(x, 1)
    incl = ChainMap.from_components(y, c, {
        n: block_matrix(ring, [x.rank(n - 1), y.rank(n)], [y.rank(n)],
                        [[None], [ExactMatrix.identity(ring, y.rank(n))]]) for n in y.degrees})
    proj = ChainMap.from_components(c, sx, {
        n: block_matrix(ring, [x.rank(n - 1)], [x.rank(n - 1), y.rank(n)],
                        [[ExactMatrix.identity(ring, x.rank(n - 1)), None]]) for n in c.degrees})
    return c, incl, proj


def _sum_degrees(*complexes: ChainComplex) -> range:
    present = [c for c in complexes if not c.is_zero]
    if not present:
        return range(0)
    return range(min(c.min_degree for c in present), max(c.max_degree for c in present) + 1)


def direct_sum(x: ChainComplex, y: ChainComplex) -> ChainComplex:
    """X ⊕ Y stopniowo, różniczka blokowo-diagonalna"""
    if x.ring != y.ring:
        raise RingMismatch(f"❌ Suma prosta kompleksów nad {x.ring} i {y.ring}")
    ring = x.ring
    matrices = {n: block_matrix(ring, [x.rank(n - 1), y.rank(n - 1)], [x.rank(n), y.rank(n)],
                                [[x.d(n), None], [None, y.d(n)]]) for n in _sum_degrees(x, y)}
    if not matrices:
        return zero_complex(ring)
    return ChainComplex.from_matrices(ring, matrices, {n: x.rank(n) + y.rank(n) for n in matrices})


class SumMaps(NamedTuple):
    """Kanoniczne włożenia i rzuty sumy prostej"""
    total: ChainComplex
    inj_first: ChainMap
    inj_second: ChainMap
    proj_first: ChainMap
    proj_second: ChainMap


def direct_sum_maps(x: ChainComplex, y: ChainComplex) -> SumMaps:
    s = direct_sum(x, y)
    ring = x.ring

    def eye(n, c):
        return ExactMatrix.identity(ring, c.rank(n))

    inj1 = ChainMap.from_components(x, s, {n: block_matrix(ring, [x.rank(n), y.rank(n)], [x.rank(n)],
                                                           [[eye(n, x)], [None]]) for n in x.degrees})
    inj2 = ChainMap.from_components(y, s, {n: block_matrix(ring, [x.rank(n), y.rank(n)], [y.rank(n)],
                                                           [[None], [eye(n, y)]]) for n in y.degrees})
    pr1 = ChainMap.from_components(s, x, {n: block_matrix(ring, [x.rank(n)], [x.rank(n), y.rank(n)],
                                                          [[eye(n, x), None]]) for n in s.degrees})
    pr2 = ChainMap.from_components(s, y, {n: block_matrix(ring, [y.rank(n)], [x.rank(n), y.rank(n)],
                                                          [[None, eye(n, y)]]) for n in s.degrees})
    return SumMaps(s, inj1, inj2, pr1, pr2)


def direct_sum_of_maps(f: ChainMap, g: ChainMap) -> ChainMap:
    """f ⊕ g: X ⊕ X' → Y ⊕ Y'"""
    src, tgt = direct_sum(f.source, g.source), direct_sum(f.target, g.target)
    ring = f.ring
    return ChainMap.from_components(src, tgt, {
        n: block_matrix(ring, [f.target.rank(n), g.target.rank(n)], [f.source.rank(n), g.source.rank(n)],
                        [[f.component(n), None], [None, g.component(n)]]) for n in src.degrees})


def column_map(f: ChainMap, g: ChainMap) -> ChainMap:
    """(f; g): X → Y ⊕ Z"""
    if f.source != g.source:
        raise ValueError("❌ (f; g) wymaga wspólnego źródła")
    tgt = direct_sum(f.target, g.target)
    return ChainMap.from_components(f.source, tgt, {
        n: block_matrix(f.ring, [f.target.rank(n), g.target.rank(n)], [f.source.rank(n)],
                        [[f.component(n)], [g.component(n)]]) for n in f.source.degrees})


def row_map(f: ChainMap, g: ChainMap) -> ChainMap:
    """(f, g): X ⊕ Y → Z"""
    if f.target != g.target:
        raise ValueError("❌ (f, g) wymaga wspólnego celu")
    src = direct_sum(f.source, g.source)
    return ChainMap.from_components(src, f.target, {
        n: block_matrix(f.ring, [f.target.rank(n)], [f.source.rank(n), g.source.rank(n)],
                        [[f.component(n), g.component(n)]]) for n in src.degrees})


# ===== KOMPLEKS HOM =====

class HomComplex:
    """Hom(X, Y) z kodowaniem rodzin macierzy jako wektorów współrzędnych"""

    def __init__(self, source: ChainComplex, target: ChainComplex):
        if source.ring != target.ring:
            raise RingMismatch(f"❌ Hom między kompleksami nad {source.ring} i {target.ring}")
        self.source, self.target, self.ring = source, target, source.ring
        x, y = source, target
        if x.is_zero or y.is_zero:
            self.complex = zero_complex(self.ring)
            return
        low, high = y.min_degree - x.max_degree, y.max_degree - x.min_degree
        matrices = {}
        ranks = {k: self.size(k) for k in range(low - 1, high + 1)}
        for k in range(low, high + 1):
            matrices[k] = ExactMatrix.from_linear_function(
                self.ring, ranks[k], ranks[k - 1],
                lambda vec, k=k: self.encode(k - 1, self._boundary(k, self.decode(k, vec))).column(0))
        self.complex = ChainComplex.from_matrices(self.ring, matrices, ranks)

    def layout(self, k: int) -> list[tuple[int, int, int, int]]:
        """Bloki stopnia k: (n, przesunięcie, wiersze Y_{n+k}, kolumny X_n)"""
        out, offset = [], 0
        for n in self.source.degrees:
            rows, cols = self.target.rank(n + k), self.source.rank(n)
            if rows and cols:
                out.append((n, offset, rows, cols))
                offset += rows * cols
        return out

    def size(self, k: int) -> int:
        return sum(r * c for _, _, r, c in self.layout(k))

    def decode(self, k: int, vec) -> dict[int, ExactMatrix]:
        values = vec.column(0) if isinstance(vec, ExactMatrix) else list(vec)
        blocks = {}
        for n in self.source.degrees:
            blocks[n] = ExactMatrix.zeros(self.ring, self.target.rank(n + k), self.source.rank(n))
        for n, offset, rows, cols in self.layout(k):
            blocks[n] = ExactMatrix(self.ring, rows, cols, tuple(values[offset:offset + rows * cols]))
        return blocks

    def encode(self, k: int, blocks: Mapping[int, ExactMatrix]) -> ExactMatrix:
        values: list[int] = []
        for n, _, rows, cols in self.layout(k):
            values.extend(blocks[n].flat())
        return ExactMatrix.column_vector(self.ring, values)

    def _boundary(self, k: int, blocks: Mapping[int, ExactMatrix]) -> dict[int, ExactMatrix]:
        x, y = self.source, self.target
        sign = -1 if k % 2 else 1

        def h(n):
            return blocks.get(n, ExactMatrix.zeros(self.ring, y.rank(n + k), x.rank(n)))

        return {n: y.d(n + k) @ h(n) - (h(n - 1) @ x.d(n)).scale(sign) for n in x.degrees}

    def map_to_vector(self, f: ChainMap) -> ExactMatrix:
        return self.encode(0, {n: f.component(n) for n in self.source.degrees})

    def vector_to_map(self, vec) -> ChainMap:
        return ChainMap.from_components(self.source, self.target, self.decode(0, vec))

    def vector_to_homotopy(self, f: ChainMap, g: ChainMap, vec) -> Homotopy:
        return Homotopy.from_components(f, g, self.decode(1, vec))

    def boundary_matrix(self, k: int) -> ExactMatrix:
        """∂_k: Hom^k → Hom^{k-1} w układzie współrzędnych layout()"""
        if self.complex.is_zero:
            return ExactMatrix.zeros(self.ring, self.size(k - 1), self.size(k))
        return self.complex.d(k)


@lru_cache(maxsize=256)
def hom(source: ChainComplex, target: ChainComplex) -> HomComplex:
    return HomComplex(source, target)


def hom_complex(x: ChainComplex, y: ChainComplex) -> ChainComplex:
    return hom(x, y).complex


# ===== HOMOLOGIA =====

def homology_subquotient(x: ChainComplex, n: int) -> Subquotient:
    """ker d_n / im d_{n+1} z generatorami"""
    return subquotient(kernel_basis(x.d(n)), x.d(n + 1))


def homology(x: ChainComplex, n: int) -> PresentedGroup:
    return homology_subquotient(x, n).group


# ===== KOMPLEKSY WZORCOWE =====

def sphere(ring: Ring = ZZ, degree: int = 0) -> ChainComplex:
    """S_n: ranga 1 w stopniu n"""
    return ChainComplex.concentrated(ring, degree, 1)


def disk(ring: Ring = ZZ, degree: int = 1) -> ChainComplex:
    """D_n = C(1_{S_{n-1}}): R →(-1)→ R w stopniach n, n-1"""
    return cone(sphere(ring, degree - 1).identity())[0]


def k2() -> ChainComplex:
    """ℤ →2→ ℤ w stopniach 1, 0"""
    return ChainComplex.from_matrices(ZZ, {1: ExactMatrix.from_rows(ZZ, [[2]])})


def f2k0() -> ChainComplex:
    """𝔽₂ →0→ 𝔽₂ w stopniach 1, 0"""
    return ChainComplex.from_matrices(GF2, {1: ExactMatrix.zeros(GF2, 1, 1)})


def multiplication(x: ChainComplex, c: int) -> ChainMap:
    return x.identity().scale(c)


# ===== LOSOWANIE =====

def random_complex(rng: np.random.Generator, ring: Ring, max_rank: int = MAX_RANK,
                   max_span: int = MAX_SPAN, bound: int = ENTRY_BOUND,
                   min_degree: int | None = None) -> ChainComplex:
    """Losowy kompleks; d_n = (baza ker d_{n-1})·R gwarantuje d² = 0"""
    span = int(rng.integers(1, max_span + 1))
    low = int(rng.integers(-1, 2)) if min_degree is None else min_degree
    ranks = [int(r) for r in rng.integers(0, max_rank + 1, size=span)]
    matrices = {low: ExactMatrix.zeros(ring, 0, ranks[0])}
    for k in range(1, span):
        kernel = kernel_basis(matrices[low + k - 1])
        coeffs = random_matrix(rng, ring, kernel.cols, ranks[k], bound=1)
        d = kernel @ coeffs
        if not ring.is_field and rng.random() < 0.3:
            d = d.scale(int(rng.integers(1, bound + 1)))
        matrices[low + k] = d
    return ChainComplex.from_matrices(ring, matrices, {low + k: r for k, r in enumerate(ranks)})


def random_chain_map(rng: np.random.Generator, x: ChainComplex, y: ChainComplex, bound: int = 2) -> ChainMap:
    """Losowa kombinacja bazy cykli ∂₀ w Hom(X, Y)"""
    h = hom(x, y)
    cycles = kernel_basis(h.boundary_matrix(0))
    if cycles.cols == 0:
        return zero_map(x, y)
    coeffs = random_matrix(rng, x.ring, cycles.cols, 1, bound=bound)
    return h.vector_to_map(cycles @ coeffs)


def solve_chain_map(source: ChainComplex, target: ChainComplex,
                    constraint: Callable[[ChainMap], ChainMap], goal: ChainMap) -> ChainMap | None:
    """Odwzorowanie łańcuchowe u: source → target z constraint(u) = goal (constraint liniowe)"""
    ring = source.ring
    h, g = hom(source, target), hom(goal.source, goal.target)
    n_in = h.size(0)
    linear = ExactMatrix.from_linear_function(
        ring, n_in, g.size(0), lambda v: g.map_to_vector(constraint(h.vector_to_map(v))).column(0))
    system = vstack(ring, n_in, h.boundary_matrix(0), linear)
    rhs = vstack(ring, 1, ExactMatrix.zeros(ring, h.size(-1), 1), g.map_to_vector(goal))
    solution = solve_linear(system, rhs)
    return None if solution is None else h.vector_to_map(solution)


def random_isomorphism(rng: np.random.Generator, x: ChainComplex) -> ChainMap:
    """Izomorfizm X → X' o losowych składowych odwracalnych; d' = u d u⁻¹"""
    ring = x.ring
    units = {n: random_unimodular(rng, ring, x.rank(n)) for n in x.degrees}
    inverses = {n: inverse(u) for n, u in units.items()}

    def u(n):
        return units.get(n, ExactMatrix.identity(ring, 0))

    target = ChainComplex.from_matrices(
        ring, {n: u(n - 1) @ x.d(n) @ inverses[n] for n in x.degrees}, {n: x.rank(n) for n in x.degrees})
    return ChainMap.from_components(x, target, units)


def inverse_map(f: ChainMap) -> ChainMap | None:
    """Odwrotność izomorfizmu łańcuchowego (składowe odwracalne stopniowo) albo None"""
    comps = {}
    for n in sorted(set(f.source.degrees) | set(f.target.degrees)):
        if f.source.rank(n) != f.target.rank(n):
            return None
        inv = inverse(f.component(n))
        if inv is None:
            return None
        comps[n] = inv
    return ChainMap.from_components(f.target, f.source, comps)
