#!/usr/bin/env python3
"""
🧮 Dokładna algebra liniowa nad ℤ i 𝔽_p

Macierze o dokładnych wpisach na sympy DomainMatrix (dziedziny ZZ i GF(p)),
postać normalna Smitha z macierzami przejścia (sympy normalforms),
rozwiązywanie układów, jądra, obrazy i kokernele. Wszystkie pozostałe moduły
liczą przez ten plik.

Konwencja: SmithForm spełnia u·a·v = diag(d), d₁ | d₂ | ..., zera na końcu.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property, lru_cache
from typing import Callable, Iterable, Sequence

import numpy as np
from sympy import GF
from sympy import ZZ as SYMPY_ZZ
from sympy import Matrix as SympyMatrix
from sympy import isprime
from sympy.polys.matrices import DomainMatrix
from sympy.polys.matrices.exceptions import DMNonInvertibleMatrixError
from sympy.polys.matrices.normalforms import smith_normal_decomp
from sympy import isprime


class RingMismatch(ValueError):
    """Argumenty nad różnymi pierścieniami współczynników"""


class ShapeMismatch(ValueError):
    """Niezgodne wymiary macierzy"""


@dataclass(frozen=True)
class Ring:
    """Pierścień współczynników: ℤ (p=None) albo ciało 𝔽_p"""

    p: int | None = None

    def __post_init__(self):
        if self.p is not None and (int(self.p) < 2 or not isprime(int(self.p))):
            raise ValueError(f"❌ {self.p} nie jest liczbą pierwszą - brak ciała F_p")

    @classmethod
    def integers(cls) -> "Ring":
        return cls(None)

    @classmethod
    def prime_field(cls, p: int) -> "Ring":
        return cls(int(p))

    @classmethod
    def parse(cls, text: str) -> "Ring":
        """Czyta opis pierścienia: 'Z', 'F_2', 'F2', 'GF(3)'"""
        t = text.strip().upper().replace("GF(", "F_").replace(")", "")
        if t in ("Z", "ZZ"):
            return cls.integers()
        if t.startswith("F"):
            digits = t[1:].lstrip("_")
            if digits.isdigit():
                return cls.prime_field(int(digits))
        raise ValueError(f"❌ Nieznany pierścień: {text!r} (oczekiwano Z albo F_p)")

    @property
    def is_field(self) -> bool:
        return self.p is not None

    @property
    def name(self) -> str:
        return "Z" if self.p is None else f"F_{self.p}"

    @property
    def domain(self):
        """Dziedzina sympy: ZZ albo GF(p)"""
        return _sympy_domain(self.p)

    def reduce(self, x) -> int:
        x = int(x)
        return x if self.p is None else x % self.p

    def is_unit(self, x) -> bool:
        x = self.reduce(x)
        return x in (1, -1) if self.p is None else x != 0

    def inverse(self, x) -> int:
        x = self.reduce(x)
        if self.p is None:
            if x in (1, -1):
                return x
            raise ValueError(f"❌ {x} nie jest odwracalne w Z")
        if x == 0:
            raise ZeroDivisionError("dzielenie przez zero w F_p")
        return pow(x, -1, self.p)

    def __str__(self) -> str:
        return self.name


ZZ = Ring.integers()
GF2 = Ring.prime_field(2)


@lru_cache(maxsize=None)
def _sympy_domain(p: int | None):
    return SYMPY_ZZ if p is None else GF(p)


def _check_same_ring(*rings: Ring) -> Ring:
    first = rings[0]
    for r in rings[1:]:
        if r != first:
            raise RingMismatch(f"❌ Różne pierścienie: {first} i {r}")
    return first


@dataclass(frozen=True)
class ExactMatrix:
    """Macierz o dokładnych wpisach; rachunek idzie przez `rep` (sympy DomainMatrix)

    Wpisy trzymane kanonicznie (int, nad 𝔽_p w zakresie 0..p-1), więc
    równość i hash nie zależą od reprezentacji elementów dziedziny.
    """

    ring: Ring
    rows: int
    cols: int
    entries: tuple[int, ...]

    def __post_init__(self):
        if self.rows < 0 or self.cols < 0:
            raise ShapeMismatch(f"❌ Ujemny wymiar macierzy {self.rows}x{self.cols}")
        if len(self.entries) != self.rows * self.cols:
            raise ShapeMismatch(
                f"❌ {len(self.entries)} wpisów nie pasuje do kształtu {self.rows}x{self.cols}"
            )
        object.__setattr__(self, "entries", tuple(self.ring.reduce(e) for e in self.entries))

    @cached_property
    def rep(self) -> DomainMatrix:
        domain = self.ring.domain
        return DomainMatrix.from_list_flat([domain(e) for e in self.entries], self.shape, domain)

    @property
    def is_empty(self) -> bool:
        return self.rows == 0 or self.cols == 0

    # ===== KONSTRUKTORY =====

    @classmethod
    def from_domain(cls, ring: Ring, dm: DomainMatrix) -> "ExactMatrix":
        rows, cols = dm.shape
        m = cls(ring, rows, cols, tuple(int(x) for x in dm.to_list_flat()))
        m.__dict__["rep"] = dm
        return m

    @classmethod
    def from_rows(cls, ring: Ring, data: Sequence[Sequence[int]], cols: int | None = None) -> "ExactMatrix":
        data = [list(r) for r in data]
        if cols is None:
            cols = len(data[0]) if data else 0
        for i, r in enumerate(data):
            if len(r) != cols:
                raise ShapeMismatch(f"❌ Wiersz {i} ma {len(r)} wpisów, oczekiwano {cols}")
        return cls(ring, len(data), cols, tuple(e for r in data for e in r))

    @classmethod
    def from_columns(cls, ring: Ring, rows: int, columns: Sequence[Sequence[int]]) -> "ExactMatrix":
        for j, c in enumerate(columns):
            if len(c) != rows:
                raise ShapeMismatch(f"❌ Kolumna {j} ma {len(c)} wpisów, oczekiwano {rows}")
        return cls.from_rows(ring, [[c[i] for c in columns] for i in range(rows)], cols=len(columns))

    @classmethod
    def zeros(cls, ring: Ring, rows: int, cols: int) -> "ExactMatrix":
        return cls(ring, rows, cols, (0,) * (rows * cols))

    @classmethod
    def identity(cls, ring: Ring, n: int) -> "ExactMatrix":
        return cls.diagonal(ring, n, n, [1] * n)

    @classmethod
    def diagonal(cls, ring: Ring, rows: int, cols: int, values: Sequence[int]) -> "ExactMatrix":
        """Macierz rows x cols z `values` na przekątnej"""
        entries = [0] * (rows * cols)
        for k, x in enumerate(values):
            entries[k * cols + k] = x
        return cls(ring, rows, cols, tuple(entries))

    @classmethod
    def scalar(cls, ring: Ring, value: int) -> "ExactMatrix":
        return cls(ring, 1, 1, (value,))

    @classmethod
    def from_linear_function(
        cls, ring: Ring, n_in: int, n_out: int, fn: Callable[[list[int]], Sequence[int]]
    ) -> "ExactMatrix":
        """Macierz odwzorowania liniowego zadanego funkcją na wektorach bazowych"""
        columns = []
        for j in range(n_in):
            basis = [0] * n_in
            basis[j] = 1
            image = list(fn(basis))
            if len(image) != n_out:
                raise ShapeMismatch(f"❌ Obraz wektora bazowego {j} ma długość {len(image)}, oczekiwano {n_out}")
            columns.append(image)
        return cls.from_columns(ring, n_out, columns)

    @classmethod
    def column_vector(cls, ring: Ring, values: Sequence[int]) -> "ExactMatrix":
        return cls(ring, len(values), 1, tuple(values))

    # ===== DOSTĘP =====

    @property
    def shape(self) -> tuple[int, int]:
        return self.rows, self.cols

    def __getitem__(self, ij: tuple[int, int]) -> int:
        i, j = ij
        if not (0 <= i < self.rows and 0 <= j < self.cols):
            raise IndexError(f"indeks ({i}, {j}) poza macierzą {self.rows}x{self.cols}")
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> list[int]:
        return list(self.entries[i * self.cols:(i + 1) * self.cols])

    def column(self, j: int) -> list[int]:
        return [self.entries[i * self.cols + j] for i in range(self.rows)]

    def to_rows(self) -> list[list[int]]:
        return [self.row(i) for i in range(self.rows)]

    def flat(self) -> list[int]:
        return list(self.entries)

    def select(self, rows: Iterable[int] | None = None, cols: Iterable[int] | None = None) -> "ExactMatrix":
        """Podmacierz z wybranych wierszy i kolumn (None = wszystkie)"""
        rows = list(range(self.rows)) if rows is None else list(rows)
        cols = list(range(self.cols)) if cols is None else list(cols)
        if not rows or not cols:
            return ExactMatrix.zeros(self.ring, len(rows), len(cols))
        return ExactMatrix.from_domain(self.ring, self.rep.extract(rows, cols))

    # ===== ARYTMETYKA =====

    def __matmul__(self, other: "ExactMatrix") -> "ExactMatrix":
        ring = _check_same_ring(self.ring, other.ring)
        if self.cols != other.rows:
            raise ShapeMismatch(f"❌ Mnożenie {self.rows}x{self.cols} przez {other.rows}x{other.cols}")
        if self.is_empty or other.is_empty:
            return ExactMatrix.zeros(ring, self.rows, other.cols)
        return ExactMatrix.from_domain(ring, self.rep.matmul(other.rep))

    def _check_same_shape(self, other: "ExactMatrix") -> Ring:
        ring = _check_same_ring(self.ring, other.ring)
        if self.shape != other.shape:
            raise ShapeMismatch(f"❌ Kształty {self.shape} i {other.shape} się różnią")
        return ring

    def __add__(self, other: "ExactMatrix") -> "ExactMatrix":
        ring = self._check_same_shape(other)
        if self.is_empty:
            return self
        return ExactMatrix.from_domain(ring, self.rep + other.rep)

    def __sub__(self, other: "ExactMatrix") -> "ExactMatrix":
        ring = self._check_same_shape(other)
        if self.is_empty:
            return self
        return ExactMatrix.from_domain(ring, self.rep - other.rep)

    def __neg__(self) -> "ExactMatrix":
        return self.scale(-1)

    def scale(self, c: int) -> "ExactMatrix":
        if self.is_empty:
            return self
        return ExactMatrix.from_domain(self.ring, self.rep.scalarmul(self.ring.domain(c)))

    def transpose(self) -> "ExactMatrix":
        if self.is_empty:
            return ExactMatrix.zeros(self.ring, self.cols, self.rows)
        return ExactMatrix.from_domain(self.ring, self.rep.transpose())

    def is_zero(self) -> bool:
        return not any(self.entries)

    def is_identity(self) -> bool:
        return self.rows == self.cols and self == ExactMatrix.identity(self.ring, self.rows)

    def to_sympy(self) -> SympyMatrix:
        return SympyMatrix(self.rows, self.cols, list(self.entries))

    def __str__(self) -> str:
        if self.is_empty:
            return f"[{self.rows}x{self.cols}]"
        return "[" + ", ".join("[" + ", ".join(str(x) for x in r) + "]" for r in self.to_rows()) + "]"


def hstack(ring: Ring, rows: int, *blocks: ExactMatrix) -> ExactMatrix:
    """Sklejenie poziome; `rows` potrzebne dla pustej listy bloków"""
    for b in blocks:
        if b.rows != rows:
            raise ShapeMismatch(f"❌ Blok {b.rows}x{b.cols} w wierszu bloków wysokości {rows}")
    width = sum(b.cols for b in blocks)
    parts = [b.rep for b in blocks if b.cols]
    if rows == 0 or not parts:
        return ExactMatrix.zeros(ring, rows, width)
    return ExactMatrix.from_domain(ring, DomainMatrix.hstack(*parts))


def vstack(ring: Ring, cols: int, *blocks: ExactMatrix) -> ExactMatrix:
    for b in blocks:
        if b.cols != cols:
            raise ShapeMismatch(f"❌ Blok {b.rows}x{b.cols} w kolumnie bloków szerokości {cols}")
    height = sum(b.rows for b in blocks)
    parts = [b.rep for b in blocks if b.rows]
    if cols == 0 or not parts:
        return ExactMatrix.zeros(ring, height, cols)
    return ExactMatrix.from_domain(ring, DomainMatrix.vstack(*parts))


def block_matrix(ring: Ring, row_sizes: Sequence[int], col_sizes: Sequence[int],
                 blocks: Sequence[Sequence[ExactMatrix | None]]) -> ExactMatrix:
    """Macierz blokowa; None oznacza blok zerowy"""
    strips = []
    for bi, rs in enumerate(row_sizes):
        parts = []
        for bj, cs in enumerate(col_sizes):
            b = blocks[bi][bj]
            parts.append(ExactMatrix.zeros(ring, rs, cs) if b is None else b)
        strips.append(hstack(ring, rs, *parts))
    return vstack(ring, sum(col_sizes), *strips)


# ===== POSTAĆ NORMALNA SMITHA =====

@dataclass(frozen=True)
class SmithForm:
    """u·a·v = diag(d); u, v odwracalne nad pierścieniem"""

    d: tuple[int, ...]
    u: ExactMatrix
    v: ExactMatrix

    @property
    def rank(self) -> int:
        return sum(1 for x in self.d if x != 0)

    def diagonal(self) -> ExactMatrix:
        return ExactMatrix.diagonal(self.u.ring, self.u.rows, self.v.cols, self.d)


def _canonical_unit(ring: Ring, x: int) -> int:
    """Jedność c, dla której c·x jest kanonicznym stowarzyszonym (≥ 0 nad ℤ, 1 nad 𝔽_p)"""
    if x == 0:
        return 1
    if ring.is_field:
        return ring.inverse(x)
    return -1 if x < 0 else 1


def smith_form(a: ExactMatrix) -> SmithForm:
    """Postać normalna Smitha z macierzami przejścia u, v (sympy smith_normal_decomp)"""
    ring = a.ring
    if a.is_empty:
        return SmithForm((), ExactMatrix.identity(ring, a.rows), ExactMatrix.identity(ring, a.cols))
    snf, s, t = smith_normal_decomp(a.rep)
    diagonal = snf.to_list()
    d = [ring.reduce(diagonal[k][k]) for k in range(min(a.shape))]
    u = ExactMatrix.from_domain(ring, s)
    v = ExactMatrix.from_domain(ring, t)

    units = [_canonical_unit(ring, x) for x in d]
    if any(c != 1 for c in units):
        u = ExactMatrix.diagonal(ring, a.rows, a.rows, units + [1] * (a.rows - len(units))) @ u
        d = [ring.reduce(c * x) for c, x in zip(units, d)]
    return SmithForm(tuple(d), u, v)


def rank(a: ExactMatrix) -> int:
    return 0 if a.is_empty else a.rep.rank()


# ===== UKŁADY RÓWNAŃ, JĄDRA, OBRAZY =====

def solve_linear(a: ExactMatrix, b: ExactMatrix) -> ExactMatrix | None:
    """Rozwiązanie a·x = b nad pierścieniem albo None"""
    ring = _check_same_ring(a.ring, b.ring)
    if a.rows != b.rows:
        raise ShapeMismatch(f"❌ Układ {a.rows}x{a.cols} z prawą stroną o {b.rows} wierszach")
    sf = smith_form(a)
    c = (sf.u @ b).to_rows()
    r = sf.rank
    if any(c[i][k] for i in range(r, a.rows) for k in range(b.cols)):
        return None
    y = [[0] * b.cols for _ in range(a.cols)]
    for k in range(b.cols):
        for i in range(r):
            di, ci = sf.d[i], c[i][k]
            if ring.is_field:
                y[i][k] = ring.reduce(ci * ring.inverse(di))
            elif ci % di:
                return None
            else:
                y[i][k] = ci // di
    return sf.v @ ExactMatrix.from_rows(ring, y, cols=b.cols)


def kernel_basis(a: ExactMatrix) -> ExactMatrix:
    """Kolumny tworzą bazę jądra (nad ℤ: bazę kraty)"""
    if a.rows == 0:
        return ExactMatrix.identity(a.ring, a.cols)
    if a.ring.is_field:
        if a.cols == 0 or rank(a) == a.cols:
            return ExactMatrix.zeros(a.ring, a.cols, 0)
        return ExactMatrix.from_domain(a.ring, a.rep.nullspace().transpose())
    # nullspace nad ZZ nie daje bazy kraty; kolumny v poza rzędem już tak
    sf = smith_form(a)
    return sf.v.select(cols=range(sf.rank, a.cols))


def inverse(a: ExactMatrix) -> ExactMatrix | None:
    if a.rows != a.cols:
        raise ShapeMismatch(f"❌ Odwracanie macierzy niekwadratowej {a.rows}x{a.cols}")
    if a.is_empty:
        return a
    try:
        if a.ring.is_field:
            return ExactMatrix.from_domain(a.ring, a.rep.inv())
        adjugate, den = a.rep.inv_den()
    except DMNonInvertibleMatrixError:
        return None
    den = int(den)
    values = [int(x) for x in adjugate.to_list_flat()]
    if den == 0 or any(x % den for x in values):
        return None
    return ExactMatrix(a.ring, a.rows, a.cols, tuple(x // den for x in values))


def image_basis(a: ExactMatrix) -> ExactMatrix:
    """Kolumny tworzą bazę obrazu a"""
    sf = smith_form(a)
    u_inv = inverse(sf.u)
    return u_inv.select(cols=range(sf.rank)) @ ExactMatrix.diagonal(a.ring, sf.rank, sf.rank, sf.d[:sf.rank])


def split_injection_witness(a: ExactMatrix) -> ExactMatrix | None:
    """Lewa odwrotność r (r·a = 1) albo None"""
    sf = smith_form(a)
    if sf.rank != a.cols or any(x != 1 for x in sf.d[:a.cols]):
        return None
    return sf.v @ _unit_corner(a.ring, a.cols, a.rows) @ sf.u


def split_surjection_witness(a: ExactMatrix) -> ExactMatrix | None:
    """Prawa odwrotność s (a·s = 1) albo None"""
    sf = smith_form(a)
    if sf.rank != a.rows or any(x != 1 for x in sf.d[:a.rows]):
        return None
    return sf.v @ _unit_corner(a.ring, a.cols, a.rows) @ sf.u


def _unit_corner(ring: Ring, rows: int, cols: int) -> ExactMatrix:
    return ExactMatrix.diagonal(ring, rows, cols, [1] * min(rows, cols))


def cokernel_projection(a: ExactMatrix) -> ExactMatrix | None:
    """Surjekcja q z q·a = 0 na wolny kokernel; None gdy kokernel ma torsję"""
    sf = smith_form(a)
    if any(x != 1 for x in sf.d[:sf.rank]):
        return None
    return sf.u.select(rows=range(sf.rank, a.rows))


# ===== GRUPY PREZENTOWANE =====

@dataclass(frozen=True)
class PresentedGroup:
    """Skończenie generowana grupa abelowa: ⊕ ℤ/t_i ⊕ R^free_rank"""

    ring: Ring
    torsion: tuple[int, ...] = ()
    free_rank: int = 0

    def __post_init__(self):
        object.__setattr__(self, "torsion", tuple(int(t) for t in self.torsion))
        if self.ring.is_field and self.torsion:
            raise ValueError("❌ Przestrzeń liniowa nad F_p nie ma torsji")
        for a, b in zip(self.torsion, self.torsion[1:]):
            if b % a:
                raise ValueError(f"❌ Czynniki {self.torsion} nie tworzą łańcucha podzielności")
        if any(t <= 1 for t in self.torsion):
            raise ValueError(f"❌ Czynniki torsyjne muszą być > 1: {self.torsion}")
        if self.free_rank < 0:
            raise ValueError(f"❌ Ujemna ranga wolna {self.free_rank}")

    @property
    def is_zero(self) -> bool:
        return not self.torsion and self.free_rank == 0

    @property
    def moduli(self) -> tuple[int, ...]:
        """Moduł każdej współrzędnej: t_i dla torsji, 0 dla ℤ, p nad 𝔽_p"""
        free = self.ring.p if self.ring.is_field else 0
        return self.torsion + (free,) * self.free_rank

    def __str__(self) -> str:
        parts = [f"Z/{t}" for t in self.torsion]
        if self.free_rank:
            base = self.ring.name
            parts.append(base if self.free_rank == 1 else f"{base}^{self.free_rank}")
        return " + ".join(parts) if parts else "0"


def cokernel_presentation(a: ExactMatrix) -> PresentedGroup:
    """coker(a) w postaci czynników niezmienniczych"""
    sf = smith_form(a)
    torsion = tuple(x for x in sf.d[:sf.rank] if x != 1)
    return PresentedGroup(a.ring, torsion, a.rows - sf.rank)


@dataclass(frozen=True)
class Subquotient:
    """Podiloraz cykle/brzegi z generatorami i redukcją do współrzędnych"""

    group: PresentedGroup
    cycles: ExactMatrix
    change: ExactMatrix
    kept: tuple[tuple[int, int], ...]
    generators: tuple[ExactMatrix, ...]

    def reduce(self, vector: ExactMatrix) -> tuple[int, ...]:
        """Współrzędne klasy wektora (kolumny) w prezentacji grupy"""
        y = solve_linear(self.cycles, vector)
        if y is None:
            raise ValueError("❌ Wektor nie jest cyklem - nie ma klasy")
        y = (self.change @ y).column(0)
        ring = self.group.ring
        coords = []
        for i, modulus in self.kept:
            coords.append(ring.reduce(y[i]) % modulus if modulus else ring.reduce(y[i]))
        return tuple(coords)


def subquotient(cycles: ExactMatrix, boundaries: ExactMatrix) -> Subquotient:
    """Z/B dla bazy cykli Z (kolumny) i generatorów B ⊆ Z (kolumny)"""
    ring = _check_same_ring(cycles.ring, boundaries.ring)
    relations = solve_linear(cycles, boundaries)
    if relations is None:
        raise ValueError("❌ Brzegi nie leżą w przestrzeni cykli")
    sf = smith_form(relations)
    u_inv = inverse(sf.u)
    kept: list[tuple[int, int]] = []
    for i in range(cycles.cols):
        di = sf.d[i] if i < len(sf.d) else 0
        if di == 1:
            continue
        modulus = di if di else (ring.p or 0)
        kept.append((i, modulus))
    torsion = tuple(di for i, di in kept if not ring.is_field and di)
    free_rank = len(kept) - len(torsion)
    generators = tuple(cycles @ u_inv.select(cols=[i]) for i, _ in kept)
    return Subquotient(PresentedGroup(ring, torsion, free_rank), cycles, sf.u, tuple(kept), generators)


# ===== LOSOWANIE (deterministyczne przez numpy.random.Generator) =====

def sample_rng(seed: int, index: int = 0, stream: int | None = None) -> np.random.Generator:
    """Generator próbki `index` przebiegu z ziarnem `seed` (opcjonalnie osobny strumień)"""
    key = [int(seed), int(index)] + ([int(stream)] if stream is not None else [])
    return np.random.default_rng(key)


def random_matrix(rng: np.random.Generator, ring: Ring, rows: int, cols: int, bound: int = 3) -> ExactMatrix:
    if ring.is_field:
        values = rng.integers(0, ring.p, size=rows * cols)
    else:
        values = rng.integers(-bound, bound + 1, size=rows * cols)
    return ExactMatrix(ring, rows, cols, tuple(int(x) for x in values))


def random_unimodular(rng: np.random.Generator, ring: Ring, n: int, steps: int | None = None) -> ExactMatrix:
    """Losowa macierz odwracalna nad pierścieniem (iloczyn macierzy elementarnych)"""
    m = ExactMatrix.identity(ring, n)
    for _ in range(steps if steps is not None else 2 * n):
        if n < 2:
            break
        i, j = (int(x) for x in rng.choice(n, size=2, replace=False))
        c = int(rng.integers(-2, 3)) if not ring.is_field else int(rng.integers(1, ring.p))
        elementary = [[int(r == s) for s in range(n)] for r in range(n)]
        elementary[i][j] = c
        m = ExactMatrix.from_rows(ring, elementary) @ m
        if rng.random() < 0.3:
            order = list(range(n))
            order[i], order[j] = j, i
            m = m.select(rows=order)
    units = []
    for _ in range(n):
        if rng.random() < 0.5:
            units.append(-1 if not ring.is_field else int(rng.integers(1, ring.p)))
        else:
            units.append(1)
    return ExactMatrix.diagonal(ring, n, n, units) @ m
