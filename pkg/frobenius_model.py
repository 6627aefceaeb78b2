#!/usr/bin/env python3
"""
🎯 Struktura modelowa Frobeniusa na Ch(R) ze strukturą stopniowo rozszczepialną

Kofibracje = mono stopniowo rozszczepialne, fibracje = epi stopniowo
rozszczepialne, obiekty trywialne = kompleksy ściągalne. Każdy obiekt jest
jednocześnie kofibrantny i fibrantny, więc homotopia lewa i prawa pokrywają
się ze zwykłą homotopią łańcuchową - moduł udostępnia jeden test homotopii.

Dwie niezależne wyrocznie homotopii:
  find_homotopy               - układ liniowy ∂₁h = g - f w kompleksie Hom
  homotopic_by_factorization  - faktoryzacja g - f przez ściągalne pokrycie P(Y) ↠ Y
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import NamedTuple

from chain_complex import (
    OK, ChainComplex, ChainMap, Homotopy, HomComplex, Validation, column_map, cone,
    direct_sum_maps, hom, inverse_map, row_map, shift, solve_chain_map, zero_complex, zero_map,
)
from dw_exact import (
    DwSes, admissible_epi, admissible_mono, chain_retraction, cone_ses, twisted_extension,
)
from exact_linalg import (
    ExactMatrix, PresentedGroup, Subquotient, block_matrix, kernel_basis, solve_linear,
    subquotient,
)


# ===== HOMOTOPIE =====

def find_homotopy(f: ChainMap, g: ChainMap) -> Homotopy | None:
    """h z d h + h d = g - f (jeden układ liniowy) albo None"""
    f._same_ends(g)
    h = hom(f.source, f.target)
    solution = solve_linear(h.boundary_matrix(1), h.map_to_vector(g - f))
    return None if solution is None else h.vector_to_homotopy(f, g, solution)


def is_contractible(x: ChainComplex) -> Homotopy | None:
    """Świadek d h + h d = 1 albo None"""
    return find_homotopy(zero_map(x, x), x.identity())


# ===== ŚCIĄGALNE POKRYCIE I OTOCZKA =====

def enough_projectives(x: ChainComplex) -> DwSes:
    """
    Σ⁻¹X ↣ P(X) ↠ X z P(X) ściągalnym.

    P(X)_n = X_n ⊕ X_{n+1},  d(x, x') = (d x, x - d x'),  q = (1, 0)
    """
    ring = x.ring
    if x.is_zero:
        z = zero_complex(ring)
        return DwSes(zero_map(z, z), zero_map(z, z), {}, {})

    def eye(n):
        return ExactMatrix.identity(ring, x.rank(n))

    matrices = {
        n: block_matrix(ring, [x.rank(n - 1), x.rank(n)], [x.rank(n), x.rank(n + 1)],
                        [[x.d(n), None], [eye(n), -x.d(n + 1)]])
        for n in x.degrees}
    ranks = {n: x.rank(n) + x.rank(n + 1) for n in range(x.min_degree - 1, x.max_degree + 1)}
    cover = ChainComplex.from_matrices(ring, matrices, ranks)
    kernel = shift(x, -1)

    def split(n, first: bool):
        blocks = [[eye(n)], [None]] if first else [[None], [eye(n + 1)]]
        return block_matrix(ring, [x.rank(n), x.rank(n + 1)], [x.rank(n) if first else x.rank(n + 1)], blocks)

    i = ChainMap.from_components(kernel, cover, {n: split(n, False) for n in kernel.degrees})
    q = ChainMap.from_components(cover, x, {n: split(n, True).transpose() for n in cover.degrees})
    sections = {n: split(n, True) for n in cover.degrees}
    retractions = {n: split(n, False).transpose() for n in cover.degrees}
    return DwSes(i, q, sections, retractions)


def enough_injectives(x: ChainComplex) -> DwSes:
    """X ↣ C(1_X) ↠ ΣX"""
    return cone_ses(x.identity())


class Factorization(NamedTuple):
    """g - f = q∘beta przez ściągalny obiekt `middle`"""
    beta: ChainMap
    q: ChainMap
    middle: ChainComplex


def homotopic_by_factorization(f: ChainMap, g: ChainMap) -> Factorization | None:
    """Faktoryzacja g - f przez P(Y) ↠ Y albo None"""
    f._same_ends(g)
    cover = enough_projectives(f.target)
    q = cover.p
    beta = solve_chain_map(f.source, cover.b, lambda b: q @ b, g - f)
    return None if beta is None else Factorization(beta, q, cover.b)


def extends_over_cone(f: ChainMap) -> ChainMap | None:
    """Rozszerzenie e: C(1_X) → Y z e∘ι = f; istnieje ⟺ f ≃ 0"""
    c, incl, _ = cone(f.source.identity())
    return solve_chain_map(c, f.target, lambda e: e @ incl, f)


def injectivity_probe(x: ChainComplex) -> Validation:
    """Czy X ↣ C(1_X) rozszczepia się łańcuchowo (⟺ X ściągalny)"""
    incl = enough_injectives(x).i
    if chain_retraction(incl) is None:
        return Validation(False, None, "❌ X ↣ C(1_X) nie ma łańcuchowej retrakcji")
    return OK


# ===== OBIEKTY ŚCIEŻEK I CYLINDRY =====

def path_object(y: ChainComplex) -> tuple[ChainMap, ChainMap]:
    """Y →i Y ⊕ P(Y) →p Y ⊕ Y,  i = (1; 0),  p = [[1, 0], [1, q]]"""
    cover = enough_projectives(y)
    q, big = cover.p, cover.b
    i = column_map(y.identity(), zero_map(y, big))
    first = row_map(y.identity(), zero_map(big, y))
    p = column_map(first, row_map(y.identity(), q))
    return i, p


def path_kernel_isomorphism(y: ChainComplex) -> ChainMap | None:
    """
    Izomorfizm ker(p) → Σ⁻¹Y dla p z `path_object`.

    Jądro p = [[1, 0], [1, q]] leży w 0 ⊕ ker q, a ker q = Σ⁻¹Y przez włożenie
    pokrycia; φ rozwiązuje i∘φ = (0, 1)∘k. None, gdy φ nie jest odwracalne.
    """
    _, p = path_object(y)
    kernel = admissible_epi(p)
    cover = enough_projectives(y)
    to_cover = row_map(zero_map(y, cover.b), cover.b.identity()) @ kernel.connecting
    phi = solve_chain_map(kernel.complement, cover.a, lambda u: cover.i @ u, to_cover)
    if phi is None or inverse_map(phi) is None:
        return None
    return phi


def cylinder_object(x: ChainComplex) -> tuple[ChainMap, ChainMap]:
    """X ⊕ X →j X ⊕ C(1_X) →p X,  j = [[1, 1], [0, ι]],  p = (1, 0)"""
    c, incl, _ = cone(x.identity())
    j = row_map(column_map(x.identity(), zero_map(x, c)), column_map(x.identity(), incl))
    p = row_map(x.identity(), zero_map(c, x))
    return j, p


# ===== FAKTORYZACJE =====

def factor_trivcof_fib(f: ChainMap) -> tuple[ChainMap, ChainMap]:
    """f = p∘i,  i = (1; 0): X → X ⊕ P(Y),  p = (f, q)"""
    x = f.source
    cover = enough_projectives(f.target)
    i = column_map(x.identity(), zero_map(x, cover.b))
    p = row_map(f, cover.p)
    return i, p


def factor_cof_trivfib(f: ChainMap) -> tuple[ChainMap, ChainMap]:
    """f = p∘i,  i = (f; ι): X → Y ⊕ C(1_X),  p = (1, 0)"""
    y = f.target
    c, incl, _ = cone(f.source.identity())
    i = column_map(f, incl)
    p = row_map(y.identity(), zero_map(c, y))
    return i, p


# ===== KLASYFIKACJA ODWZOROWAŃ =====

class MapClass(NamedTuple):
    is_cofibration: bool
    is_trivial_cofibration: bool
    is_fibration: bool
    is_trivial_fibration: bool
    is_weak_equivalence: bool


class HomotopyInverse(NamedTuple):
    """g: Y → X z homotopiami h: 1_X ≃ g f i k: 1_Y ≃ f g"""
    g: ChainMap
    h: Homotopy
    k: Homotopy


def _composition_matrix(source: HomComplex, target: HomComplex, apply) -> ExactMatrix:
    return ExactMatrix.from_linear_function(
        source.ring, source.size(0), target.size(0),
        lambda v: target.map_to_vector(apply(source.vector_to_map(v))).column(0))


def homotopy_inverse(f: ChainMap) -> HomotopyInverse | None:
    """
    Odwrotność homotopijna z jednego układu w niewiadomych (g, h, k):
      ∂₀ g = 0,   g f - ∂₁ h = 1_X,   f g - ∂₁ k = 1_Y
    """
    x, y, ring = f.source, f.target, f.ring
    hyx, hxx, hyy = hom(y, x), hom(x, x), hom(y, y)
    ng, nh, nk = hyx.size(0), hxx.size(1), hyy.size(1)
    rows = [hyx.size(-1), hxx.size(0), hyy.size(0)]
    system = block_matrix(ring, rows, [ng, nh, nk], [
        [hyx.boundary_matrix(0), None, None],
        [_composition_matrix(hyx, hxx, lambda g: g @ f), -hxx.boundary_matrix(1), None],
        [_composition_matrix(hyx, hyy, lambda g: f @ g), None, -hyy.boundary_matrix(1)],
    ])
    rhs = block_matrix(ring, rows, [1], [
        [None], [hxx.map_to_vector(x.identity())], [hyy.map_to_vector(y.identity())]])
    solution = solve_linear(system, rhs)
    if solution is None:
        return None
    values = solution.column(0)
    g = hyx.vector_to_map(values[:ng])
    h = hxx.vector_to_homotopy(x.identity(), g @ f, values[ng:ng + nh])
    k = hyy.vector_to_homotopy(y.identity(), f @ g, values[ng + nh:])
    return HomotopyInverse(g, h, k)


def weak_equivalence_by_factorization(f: ChainMap) -> bool:
    """f = p∘i z i trywialną kofibracją; f jest słabą równoważnością ⟺ jądro p ściągalne"""
    _, p = factor_trivcof_fib(f)
    return is_contractible(admissible_epi(p).complement) is not None


def classify(f: ChainMap) -> MapClass:
    mono, epi = admissible_mono(f), admissible_epi(f)
    cof = mono is not None
    fib = epi is not None
    return MapClass(
        is_cofibration=cof,
        is_trivial_cofibration=cof and is_contractible(mono.complement) is not None,
        is_fibration=fib,
        is_trivial_fibration=fib and is_contractible(epi.complement) is not None,
        is_weak_equivalence=homotopy_inverse(f) is not None,
    )


# ===== GRUPY KLAS HOMOTOPII =====

@dataclass(frozen=True)
class HomotopyClassGroup:
    """π(X, Y) = H₀ Hom(X, Y) z reprezentantami generatorów"""

    source: ChainComplex
    target: ChainComplex
    group: PresentedGroup
    generators: tuple[ChainMap, ...]
    _quotient: Subquotient = field(repr=False, compare=False)

    def reduce(self, f: ChainMap) -> tuple[int, ...]:
        """Współrzędne klasy f; równe ⟺ odwzorowania homotopijne"""
        if f.source != self.source or f.target != self.target:
            raise ValueError("❌ Odwzorowanie spoza π(X, Y)")
        return self._quotient.reduce(hom(self.source, self.target).map_to_vector(f))

    def representative(self, coordinates: tuple[int, ...]) -> ChainMap:
        total = zero_map(self.source, self.target)
        for c, g in zip(coordinates, self.generators):
            total = total + g.scale(c)
        return total


def pi_group(x: ChainComplex, y: ChainComplex) -> HomotopyClassGroup:
    h = hom(x, y)
    quotient = subquotient(kernel_basis(h.boundary_matrix(0)), h.boundary_matrix(1))
    generators = tuple(h.vector_to_map(g) for g in quotient.generators)
    return HomotopyClassGroup(x, y, quotient.group, generators, quotient)


def compose_classes(g: ChainMap, f: ChainMap, group: HomotopyClassGroup | None = None) -> tuple[int, ...]:
    """[g]∘[f] w kategorii homotopijnej"""
    if group is None:
        group = pi_group(f.source, g.target)
    return group.reduce(g @ f)


def ext_dw(n: int, x: ChainComplex, y: ChainComplex) -> PresentedGroup:
    """Ext^n stopniowo rozszczepialnych rozszerzeń = π(X, Σⁿ Y)"""
    if n < 0:
        raise ValueError(f"❌ Ext_dw w stopniu ujemnym: {n}")
    return pi_group(x, shift(y, n)).group


# ===== ROZSZERZENIA ⇄ KLASY =====

class ExtensionClass(NamedTuple):
    coordinates: tuple[int, ...]
    classifying_map: ChainMap
    group: HomotopyClassGroup


def ses_to_class(e: DwSes) -> ExtensionClass:
    """τ_n = r_{n-1} d s_n: C → ΣA, zredukowane w π(C, ΣA)"""
    verdict = e.check()
    if not verdict.ok:
        raise ValueError(f"❌ Niepoprawni świadkowie ciągu: {verdict.message}")
    a, b, c = e.a, e.b, e.c
    target = shift(a, 1)
    tau = ChainMap.from_components(c, target, {
        n: e.retraction(n - 1) @ b.d(n) @ e.section(n) for n in c.degrees})
    group = pi_group(c, target)
    return ExtensionClass(group.reduce(tau), tau, group)


def class_to_ses(f: ChainMap) -> DwSes:
    """A ↣ A ⊕_f C ↠ C dla f: C → ΣA"""
    verdict = f.validate()
    if not verdict.ok:
        raise ValueError(f"❌ {verdict.message}")
    return twisted_extension(shift(f.target, -1), f.source, f)


def same_extension_class(e1: DwSes, e2: DwSes) -> bool:
    """Równoważność Yonedy: równe klasy w π(C, ΣA)"""
    if e1.a != e2.a or e1.c != e2.c:
        raise ValueError("❌ Rozszerzenia o różnych końcach")
    return ses_to_class(e1).coordinates == ses_to_class(e2).coordinates
