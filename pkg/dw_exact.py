#!/usr/bin/env python3
"""
✂️ Struktura dokładna stopniowo rozszczepialna na Ch(R)

Ciągi krótkie A ↣ B ↠ C, które rozszczepiają się w każdym stopniu (nie
koniecznie jako kompleksy). Każde twierdzenie istnienia jest konstruktywne:
monomorfizmy i epimorfizmy dopuszczalne niosą jawnych świadków (retrakcje,
cięcia), z których buduje się kokernele, jądra, pushouty i pullbacki.
"""

from __future__ import annotations

import sys
from dataclasses import dataclass, field
from typing import Callable, NamedTuple

import numpy as np

from chain_complex import (
    OK, ChainComplex, ChainMap, SumMaps, Validation, column_map, cone,
    direct_sum_maps, direct_sum_of_maps, random_chain_map, random_complex,
    inverse_map, random_isomorphism, row_map, shift, solve_chain_map, zero_map,
)
from exact_linalg import (
    ExactMatrix, Ring, ZZ, block_matrix, image_basis, sample_rng, solve_linear,
    split_injection_witness, split_surjection_witness,
)


def _eye(ring: Ring, n: int) -> ExactMatrix:
    return ExactMatrix.identity(ring, n)


@dataclass(frozen=True)
class DwSes:
    """A ↣ B ↠ C z cięciami s_n: C_n → B_n i retrakcjami r_n: B_n → A_n"""

    i: ChainMap
    p: ChainMap
    sections: dict[int, ExactMatrix] = field(compare=False)
    retractions: dict[int, ExactMatrix] = field(compare=False)

    @property
    def a(self) -> ChainComplex:
        return self.i.source

    @property
    def b(self) -> ChainComplex:
        return self.i.target

    @property
    def c(self) -> ChainComplex:
        return self.p.target

    def section(self, n: int) -> ExactMatrix:
        return self.sections.get(n, ExactMatrix.zeros(self.b.ring, self.b.rank(n), self.c.rank(n)))

    def retraction(self, n: int) -> ExactMatrix:
        return self.retractions.get(n, ExactMatrix.zeros(self.b.ring, self.a.rank(n), self.b.rank(n)))

    def check(self) -> Validation:
        """Wszystkie tożsamości świadków, stopień po stopniu"""
        if self.p.source != self.b:
            return Validation(False, None, "❌ Cel i ≠ źródło p")
        for name, f in (("i", self.i), ("p", self.p)):
            verdict = f.validate()
            if not verdict.ok:
                return Validation(False, verdict.degree, f"❌ {name} nie jest odwzorowaniem łańcuchowym")
        ring = self.b.ring
        degrees = sorted(set(self.a.degrees) | set(self.b.degrees) | set(self.c.degrees))
        for n in degrees:
            i_n, p_n = self.i.component(n), self.p.component(n)
            s_n, r_n = self.section(n), self.retraction(n)
            if not (p_n @ i_n).is_zero():
                return Validation(False, n, f"❌ p_{n}·i_{n} ≠ 0")
            if r_n @ i_n != _eye(ring, self.a.rank(n)):
                return Validation(False, n, f"❌ r_{n}·i_{n} ≠ 1")
            if p_n @ s_n != _eye(ring, self.c.rank(n)):
                return Validation(False, n, f"❌ p_{n}·s_{n} ≠ 1")
            if i_n @ r_n + s_n @ p_n != _eye(ring, self.b.rank(n)):
                return Validation(False, n, f"❌ i_{n}·r_{n} + s_{n}·p_{n} ≠ 1")
        return OK

    @classmethod
    def from_maps(cls, i: ChainMap, p: ChainMap) -> "DwSes | None":
        """Świadkowie dla pary (i, p) albo None, gdy para nie jest stopniowo rozszczepialna dokładna"""
        if i.target != p.source:
            raise ValueError("❌ Cel i ≠ źródło p")
        b = i.target
        sections, retractions = {}, {}
        for n in sorted(set(i.source.degrees) | set(b.degrees) | set(p.target.degrees)):
            r0 = split_injection_witness(i.component(n))
            s0 = split_surjection_witness(p.component(n))
            if r0 is None or s0 is None:
                return None
            one = _eye(b.ring, b.rank(n))
            s = (one - i.component(n) @ r0) @ s0
            sections[n] = s
            retractions[n] = r0 @ (one - s @ p.component(n))
        ses = cls(i, p, sections, retractions)
        return ses if ses.check().ok else None

    def chain_splitting(self) -> ChainMap | None:
        """Cięcie łańcuchowe C → B (ciąg rozszczepia się jako ciąg kompleksów)"""
        return chain_section(self.p)

    def __str__(self) -> str:
        return f"DwSes({self.a.total_rank} ↣ {self.b.total_rank} ↠ {self.c.total_rank})"


@dataclass(frozen=True)
class AdmissibleWitness:
    """Świadek dopuszczalności: mono z kokernelem albo epi z jądrem"""

    kind: str
    map: ChainMap
    complement: ChainComplex
    connecting: ChainMap
    sequence: DwSes = field(compare=False)

    @property
    def inverses(self) -> dict[int, ExactMatrix]:
        """Lewe odwrotności (mono) albo prawe odwrotności (epi)"""
        return self.sequence.retractions if self.kind == "mono" else self.sequence.sections

    def ses(self) -> DwSes:
        return self.sequence


# ===== MONO/EPI DOPUSZCZALNE =====

def admissible_mono(f: ChainMap) -> AdmissibleWitness | None:
    """f: A ↣ B, kokernel na dopełnieniu im(1 - f r)"""
    a, b, ring = f.source, f.target, f.ring
    retractions, sections, quotients, basis = {}, {}, {}, {}
    for n in sorted(set(a.degrees) | set(b.degrees)):
        r = split_injection_witness(f.component(n))
        if r is None:
            return None
        e = _eye(ring, b.rank(n)) - f.component(n) @ r
        s = image_basis(e)
        retractions[n], sections[n] = r, s
        quotients[n] = solve_linear(s, e)
        basis[n] = s.cols
    c = ChainComplex.from_matrices(
        ring, {n: quotients.get(n - 1, ExactMatrix.zeros(ring, 0, b.rank(n - 1))) @ b.d(n) @ sections[n]
               for n in b.degrees}, basis)
    q = ChainMap.from_components(b, c, quotients)
    ses = DwSes(f, q, sections, retractions)
    return AdmissibleWitness("mono", f, c, q, ses)


def admissible_epi(g: ChainMap) -> AdmissibleWitness | None:
    """g: B ↠ C, jądro na obrazie idempotentu 1 - s g"""
    b, c, ring = g.source, g.target, g.ring
    sections, retractions, kernels, basis = {}, {}, {}, {}
    for n in sorted(set(b.degrees) | set(c.degrees)):
        s = split_surjection_witness(g.component(n))
        if s is None:
            return None
        e = _eye(ring, b.rank(n)) - s @ g.component(n)
        k = image_basis(e)
        sections[n], kernels[n] = s, k
        retractions[n] = solve_linear(k, e)
        basis[n] = k.cols
    kernel = ChainComplex.from_matrices(
        ring, {n: retractions.get(n - 1, ExactMatrix.zeros(ring, 0, b.rank(n - 1))) @ b.d(n) @ kernels[n]
               for n in b.degrees}, basis)
    k_map = ChainMap.from_components(kernel, b, kernels)
    ses = DwSes(k_map, g, sections, retractions)
    return AdmissibleWitness("epi", g, kernel, k_map, ses)


def chain_retraction(f: ChainMap) -> ChainMap | None:
    """Łańcuchowa lewa odwrotność g (g∘f = 1) albo None"""
    return solve_chain_map(f.target, f.source, lambda g: g @ f, f.source.identity())


def chain_section(p: ChainMap) -> ChainMap | None:
    """Łańcuchowa prawa odwrotność s (p∘s = 1) albo None"""
    return solve_chain_map(p.target, p.source, lambda s: p @ s, p.target.identity())


# ===== PUSHOUT / PULLBACK =====

class Square(NamedTuple):
    """Kwadrat przemienny z nowym rogiem i ciągiem na nowej krawędzi"""
    corner: ChainComplex
    along: ChainMap
    across: ChainMap
    ses: DwSes


def _twisted(ring: Ring, top: ChainComplex, bottom: ChainComplex, twist: dict[int, ExactMatrix]) -> ChainComplex:
    degrees = sorted(set(top.degrees) | set(bottom.degrees))
    if not degrees:
        return ChainComplex(ring, 0, (), ())
    matrices = {}
    for n in range(degrees[0], degrees[-1] + 1):
        t = twist.get(n, ExactMatrix.zeros(ring, top.rank(n - 1), bottom.rank(n)))
        matrices[n] = block_matrix(ring, [top.rank(n - 1), bottom.rank(n - 1)], [top.rank(n), bottom.rank(n)],
                                   [[top.d(n), t], [None, bottom.d(n)]])
    return ChainComplex.from_matrices(ring, matrices, {n: top.rank(n) + bottom.rank(n) for n in matrices})


def _canonical_ses(ring: Ring, top: ChainComplex, bottom: ChainComplex, middle: ChainComplex) -> DwSes:
    """top ↣ top ⊕ bottom ↠ bottom na skręconej różniczce"""
    i = ChainMap.from_components(top, middle, {
        n: block_matrix(ring, [top.rank(n), bottom.rank(n)], [top.rank(n)], [[_eye(ring, top.rank(n))], [None]])
        for n in top.degrees})
    p = ChainMap.from_components(middle, bottom, {
        n: block_matrix(ring, [bottom.rank(n)], [top.rank(n), bottom.rank(n)], [[None, _eye(ring, bottom.rank(n))]])
        for n in middle.degrees})
    sections = {n: block_matrix(ring, [top.rank(n), bottom.rank(n)], [bottom.rank(n)],
                                [[None], [_eye(ring, bottom.rank(n))]]) for n in middle.degrees}
    retractions = {n: block_matrix(ring, [top.rank(n)], [top.rank(n), bottom.rank(n)],
                                   [[_eye(ring, top.rank(n)), None]]) for n in middle.degrees}
    return DwSes(i, p, sections, retractions)


def pushout_mono(w: AdmissibleWitness, f: ChainMap) -> Square:
    """Pushout A ↣ B wzdłuż f: A → Z; P = Z ⊕ C z różniczką skręconą przez f r d s"""
    if w.kind != "mono":
        raise ValueError("❌ pushout_mono wymaga świadka monomorfizmu")
    if f.source != w.map.source:
        raise ValueError("❌ pushout_mono: f i i mają różne źródła")
    ses, ring, z, c = w.sequence, f.ring, f.target, w.complement
    b = ses.b
    twist = {n: f.component(n - 1) @ ses.retraction(n - 1) @ b.d(n) @ ses.section(n) for n in c.degrees}
    corner = _twisted(ring, z, c, twist)
    pushed = _canonical_ses(ring, z, c, corner)
    across = ChainMap.from_components(b, corner, {
        n: block_matrix(ring, [z.rank(n), c.rank(n)], [b.rank(n)],
                        [[f.component(n) @ ses.retraction(n)], [ses.p.component(n)]]) for n in b.degrees})
    return Square(corner, pushed.i, across, pushed)


def pullback_epi(w: AdmissibleWitness, g: ChainMap) -> Square:
    """Pullback B ↠ C wzdłuż g: Z → C; Q = K ⊕ Z z różniczką skręconą przez t d s g"""
    if w.kind != "epi":
        raise ValueError("❌ pullback_epi wymaga świadka epimorfizmu")
    if g.target != w.map.target:
        raise ValueError("❌ pullback_epi: g i p mają różne cele")
    ses, ring, z, k = w.sequence, g.ring, g.source, w.complement
    b = ses.b
    twist = {n: ses.retraction(n - 1) @ b.d(n) @ ses.section(n) @ g.component(n) for n in z.degrees}
    corner = _twisted(ring, k, z, twist)
    pulled = _canonical_ses(ring, k, z, corner)
    across = ChainMap.from_components(corner, b, {
        n: block_matrix(ring, [b.rank(n)], [k.rank(n), z.rank(n)],
                        [[ses.i.component(n), ses.section(n) @ g.component(n)]]) for n in corner.degrees})
    return Square(corner, pulled.p, across, pulled)


# ===== SŁABA IDEMPOTENTNA ZUPEŁNOŚĆ =====

class SplitMonoCokernel(NamedTuple):
    ses: DwSes
    iso: ChainMap       # Y → X ⊕ Z
    inverse: ChainMap   # X ⊕ Z → Y
    canonical: SumMaps


def split_mono_cokernel(f: ChainMap, left_inverse: ChainMap) -> SplitMonoCokernel:
    """Kokernel rozszczepialnego mono f z jawnym izomorfizmem Y ≅ X ⊕ Z"""
    x, y, ring = f.source, f.target, f.ring
    if left_inverse.source != y or left_inverse.target != x:
        raise ValueError("❌ Lewa odwrotność ma złe źródło lub cel")
    for n in x.degrees:
        if left_inverse.component(n) @ f.component(n) != _eye(ring, x.rank(n)):
            raise ValueError(f"❌ g_{n}·f_{n} ≠ 1")
    sections, quotients, basis = {}, {}, {}
    for n in y.degrees:
        e = _eye(ring, y.rank(n)) - f.component(n) @ left_inverse.component(n)
        s = image_basis(e)
        sections[n], quotients[n], basis[n] = s, solve_linear(s, e), s.cols
    z = ChainComplex.from_matrices(
        ring, {n: quotients.get(n - 1, ExactMatrix.zeros(ring, 0, y.rank(n - 1))) @ y.d(n) @ sections[n]
               for n in y.degrees}, basis)
    q = ChainMap.from_components(y, z, quotients)
    s_map = ChainMap.from_components(z, y, {n: sections[n] for n in z.degrees})
    ses = DwSes(f, q, sections, {n: left_inverse.component(n) for n in y.degrees})
    return SplitMonoCokernel(ses, column_map(left_inverse, q), row_map(f, s_map), direct_sum_maps(x, z))


class RetractDiagram(NamedTuple):
    """
    A --1--> A --1--> A
    |f       |m       |f        m = (1; -f)
    C -(g;-1)-> A⊕C -(f, fg-1)-> C
    """
    f: ChainMap
    middle: ChainMap
    bottom_left: ChainMap
    bottom_right: ChainMap
    identities: tuple[Validation, ...]

    @property
    def ok(self) -> bool:
        return all(v.ok for v in self.identities)


def retract_embedding(f: ChainMap, g: ChainMap) -> RetractDiagram:
    """f: A → C jako retrakt dopuszczalnego mono (1; -f): A → A ⊕ C"""
    a, c = f.source, f.target
    if (g @ f) != a.identity():
        raise ValueError("❌ retract_embedding wymaga g∘f = 1")
    middle = column_map(a.identity(), -f)
    bottom_left = column_map(g, -c.identity())
    bottom_right = row_map(f, (f @ g) - c.identity())

    def holds(condition: bool, message: str) -> Validation:
        return OK if condition else Validation(False, None, f"❌ {message}")

    identities = (
        holds(bottom_left @ f == middle, "lewy kwadrat"),
        holds(bottom_right @ middle == f, "prawy kwadrat"),
        holds(row_map(a.identity(), zero_map(c, a)) @ middle == a.identity(), "lewa odwrotność (1, 0)"),
        holds(bottom_right @ bottom_left == c.identity(), "dolny wiersz"),
        holds(all(m.validate().ok for m in (middle, bottom_left, bottom_right)), "odwzorowania łańcuchowe"),
        holds(admissible_mono(middle) is not None, "środkowa kolumna dopuszczalna"),
    )
    return RetractDiagram(f, middle, bottom_left, bottom_right, identities)


# ===== ROZSZERZENIA =====

def twisted_extension(a: ChainComplex, c: ChainComplex, tau: ChainMap) -> DwSes:
    """A ↣ A ⊕_τ C ↠ C, d = [[d_A, τ], [0, d_C]] dla τ: C → ΣA"""
    if tau.source != c or tau.target != shift(a, 1):
        raise ValueError("❌ τ musi być odwzorowaniem C → ΣA")
    middle = _twisted(a.ring, a, c, {n: tau.component(n) for n in c.degrees})
    return _canonical_ses(a.ring, a, c, middle)


def cone_ses(f: ChainMap) -> DwSes:
    """Y ↣ C(f) ↠ ΣX"""
    c, incl, proj = cone(f)
    x, y, ring = f.source, f.target, f.ring
    sections = {n: block_matrix(ring, [x.rank(n - 1), y.rank(n)], [x.rank(n - 1)],
                                [[_eye(ring, x.rank(n - 1))], [None]]) for n in c.degrees}
    retractions = {n: block_matrix(ring, [y.rank(n)], [x.rank(n - 1), y.rank(n)],
                                   [[None, _eye(ring, y.rank(n))]]) for n in c.degrees}
    return DwSes(incl, proj, sections, retractions)


def conjugate_ses(ses: DwSes, iso: ChainMap) -> DwSes:
    """Przeniesienie ciągu wzdłuż izomorfizmu środka B → B'"""
    back = inverse_map(iso)
    if back is None:
        raise ValueError("❌ conjugate_ses wymaga izomorfizmu")
    i = iso @ ses.i
    p = ses.p @ back
    sections = {n: iso.component(n) @ ses.section(n) for n in ses.b.degrees}
    retractions = {n: ses.retraction(n) @ back.component(n) for n in ses.b.degrees}
    return DwSes(i, p, sections, retractions)


def random_ses(rng: np.random.Generator, ring: Ring, max_rank: int = 2, max_span: int = 3) -> DwSes:
    """Losowy ciąg stopniowo rozszczepialny w niekanonicznej bazie środka"""
    a = random_complex(rng, ring, max_rank=max_rank, max_span=max_span)
    c = random_complex(rng, ring, max_rank=max_rank, max_span=max_span)
    tau = random_chain_map(rng, c, shift(a, 1))
    ses = twisted_extension(a, c, tau)
    return conjugate_ses(ses, random_isomorphism(rng, ses.b))


# ===== ZESTAW AKSJOMATÓW =====

@dataclass
class ClauseResult:
    name: str
    samples: int = 0
    hits: int = 0
    counterexamples: list[tuple[int, str]] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.counterexamples


@dataclass
class AxiomReport:
    """Wyniki zestawu aksjomatów; kontrprzykład = (indeks próbki, opis)"""
    seed: int
    ring: Ring
    clauses: dict[str, ClauseResult] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.clauses.values())

    @property
    def counterexamples(self) -> list[tuple[str, int, str]]:
        return [(c.name, i, msg) for c in self.clauses.values() for i, msg in c.counterexamples]

    def summary(self) -> str:
        lines = [f"Zestaw aksjomatów: seed={self.seed}, pierścień {self.ring}"]
        for c in self.clauses.values():
            mark = "✅" if c.passed else "❌"
            lines.append(f"  {mark} {c.name}: {c.samples} próbek, {c.hits} trafień, "
                         f"{len(c.counterexamples)} kontrprzykładów")
        return "\n".join(lines)


def _clause_composition(rng, ring) -> tuple[bool, str]:
    first = random_ses(rng, ring)
    c = random_complex(rng, ring, max_rank=2)
    outer = twisted_extension(first.b, c, random_chain_map(rng, c, shift(first.b, 1)))
    if admissible_mono(outer.i @ first.i) is None:
        return False, "złożenie mono dopuszczalnych nie jest dopuszczalne"
    k = random_complex(rng, ring, max_rank=2)
    below = twisted_extension(k, first.b, random_chain_map(rng, first.b, shift(k, 1)))
    if admissible_epi(first.p @ below.p) is None:
        return False, "złożenie epi dopuszczalnych nie jest dopuszczalne"
    return True, ""


def _clause_pushout(rng, ring) -> tuple[bool, str]:
    ses = random_ses(rng, ring)
    w = admissible_mono(ses.i)
    z = random_complex(rng, ring, max_rank=2)
    f = random_chain_map(rng, ses.a, z)
    sq = pushout_mono(w, f)
    if sq.across @ ses.i != sq.along @ f:
        return False, "kwadrat pushoutu nie komutuje"
    if not sq.ses.check().ok or not sq.across.validate().ok:
        return False, f"pushout: {sq.ses.check().message}"
    if admissible_mono(sq.along) is None:
        return False, "przepchnięty mono nie jest dopuszczalny"
    if any(sq.ses.c.rank(n) != w.complement.rank(n) for n in w.complement.degrees):
        return False, "kokernele pushoutu mają różne rangi"
    return True, ""


def _clause_pullback(rng, ring) -> tuple[bool, str]:
    ses = random_ses(rng, ring)
    w = admissible_epi(ses.p)
    z = random_complex(rng, ring, max_rank=2)
    g = random_chain_map(rng, z, ses.c)
    sq = pullback_epi(w, g)
    if ses.p @ sq.across != g @ sq.along:
        return False, "kwadrat pullbacku nie komutuje"
    if not sq.ses.check().ok or not sq.across.validate().ok:
        return False, f"pullback: {sq.ses.check().message}"
    if admissible_epi(sq.along) is None:
        return False, "cofnięty epi nie jest dopuszczalny"
    return True, ""


def _clause_split(rng, ring) -> tuple[bool, str]:
    a = random_complex(rng, ring, max_rank=2)
    c = random_complex(rng, ring, max_rank=2)
    maps = direct_sum_maps(a, c)
    w = admissible_mono(maps.inj_first)
    if w is None or admissible_epi(maps.proj_second) is None:
        return False, "kanoniczny ciąg rozszczepialny nie jest dopuszczalny"
    if not w.sequence.check().ok:
        return False, w.sequence.check().message
    g = random_chain_map(rng, a, c)
    f = column_map(a.identity(), -g)
    split = split_mono_cokernel(f, maps.proj_first)
    if not split.ses.check().ok:
        return False, split.ses.check().message
    if split.iso @ split.inverse != split.canonical.total.identity():
        return False, "izomorfizm środka nie jest odwracalny"
    if split.iso @ f != split.canonical.inj_first:
        return False, "izomorfizm środka nie komutuje z włożeniem"
    return True, ""


def _random_map_or_mono(rng, ring) -> ChainMap:
    if rng.random() < 0.5:
        return random_ses(rng, ring).i
    x = random_complex(rng, ring, max_rank=2)
    y = random_complex(rng, ring, max_rank=2)
    return random_chain_map(rng, x, y)


def _random_map_or_epi(rng, ring) -> ChainMap:
    if rng.random() < 0.5:
        return random_ses(rng, ring).p
    x = random_complex(rng, ring, max_rank=2)
    y = random_complex(rng, ring, max_rank=2)
    return random_chain_map(rng, x, y)


def _clause_cancellation_mono(rng, ring) -> tuple[bool, str] | None:
    f = _random_map_or_mono(rng, ring)
    if rng.random() < 0.5:
        tail = random_ses(rng, ring)
        ext = twisted_extension(f.target, tail.c, random_chain_map(rng, tail.c, shift(f.target, 1)))
        g = ext.i
    else:
        g = random_chain_map(rng, f.target, random_complex(rng, ring, max_rank=2))
    if admissible_mono(g @ f) is None:
        return None
    if admissible_mono(f) is None:
        return False, "g∘f dopuszczalny, f nie"
    return True, ""


def _clause_cancellation_epi(rng, ring) -> tuple[bool, str] | None:
    g = _random_map_or_epi(rng, ring)
    if rng.random() < 0.5:
        head = random_ses(rng, ring)
        ext = twisted_extension(head.a, g.source, random_chain_map(rng, g.source, shift(head.a, 1)))
        f = ext.p
    else:
        f = random_chain_map(rng, random_complex(rng, ring, max_rank=2), g.source)
    if admissible_epi(g @ f) is None:
        return None
    if admissible_epi(g) is None:
        return False, "g∘f dopuszczalny, g nie"
    return True, ""


def _twisted_sum(rng, f: ChainMap, h: ChainMap):
    """v∘(f ⊕ h)∘u⁻¹ w losowych bazach (u, v izomorfizmy) z włożeniami i retrakcjami f"""
    src, tgt = direct_sum_maps(f.source, h.source), direct_sum_maps(f.target, h.target)
    u, v = random_isomorphism(rng, src.total), random_isomorphism(rng, tgt.total)
    big = v @ direct_sum_of_maps(f, h) @ inverse_map(u)
    sections = (u @ src.inj_first, v @ tgt.inj_first)
    retractions = (src.proj_first @ inverse_map(u), tgt.proj_first @ inverse_map(v))
    return big, sections, retractions


def _retract_diagram_holds(f: ChainMap, big: ChainMap, sections, retractions) -> bool:
    (s_in, s_out), (r_in, r_out) = sections, retractions
    return (big @ s_in == s_out @ f and r_out @ big == f @ r_in
            and r_in @ s_in == f.source.identity() and r_out @ s_out == f.target.identity())


def _clause_retract_mono(rng, ring) -> tuple[bool, str] | None:
    f = _random_map_or_mono(rng, ring)
    big, sections, retractions = _twisted_sum(rng, f, _random_map_or_mono(rng, ring))
    if not _retract_diagram_holds(f, big, sections, retractions):
        return False, "diagram retraktu nie komutuje"
    if admissible_mono(big) is None:
        return None
    if admissible_mono(f) is None:
        return False, "retrakt dopuszczalnego mono nie jest dopuszczalny"
    g = chain_retraction(f)
    if g is not None and not retract_embedding(f, g).ok:
        return False, "diagram (1; -f) nie komutuje"
    return True, ""


def _clause_retract_epi(rng, ring) -> tuple[bool, str] | None:
    f = _random_map_or_epi(rng, ring)
    big, sections, retractions = _twisted_sum(rng, f, _random_map_or_epi(rng, ring))
    if not _retract_diagram_holds(f, big, sections, retractions):
        return False, "diagram retraktu nie komutuje"
    if admissible_epi(big) is None:
        return None
    if admissible_epi(f) is None:
        return False, "retrakt dopuszczalnego epi nie jest dopuszczalny"
    return True, ""


def _clause_iso_closure(rng, ring) -> tuple[bool, str]:
    ses = random_ses(rng, ring)
    before = random_isomorphism(rng, ses.a)
    after = random_isomorphism(rng, ses.b)
    if admissible_mono(after @ ses.i @ inverse_map(before)) is None:
        return False, "mono izomorficzny z dopuszczalnym nie jest dopuszczalny"
    if admissible_epi(ses.p @ inverse_map(after)) is None:
        return False, "epi izomorficzny z dopuszczalnym nie jest dopuszczalny"
    return True, ""


AXIOM_CLAUSES: dict[str, Callable] = {
    "composition": _clause_composition,
    "pushout": _clause_pushout,
    "pullback": _clause_pullback,
    "split": _clause_split,
    "cancellation_mono": _clause_cancellation_mono,
    "cancellation_epi": _clause_cancellation_epi,
    "retract_mono": _clause_retract_mono,
    "retract_epi": _clause_retract_epi,
    "iso_closure": _clause_iso_closure,
}


def run_clause(name: str, seed: int, index: int, ring: Ring) -> tuple[bool, str] | None:
    """Jedna próbka klauzuli; powtarzalna z (seed, index)"""
    stream = list(AXIOM_CLAUSES).index(name)
    return AXIOM_CLAUSES[name](sample_rng(seed, index, stream), ring)


def axiom_suite(seed: int, samples: int, ring: Ring = ZZ, verbose: bool = False) -> AxiomReport:
    """Losowa weryfikacja aksjomatów struktury dokładnej"""
    report = AxiomReport(seed, ring)
    for name in AXIOM_CLAUSES:
        result = ClauseResult(name)
        for index in range(samples):
            outcome = run_clause(name, seed, index, ring)
            result.samples += 1
            if outcome is None:
                continue
            result.hits += 1
            ok, message = outcome
            if not ok:
                result.counterexamples.append((index, message))
        report.clauses[name] = result
        if verbose:
            mark = "✅" if result.passed else "❌"
            print(f"{mark} {name}: {result.hits}/{result.samples} trafień", file=sys.stderr)
    return report
