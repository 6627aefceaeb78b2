#!/usr/bin/env python3
"""
🔍 Sprawdzanie par kotorsyjnych i struktur modelowych na próbkach

Generyczne względem instancji (kompleksy łańcuchowe albo moduły k[ε]).
Każda kontrola losuje próbki z ziarna i zwraca Verdict; kontrprzykład
to (seed, indeks, opis) i odtwarza się z tych samych argumentów.
Wynik pozytywny znaczy "brak kontrprzykładu w n próbkach", nie dowód.
"""

from __future__ import annotations

import sys
from dataclasses import dataclass, field
from typing import Any, Callable, NamedTuple

import numpy as np

from chain_complex import (
    cone, direct_sum, direct_sum_maps, random_chain_map, random_complex,
    random_isomorphism, shift, zero_complex,
)
from dw_exact import admissible_epi, admissible_mono, random_ses, twisted_extension
from exact_linalg import ZZ, PresentedGroup, Ring, rank, sample_rng
from frobenius_model import (
    MapClass, enough_injectives, enough_projectives, ext_dw, is_contractible,
)
import frobenius_model
import stable_keps
from stable_keps import KEpsModule

# ===== STAŁE KONFIGURACYJNE =====
MAX_REJECTION_RETRIES = 200   # limit losowań przy filtrowaniu predykatem
DEFAULT_SAMPLES = 100
WITNESS_SAMPLES = 5           # losowi świadkowie przy kontroli maksymalności


# ===== KLASY OBIEKTÓW =====

@dataclass(frozen=True)
class ObjectClass:
    """Predykat przynależności z opcjonalnym własnym losowaniem członków"""

    name: str
    contains: Callable[[Any], bool]
    sample: Callable[[np.random.Generator], Any] | None = None

    def __and__(self, other: "ObjectClass") -> "ObjectClass":
        if self.name == ALL.name:
            return other
        if other.name == ALL.name:
            return self
        sampler = self.sample or other.sample
        return ObjectClass(f"{self.name}∩{other.name}",
                           lambda x: self.contains(x) and other.contains(x), sampler)

    @classmethod
    def finite(cls, name: str, objects) -> "ObjectClass":
        members = tuple(objects)
        return cls(name, lambda x: x in members, lambda rng: members[int(rng.integers(len(members)))])


ALL = ObjectClass("wszystkie", lambda x: True)


class ClassSpec(NamedTuple):
    """Klasy (Q, R, W) struktury modelowej; ambient = obiekty podkategorii"""
    q: ObjectClass
    r: ObjectClass
    w: ObjectClass
    ambient: ObjectClass = ALL


class SubClasses(NamedTuple):
    fibrant: ClassSpec       # A_f
    cofibrant: ClassSpec     # A_c
    bifibrant: ClassSpec     # A_{c,f}


class Triple(NamedTuple):
    """Obiekty ciągu krótkiego dokładnego a ↣ b ↠ c"""
    a: Any
    b: Any
    c: Any


@dataclass
class Verdict:
    counterexamples: list[tuple[int, int, str]] = field(default_factory=list)
    samples_run: int = 0
    inconclusive: bool = False
    notes: list[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.counterexamples

    def merge(self, other: "Verdict", label: str = "") -> "Verdict":
        prefix = f"{label}: " if label else ""
        self.counterexamples += [(s, i, prefix + msg) for s, i, msg in other.counterexamples]
        self.samples_run += other.samples_run
        self.inconclusive = self.inconclusive or other.inconclusive
        self.notes += [prefix + note for note in other.notes]
        return self

    def summary(self) -> str:
        mark = "✅" if self.passed else "❌"
        extra = " (niekonkluzywny)" if self.inconclusive else ""
        lines = [f"{mark} {self.samples_run} próbek, {len(self.counterexamples)} kontrprzykładów{extra}"]
        lines += [f"  ❌ seed={s} indeks={i}: {msg}" for s, i, msg in self.counterexamples[:10]]
        lines += [f"  ⚠️ {note}" for note in self.notes[:10]]
        return "\n".join(lines)


# ===== INSTANCJE =====

@dataclass(frozen=True)
class ExactInstance:
    """Kategoria dokładna widziana przez kontrole"""

    name: str
    sample_object: Callable[[np.random.Generator], Any]
    sample_map: Callable[[np.random.Generator, Any, Any], Any]
    ext1: Callable[[Any, Any], PresentedGroup]
    sample_ses: Callable[[np.random.Generator], Triple]
    extension: Callable[[np.random.Generator, Any, Any], Triple]
    mono_cokernel: Callable[[Any], Any]         # kokernel albo None
    epi_kernel: Callable[[Any], Any]            # jądro albo None
    direct_sum: Callable[[Any, Any], Any]
    split_mono: Callable[[np.random.Generator, Any, Any], Any]
    factor: Callable[[Any], tuple[Any, Any]]    # f = p∘i, i trywialna kofibracja
    covers: Callable[[Any], list[Triple]]       # ciągi kończące się na x
    envelopes: Callable[[Any], list[Triple]]    # ciągi zaczynające się od x
    witnesses: Callable[[Any], list[Any]]
    zero: Any
    trivial: ObjectClass


def _dw_triple(ses) -> Triple:
    return Triple(ses.a, ses.b, ses.c)


def chain_instance(ring: Ring = ZZ, max_rank: int = 2, max_span: int = 3) -> ExactInstance:
    """Ch(R) ze strukturą stopniowo rozszczepialną; W = kompleksy ściągalne"""
    z = zero_complex(ring)

    def sample_object(rng):
        return random_complex(rng, ring, max_rank=max_rank, max_span=max_span)

    def extension(rng, a, c):
        return _dw_triple(twisted_extension(a, c, random_chain_map(rng, c, shift(a, 1))))

    def mono_cokernel(f):
        w = admissible_mono(f)
        return None if w is None else w.complement

    def epi_kernel(f):
        w = admissible_epi(f)
        return None if w is None else w.complement

    def split_mono(rng, x, y):
        inj = direct_sum_maps(x, y).inj_first
        return random_isomorphism(rng, inj.target) @ inj

    contractibles = ObjectClass("ściągalne", lambda x: is_contractible(x) is not None,
                                lambda rng: cone(sample_object(rng).identity())[0])
    return ExactInstance(
        name=f"Ch({ring})",
        sample_object=sample_object,
        sample_map=lambda rng, x, y: random_chain_map(rng, x, y),
        ext1=lambda x, y: ext_dw(1, x, y),
        sample_ses=lambda rng: _dw_triple(random_ses(rng, ring, max_rank=max_rank, max_span=max_span)),
        extension=extension,
        mono_cokernel=mono_cokernel,
        epi_kernel=epi_kernel,
        direct_sum=direct_sum,
        split_mono=split_mono,
        factor=frobenius_model.factor_trivcof_fib,
        covers=lambda x: [Triple(z, x, x), _dw_triple(enough_projectives(x))],
        envelopes=lambda x: [Triple(x, x, z), _dw_triple(enough_injectives(x))],
        witnesses=lambda x: [shift(x, 1), shift(x, -1)],
        zero=z,
        trivial=contractibles,
    )


def keps_instance(field: Ring | None = None, max_dim: int = 3) -> ExactInstance:
    """Moduły k[ε] ze wszystkimi ciągami dokładnymi; W = moduły wolne"""
    field = field or stable_keps.default_field()
    z = KEpsModule.zero(field)

    def sample_object(rng):
        return stable_keps.random_module(rng, field, max_dim=max_dim)

    def sample_ses(rng):
        f = stable_keps.random_hom(rng, sample_object(rng), sample_object(rng))
        k = stable_keps.kernel(f)
        return Triple(k.source, f.source, stable_keps.cokernel(k).target)

    def extension(rng, a, c):
        ses = stable_keps.random_extension(rng, a, c)
        return Triple(a, ses.i.target, c)

    def mono_cokernel(f):
        return stable_keps.cokernel(f).target if rank(f.matrix) == f.source.dim else None

    def epi_kernel(f):
        return stable_keps.kernel(f).source if rank(f.matrix) == f.target.dim else None

    def split_mono(rng, x, y):
        total = stable_keps.direct_sum(x, y)
        inj = stable_keps.column_hom(x.identity(), stable_keps.zero_hom(x, y))
        return stable_keps.random_basis_change(rng, total) @ inj

    def sample_free(rng):
        free = KEpsModule.free(int(rng.integers(0, max_dim // 2 + 1)), field)
        return stable_keps.random_basis_change(rng, free).target

    def triple(ses):
        return Triple(ses.i.source, ses.i.target, ses.p.target)

    return ExactInstance(
        name=f"k[ε]-mod nad {field}",
        sample_object=sample_object,
        sample_map=stable_keps.random_hom,
        ext1=stable_keps.ext1_keps,
        sample_ses=sample_ses,
        extension=extension,
        mono_cokernel=mono_cokernel,
        epi_kernel=epi_kernel,
        direct_sum=stable_keps.direct_sum,
        split_mono=split_mono,
        factor=stable_keps.factor_trivcof_fib,
        covers=lambda x: [Triple(z, x, x), triple(stable_keps.free_cover(x))],
        envelopes=lambda x: [Triple(x, x, z), triple(stable_keps.free_envelope(x))],
        witnesses=lambda x: [KEpsModule.trivial(field)],
        zero=z,
        trivial=ObjectClass("wolne", stable_keps.is_free, sample_free),
    )


# ===== LOSOWANIE CZŁONKÓW =====

class _Exhausted(Exception):
    pass


def _member(inst: ExactInstance, cls: ObjectClass, rng: np.random.Generator, ambient: ObjectClass = ALL):
    """Losowy obiekt z cls ∩ ambient; _Exhausted po MAX_REJECTION_RETRIES"""
    sampler = cls.sample or inst.sample_object
    for _ in range(MAX_REJECTION_RETRIES):
        x = sampler(rng)
        if cls.contains(x) and ambient.contains(x):
            return x
    raise _Exhausted(f"{cls.name} ∩ {ambient.name}")


def _run(seed: int, n: int, sample: Callable[[np.random.Generator], str | None],
         title: str, verbose: bool) -> Verdict:
    verdict = Verdict()
    for index in range(n):
        try:
            problem = sample(sample_rng(seed, index))
        except _Exhausted as exc:
            verdict.inconclusive = True
            verdict.notes.append(f"indeks {index}: wyczerpany limit losowań dla {exc}")
            continue
        verdict.samples_run += 1
        if problem:
            verdict.counterexamples.append((seed, index, problem))
    if verbose:
        mark = "✅" if verdict.passed else "❌"
        print(f"{mark} {title}: {verdict.samples_run}/{n} próbek, "
              f"{len(verdict.counterexamples)} kontrprzykładów", file=sys.stderr)
    return verdict


# ===== KONTROLE =====

def check_orthogonality(inst: ExactInstance, left: ObjectClass, right: ObjectClass, seed: int,
                        n: int = DEFAULT_SAMPLES, ambient: ObjectClass = ALL,
                        verbose: bool = False) -> Verdict:
    """Ext¹(F, C) = 0 dla F ∈ left, C ∈ right; maksymalność tylko refutowana"""
    notes: list[str] = []

    def sample(rng):
        f, c = _member(inst, left, rng, ambient), _member(inst, right, rng, ambient)
        group = inst.ext1(f, c)
        if not group.is_zero:
            return f"Ext¹({left.name}, {right.name}) = {group} ≠ 0"
        x = inst.sample_object(rng)
        if not ambient.contains(x):
            return None
        if not left.contains(x) and not _has_witness(inst, x, right, rng, ambient, first=True):
            notes.append(f"brak świadka Ext¹(X, C) ≠ 0 dla X ∉ {left.name}")
        if not right.contains(x) and not _has_witness(inst, x, left, rng, ambient, first=False):
            notes.append(f"brak świadka Ext¹(F, X) ≠ 0 dla X ∉ {right.name}")
        return None

    verdict = _run(seed, n, sample, f"ortogonalność ({left.name}, {right.name})", verbose)
    verdict.notes += sorted(set(notes))
    return verdict


def _has_witness(inst, x, cls: ObjectClass, rng, ambient: ObjectClass, first: bool) -> bool:
    candidates = [w for w in inst.witnesses(x) if cls.contains(w) and ambient.contains(w)]
    for _ in range(WITNESS_SAMPLES):
        try:
            candidates.append(_member(inst, cls, rng, ambient))
        except _Exhausted:
            break
    for w in candidates:
        group = inst.ext1(x, w) if first else inst.ext1(w, x)
        if not group.is_zero:
            return True
    return False


def _two_of_three(t: Triple, cls: ObjectClass) -> str | None:
    flags = [cls.contains(x) for x in t]
    if sum(flags) == 2:
        missing = "abc"[flags.index(False)]
        return f"dwa wyrazy ciągu w {cls.name}, wyraz {missing} nie"
    return None


def check_thick(inst: ExactInstance, w: ObjectClass, seed: int, n: int = DEFAULT_SAMPLES,
                ambient: ObjectClass = ALL, verbose: bool = False) -> Verdict:
    """2 z 3 wzdłuż ciągów dokładnych i zamkniętość na składniki proste"""

    def sample(rng):
        x = _member(inst, ALL, rng, ambient)
        a, c = _member(inst, w, rng, ambient), _member(inst, w, rng, ambient)
        triples = [inst.sample_ses(rng), inst.extension(rng, a, c)]
        triples += inst.covers(x) + inst.envelopes(x) + inst.covers(a) + inst.envelopes(c)
        for t in triples:
            if all(ambient.contains(o) for o in t):
                problem = _two_of_three(t, w)
                if problem:
                    return problem
        y = inst.sample_object(rng)
        for first, second in ((x, y), (a, c)):
            total = inst.direct_sum(first, second)
            if w.contains(total) and not (w.contains(first) and w.contains(second)):
                return f"składnik prosty obiektu z {w.name} spoza {w.name}"
        return None

    return _run(seed, n, sample, f"grubość {w.name}", verbose)


def check_hereditary(inst: ExactInstance, pair: tuple[ObjectClass, ObjectClass], seed: int,
                     n: int = DEFAULT_SAMPLES, ambient: ObjectClass = ALL,
                     verbose: bool = False) -> Verdict:
    """Lewa klasa zamknięta na jądra epi, prawa na kokernele mono"""
    left, right = pair

    def sample(rng):
        f, c = _member(inst, left, rng, ambient), _member(inst, right, rng, ambient)
        triples = [inst.sample_ses(rng)]
        triples += inst.covers(f) + inst.envelopes(c) + inst.covers(c) + inst.envelopes(f)
        triples.append(inst.extension(rng, _member(inst, left, rng, ambient), f))
        triples.append(inst.extension(rng, c, _member(inst, right, rng, ambient)))
        for t in triples:
            if not all(ambient.contains(o) for o in t):
                continue
            if left.contains(t.b) and left.contains(t.c) and not left.contains(t.a):
                return f"jądro epi między obiektami z {left.name} spoza {left.name}"
            if right.contains(t.a) and right.contains(t.b) and not right.contains(t.c):
                return f"kokernel mono między obiektami z {right.name} spoza {right.name}"
        return None

    return _run(seed, n, sample, f"dziedziczność ({left.name}, {right.name})", verbose)


def check_completeness(inst: ExactInstance, left: ObjectClass, right: ObjectClass, seed: int,
                       n: int = DEFAULT_SAMPLES, ambient: ObjectClass = ALL,
                       verbose: bool = False) -> Verdict:
    """Ciągi aproksymujące C ↣ F ↠ X oraz X ↣ C′ ↠ F′ (F ∈ left, C ∈ right)"""

    def sample(rng):
        x = _member(inst, ALL, rng, ambient)
        if not any(left.contains(t.b) and right.contains(t.a) for t in inst.covers(x)):
            return f"brak pokrycia z {left.name} o jądrze w {right.name}"
        if not any(right.contains(t.b) and left.contains(t.c) for t in inst.envelopes(x)):
            return f"brak otoczki w {right.name} o kokernelu w {left.name}"
        return None

    return _run(seed, n, sample, f"zupełność ({left.name}, {right.name})", verbose)


def check_summand_closure(inst: ExactInstance, member: ObjectClass, seed: int,
                          n: int = DEFAULT_SAMPLES, verbose: bool = False) -> Verdict:
    """Kokernele rozszczepialnych mono między członkami istnieją i są członkami"""

    def sample(rng):
        x, y = _member(inst, member, rng), _member(inst, member, rng)
        f = inst.split_mono(rng, x, y)
        quotient = inst.mono_cokernel(f)
        if quotient is None:
            return "rozszczepialny mono bez kokernela"
        if member.contains(f.target) and not member.contains(quotient):
            return f"kokernel rozszczepialnego mono spoza {member.name}"
        return None

    return _run(seed, n, sample, f"składniki proste {member.name}", verbose)


# ===== KLASYFIKACJA =====

def classify_by_classes(inst: ExactInstance, spec: ClassSpec, f) -> MapClass:
    """Kofibracje = mono z kokernelem w Q (trywialne: Q ∩ W), dualnie fibracje"""
    q_w, r_w = spec.q & spec.w, spec.r & spec.w
    quotient, kernel = inst.mono_cokernel(f), inst.epi_kernel(f)
    cof = quotient is not None and spec.q.contains(quotient)
    fib = kernel is not None and spec.r.contains(kernel)
    i, p = inst.factor(f)
    i_quotient, p_kernel = inst.mono_cokernel(i), inst.epi_kernel(p)
    weak = (i_quotient is not None and q_w.contains(i_quotient)
            and p_kernel is not None and r_w.contains(p_kernel))
    return MapClass(
        is_cofibration=cof,
        is_trivial_cofibration=cof and spec.w.contains(quotient),
        is_fibration=fib,
        is_trivial_fibration=fib and spec.w.contains(kernel),
        is_weak_equivalence=weak,
    )


def sub_classes(spec: ClassSpec) -> SubClasses:
    """Podkategorie obiektów fibrantnych, kofibrantnych i obu naraz"""
    q, r, w = spec.q, spec.r, spec.w
    qr = q & r
    return SubClasses(
        fibrant=ClassSpec(qr, r, w & r, r),
        cofibrant=ClassSpec(q, r & q, w & q, q),
        bifibrant=ClassSpec(qr, qr, w & qr, qr),
    )


def check_sub_model(inst: ExactInstance, spec: ClassSpec, seed: int, n: int = DEFAULT_SAMPLES,
                    verbose: bool = False) -> Verdict:
    """Pary kotorsyjne (Q, R∩W), (Q∩W, R) w A_f, A_c, A_{c,f} i typ struktury"""
    thick = check_thick(inst, spec.w, seed, n, verbose=verbose)
    if not thick.passed:
        thick.notes.append(f"{spec.w.name} nie jest gruba - podstruktury pominięte")
        return thick
    verdict = Verdict()
    subs = sub_classes(spec)
    for label, sub in zip(("A_f", "A_c", "A_cf"), subs):
        q, r, w, amb = sub
        r_w, q_w = r & w, q & w
        verdict.merge(check_orthogonality(inst, q, r_w, seed, n, amb, verbose), f"{label} (Q, R∩W)")
        verdict.merge(check_orthogonality(inst, q_w, r, seed, n, amb, verbose), f"{label} (Q∩W, R)")
        verdict.merge(check_completeness(inst, q, r_w, seed, n, amb, verbose), f"{label} (Q, R∩W)")
        verdict.merge(check_completeness(inst, q_w, r, seed, n, amb, verbose), f"{label} (Q∩W, R)")
        verdict.merge(check_hereditary(inst, (q, r_w), seed, n, amb, verbose), f"{label} (Q, R∩W)")
        verdict.merge(check_hereditary(inst, (q_w, r), seed, n, amb, verbose), f"{label} (Q∩W, R)")
        verdict.merge(_structure_type(inst, label, sub, seed, n), label)
    return verdict


def _structure_type(inst: ExactInstance, label: str, sub: ClassSpec, seed: int, n: int) -> Verdict:
    """A_f projektywna (wszystko fibrantne), A_c injektywna, A_{c,f} Frobeniusa"""
    need_r = label in ("A_f", "A_cf")
    need_q = label in ("A_c", "A_cf")

    def sample(rng):
        x = _member(inst, ALL, rng, sub.ambient)
        if need_r and not sub.r.contains(x):
            return "obiekt podkategorii nie jest fibrantny"
        if need_q and not sub.q.contains(x):
            return "obiekt podkategorii nie jest kofibrantny"
        return None

    return _run(seed, n, sample, f"typ struktury {label}", False)
