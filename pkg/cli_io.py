#!/usr/bin/env python3
"""
🧾 Dokumenty JSON i wiersz poleceń

Przykłady:
  python cli_io.py contractible fixtures/D1.json
  python cli_io.py pi fixtures/K2.json fixtures/K2.json
  python cli_io.py check axioms --ring Z --seed 1 --samples 50
  python cli_io.py --out-dir wyniki factor fixtures/incl_S0_D1.json --mode cof-trivfib

Wyniki idą na stdout, logi z czasem na stderr. Kody wyjścia:
0 sukces / werdykt pozytywny, 1 werdykt negatywny, 2 błąd użycia lub pliku.
"""

from __future__ import annotations

import argparse
import json
import re
import sys
import time
from dataclasses import dataclass
from pathlib import Path
from typing import Any

from chain_complex import ChainComplex, ChainMap, cone, direct_sum, shift
from dw_exact import AxiomReport, DwSes, axiom_suite
from exact_linalg import ZZ, ExactMatrix, PresentedGroup, Ring
from frobenius_model import (
    class_to_ses, classify, ext_dw, factor_cof_trivfib, factor_trivcof_fib, find_homotopy,
    is_contractible, path_object, pi_group, ses_to_class,
)
from hovey_checker import (
    ALL, ClassSpec, ObjectClass, Verdict, chain_instance, check_hereditary, check_orthogonality,
    check_sub_model, check_thick, keps_instance,
)
from stable_keps import KEpsHom, KEpsModule, decompose, ext1_keps, stable_hom

# ===== STAŁE KONFIGURACYJNE =====
SCHEMA_VERSION = "1.0"
EXIT_OK = 0
EXIT_FAILED = 1
EXIT_USAGE = 2
DEFAULT_SAMPLES = 100

KINDS = ("complex", "chain_map", "keps_module", "keps_hom", "verdict", "group")

COMMANDS = {
    "validate": "wczytuje dokument i sprawdza jego niezmienniki",
    "cone": "stożek odwzorowania łańcuchowego",
    "shift": "przesunięcie Σ^k kompleksu",
    "sum": "suma prosta dwóch kompleksów",
    "classify": "kofibracja / fibracja / słaba równoważność",
    "homotopy": "homotopia między dwoma odwzorowaniami albo NONE",
    "contractible": "świadek ściągalności kompleksu albo NONE",
    "pi": "grupa klas homotopii π(X, Y)",
    "ext": "Ext^n stopniowo rozszczepialnych rozszerzeń",
    "factor": "faktoryzacja f = p∘i",
    "path-object": "obiekt ścieżek Y → Y ⊕ P(Y) → Y ⊕ Y",
    "ses-class": "klasa rozszerzenia ciągu i, p",
    "class-ses": "rozszerzenie o zadanym odwzorowaniu klasyfikującym",
    "keps": "moduły nad k[ε]: decompose | stablehom | ext1",
    "check": "kontrole losowe: axioms | cotorsion | thick | hereditary | submodel",
}

_DECIMAL = re.compile(r"-?\d+")


def log_message(message: str):
    """[HH:MM:SS] komunikat na stderr"""
    timestamp = time.strftime("%H:%M:%S")
    print(f"[{timestamp}] {message}", file=sys.stderr)


# ===== DOKUMENTY =====

class DocumentError(ValueError):
    """Błąd dokumentu: składnia (linia/kolumna), pole albo złamany niezmiennik"""

    def __init__(self, message: str, path: str | None = None, line: int | None = None,
                 column: int | None = None, invariant: bool = False):
        self.path, self.line, self.column, self.invariant = path, line, column, invariant
        where = []
        if line is not None:
            where.append(f"linia {line}, kolumna {column}")
        if path:
            where.append(f"pole {path}")
        super().__init__(f"{message} ({'; '.join(where)})" if where else message)


@dataclass(frozen=True)
class Document:
    kind: str
    value: Any
    ring: Ring = ZZ
    schema_version: str = SCHEMA_VERSION

    @classmethod
    def of(cls, value: Any, ring: Ring | None = None) -> "Document":
        """Dokument z rodzajem i pierścieniem odczytanym z wartości"""
        if isinstance(value, ChainComplex):
            return cls("complex", value, value.ring)
        if isinstance(value, ChainMap):
            return cls("chain_map", value, value.ring)
        if isinstance(value, KEpsModule):
            return cls("keps_module", value, value.field)
        if isinstance(value, KEpsHom):
            return cls("keps_hom", value, value.field)
        if isinstance(value, PresentedGroup):
            return cls("group", value, value.ring)
        if isinstance(value, Verdict):
            return cls("verdict", value, ring or ZZ)
        raise TypeError(f"❌ Brak rodzaju dokumentu dla {type(value).__name__}")


def _fail(message: str, path: str, invariant: bool = False):
    raise DocumentError(f"❌ {message}", path=path, invariant=invariant)


def _integer(value, path: str) -> int:
    if isinstance(value, bool):
        _fail("oczekiwano liczby całkowitej", path)
    if isinstance(value, int):
        return value
    if isinstance(value, str) and _DECIMAL.fullmatch(value.strip()):
        return int(value)
    _fail(f"oczekiwano liczby całkowitej, jest {value!r}", path)


def _field(data: dict, key: str, path: str):
    if not isinstance(data, dict):
        _fail("oczekiwano obiektu", path)
    if key not in data:
        _fail("brak pola", f"{path}.{key}" if path else key)
    return data[key]


def _encode_matrix(m: ExactMatrix) -> list[list[str]]:
    return [[str(e) for e in row] for row in m.to_rows()]


def _decode_matrix(ring: Ring, data, rows: int, cols: int, path: str) -> ExactMatrix:
    if not isinstance(data, list) or len(data) != rows:
        _fail(f"oczekiwano {rows} wierszy", path)
    entries = []
    for i, row in enumerate(data):
        if not isinstance(row, list) or len(row) != cols:
            _fail(f"wiersz {i}: oczekiwano {cols} wpisów", path)
        entries += [_integer(e, f"{path}[{i}]") for e in row]
    return ExactMatrix(ring, rows, cols, tuple(entries))


def _encode_complex(x: ChainComplex) -> dict:
    return {
        "min_degree": x.min_degree,
        "ranks": list(x.ranks),
        "differentials": {str(n): _encode_matrix(x.d(n)) for n in x.degrees if x.d(n).rows},
    }


def _decode_complex(ring: Ring, data, path: str) -> ChainComplex:
    low = _integer(_field(data, "min_degree", path), f"{path}.min_degree")
    ranks = _field(data, "ranks", path)
    if not isinstance(ranks, list):
        _fail("oczekiwano listy rang", f"{path}.ranks")
    ranks = [_integer(r, f"{path}.ranks[{k}]") for k, r in enumerate(ranks)]
    if any(r < 0 for r in ranks):
        _fail("ujemna ranga", f"{path}.ranks")
    diffs_data = data.get("differentials", {})
    if not isinstance(diffs_data, dict):
        _fail("oczekiwano obiektu {stopień: macierz}", f"{path}.differentials")

    def rank(n):
        k = n - low
        return ranks[k] if 0 <= k < len(ranks) else 0

    degrees = range(low, low + len(ranks))
    for key in diffs_data:
        if not _DECIMAL.fullmatch(key) or int(key) not in degrees:
            _fail(f"różniczka w stopniu {key} poza zakresem rang", f"{path}.differentials.{key}")
    diffs = []
    for n in degrees:
        entry = diffs_data.get(str(n))
        if entry is None:
            diffs.append(ExactMatrix.zeros(ring, rank(n - 1), rank(n)))
        else:
            diffs.append(_decode_matrix(ring, entry, rank(n - 1), rank(n), f"{path}.differentials.{n}"))
    x = ChainComplex(ring, low, tuple(ranks), tuple(diffs))
    check = x.validate()
    if not check.ok:
        _fail(f"stopień {check.degree}: {check.message.removeprefix('❌ ')}", f"{path}.differentials.{check.degree}", invariant=True)
    return x


def _encode_map(f: ChainMap) -> dict:
    return {
        "source": _encode_complex(f.source),
        "target": _encode_complex(f.target),
        "components": {str(n): _encode_matrix(f.component(n)) for n in f.source.degrees},
    }


def _decode_map(ring: Ring, data, path: str) -> ChainMap:
    source = _decode_complex(ring, _field(data, "source", path), f"{path}.source")
    target = _decode_complex(ring, _field(data, "target", path), f"{path}.target")
    comps_data = data.get("components", {})
    if not isinstance(comps_data, dict):
        _fail("oczekiwano obiektu {stopień: macierz}", f"{path}.components")
    for key in comps_data:
        if not _DECIMAL.fullmatch(key) or int(key) not in source.degrees:
            _fail(f"składowa w stopniu {key} poza źródłem", f"{path}.components.{key}")
    comps = {}
    for n in source.degrees:
        if str(n) in comps_data:
            comps[n] = _decode_matrix(ring, comps_data[str(n)], target.rank(n), source.rank(n),
                                      f"{path}.components.{n}")
    f = ChainMap.from_components(source, target, comps)
    check = f.validate()
    if not check.ok:
        _fail(f"stopień {check.degree}: {check.message.removeprefix('❌ ')}", f"{path}.components.{check.degree}", invariant=True)
    return f


def _encode_module(m: KEpsModule) -> dict:
    return {"dim": m.dim, "eps": _encode_matrix(m.eps)}


def _decode_module(ring: Ring, data, path: str) -> KEpsModule:
    dim = _integer(_field(data, "dim", path), f"{path}.dim")
    if dim < 0:
        _fail("ujemny wymiar", f"{path}.dim")
    eps = _decode_matrix(ring, _field(data, "eps", path), dim, dim, f"{path}.eps")
    try:
        return KEpsModule(ring, dim, eps)
    except ValueError as exc:
        _fail(str(exc).removeprefix("❌ "), f"{path}.eps", invariant=True)


def _decode_keps_hom(ring: Ring, data, path: str) -> KEpsHom:
    source = _decode_module(ring, _field(data, "source", path), f"{path}.source")
    target = _decode_module(ring, _field(data, "target", path), f"{path}.target")
    matrix = _decode_matrix(ring, _field(data, "matrix", path), target.dim, source.dim, f"{path}.matrix")
    try:
        return KEpsHom(source, target, matrix)
    except ValueError as exc:
        _fail(str(exc).removeprefix("❌ "), f"{path}.matrix", invariant=True)


def _decode_group(ring: Ring, data, path: str) -> PresentedGroup:
    torsion = _field(data, "torsion", path)
    if not isinstance(torsion, list):
        _fail("oczekiwano listy czynników", f"{path}.torsion")
    factors = tuple(_integer(t, f"{path}.torsion[{k}]") for k, t in enumerate(torsion))
    if any(t < 2 for t in factors) or any(b % a for a, b in zip(factors, factors[1:])):
        _fail("czynniki niezmiennicze muszą być ≥ 2 i dzielić kolejne", f"{path}.torsion", invariant=True)
    free_rank = _integer(_field(data, "free_rank", path), f"{path}.free_rank")
    if free_rank < 0:
        _fail("ujemna ranga wolna", f"{path}.free_rank")
    if ring.is_field and factors:
        _fail("przestrzeń nad F_p nie ma torsji", f"{path}.torsion", invariant=True)
    return PresentedGroup(ring, factors, free_rank)


def _decode_verdict(data, path: str) -> Verdict:
    raw = _field(data, "counterexamples", path)
    if not isinstance(raw, list):
        _fail("oczekiwano listy", f"{path}.counterexamples")
    counterexamples = []
    for k, item in enumerate(raw):
        where = f"{path}.counterexamples[{k}]"
        if not isinstance(item, list) or len(item) != 3 or not isinstance(item[2], str):
            _fail("oczekiwano [seed, indeks, opis]", where)
        counterexamples.append((_integer(item[0], where), _integer(item[1], where), item[2]))
    samples_run = _integer(_field(data, "samples_run", path), f"{path}.samples_run")
    if samples_run < 0:
        _fail("ujemna liczba próbek", f"{path}.samples_run")
    inconclusive = data.get("inconclusive", False)
    if not isinstance(inconclusive, bool):
        _fail("oczekiwano true/false", f"{path}.inconclusive")
    notes = data.get("notes", [])
    if not isinstance(notes, list) or not all(isinstance(n, str) for n in notes):
        _fail("oczekiwano listy napisów", f"{path}.notes")
    verdict = Verdict(counterexamples=counterexamples, samples_run=samples_run,
                      inconclusive=inconclusive, notes=list(notes))
    if "passed" in data and bool(data["passed"]) != verdict.passed:
        _fail("passed sprzeczne z listą kontrprzykładów", f"{path}.passed", invariant=True)
    return verdict


def to_json(doc: Document) -> dict:
    v = doc.value
    if doc.kind == "complex":
        payload = _encode_complex(v)
    elif doc.kind == "chain_map":
        payload = _encode_map(v)
    elif doc.kind == "keps_module":
        payload = _encode_module(v)
    elif doc.kind == "keps_hom":
        payload = {"source": _encode_module(v.source), "target": _encode_module(v.target),
                   "matrix": _encode_matrix(v.matrix)}
    elif doc.kind == "group":
        payload = {"torsion": [str(t) for t in v.torsion], "free_rank": v.free_rank, "text": str(v)}
    elif doc.kind == "verdict":
        payload = {"passed": v.passed, "samples_run": v.samples_run, "inconclusive": v.inconclusive,
                   "counterexamples": [list(c) for c in v.counterexamples], "notes": list(v.notes)}
    else:
        raise DocumentError(f"❌ Nieznany rodzaj dokumentu: {doc.kind}", path="kind")
    return {"schema_version": doc.schema_version, "ring": doc.ring.name, "kind": doc.kind, "payload": payload}


def from_json(data) -> Document:
    version = _field(data, "schema_version", "")
    if version != SCHEMA_VERSION:
        _fail(f"nieobsługiwana wersja schematu {version!r} (obsługiwana {SCHEMA_VERSION})", "schema_version")
    try:
        ring = Ring.parse(str(_field(data, "ring", "")))
    except ValueError as exc:
        raise DocumentError(str(exc), path="ring") from exc
    kind = _field(data, "kind", "")
    payload = _field(data, "payload", "")
    if kind == "complex":
        value = _decode_complex(ring, payload, "payload")
    elif kind == "chain_map":
        value = _decode_map(ring, payload, "payload")
    elif kind == "keps_module":
        value = _decode_module(ring, payload, "payload")
    elif kind == "keps_hom":
        value = _decode_keps_hom(ring, payload, "payload")
    elif kind == "group":
        value = _decode_group(ring, payload, "payload")
    elif kind == "verdict":
        value = _decode_verdict(payload, "payload")
    else:
        _fail(f"nieznany rodzaj {kind!r}, oczekiwano jednego z {', '.join(KINDS)}", "kind")
    return Document(kind, value, ring, version)


def load(path) -> Document:
    text = Path(path).read_text(encoding="utf-8")
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise DocumentError(f"❌ Błąd składni JSON: {exc.msg}", line=exc.lineno, column=exc.colno) from exc
    return from_json(data)


def store(doc: Document, path):
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(json.dumps(to_json(doc), indent=2, ensure_ascii=False) + "\n", encoding="utf-8")


def _load_kind(path, kind: str):
    doc = load(path)
    if doc.kind != kind:
        raise DocumentError(f"❌ {path}: oczekiwano dokumentu {kind}, jest {doc.kind}", path="kind")
    return doc.value


def axiom_verdict(report: AxiomReport) -> Verdict:
    """Raport zestawu aksjomatów jako Verdict (opis poprzedzony nazwą klauzuli)"""
    return Verdict(
        counterexamples=[(report.seed, index, f"{name}: {msg}") for name, index, msg in report.counterexamples],
        samples_run=sum(c.samples for c in report.clauses.values()),
    )


# ===== POLECENIA =====

def _emit(args, name: str, value: Any, ring: Ring | None = None):
    if not args.out_dir:
        return
    target = Path(args.out_dir) / f"{name}.json"
    store(Document.of(value, ring), target)
    log_message(f"💾 Zapisano {target}")


def _print_homotopy(h):
    for n in h.f.source.degrees:
        print(f"h_{n} = {h.component(n)}")


def cmd_validate(args) -> int:
    try:
        doc = load(args.file)
    except DocumentError as exc:
        if not exc.invariant:
            raise
        print(str(exc))
        return EXIT_FAILED
    print(f"✅ {doc.kind} nad {doc.ring}: poprawny")
    return EXIT_OK


def cmd_cone(args) -> int:
    c, _, _ = cone(_load_kind(args.map, "chain_map"))
    print(c)
    _emit(args, "cone", c)
    return EXIT_OK


def cmd_shift(args) -> int:
    x = shift(_load_kind(args.complex, "complex"), args.k)
    print(x)
    _emit(args, "shift", x)
    return EXIT_OK


def cmd_sum(args) -> int:
    x = direct_sum(_load_kind(args.first, "complex"), _load_kind(args.second, "complex"))
    print(x)
    _emit(args, "sum", x)
    return EXIT_OK


def cmd_classify(args) -> int:
    flags = classify(_load_kind(args.map, "chain_map"))
    for name, value in flags._asdict().items():
        print(f"{name}: {'tak' if value else 'nie'}")
    return EXIT_OK


def cmd_homotopy(args) -> int:
    h = find_homotopy(_load_kind(args.f, "chain_map"), _load_kind(args.g, "chain_map"))
    if h is None:
        print("NONE")
        return EXIT_FAILED
    _print_homotopy(h)
    return EXIT_OK


def cmd_contractible(args) -> int:
    h = is_contractible(_load_kind(args.complex, "complex"))
    if h is None:
        print("NONE")
        return EXIT_FAILED
    _print_homotopy(h)
    return EXIT_OK


def cmd_pi(args) -> int:
    group = pi_group(_load_kind(args.x, "complex"), _load_kind(args.y, "complex"))
    print(group.group)
    for k, gen in enumerate(group.generators):
        print(f"generator {k}: {gen}")
    _emit(args, "pi", group.group)
    return EXIT_OK


def cmd_ext(args) -> int:
    group = ext_dw(args.n, _load_kind(args.x, "complex"), _load_kind(args.y, "complex"))
    print(group)
    _emit(args, "ext", group)
    return EXIT_OK


def cmd_factor(args) -> int:
    f = _load_kind(args.map, "chain_map")
    i, p = factor_trivcof_fib(f) if args.mode == "trivcof-fib" else factor_cof_trivfib(f)
    print(f"i = {i}\np = {p}")
    _emit(args, "factor_i", i)
    _emit(args, "factor_p", p)
    return EXIT_OK


def cmd_path_object(args) -> int:
    i, p = path_object(_load_kind(args.complex, "complex"))
    print(i.target)
    print(f"i = {i}\np = {p}")
    _emit(args, "path_i", i)
    _emit(args, "path_p", p)
    return EXIT_OK


def cmd_ses_class(args) -> int:
    ses = DwSes.from_maps(_load_kind(args.i, "chain_map"), _load_kind(args.p, "chain_map"))
    if ses is None:
        print("❌ Para (i, p) nie jest ciągiem stopniowo rozszczepialnym")
        return EXIT_FAILED
    cls = ses_to_class(ses)
    print(f"Ext¹ = {cls.group}")
    print(f"klasa = {list(cls.coordinates)}")
    _emit(args, "ses_class", cls.classifying_map)
    return EXIT_OK


def cmd_class_ses(args) -> int:
    ses = class_to_ses(_load_kind(args.map, "chain_map"))
    print(ses.b)
    _emit(args, "class_ses_i", ses.i)
    _emit(args, "class_ses_p", ses.p)
    return EXIT_OK


def cmd_keps(args) -> int:
    m = _load_kind(args.m, "keps_module")
    if args.action == "decompose":
        d = decompose(m)
        print(f"k^{d.a} ⊕ k[ε]^{d.b}")
        _emit(args, "decompose", d.normal)
        return EXIT_OK
    if args.n is None:
        raise DocumentError(f"❌ keps {args.action} wymaga dwóch modułów")
    n = _load_kind(args.n, "keps_module")
    if args.action == "stablehom":
        group = stable_hom(m, n)
        print(group.group)
        for k, gen in enumerate(group.generators):
            print(f"generator {k}: {gen.matrix}")
        _emit(args, "stablehom", group.group)
        return EXIT_OK
    group = ext1_keps(m, n, presentation=args.presentation)
    print(group)
    _emit(args, "ext1", group)
    return EXIT_OK


def _named_class(inst, name: str) -> ObjectClass:
    """all | trivial | zero | lista plików JSON oddzielona przecinkami"""
    if name == "all":
        return ALL
    if name == "trivial":
        return inst.trivial
    if name == "zero":
        return ObjectClass.finite("{0}", [inst.zero])
    paths = name.split(",")
    return ObjectClass.finite("{" + ", ".join(Path(p).stem for p in paths) + "}", [load(p).value for p in paths])


def _instance(args):
    ring = Ring.parse(args.ring) if args.ring else None
    if args.instance == "keps":
        return keps_instance(ring)
    return chain_instance(ring or ZZ)


def cmd_check(args) -> int:
    log_message(f"🧮 Kontrola {args.kind}: seed={args.seed}, próbek {args.samples}")
    if args.kind == "axioms":
        report = axiom_suite(args.seed, args.samples, Ring.parse(args.ring or "Z"), verbose=args.verbose)
        print(report.summary())
        verdict = axiom_verdict(report)
    else:
        inst = _instance(args)
        right_name = args.right or ("all" if args.kind == "submodel" else "trivial")
        left, right = _named_class(inst, args.left), _named_class(inst, right_name)
        w = _named_class(inst, args.w)
        if args.kind == "cotorsion":
            verdict = check_orthogonality(inst, left, right, args.seed, args.samples, verbose=args.verbose)
        elif args.kind == "thick":
            verdict = check_thick(inst, w, args.seed, args.samples, verbose=args.verbose)
        elif args.kind == "hereditary":
            verdict = check_hereditary(inst, (left, right), args.seed, args.samples, verbose=args.verbose)
        else:
            spec = ClassSpec(left, right, w)
            verdict = check_sub_model(inst, spec, args.seed, args.samples, verbose=args.verbose)
        print(verdict.summary())
    _emit(args, f"check_{args.kind}", verdict)
    log_message("✅ Brak kontrprzykładów" if verdict.passed else "❌ Znaleziono kontrprzykłady")
    return EXIT_OK if verdict.passed else EXIT_FAILED


# ===== PARSER =====

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(description="Dokładne struktury modelowe na kompleksach łańcuchowych")
    parser.add_argument("--out-dir", default=None, help="katalog na dokumenty wynikowe (domyślnie brak zapisu)")
    sub = parser.add_subparsers(dest="command", required=True)

    def command(name, handler, *positional):
        p = sub.add_parser(name, help=COMMANDS[name])
        for arg in positional:
            p.add_argument(arg)
        p.set_defaults(handler=handler)
        return p

    command("validate", cmd_validate, "file")
    command("cone", cmd_cone, "map")
    command("shift", cmd_shift, "complex").add_argument("k", type=int)
    command("sum", cmd_sum, "first", "second")
    command("classify", cmd_classify, "map")
    command("homotopy", cmd_homotopy, "f", "g")
    command("contractible", cmd_contractible, "complex")
    command("pi", cmd_pi, "x", "y")
    ext = sub.add_parser("ext", help=COMMANDS["ext"])
    ext.add_argument("n", type=int)
    ext.add_argument("x")
    ext.add_argument("y")
    ext.set_defaults(handler=cmd_ext)
    command("factor", cmd_factor, "map").add_argument(
        "--mode", choices=("trivcof-fib", "cof-trivfib"), default="trivcof-fib")
    command("path-object", cmd_path_object, "complex")
    command("ses-class", cmd_ses_class, "i", "p")
    command("class-ses", cmd_class_ses, "map")

    keps = command("keps", cmd_keps)
    keps.add_argument("action", choices=("decompose", "stablehom", "ext1"))
    keps.add_argument("m")
    keps.add_argument("n", nargs="?")
    keps.add_argument("--presentation", choices=("minimal", "cover"), default="minimal")

    check = command("check", cmd_check)
    check.add_argument("kind", choices=("axioms", "cotorsion", "thick", "hereditary", "submodel"))
    check.add_argument("--seed", type=int, required=True)
    check.add_argument("--samples", type=int, default=DEFAULT_SAMPLES)
    check.add_argument("--ring", default=None, help="Z albo F_p (domyślnie Z; dla keps F_2)")
    check.add_argument("--instance", choices=("chain", "keps"), default="chain")
    check.add_argument("--left", default="all")
    check.add_argument("--right", default=None, help="domyślnie trivial (submodel: all)")
    check.add_argument("--w", default="trivial")
    check.add_argument("-v", "--verbose", action="store_true")
    return parser


def run(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    try:
        return args.handler(args)
    except (ValueError, KeyError, TypeError, OSError) as exc:
        log_message(f"❌ {exc}")
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(run())
