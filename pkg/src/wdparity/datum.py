"""Canonical datum-file serialization.

One versioned JSON-based text format carries three kinds of payload:

* ``global``: base-field invariants plus place blocks, parsing to a
  GlobalPointDatum;
* ``local``: a single place block, parsing to a LocalInput (representation,
  pairing and optionally the full Panchishkin data);
* ``numerology``: a cohomology-dimension block pair, parsing to a
  FormularyInput.

Matrices are row-major arrays of scalar strings over the place's declared
field; Hodge-Tate data are ``[weight, multiplicity]`` pairs.  Serialization is
canonical (sorted keys, two-space indent, trailing newline) so that
``parse(serialize(x)) == x`` and serialized fixtures round-trip bit-exactly.
"""

import json
from dataclasses import dataclass

from .eps import HodgeTateData, PSTLocalDatum
from .errors import DatumError, WDParityError
from .numerology import DeRhamNumerology
from .parity import AwayPlace, GlobalPointDatum, PAdicPlace
from .scalars import CycloWeilField, field, parse_scalar_in_field, serialize_scalar
from .symplectic import SympPairing, lagrangian_split, validate_pairing
from .wd import WDRep

FORMAT = "wdparity-datum"
VERSION = 1


@dataclass(frozen=True)
class LocalInput:
    """A single place's data: the representation with its pairing, plus the
    optional Panchishkin datum when the file carries the p-adic fields."""

    name: str
    rep: WDRep
    pairing: SympPairing
    pst: object = None  # PSTLocalDatum | None


@dataclass(frozen=True)
class FormularyInput:
    numerology: DeRhamNumerology
    numerology_dual: DeRhamNumerology


# ---------------------------------------------------------------------------
# serialization


def _poly(a) -> str:
    return serialize_scalar(a).split(" | ")[0]


def _matrix_doc(M):
    return [[_poly(a) for a in row] for row in M]


def _ht_doc(ht: HodgeTateData):
    return [[w, m] for w, m in ht.entries]


def _numerology_doc(n: DeRhamNumerology):
    return {
        "d": n.d,
        "kdeg": n.kdeg,
        "ht": _ht_doc(n.ht),
        "h0": n.h0,
        "h0_dual": n.h0_dual,
        "h0_t": n.h0_t,
        "h0_dual_t": n.h0_dual_t,
    }


def _rep_doc(doc, rep: WDRep, gram):
    doc["field"] = {"conductor": rep.field.N, "q": rep.field.q}
    doc["frobenius"] = _matrix_doc(rep.frobenius)
    doc["monodromy"] = _matrix_doc(rep.monodromy)
    doc["inertia"] = [_matrix_doc(g) for g in rep.inertia]
    doc["artm1_index"] = rep.artm1_index
    doc["gram"] = _matrix_doc(gram)
    return doc


def _away_doc(place: AwayPlace):
    doc = {"name": place.name, "type": "away", "ramified": place.ramified}
    return _rep_doc(doc, place.rep, place.pairing.gram)


def _pst_doc(name: str, datum: PSTLocalDatum):
    doc = {"name": name, "type": "p-adic"}
    _rep_doc(doc, datum.delta, datum.split.pairing.gram)
    doc["lagrangian"] = _matrix_doc(datum.split.plus)
    doc["ht"] = _ht_doc(datum.ht)
    doc["ht_plus"] = _ht_doc(datum.ht_plus)
    doc["ht_minus"] = _ht_doc(datum.ht_minus)
    if datum.det_plus_at_minus_one is not None:
        doc["det_plus_at_minus_one"] = datum.det_plus_at_minus_one
    return doc


def _padic_doc(place: PAdicPlace):
    doc = _pst_doc(place.name, place.datum)
    doc["numerology"] = _numerology_doc(place.numerology)
    doc["numerology_dual"] = _numerology_doc(place.numerology_dual)
    return doc


def serialize(obj) -> str:
    """Canonical text form of a global datum, a local input or a numerology
    pair."""
    doc = {"format": FORMAT, "version": VERSION}
    if isinstance(obj, GlobalPointDatum):
        doc["kind"] = "global"
        block = {"degree": obj.degree, "r2": obj.r2, "dim": obj.dim}
        if obj.h1f is not None:
            block["h1f"] = obj.h1f
        doc["global"] = block
        doc["places"] = [_away_doc(p) for p in obj.away_places]
        doc["places"] += [_padic_doc(p) for p in obj.p_places]
    elif isinstance(obj, LocalInput):
        doc["kind"] = "local"
        if obj.pst is None:
            from .parity import _matrices_ramified

            block = {"name": obj.name, "type": "away",
                     "ramified": _matrices_ramified(obj.rep)}
            _rep_doc(block, obj.rep, obj.pairing.gram)
        else:
            block = _pst_doc(obj.name, obj.pst)
        doc["place"] = block
    elif isinstance(obj, FormularyInput):
        doc["kind"] = "numerology"
        doc["numerology"] = _numerology_doc(obj.numerology)
        doc["numerology_dual"] = _numerology_doc(obj.numerology_dual)
    else:
        raise DatumError(f"cannot serialize {type(obj).__name__}")
    return json.dumps(doc, sort_keys=True, indent=2) + "\n"


# ---------------------------------------------------------------------------
# parsing


def parse(path) -> object:
    with open(path, "r", encoding="utf-8") as fh:
        text = fh.read()
    return parse_text(text, where=str(path))


def parse_text(text: str, where: str = "<datum>") -> object:
    if not text.strip():
        raise DatumError(f"{where}: empty datum file")
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise DatumError(
            f"{where}: line {exc.lineno} column {exc.colno}: {exc.msg}"
        ) from None
    ctx = _Ctx(where)
    top = {"format": None, "version": None, "kind": None}
    kind = _str(ctx, _get(ctx, doc, "kind", ""), "kind")
    if kind == "global":
        top.update({"global": None, "places": None})
    elif kind == "local":
        top.update({"place": None})
    elif kind == "numerology":
        top.update({"numerology": None, "numerology_dual": None})
    else:
        ctx.fail("kind", f"unknown kind {kind!r}")
    _check_keys(ctx, doc, "", top, required=set(top) - {"numerology_dual"})
    if _str(ctx, doc["format"], "format") != FORMAT:
        ctx.fail("format", f"unknown format {doc['format']!r}")
    if doc["version"] != VERSION:
        ctx.fail("version",
                 f"unsupported version {doc['version']!r} (expected {VERSION})")
    if kind == "global":
        return _parse_global(ctx, doc)
    if kind == "local":
        return _parse_local(ctx, doc["place"], "place")
    return _parse_formulary(ctx, doc)


class _Ctx:
    def __init__(self, where):
        self.where = where

    def fail(self, path, msg):
        at = f" at {path}" if path else ""
        raise DatumError(f"{self.where}: {msg}{at}")


def _get(ctx, doc, key, path):
    if not isinstance(doc, dict):
        ctx.fail(path, "expected an object")
    if key not in doc:
        ctx.fail(path, f"missing field {key!r}")
    return doc[key]


def _check_keys(ctx, doc, path, allowed, required=None):
    if not isinstance(doc, dict):
        ctx.fail(path, "expected an object")
    for key in doc:
        if key not in allowed:
            ctx.fail(path, f"unknown field {key!r}")
    for key in sorted(allowed if required is None else required):
        if key not in doc:
            ctx.fail(path, f"missing field {key!r}")


def _int(ctx, val, path):
    if not isinstance(val, int) or isinstance(val, bool):
        ctx.fail(path, f"expected an integer, got {val!r}")
    return val


def _str(ctx, val, path):
    if not isinstance(val, str):
        ctx.fail(path, f"expected a string, got {val!r}")
    return val


def _bool(ctx, val, path):
    if not isinstance(val, bool):
        ctx.fail(path, f"expected true or false, got {val!r}")
    return val


def _list(ctx, val, path):
    if not isinstance(val, list):
        ctx.fail(path, f"expected an array, got {val!r}")
    return val


def _field(ctx, doc, path) -> CycloWeilField:
    _check_keys(ctx, doc, path, {"conductor", "q"})
    N = _int(ctx, doc["conductor"], f"{path}.conductor")
    q = _int(ctx, doc["q"], f"{path}.q")
    try:
        return field(N, q)
    except WDParityError as exc:
        ctx.fail(path, str(exc))


def _matrix(ctx, fld, val, path):
    rows = _list(ctx, val, path)
    out = []
    for i, row in enumerate(rows):
        row = _list(ctx, row, f"{path}[{i}]")
        entries = []
        for j, cell in enumerate(row):
            cell = _str(ctx, cell, f"{path}[{i}][{j}]")
            try:
                entries.append(parse_scalar_in_field(cell, fld))
            except WDParityError as exc:
                ctx.fail(f"{path}[{i}][{j}]", str(exc))
        out.append(tuple(entries))
    return tuple(out)


def _ht(ctx, val, path) -> HodgeTateData:
    pairs = []
    for i, item in enumerate(_list(ctx, val, path)):
        item = _list(ctx, item, f"{path}[{i}]")
        if len(item) != 2:
            ctx.fail(f"{path}[{i}]", "expected a [weight, multiplicity] pair")
        pairs.append((_int(ctx, item[0], f"{path}[{i}][0]"),
                      _int(ctx, item[1], f"{path}[{i}][1]")))
    try:
        return HodgeTateData(pairs)
    except WDParityError as exc:
        ctx.fail(path, str(exc))


def _numerology(ctx, doc, path) -> DeRhamNumerology:
    keys = {"d", "kdeg", "ht", "h0", "h0_dual", "h0_t", "h0_dual_t"}
    _check_keys(ctx, doc, path, keys)
    try:
        return DeRhamNumerology(
            d=_int(ctx, doc["d"], f"{path}.d"),
            kdeg=_int(ctx, doc["kdeg"], f"{path}.kdeg"),
            ht=_ht(ctx, doc["ht"], f"{path}.ht"),
            h0=_int(ctx, doc["h0"], f"{path}.h0"),
            h0_dual=_int(ctx, doc["h0_dual"], f"{path}.h0_dual"),
            h0_t=_int(ctx, doc["h0_t"], f"{path}.h0_t"),
            h0_dual_t=_int(ctx, doc["h0_dual_t"], f"{path}.h0_dual_t"),
        )
    except WDParityError as exc:
        ctx.fail(path, str(exc))


def _rep_and_gram(ctx, doc, path):
    fld = _field(ctx, _get(ctx, doc, "field", path), f"{path}.field")
    F = _matrix(ctx, fld, _get(ctx, doc, "frobenius", path), f"{path}.frobenius")
    N = _matrix(ctx, fld, _get(ctx, doc, "monodromy", path), f"{path}.monodromy")
    iner = tuple(
        _matrix(ctx, fld, g, f"{path}.inertia[{i}]")
        for i, g in enumerate(_list(ctx, _get(ctx, doc, "inertia", path),
                                    f"{path}.inertia"))
    )
    idx = _int(ctx, _get(ctx, doc, "artm1_index", path), f"{path}.artm1_index")
    try:
        rep = WDRep(fld, F, N, iner, idx)
    except WDParityError as exc:
        ctx.fail(path, str(exc))
    gram = _matrix(ctx, fld, _get(ctx, doc, "gram", path), f"{path}.gram")
    try:
        pairing = validate_pairing(rep, gram)
    except WDParityError as exc:
        ctx.fail(f"{path}.gram", str(exc))
    return rep, pairing


_AWAY_KEYS = {"name", "type", "ramified", "field", "frobenius", "monodromy",
              "inertia", "artm1_index", "gram"}
_PADIC_KEYS = {"name", "type", "field", "frobenius", "monodromy", "inertia",
               "artm1_index", "gram", "lagrangian", "ht", "ht_plus",
               "ht_minus", "det_plus_at_minus_one", "numerology",
               "numerology_dual"}


def _parse_away(ctx, doc, path) -> AwayPlace:
    _check_keys(ctx, doc, path, _AWAY_KEYS)
    rep, pairing = _rep_and_gram(ctx, doc, path)
    return AwayPlace(
        name=_str(ctx, doc["name"], f"{path}.name"),
        rep=rep,
        pairing=pairing,
        ramified=_bool(ctx, doc["ramified"], f"{path}.ramified"),
    )


def _parse_pst(ctx, doc, path):
    rep, pairing = _rep_and_gram(ctx, doc, path)
    plus = _matrix(ctx, rep.field, _get(ctx, doc, "lagrangian", path),
                   f"{path}.lagrangian")
    try:
        split = lagrangian_split(pairing, plus)
    except WDParityError as exc:
        ctx.fail(f"{path}.lagrangian", str(exc))
    sign = None
    if "det_plus_at_minus_one" in doc:
        sign = _int(ctx, doc["det_plus_at_minus_one"],
                    f"{path}.det_plus_at_minus_one")
    try:
        return PSTLocalDatum(
            delta=rep,
            ht=_ht(ctx, _get(ctx, doc, "ht", path), f"{path}.ht"),
            split=split,
            ht_plus=_ht(ctx, _get(ctx, doc, "ht_plus", path), f"{path}.ht_plus"),
            ht_minus=_ht(ctx, _get(ctx, doc, "ht_minus", path),
                         f"{path}.ht_minus"),
            det_plus_at_minus_one=sign,
        )
    except WDParityError as exc:
        ctx.fail(path, str(exc))


def _parse_padic(ctx, doc, path) -> PAdicPlace:
    _check_keys(ctx, doc, path, _PADIC_KEYS,
                required={"name", "type", "field", "frobenius", "monodromy",
                          "inertia", "artm1_index", "gram", "lagrangian",
                          "ht", "ht_plus", "ht_minus", "numerology"})
    pst = _parse_pst(ctx, doc, path)
    n = _numerology(ctx, doc["numerology"], f"{path}.numerology")
    if "numerology_dual" in doc:
        n_dual = _numerology(ctx, doc["numerology_dual"],
                             f"{path}.numerology_dual")
    else:
        n_dual = n.dual()
    return PAdicPlace(name=_str(ctx, doc["name"], f"{path}.name"),
                      datum=pst, numerology=n, numerology_dual=n_dual)


def _parse_place(ctx, doc, path):
    kind = _str(ctx, _get(ctx, doc, "type", path), f"{path}.type")
    if kind == "away":
        return _parse_away(ctx, doc, path)
    if kind == "p-adic":
        return _parse_padic(ctx, doc, path)
    ctx.fail(f"{path}.type", f"unknown place type {kind!r}")


def _parse_global(ctx, doc) -> GlobalPointDatum:
    block = doc["global"]
    _check_keys(ctx, block, "global", {"degree", "r2", "dim", "h1f"},
                required={"degree", "r2", "dim"})
    h1f = None
    if "h1f" in block:
        h1f = _int(ctx, block["h1f"], "global.h1f")
    away, at_p = [], []
    for i, place in enumerate(_list(ctx, doc["places"], "places")):
        parsed = _parse_place(ctx, place, f"places[{i}]")
        (away if isinstance(parsed, AwayPlace) else at_p).append(parsed)
    try:
        return GlobalPointDatum(
            degree=_int(ctx, block["degree"], "global.degree"),
            r2=_int(ctx, block["r2"], "global.r2"),
            dim=_int(ctx, block["dim"], "global.dim"),
            away_places=tuple(away),
            p_places=tuple(at_p),
            h1f=h1f,
        )
    except WDParityError as exc:
        ctx.fail("global", str(exc))


def _parse_local(ctx, doc, path) -> LocalInput:
    kind = _str(ctx, _get(ctx, doc, "type", path), f"{path}.type")
    if kind == "away":
        place = _parse_away(ctx, doc, path)
        return LocalInput(place.name, place.rep, place.pairing, None)
    if kind != "p-adic":
        ctx.fail(f"{path}.type", f"unknown place type {kind!r}")
    _check_keys(ctx, doc, path, _PADIC_KEYS - {"numerology", "numerology_dual"},
                required={"name", "type", "field", "frobenius", "monodromy",
                          "inertia", "artm1_index", "gram", "lagrangian",
                          "ht", "ht_plus", "ht_minus"})
    pst = _parse_pst(ctx, doc, path)
    return LocalInput(_str(ctx, doc["name"], f"{path}.name"),
                      pst.delta, pst.split.pairing, pst)


def _parse_formulary(ctx, doc) -> FormularyInput:
    n = _numerology(ctx, doc["numerology"], "numerology")
    if "numerology_dual" in doc:
        n_dual = _numerology(ctx, doc["numerology_dual"], "numerology_dual")
    else:
        n_dual = n.dual()
    return FormularyInput(n, n_dual)
