"""Input documents (JSON, schema ``charvar-input/1``).

A document may carry a presentation, an orbifold, named characters, named
candidate components, orbifold morphisms with pull-back claims, options and
(for corpus entries) expectations.  See ``docs/schema.md`` for the grammar.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any

from .obstructions import ComponentDatum, OrbifoldMorphismDatum, PullbackClaim
from .orbifold import OrbifoldSurface
from .presentation import (
    Character,
    CharvarError,
    Presentation,
    PresentationError,
    character_from_assignment,
    parse_word,
)
from .torus import TranslatedSubtorus

__all__ = ["DocumentError", "InputDocument", "load_document", "parse_document", "SCHEMA"]

SCHEMA = "charvar-input/1"


class DocumentError(CharvarError):
    """The document is malformed (bad JSON, wrong shape, unknown references)."""


def _need(obj: dict, key: str, where: str):
    if not isinstance(obj, dict) or key not in obj:
        raise DocumentError(f"{where}: missing field {key!r}")
    return obj[key]


def _fraction(x, where: str) -> Fraction:
    if isinstance(x, bool) or not isinstance(x, (int, str)):
        raise DocumentError(f"{where}: expected an integer or a rational string, got {x!r}")
    try:
        return Fraction(x)
    except (ValueError, ZeroDivisionError) as exc:
        raise DocumentError(f"{where}: bad rational {x!r}") from exc


def _int_list(x, where: str) -> list[int]:
    if not isinstance(x, list) or not all(isinstance(v, int) and not isinstance(v, bool) for v in x):
        raise DocumentError(f"{where}: expected a list of integers")
    return list(x)


def parse_orbifold(block: dict, where: str = "orbifold") -> OrbifoldSurface:
    if not isinstance(block, dict):
        raise DocumentError(f"{where}: expected an object")
    compact = block.get("compact", False)
    if not isinstance(compact, bool):
        raise DocumentError(f"{where}: 'compact' must be true or false")
    key = "genus" if compact else "rank"
    g = block.get(key, 0)
    if not isinstance(g, int) or isinstance(g, bool):
        raise DocumentError(f"{where}: {key!r} must be an integer")
    mult = _int_list(block.get("multiplicities", []), f"{where}.multiplicities")
    return OrbifoldSurface(compact, g, tuple(mult))


def _parse_presentation(block: dict) -> Presentation:
    gens = _need(block, "generators", "presentation")
    rels = block.get("relators", [])
    if not isinstance(gens, list) or not all(isinstance(g, str) for g in gens):
        raise DocumentError("presentation.generators must be a list of names")
    if not isinstance(rels, list) or not all(isinstance(r, str) for r in rels):
        raise DocumentError("presentation.relators must be a list of words")
    try:
        return Presentation.from_strings(gens, rels, block.get("name", ""))
    except PresentationError as exc:
        raise DocumentError(f"presentation: {exc}") from exc


def _parse_value(v, where: str):
    if isinstance(v, dict):
        root = _fraction(v.get("root", 0), where)
        mono = _int_list(_need(v, "monomial", where), f"{where}.monomial")
        return (root, tuple(mono))
    return _fraction(v, where)


def _parse_character(p: Presentation, block, where: str) -> Character:
    values = block.get("values") if isinstance(block, dict) else block
    if not isinstance(values, list):
        raise DocumentError(f"{where}: expected a list of values")
    if len(values) != p.ngens:
        raise DocumentError(f"{where}: {len(values)} values for {p.ngens} generators")
    vals = [_parse_value(v, f"{where}[{i}]") for i, v in enumerate(values)]
    nparams = None
    if isinstance(block, dict) and "parameters" in block:
        nparams = block["parameters"]
    return character_from_assignment(p, vals, nparams)


def _parse_component(p: Presentation, block: dict, where: str) -> ComponentDatum:
    rho = [_fraction(x, f"{where}.translation") for x in _need(block, "translation", where)]
    rows = _need(block, "exponents", where)
    if not isinstance(rows, list) or len(rows) != p.ngens:
        raise DocumentError(f"{where}.exponents: expected {p.ngens} rows")
    rows = [_int_list(r, f"{where}.exponents") for r in rows]
    width = {len(r) for r in rows}
    if len(width) > 1:
        raise DocumentError(f"{where}.exponents: ragged rows")
    from .intmat import IntegerMatrix

    e = IntegerMatrix.from_rows(rows, width.pop() if width else 0)
    depth = block.get("depth", 1)
    if not isinstance(depth, int) or isinstance(depth, bool):
        raise DocumentError(f"{where}.depth must be an integer")
    return ComponentDatum(TranslatedSubtorus(p, tuple(rho), e), depth, block.get("note", ""))


@dataclass
class InputDocument:
    name: str
    presentation: Presentation | None
    orbifold: OrbifoldSurface | None
    characters: dict[str, Character] = field(default_factory=dict)
    components: dict[str, ComponentDatum] = field(default_factory=dict)
    morphisms: dict[str, OrbifoldMorphismDatum] = field(default_factory=dict)
    pullbacks: list[PullbackClaim] = field(default_factory=list)
    xi_distinct: list[tuple[str, str]] = field(default_factory=list)
    options: dict[str, Any] = field(default_factory=dict)
    expect: dict[str, Any] = field(default_factory=dict)
    meta: dict[str, Any] = field(default_factory=dict)

    def require_presentation(self) -> Presentation:
        if self.presentation is None:
            raise DocumentError("document has neither a presentation nor an orbifold block")
        return self.presentation

    def character(self, ident: str | None) -> tuple[str, Character]:
        if not self.characters:
            raise DocumentError("document defines no characters")
        if ident is None:
            ident = next(iter(self.characters))
        if ident not in self.characters:
            raise DocumentError(f"unknown character {ident!r}")
        return ident, self.characters[ident]

    def component(self, ident: str | None) -> tuple[str, ComponentDatum]:
        if not self.components:
            raise DocumentError("document defines no components")
        if ident is None:
            ident = next(iter(self.components))
        if ident not in self.components:
            raise DocumentError(f"unknown component {ident!r}")
        return ident, self.components[ident]


def _named_list(block, where: str):
    """Accept either {id: spec} or [{"id": ..., ...}]; keeps document order."""
    if isinstance(block, dict):
        return list(block.items())
    if isinstance(block, list):
        out = []
        for i, item in enumerate(block):
            if not isinstance(item, dict):
                raise DocumentError(f"{where}[{i}]: expected an object")
            out.append((str(item.get("id", f"{where}{i}")), item))
        return out
    raise DocumentError(f"{where}: expected an object or a list")


def parse_document(raw: dict) -> InputDocument:
    if not isinstance(raw, dict):
        raise DocumentError("document must be a JSON object")
    schema = raw.get("schema", SCHEMA)
    if schema != SCHEMA:
        raise DocumentError(f"unsupported schema {schema!r} (expected {SCHEMA!r})")
    orb = parse_orbifold(raw["orbifold"]) if "orbifold" in raw else None
    if "presentation" in raw:
        pres = _parse_presentation(raw["presentation"])
    elif orb is not None:
        pres = orb.presentation
    else:
        pres = None
    doc = InputDocument(str(raw.get("name", "")), pres, orb, options=dict(raw.get("options", {})),
                        expect=dict(raw.get("expect", {})),
                        meta={k: raw[k] for k in ("description", "source") if k in raw})
    if pres is None and any(k in raw for k in ("characters", "components", "morphisms")):
        raise DocumentError("characters, components and morphisms need a presentation")
    for ident, spec in _named_list(raw.get("characters", {}), "characters"):
        doc.characters[ident] = _parse_character(pres, spec, f"characters.{ident}")
    for ident, spec in _named_list(raw.get("components", {}), "components"):
        doc.components[ident] = _parse_component(pres, spec, f"components.{ident}")
    for ident, spec in _named_list(raw.get("morphisms", {}), "morphisms"):
        where = f"morphisms.{ident}"
        target = parse_orbifold(_need(spec, "target", where), f"{where}.target")
        imgs = _need(spec, "images", where)
        if not isinstance(imgs, list) or len(imgs) != pres.ngens:
            raise DocumentError(f"{where}.images: expected one word per source generator")
        try:
            words = tuple(parse_word(w, target.presentation.generators) for w in imgs)
        except PresentationError as exc:
            raise DocumentError(f"{where}.images: {exc}") from exc
        m = OrbifoldMorphismDatum(target, words, ident)
        doc.morphisms[ident] = m
        for k, pb in enumerate(spec.get("pullbacks", [])):
            xi_c = _parse_character(target.presentation, _need(pb, "target_values", f"{where}.pullbacks[{k}]"),
                                    f"{where}.pullbacks[{k}].target_values")
            src = _need(pb, "character", f"{where}.pullbacks[{k}]")
            if src not in doc.characters:
                raise DocumentError(f"{where}.pullbacks[{k}]: unknown character {src!r}")
            doc.pullbacks.append(PullbackClaim(m, xi_c, doc.characters[src]))
    for pair in raw.get("xi_distinct", []):
        if not (isinstance(pair, list) and len(pair) == 2 and all(x in doc.components for x in pair)):
            raise DocumentError(f"xi_distinct entries must name two components, got {pair!r}")
        doc.xi_distinct.append((pair[0], pair[1]))
    return doc


def load_document(text: str) -> InputDocument:
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as exc:
        raise DocumentError(f"invalid JSON: {exc}") from exc
    return parse_document(raw)
