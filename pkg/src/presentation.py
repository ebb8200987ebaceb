"""
Presentation files: a graded ring k[x]/I plus the certificates that go with it.

The text format is one ``key: value`` pair per line; ``#`` starts a comment.
``relation``, ``unit`` and ``image`` may repeat, every other key appears at
most once. A ``.json`` file with the same keys (plural ``relations``,
``units``, ``images``) is accepted as a machine-generated mirror.

    name: th-ci
    field: QQ
    variables: s:3, t:3, x:2, y:2, z:2
    relation: s^2 - x^3
    params: x, z
    unit: x ; s ; 1 ; s ; 2
    module_gens: 1, s, t
"""

import json
from dataclasses import dataclass, field as dc_field
from pathlib import Path
from typing import Dict, List, Optional, Tuple, Union

from loguru import logger
from pydantic import BaseModel, ConfigDict

from algebra.errors import NotHomogeneousError, ParseError, PresentationError
from algebra.fields import CoefficientField
from algebra.graded import RingPresentation
from algebra.polynomial import Polynomial
from algebra.rings import PolynomialRing, VariableTable
from checker import SectionRingCertificate, UnitCertificate

SINGLE_KEYS = ("name", "field", "variables", "order", "params", "module_gens", "ideal", "target")
REPEATED_KEYS = ("relation", "unit", "image")
DEFAULT_ORDER = "wgrevlex"


class PresentationSpec(BaseModel):
    """Raw content of a presentation file, before any polynomial is parsed."""

    model_config = ConfigDict(extra="forbid")

    name: str = ""
    field: str = "QQ"
    variables: str
    order: str = DEFAULT_ORDER
    relations: List[str] = []
    params: List[str] = []
    units: List[UnitCertificate] = []
    module_gens: List[str] = []
    ideal: List[str] = []
    target: Optional[str] = None
    images: Dict[str, str] = {}


@dataclass
class LoadedPresentation:
    ring: RingPresentation
    params: List[Polynomial] = dc_field(default_factory=list)
    units: List[UnitCertificate] = dc_field(default_factory=list)
    module_gens: List[Polynomial] = dc_field(default_factory=list)
    ideal: List[Polynomial] = dc_field(default_factory=list)
    target: Optional[PolynomialRing] = None
    images: Dict[str, Polynomial] = dc_field(default_factory=dict)
    order: str = DEFAULT_ORDER

    @property
    def section_cert(self) -> Optional[SectionRingCertificate]:
        if not self.params:
            return None
        return SectionRingCertificate(params=[str(p) for p in self.params], unit_certs=self.units)

    @property
    def module_gen_texts(self) -> Optional[List[str]]:
        return [str(g) for g in self.module_gens] or None


# Positions of values inside the text file: key -> [(line, column offset)].
Anchors = Dict[str, List[Tuple[int, int]]]


def _split(value: str, offset: int, sep: str) -> List[Tuple[str, int]]:
    """Split ``value`` on ``sep``; each piece keeps the offset of its first non-blank character."""
    pieces = []
    start = 0
    for chunk in value.split(sep):
        stripped = chunk.strip()
        if stripped:
            pieces.append((stripped, offset + start + chunk.index(stripped)))
        start += len(chunk) + len(sep)
    return pieces


def _decode(data: bytes) -> str:
    try:
        return data.decode("utf-8")
    except UnicodeDecodeError as exc:
        line = data[:exc.start].count(b"\n") + 1
        column = exc.start - (data.rfind(b"\n", 0, exc.start) + 1) + 1
        raise PresentationError("file is not valid UTF-8", line, column) from None


def parse_text(text: str) -> Tuple[PresentationSpec, Anchors]:
    raw: Dict[str, object] = {"relations": [], "units": [], "images": {}}
    anchors: Anchors = {}
    seen = set()
    for number, line in enumerate(text.splitlines(), start=1):
        body = line.split("#", 1)[0]
        if not body.strip():
            continue
        key, colon, value = body.partition(":")
        key = key.strip()
        if not colon:
            raise PresentationError("expected 'key: value'", number, 1)
        if key not in SINGLE_KEYS and key not in REPEATED_KEYS:
            raise PresentationError(f"unknown key '{key}'", number, body.index(key) + 1)
        if key in SINGLE_KEYS and key in seen:
            raise PresentationError(f"key '{key}' given twice", number, body.index(key) + 1)
        seen.add(key)
        offset = len(key) + body.index(key) + 1
        offset += len(value) - len(value.lstrip())
        value = value.strip()
        anchors.setdefault(key, []).append((number, offset))

        if key == "relation":
            raw["relations"].append(value)
        elif key == "unit":
            parts = [p for p, _ in _split(value, offset, ";")]
            if len(parts) != 5:
                raise PresentationError("unit needs 'param ; numerator ; m ; inverse ; n'", number, offset + 1)
            try:
                raw["units"].append(UnitCertificate(param=parts[0], numerator=parts[1], denom_power=int(parts[2]),
                                                    inverse=parts[3], inverse_power=int(parts[4])))
            except ValueError:
                raise PresentationError("unit powers must be integers", number, offset + 1) from None
        elif key == "image":
            source, arrow, image = value.partition("->")
            if not arrow or not source.strip() or not image.strip():
                raise PresentationError("image needs 'variable -> polynomial'", number, offset + 1)
            raw["images"][source.strip()] = image.strip()
        elif key in ("params", "module_gens", "ideal"):
            raw[key] = [p for p, _ in _split(value, offset, ",")]
        else:
            raw[key] = value
    if "variables" not in raw:
        raise PresentationError("missing 'variables' line", max(1, len(text.splitlines())), 1)
    return PresentationSpec.model_validate(raw), anchors


def _anchored(key: str, index: int, anchors: Optional[Anchors]) -> Optional[Tuple[int, int]]:
    if not anchors or key not in anchors:
        return None
    spots = anchors[key]
    return spots[index] if index < len(spots) else spots[-1]


def _parse(ring: PolynomialRing, text: str, key: str, index: int, anchors: Optional[Anchors],
           item_offset: Optional[int] = None) -> Polynomial:
    try:
        return ring.parse(text)
    except ParseError as exc:
        spot = _anchored(key, index, anchors)
        if spot is None:
            raise
        line, offset = spot
        raise exc.at_line(line, offset if item_offset is None else item_offset) from None


def _list_offsets(key: str, anchors: Optional[Anchors], line_text: Dict[int, str]) -> List[Optional[int]]:
    spot = _anchored(key, 0, anchors)
    if spot is None:
        return []
    line, offset = spot
    return [col for _, col in _split(line_text[line][offset:].split("#", 1)[0], offset, ",")]


def _fail(key: str, message: str, anchors: Optional[Anchors]) -> PresentationError:
    spot = _anchored(key, 0, anchors)
    if spot is None:
        return PresentationError(f"{key}: {message}", 1)
    return PresentationError(message, spot[0], spot[1] + 1)


def _apply_order(ring: PolynomialRing, spec: str) -> PolynomialRing:
    spec = spec.strip().replace(" ", "")
    if spec == DEFAULT_ORDER:
        return ring.default_order()
    if spec.startswith("elim(") and spec.endswith(")"):
        return ring.elimination_order([n for n in spec[5:-1].split(",") if n])
    raise ValueError(f"unknown order '{spec}' (expected {DEFAULT_ORDER} or elim(v1,...))")


def build(spec: PresentationSpec, anchors: Optional[Anchors] = None, text: str = "") -> LoadedPresentation:
    """Turn a validated spec into a ring presentation with parsed certificates."""
    line_text = dict(enumerate(text.splitlines(), start=1))
    try:
        field = CoefficientField.from_spec(spec.field)
    except ValueError as exc:
        raise _fail("field", str(exc), anchors) from None
    try:
        base = PolynomialRing(VariableTable.of(spec.variables), field)
    except ValueError as exc:
        raise _fail("variables", str(exc), anchors) from None
    try:
        ring = _apply_order(base, spec.order)
    except ValueError as exc:
        raise _fail("order", str(exc), anchors) from None

    relations = []
    for i, rel in enumerate(spec.relations):
        p = _parse(ring, rel, "relation", i, anchors)
        if p and not p.is_homogeneous():
            spot = _anchored("relation", i, anchors)
            raise NotHomogeneousError(str(p), p.degrees(), line=spot[0] if spot else None)
        relations.append(p)
    presentation = RingPresentation(ring, tuple(relations), name=spec.name)

    def parse_list(key: str, items: List[str]) -> List[Polynomial]:
        offsets = _list_offsets(key, anchors, line_text)
        return [_parse(ring, item, key, 0, anchors, offsets[i] if i < len(offsets) else None)
                for i, item in enumerate(items)]

    loaded = LoadedPresentation(
        ring=presentation,
        params=parse_list("params", spec.params),
        module_gens=parse_list("module_gens", spec.module_gens),
        ideal=parse_list("ideal", spec.ideal),
        order=spec.order.strip().replace(" ", ""),
    )
    for i, unit in enumerate(spec.units):
        parts = [_parse(ring, text_, "unit", i, anchors) for text_ in (unit.param, unit.numerator, unit.inverse)]
        loaded.units.append(UnitCertificate(param=str(parts[0]), numerator=str(parts[1]), denom_power=unit.denom_power,
                                            inverse=str(parts[2]), inverse_power=unit.inverse_power))
    if spec.target is not None:
        try:
            target = PolynomialRing(VariableTable.of(spec.target), field)
        except ValueError as exc:
            raise _fail("target", str(exc), anchors) from None
        loaded.target = target
        for i, (name, image) in enumerate(spec.images.items()):
            if name not in ring.table:
                raise _fail("image", f"'{name}' is not a ring variable", anchors)
            loaded.images[name] = _parse(target, image, "image", i, anchors)
    elif spec.images:
        raise _fail("image", "image lines need a 'target' line", anchors)
    return loaded


def load_presentation(path: Union[str, Path]) -> LoadedPresentation:
    """Read a ``.ring`` text file or its ``.json`` mirror."""
    path = Path(path)
    text = _decode(path.read_bytes())
    if path.suffix == ".json":
        spec = PresentationSpec.model_validate(json.loads(text))
        loaded = build(spec)
    else:
        spec, anchors = parse_text(text)
        loaded = build(spec, anchors, text)
    logger.info(f"Loaded presentation {path.name}: {loaded.ring.describe()}")
    return loaded


def to_spec(loaded: LoadedPresentation) -> PresentationSpec:
    ring = loaded.ring
    return PresentationSpec(
        name=ring.name,
        field=str(ring.ring.field),
        variables=ring.ring.table.describe(),
        order=loaded.order,
        relations=[str(r) for r in ring.relations],
        params=[str(p) for p in loaded.params],
        units=loaded.units,
        module_gens=[str(g) for g in loaded.module_gens],
        ideal=[str(g) for g in loaded.ideal],
        target=loaded.target.table.describe() if loaded.target is not None else None,
        images={name: str(p) for name, p in loaded.images.items()},
    )


def dump_presentation(loaded: LoadedPresentation) -> str:
    """Canonical text form; loading it back and dumping again gives the same text."""
    spec = to_spec(loaded)
    lines = []
    if spec.name:
        lines.append(f"name: {spec.name}")
    lines.append(f"field: {spec.field}")
    lines.append(f"variables: {spec.variables}")
    if spec.order != DEFAULT_ORDER:
        lines.append(f"order: {spec.order}")
    lines += [f"relation: {r}" for r in spec.relations]
    if spec.params:
        lines.append(f"params: {', '.join(spec.params)}")
    for u in spec.units:
        lines.append(f"unit: {u.param} ; {u.numerator} ; {u.denom_power} ; {u.inverse} ; {u.inverse_power}")
    if spec.module_gens:
        lines.append(f"module_gens: {', '.join(spec.module_gens)}")
    if spec.ideal:
        lines.append(f"ideal: {', '.join(spec.ideal)}")
    if spec.target is not None:
        lines.append(f"target: {spec.target}")
        lines += [f"image: {name} -> {image}" for name, image in spec.images.items()]
    return "\n".join(lines) + "\n"


def dump_json(loaded: LoadedPresentation) -> str:
    return to_spec(loaded).model_dump_json(indent=2)
