"""Information-table data model and ingestion.

Three table forms appear in this package:

* :class:`IncompleteTable` - cells are one of five variants: a known
  domain value, a do-not-care value, a partially-known value set, a
  class-specific reference to another attribute, or a non-applicable
  marker.
* :class:`SetValuedTable` - the canonical form; every cell is a nonempty
  set of tokens from the attribute domain, or the singleton ``{NA}``.
* a complete table is simply a set-valued table whose cells are all
  singletons other than ``{NA}``.

The ``.itab`` text format parsed by :func:`parse_table` is line oriented:

    # comment
    @attributes a1 a2 a3
    @domain a1 0 1
    @objects
    x1 1 2 3
    x2 1 ^(a3) 3
    x4 0 3 *
    x6 * 3 {1|3}
    x7 NA 1 0

Cell grammar: a bare token is a known value, ``*`` is do-not-care,
``{v1|v2|...}`` is a partially-known set, ``^(b)`` is a class-specific
value resolved through attribute ``b``, and ``NA`` is non-applicable.
Domains must be declared for any column containing ``*``; otherwise they
may be inferred from the observed tokens (a warning is emitted).
"""

from __future__ import annotations

import itertools
import re
import warnings
from dataclasses import dataclass
from typing import Iterable, Iterator, Mapping, Sequence, Union

from .errors import (
    DomainInferenceWarning,
    EmptyResolutionError,
    GuardExceededError,
    TableParseError,
    UnknownIdError,
    UnresolvedReferenceError,
)

#: The distinguished non-applicable token. Never a domain member.
NA = "NA"

#: Default cap on possible-world enumerations.
DEFAULT_MAX_WORLDS = 2**20


@dataclass(frozen=True)
class AttributeSchema:
    """An attribute name plus its ordered, duplicate-free domain."""

    name: str
    domain: tuple[str, ...]

    def __post_init__(self) -> None:
        if not self.name:
            raise ValueError("attribute name must be nonempty")
        if not self.domain:
            raise ValueError(f"attribute {self.name!r} has an empty domain")
        if len(set(self.domain)) != len(self.domain):
            raise ValueError(f"attribute {self.name!r} has duplicate domain values")
        if NA in self.domain:
            raise ValueError(f"attribute {self.name!r} lists {NA} in its domain")


@dataclass(frozen=True)
class Known:
    value: str


@dataclass(frozen=True)
class DoNotCare:
    pass


@dataclass(frozen=True)
class Partial:
    values: frozenset[str]

    def __post_init__(self) -> None:
        if len(self.values) < 2:
            raise ValueError("partially-known cell needs at least 2 distinct values")


@dataclass(frozen=True)
class ClassSpecific:
    ref_attr: str


@dataclass(frozen=True)
class NotApplicable:
    pass


Cell = Union[Known, DoNotCare, Partial, ClassSpecific, NotApplicable]


def _check_schema_lists(objects: Sequence[str], attributes: Sequence[AttributeSchema]) -> None:
    if not objects:
        raise ValueError("table needs at least one object")
    if not attributes:
        raise ValueError("table needs at least one attribute")
    if len(set(objects)) != len(objects):
        raise ValueError("duplicate object identifiers")
    names = [a.name for a in attributes]
    if len(set(names)) != len(names):
        raise ValueError("duplicate attribute names")


@dataclass(frozen=True, eq=False)
class IncompleteTable:
    """Objects x attributes grid whose cells may carry incomplete values."""

    objects: tuple[str, ...]
    attributes: tuple[AttributeSchema, ...]
    cells: Mapping[tuple[str, str], Cell]

    def __post_init__(self) -> None:
        _check_schema_lists(self.objects, self.attributes)
        by_name = {a.name: a for a in self.attributes}
        for x in self.objects:
            for a in self.attributes:
                if (x, a.name) not in self.cells:
                    raise ValueError(f"missing cell ({x}, {a.name})")
        if len(self.cells) != len(self.objects) * len(self.attributes):
            raise ValueError("cells map is not total over objects x attributes")
        for (x, name), cell in self.cells.items():
            schema = by_name.get(name)
            if x not in self.objects or schema is None:
                raise ValueError(f"cell ({x}, {name}) outside the declared grid")
            if isinstance(cell, Known) and cell.value not in schema.domain:
                raise ValueError(f"cell ({x}, {name}): value {cell.value!r} outside domain")
            if isinstance(cell, Partial) and not cell.values <= set(schema.domain):
                raise ValueError(f"cell ({x}, {name}): partial values outside domain")
            if isinstance(cell, ClassSpecific):
                if cell.ref_attr == name:
                    raise ValueError(f"cell ({x}, {name}): self-referencing class-specific cell")
                if cell.ref_attr not in by_name:
                    raise ValueError(f"cell ({x}, {name}): unknown reference attribute {cell.ref_attr!r}")

    @property
    def attribute_names(self) -> tuple[str, ...]:
        return tuple(a.name for a in self.attributes)

    def schema(self, name: str) -> AttributeSchema:
        for a in self.attributes:
            if a.name == name:
                return a
        raise UnknownIdError(f"unknown attribute {name!r}")

    def cell(self, x: str, a: str) -> Cell:
        try:
            return self.cells[(x, a)]
        except KeyError:
            raise UnknownIdError(f"unknown cell ({x!r}, {a!r})") from None


@dataclass(frozen=True, eq=False)
class SetValuedTable:
    """Canonical table form: every cell is a nonempty token set.

    ``NA`` appears only as the singleton ``{NA}``; mixed cells are rejected.
    """

    objects: tuple[str, ...]
    attributes: tuple[AttributeSchema, ...]
    cells: Mapping[tuple[str, str], frozenset[str]]

    def __post_init__(self) -> None:
        _check_schema_lists(self.objects, self.attributes)
        by_name = {a.name: a for a in self.attributes}
        if len(self.cells) != len(self.objects) * len(self.attributes):
            raise ValueError("cells map is not total over objects x attributes")
        for x in self.objects:
            for a in self.attributes:
                if (x, a.name) not in self.cells:
                    raise ValueError(f"missing cell ({x}, {a.name})")
        for (x, name), values in self.cells.items():
            schema = by_name.get(name)
            if x not in self.objects or schema is None:
                raise ValueError(f"cell ({x}, {name}) outside the declared grid")
            if not values:
                raise ValueError(f"cell ({x}, {name}) is empty")
            if NA in values:
                if len(values) > 1:
                    raise ValueError(f"cell ({x}, {name}) mixes {NA} with domain values")
            elif not values <= set(schema.domain):
                raise ValueError(f"cell ({x}, {name}) holds tokens outside the domain")

    @property
    def attribute_names(self) -> tuple[str, ...]:
        return tuple(a.name for a in self.attributes)

    def schema(self, name: str) -> AttributeSchema:
        for a in self.attributes:
            if a.name == name:
                return a
        raise UnknownIdError(f"unknown attribute {name!r}")

    def cell(self, x: str, a: str) -> frozenset[str]:
        try:
            return self.cells[(x, a)]
        except KeyError:
            raise UnknownIdError(f"unknown cell ({x!r}, {a!r})") from None

    def ordered_cell(self, x: str, a: str) -> tuple[str, ...]:
        """Cell tokens in domain declaration order, ``NA`` last."""
        domain = self.schema(a).domain
        rank = {v: i for i, v in enumerate(domain)}
        return tuple(sorted(self.cell(x, a), key=lambda v: rank.get(v, len(domain))))

    def row(self, x: str) -> dict[str, frozenset[str]]:
        if x not in self.objects:
            raise UnknownIdError(f"unknown object {x!r}")
        return {a: self.cells[(x, a)] for a in self.attribute_names}

    def known_row(self, x: str) -> dict[str, str]:
        """Row of single tokens; requires every cell of ``x`` to be a singleton."""
        row = {}
        for a in self.attribute_names:
            cell = self.cell(x, a)
            if len(cell) != 1:
                raise ValueError(f"cell ({x}, {a}) is not a singleton")
            (row[a],) = cell
        return row


def resolve_class_specific(it: IncompleteTable, x: str, a: str) -> frozenset[str]:
    """Resolve a class-specific cell to the set of known values taken on
    ``a`` by other objects sharing the reference attribute's known value.

    Only known cells of peer objects count; a reference cell that is not
    itself known is an error, as is an empty result.
    """
    cell = it.cell(x, a)
    if not isinstance(cell, ClassSpecific):
        raise ValueError(f"cell ({x}, {a}) is not class-specific")
    ref_cell = it.cell(x, cell.ref_attr)
    if not isinstance(ref_cell, Known):
        raise UnresolvedReferenceError(
            f"cell ({x}, {a}): reference cell ({x}, {cell.ref_attr}) is not a known value"
        )
    values = set()
    for y in it.objects:
        if y == x:
            continue
        peer_ref = it.cell(y, cell.ref_attr)
        peer_val = it.cell(y, a)
        if isinstance(peer_ref, Known) and peer_ref.value == ref_cell.value and isinstance(peer_val, Known):
            values.add(peer_val.value)
    if not values:
        raise EmptyResolutionError(
            f"cell ({x}, {a}): no peer object with {cell.ref_attr}={ref_cell.value} "
            f"supplies a known value"
        )
    return frozenset(values)


def to_set_valued(it: IncompleteTable) -> SetValuedTable:
    """Interpret an incomplete table as its equivalent set-valued table.

    Known(v) maps to {v}, do-not-care to the full domain, partially-known
    to its value set, class-specific to its resolution, non-applicable to
    {NA}.
    """
    cells: dict[tuple[str, str], frozenset[str]] = {}
    for x in it.objects:
        for schema in it.attributes:
            a = schema.name
            cell = it.cell(x, a)
            if isinstance(cell, Known):
                cells[(x, a)] = frozenset({cell.value})
            elif isinstance(cell, DoNotCare):
                cells[(x, a)] = frozenset(schema.domain)
            elif isinstance(cell, Partial):
                cells[(x, a)] = cell.values
            elif isinstance(cell, ClassSpecific):
                cells[(x, a)] = resolve_class_specific(it, x, a)
            elif isinstance(cell, NotApplicable):
                cells[(x, a)] = frozenset({NA})
            else:  # pragma: no cover - union is closed
                raise TypeError(f"unknown cell variant {cell!r}")
    return SetValuedTable(it.objects, it.attributes, cells)


def is_complete(st: SetValuedTable) -> bool:
    """True iff every cell is a singleton other than {NA}."""
    return all(len(values) == 1 and NA not in values for values in st.cells.values())


def world_count(st: SetValuedTable, rows: Iterable[str] | None = None) -> int:
    """Number of complete assignments obtainable by picking one token per cell."""
    selected = _select_rows(st, rows)
    count = 1
    for x in selected:
        for a in st.attribute_names:
            count *= len(st.cell(x, a))
    return count


def possible_worlds(
    st: SetValuedTable,
    rows: Iterable[str] | None = None,
    max_worlds: int = DEFAULT_MAX_WORLDS,
) -> Iterator[dict[str, dict[str, str]]]:
    """Enumerate every complete assignment of the selected rows.

    Yields mappings ``object -> attribute -> token`` in deterministic
    lexicographic order over the domain declaration order; an ``{NA}``
    cell contributes its single token. Raises before yielding anything if
    the world count exceeds ``max_worlds``.
    """
    selected = _select_rows(st, rows)
    total = world_count(st, selected)
    if total > max_worlds:
        raise GuardExceededError(f"{total} possible worlds exceed the cap of {max_worlds}")
    slots = [(x, a, st.ordered_cell(x, a)) for x in selected for a in st.attribute_names]

    def generate() -> Iterator[dict[str, dict[str, str]]]:
        for choice in itertools.product(*(tokens for _, _, tokens in slots)):
            world: dict[str, dict[str, str]] = {x: {} for x in selected}
            for (x, a, _), token in zip(slots, choice):
                world[x][a] = token
            yield world

    return generate()


def _select_rows(st: SetValuedTable, rows: Iterable[str] | None) -> tuple[str, ...]:
    if rows is None:
        return st.objects
    wanted = set(rows)
    unknown = wanted - set(st.objects)
    if unknown:
        raise UnknownIdError(f"unknown objects {sorted(unknown)!r}")
    return tuple(x for x in st.objects if x in wanted)


# --------------------------------------------------------------------------
# .itab parsing

_PARTIAL_RE = re.compile(r"^\{(.*)\}$")
_CLASS_SPECIFIC_RE = re.compile(r"^\^\(([^()\s]+)\)$")


def _tokenize(line: str) -> list[tuple[str, int]]:
    return [(m.group(), m.start() + 1) for m in re.finditer(r"\S+", line)]


def parse_table(text: str) -> IncompleteTable:
    """Parse ``.itab`` source into an :class:`IncompleteTable`.

    Raises :class:`TableParseError` with line/column positions for syntax
    errors, unknown reference attributes, out-of-domain values, and
    duplicate object identifiers.
    """
    attr_names: list[str] | None = None
    declared: dict[str, tuple[str, ...]] = {}
    raw_rows: list[tuple[int, str, list[tuple[str, int]]]] = []
    seen_objects: set[str] = set()
    in_objects = False

    for line_no, raw in enumerate(text.splitlines(), start=1):
        body = raw.split("#", 1)[0]
        tokens = _tokenize(body)
        if not tokens:
            continue
        head, head_col = tokens[0]
        if head == "@attributes":
            if attr_names is not None:
                raise TableParseError("duplicate @attributes directive", line_no, head_col)
            attr_names = [t for t, _ in tokens[1:]]
            if not attr_names:
                raise TableParseError("@attributes needs at least one name", line_no, head_col)
            if len(set(attr_names)) != len(attr_names):
                raise TableParseError("duplicate attribute name", line_no, head_col)
        elif head == "@domain":
            if attr_names is None:
                raise TableParseError("@domain before @attributes", line_no, head_col)
            if len(tokens) < 3:
                raise TableParseError("@domain needs an attribute and at least one value", line_no, head_col)
            name, name_col = tokens[1]
            if name not in attr_names:
                raise TableParseError(f"unknown attribute {name!r} in @domain", line_no, name_col)
            if name in declared:
                raise TableParseError(f"duplicate @domain for {name!r}", line_no, name_col)
            values = [t for t, _ in tokens[2:]]
            if len(set(values)) != len(values):
                raise TableParseError(f"duplicate domain value for {name!r}", line_no, name_col)
            if NA in values:
                raise TableParseError(f"{NA} cannot be a domain value", line_no, name_col)
            declared[name] = tuple(values)
        elif head == "@objects":
            if attr_names is None:
                raise TableParseError("@objects before @attributes", line_no, head_col)
            in_objects = True
        elif head.startswith("@"):
            raise TableParseError(f"unknown directive {head!r}", line_no, head_col)
        else:
            if not in_objects:
                raise TableParseError("object row before @objects", line_no, head_col)
            assert attr_names is not None
            if head in seen_objects:
                raise TableParseError(f"duplicate object id {head!r}", line_no, head_col)
            seen_objects.add(head)
            if len(tokens) - 1 != len(attr_names):
                raise TableParseError(
                    f"object {head!r} has {len(tokens) - 1} cells, expected {len(attr_names)}",
                    line_no,
                    head_col,
                )
            raw_rows.append((line_no, head, tokens[1:]))

    if attr_names is None:
        raise TableParseError("missing @attributes directive")
    if not raw_rows:
        raise TableParseError("table has no object rows")

    parsed: dict[tuple[str, str], tuple[Cell, int, int]] = {}
    for line_no, obj, cell_tokens in raw_rows:
        for name, (token, col) in zip(attr_names, cell_tokens):
            parsed[(obj, name)] = (_parse_cell(token, name, attr_names, line_no, col), line_no, col)

    domains = _finish_domains(attr_names, declared, parsed)

    cells: dict[tuple[str, str], Cell] = {}
    for (obj, name), (cell, line_no, col) in parsed.items():
        domain = domains[name]
        if isinstance(cell, Known) and cell.value not in domain:
            raise TableParseError(
                f"value {cell.value!r} outside the domain of {name!r}", line_no, col
            )
        if isinstance(cell, Partial):
            stray = cell.values - set(domain)
            if stray:
                raise TableParseError(
                    f"values {sorted(stray)!r} outside the domain of {name!r}", line_no, col
                )
        cells[(obj, name)] = cell

    schemas = tuple(AttributeSchema(name, domains[name]) for name in attr_names)
    objects = tuple(obj for _, obj, _ in raw_rows)
    return IncompleteTable(objects, schemas, cells)


def _parse_cell(token: str, attr: str, attr_names: list[str], line_no: int, col: int) -> Cell:
    if token == "*":
        return DoNotCare()
    if token == NA:
        return NotApplicable()
    match = _PARTIAL_RE.match(token)
    if match:
        values = [v for v in match.group(1).split("|") if v]
        if len(set(values)) < 2:
            raise TableParseError(
                "partially-known cell requires at least 2 distinct values", line_no, col
            )
        if NA in values:
            raise TableParseError(f"{NA} cannot appear in a partially-known cell", line_no, col)
        return Partial(frozenset(values))
    match = _CLASS_SPECIFIC_RE.match(token)
    if match:
        ref = match.group(1)
        if ref not in attr_names:
            raise TableParseError(f"unknown reference attribute {ref!r}", line_no, col)
        if ref == attr:
            raise TableParseError("class-specific cell cannot reference its own attribute", line_no, col)
        return ClassSpecific(ref)
    if token.startswith("^") or token.startswith("{"):
        raise TableParseError(f"malformed cell {token!r}", line_no, col)
    return Known(token)


def _finish_domains(
    attr_names: list[str],
    declared: dict[str, tuple[str, ...]],
    parsed: Mapping[tuple[str, str], tuple[Cell, int, int]],
) -> dict[str, tuple[str, ...]]:
    domains: dict[str, tuple[str, ...]] = {}
    for name in attr_names:
        column = [(cell, line, col) for (obj, a), (cell, line, col) in parsed.items() if a == name]
        if name in declared:
            domains[name] = declared[name]
            continue
        for cell, line, col in column:
            if isinstance(cell, DoNotCare):
                raise TableParseError(
                    f"attribute {name!r} uses '*' but declares no @domain", line, col
                )
        observed: set[str] = set()
        for cell, _, _ in column:
            if isinstance(cell, Known):
                observed.add(cell.value)
            elif isinstance(cell, Partial):
                observed |= cell.values
        if not observed:
            raise TableParseError(f"cannot infer a domain for attribute {name!r}")
        warnings.warn(
            f"domain of {name!r} inferred from observed tokens", DomainInferenceWarning, stacklevel=3
        )
        domains[name] = tuple(sorted(observed))
    return domains
