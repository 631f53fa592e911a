"""Conjunctive description language: atoms, formulas, meaning sets.

A formula is a conjunction of attribute-value atoms whose attributes are
pairwise distinct, kept in canonical attribute-declaration order so that
structurally equal formulas compare equal. Two alphabet modes exist:

* ``strict`` - atom values come from the attribute domain only; used by
  every operation of the conceptual route,
* ``extended`` - ``NA`` is admitted as an atom value; used only for
  object descriptions over set-valued cells, which can contain ``{NA}``.

The mode is always an explicit parameter, never inferred.
"""

from __future__ import annotations

import itertools
import math
import re
from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

from .errors import GuardExceededError, IncompleteTableError, UnknownIdError
from .table import NA, AttributeSchema, SetValuedTable, is_complete

#: Default cap on language enumeration size.
DEFAULT_MAX_FORMULAS = 10**6

STRICT = "strict"
EXTENDED = "extended"
_MODES = (STRICT, EXTENDED)


@dataclass(frozen=True)
class Atom:
    """One attribute-value pair."""

    attr: str
    value: str


@dataclass(frozen=True)
class Formula:
    """Conjunction of atoms over pairwise-distinct attributes."""

    atoms: tuple[Atom, ...]

    def __post_init__(self) -> None:
        if not self.atoms:
            raise ValueError("formula needs at least one atom")
        attrs = [atom.attr for atom in self.atoms]
        if len(set(attrs)) != len(attrs):
            raise ValueError(f"formula repeats an attribute: {attrs}")

    @property
    def attrs(self) -> tuple[str, ...]:
        return tuple(atom.attr for atom in self.atoms)

    def value_of(self, attr: str) -> str:
        for atom in self.atoms:
            if atom.attr == attr:
                return atom.value
        raise UnknownIdError(f"formula has no atom on {attr!r}")

    def __str__(self) -> str:
        return render_formula(self)


def make_formula(atoms: Iterable[Atom], attr_order: Sequence[str]) -> Formula:
    """Build a formula with atoms sorted into attribute-declaration order."""
    rank = {name: i for i, name in enumerate(attr_order)}
    atom_list = list(atoms)
    for atom in atom_list:
        if atom.attr not in rank:
            raise UnknownIdError(f"atom attribute {atom.attr!r} not in the declared order")
    return Formula(tuple(sorted(atom_list, key=lambda atom: rank[atom.attr])))


def _check_mode(mode: str) -> None:
    if mode not in _MODES:
        raise ValueError(f"mode must be one of {_MODES}, got {mode!r}")


def _alphabet(schema: AttributeSchema, mode: str) -> tuple[str, ...]:
    return schema.domain + (NA,) if mode == EXTENDED else schema.domain


def cdl_size(schemas: Sequence[AttributeSchema], mode: str = STRICT) -> int:
    """Closed-form count of the enumeration: prod(|alphabet_a| + 1) - 1."""
    _check_mode(mode)
    return math.prod(len(_alphabet(s, mode)) + 1 for s in schemas) - 1


def enumerate_cdl(
    schemas: Sequence[AttributeSchema],
    mode: str = STRICT,
    max_formulas: int = DEFAULT_MAX_FORMULAS,
) -> list[Formula]:
    """Enumerate every formula over the given attributes exactly once.

    Deterministic order: by atom count, then by attribute positions, then
    by value positions in domain order. The total count matches
    :func:`cdl_size`.
    """
    _check_mode(mode)
    if not schemas:
        raise ValueError("attribute subset must be nonempty")
    total = cdl_size(schemas, mode)
    if total > max_formulas:
        raise GuardExceededError(f"{total} formulas exceed the cap of {max_formulas}")
    out: list[Formula] = []
    indices = range(len(schemas))
    for size in range(1, len(schemas) + 1):
        for combo in itertools.combinations(indices, size):
            alphabets = [_alphabet(schemas[i], mode) for i in combo]
            for values in itertools.product(*alphabets):
                out.append(
                    Formula(tuple(Atom(schemas[i].name, v) for i, v in zip(combo, values)))
                )
    out.sort(key=lambda p: formula_sort_key(p, schemas))
    return out


def formula_sort_key(p: Formula, schemas: Sequence[AttributeSchema]):
    """Sort key reproducing the enumeration order of :func:`enumerate_cdl`."""
    attr_rank = {s.name: i for i, s in enumerate(schemas)}
    by_name = {s.name: s for s in schemas}
    pairs = []
    for atom in p.atoms:
        if atom.attr not in attr_rank:
            raise UnknownIdError(f"formula attribute {atom.attr!r} not in schema")
        domain = by_name[atom.attr].domain
        value_rank = domain.index(atom.value) if atom.value in domain else len(domain)
        pairs.append((attr_rank[atom.attr], value_rank))
    return (len(pairs), tuple(sorted(pairs)))


def satisfies(row: Mapping[str, str], p: Formula) -> bool:
    """Classical satisfaction: the row takes every atom's value."""
    for atom in p.atoms:
        if atom.attr not in row:
            raise UnknownIdError(f"row has no value on {atom.attr!r}")
        if row[atom.attr] != atom.value:
            return False
    return True


def meaning_set(t: SetValuedTable, p: Formula) -> frozenset[str]:
    """Objects of a complete table satisfying ``p``."""
    if not is_complete(t):
        raise IncompleteTableError("meaning sets are defined on complete tables only")
    return frozenset(x for x in t.objects if satisfies(t.known_row(x), p))


def object_description(row: Mapping[str, str], attrs: Sequence[str], attr_order: Sequence[str]) -> Formula:
    """The single formula using every attribute of ``attrs`` with the row's values."""
    if not attrs:
        raise ValueError("attribute subset must be nonempty")
    atoms = []
    for a in attrs:
        if a not in row:
            raise UnknownIdError(f"row has no value on {a!r}")
        atoms.append(Atom(a, row[a]))
    return make_formula(atoms, attr_order)


# --------------------------------------------------------------------------
# Rendering and parsing

_ATOM_RE = re.compile(r"^\(([^()=\s]+)=([^()=\s]+)\)$")


def render_formula(p: Formula) -> str:
    """Text form ``(a1=1)&(a2=2)&(a3=3)``."""
    return "&".join(f"({atom.attr}={atom.value})" for atom in p.atoms)


def parse_formula(text: str, attr_order: Sequence[str]) -> Formula:
    """Parse the text form produced by :func:`render_formula`."""
    parts = text.replace(" ", "").split("&")
    atoms = []
    for part in parts:
        match = _ATOM_RE.match(part)
        if not match:
            raise ValueError(f"malformed atom {part!r} in formula {text!r}")
        atoms.append(Atom(match.group(1), match.group(2)))
    return make_formula(atoms, attr_order)


def formula_json(p: Formula) -> list[dict[str, str]]:
    """JSON form: list of ``{"attr": ..., "value": ...}`` pairs."""
    return [{"attr": atom.attr, "value": atom.value} for atom in p.atoms]
