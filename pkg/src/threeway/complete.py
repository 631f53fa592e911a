"""Three-way decision on complete tables.

Covers the classical route (equivalence classes and structured regions),
the conjunctive-language route (definable-set families and their
regions), the Boolean-algebra closure connecting the two, and the
formula-level description regions used for rule derivation.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import GuardExceededError, IncompleteTableError, UnknownIdError
from .language import (
    DEFAULT_MAX_FORMULAS,
    Formula,
    STRICT,
    enumerate_cdl,
    meaning_set,
)
from .table import SetValuedTable, is_complete

#: Default cap on union-closure computations, counted in subsets of the family.
DEFAULT_MAX_CLOSURE = 2**16


@dataclass(frozen=True)
class Partition:
    """Disjoint nonempty blocks covering the universe, in table order."""

    blocks: tuple[frozenset[str], ...]

    def block_of(self, x: str) -> frozenset[str]:
        for block in self.blocks:
            if x in block:
                return block
        raise UnknownIdError(f"object {x!r} not in this partition")

    @property
    def block_family(self) -> frozenset[frozenset[str]]:
        return frozenset(self.blocks)


@dataclass(frozen=True)
class StructuredRegions:
    """Positive, negative, and boundary parts of a family of building blocks."""

    pos: frozenset[frozenset[str]]
    neg: frozenset[frozenset[str]]
    bnd: frozenset[frozenset[str]]


@dataclass(frozen=True)
class DescribedSet:
    """An object set together with every formula whose meaning set it is."""

    members: frozenset[str]
    descriptions: frozenset[Formula]


def _require_complete(t: SetValuedTable) -> None:
    if not is_complete(t):
        raise IncompleteTableError("operation requires a complete table")


def _check_attrs(t: SetValuedTable, attrs: Sequence[str]) -> tuple:
    wanted = set(attrs)
    if len(wanted) != len(tuple(attrs)):
        raise ValueError("duplicate attributes in subset")
    for a in wanted:
        t.schema(a)
    # Declaration order keeps formula atom order canonical everywhere.
    return tuple(t.schema(a) for a in t.attribute_names if a in wanted)


def _check_class(t: SetValuedTable, x_set: Iterable[str]) -> frozenset[str]:
    members = frozenset(x_set)
    unknown = members - set(t.objects)
    if unknown:
        raise UnknownIdError(f"class contains unknown objects {sorted(unknown)!r}")
    return members


def partition(t: SetValuedTable, attrs: Sequence[str]) -> Partition:
    """Group objects that agree on every attribute of ``attrs``.

    The empty attribute set yields the single block containing the whole
    universe (all objects vacuously agree).
    """
    _require_complete(t)
    _check_attrs(t, attrs)
    keyed: dict[tuple[str, ...], list[str]] = {}
    for x in t.objects:
        row = t.known_row(x)
        key = tuple(row[a] for a in attrs)
        keyed.setdefault(key, []).append(x)
    order: list[frozenset[str]] = []
    seen = set()
    for x in t.objects:
        row = t.known_row(x)
        key = tuple(row[a] for a in attrs)
        if key not in seen:
            seen.add(key)
            order.append(frozenset(keyed[key]))
    return Partition(tuple(order))


def regions_computational(
    t: SetValuedTable, attrs: Sequence[str], x_set: Iterable[str]
) -> StructuredRegions:
    """Split the partition blocks by inclusion in the class or its complement."""
    members = _check_class(t, x_set)
    complement = frozenset(t.objects) - members
    pos, neg, bnd = set(), set(), set()
    for block in partition(t, attrs).blocks:
        if block <= members:
            pos.add(block)
        elif block <= complement:
            neg.add(block)
        else:
            bnd.add(block)
    return StructuredRegions(frozenset(pos), frozenset(neg), frozenset(bnd))


def cdef_family(
    t: SetValuedTable,
    attrs: Sequence[str],
    max_formulas: int = DEFAULT_MAX_FORMULAS,
) -> frozenset[DescribedSet]:
    """All conjunctively definable sets, each with its full description set."""
    _require_complete(t)
    schemas = _check_attrs(t, attrs)
    grouped: dict[frozenset[str], set[Formula]] = {}
    for p in enumerate_cdl(schemas, STRICT, max_formulas):
        grouped.setdefault(meaning_set(t, p), set()).add(p)
    return frozenset(
        DescribedSet(members, frozenset(formulas)) for members, formulas in grouped.items()
    )


def regions_conceptual(
    t: SetValuedTable,
    attrs: Sequence[str],
    x_set: Iterable[str],
    max_formulas: int = DEFAULT_MAX_FORMULAS,
) -> tuple[frozenset[DescribedSet], frozenset[DescribedSet]]:
    """Nonempty definable sets included in the class / in its complement."""
    members = _check_class(t, x_set)
    complement = frozenset(t.objects) - members
    pos, neg = set(), set()
    for ds in cdef_family(t, attrs, max_formulas):
        if not ds.members:
            continue
        if ds.members <= members:
            pos.add(ds)
        elif ds.members <= complement:
            neg.add(ds)
    return frozenset(pos), frozenset(neg)


def boolean_algebra(
    blocks: Iterable[frozenset[str]],
    max_subsets: int = DEFAULT_MAX_CLOSURE,
) -> frozenset[frozenset[str]]:
    """Close a set family under arbitrary unions by subset enumeration.

    The union of the empty subfamily contributes the empty set. Input
    duplicates are collapsed before the guard is applied.
    """
    family = sorted(set(blocks), key=sorted)
    if 2 ** len(family) > max_subsets:
        raise GuardExceededError(
            f"2^{len(family)} closure subsets exceed the cap of {max_subsets}"
        )
    out: set[frozenset[str]] = set()
    for size in range(len(family) + 1):
        for combo in itertools.combinations(family, size):
            out.add(frozenset().union(*combo))
    return frozenset(out)


def regions_general(
    t: SetValuedTable,
    attrs: Sequence[str],
    x_set: Iterable[str],
    max_subsets: int = DEFAULT_MAX_CLOSURE,
) -> StructuredRegions:
    """Regions over the union-closed definable family of the partition blocks.

    Nonempty definable sets are split by inclusion; the boundary is the
    complement within the family, never computed independently.
    """
    members = _check_class(t, x_set)
    complement = frozenset(t.objects) - members
    definable = boolean_algebra(partition(t, attrs).blocks, max_subsets)
    pos, neg, bnd = set(), set(), set()
    for y in definable:
        if not y:
            continue
        if y <= members:
            pos.add(y)
        elif y <= complement:
            neg.add(y)
        else:
            bnd.add(y)
    return StructuredRegions(frozenset(pos), frozenset(neg), frozenset(bnd))


def description_regions_complete(
    t: SetValuedTable,
    attrs: Sequence[str],
    x_set: Iterable[str],
    max_formulas: int = DEFAULT_MAX_FORMULAS,
) -> tuple[frozenset[Formula], frozenset[Formula]]:
    """Formula-level regions on a complete table.

    The positive region collects every formula whose nonempty meaning set
    lies inside the class; the negative region is symmetric with the
    complement. The boundary is implicit (everything else).
    """
    members = _check_class(t, x_set)
    complement = frozenset(t.objects) - members
    schemas = _check_attrs(t, attrs)
    dpos, dneg = set(), set()
    for p in enumerate_cdl(schemas, STRICT, max_formulas):
        m = meaning_set(t, p)
        if not m:
            continue
        if m <= members:
            dpos.add(p)
        elif m <= complement:
            dneg.add(p)
    return frozenset(dpos), frozenset(dneg)
