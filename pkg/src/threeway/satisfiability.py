"""Satisfiability-based three-way decision on set-valued tables.

The degree to which an object satisfies an atom is
``|s_a(x) & {v}| / |s_a(x)|``, the probability that its actual value is
``v``; composite formulas fold atom degrees through a T-norm. Two region
constructions follow: one thresholds per-formula meaning sets, the other
thresholds acceptance/rejection confidence computed with the paired
implication and the standard negator. Formulas here are strict: ``NA`` is
not an admissible atom value, and an ``{NA}`` cell satisfies every atom
on that attribute to degree 0.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .errors import UnknownIdError
from .fuzzy import ONE, ZERO, TNorm, as_degree, implication, negate, tnorm
from .language import DEFAULT_MAX_FORMULAS, Formula, STRICT, enumerate_cdl
from .table import NA, SetValuedTable


@dataclass(frozen=True, eq=False)
class SatProfile:
    """Per-object satisfiability degrees of one formula."""

    formula: Formula
    degrees: Mapping[str, Fraction]
    kind: TNorm


@dataclass(frozen=True)
class Confidence:
    """Degrees to which a formula supports an acceptance or a rejection
    rule for the given class."""

    formula: Formula
    accept: Fraction
    reject: Fraction
    class_ref: frozenset[str]


def _check_strict(st: SetValuedTable, p: Formula) -> None:
    for atom in p.atoms:
        domain = st.schema(atom.attr).domain
        if atom.value == NA or atom.value not in domain:
            raise ValueError(f"atom ({atom.attr}={atom.value}) is not strict-mode")


def _check_class(st: SetValuedTable, x_set: Iterable[str]) -> frozenset[str]:
    members = frozenset(x_set)
    unknown = members - set(st.objects)
    if unknown:
        raise UnknownIdError(f"class contains unknown objects {sorted(unknown)!r}")
    return members


def _schemas(st: SetValuedTable, attrs: Sequence[str]) -> tuple:
    wanted = set(attrs)
    if len(wanted) != len(tuple(attrs)):
        raise ValueError("duplicate attributes in subset")
    for a in wanted:
        st.schema(a)
    # Declaration order keeps formula atom order canonical everywhere.
    return tuple(st.schema(a) for a in st.attribute_names if a in wanted)


def sat_degree(st: SetValuedTable, x: str, p: Formula, kind: TNorm) -> Fraction:
    """Degree to which object ``x`` satisfies the strict formula ``p``."""
    _check_strict(st, p)
    if x not in st.objects:
        raise UnknownIdError(f"unknown object {x!r}")
    atom_degrees = []
    for atom in p.atoms:
        cell = st.cell(x, atom.attr)
        atom_degrees.append(Fraction(len(cell & {atom.value}), len(cell)))
    return tnorm(kind, atom_degrees)


def sat_profile(st: SetValuedTable, p: Formula, kind: TNorm) -> SatProfile:
    """Degrees of ``p`` for every object, computed in one pass."""
    return SatProfile(p, {x: sat_degree(st, x, p, kind) for x in st.objects}, kind)


def alpha_meaning_set(st: SetValuedTable, p: Formula, alpha, kind: TNorm) -> frozenset[str]:
    """Objects satisfying ``p`` to a degree of at least ``alpha`` (exact
    rational comparison)."""
    threshold = as_degree(alpha)
    profile = sat_profile(st, p, kind)
    return frozenset(x for x, d in profile.degrees.items() if d >= threshold)


def description_regions_alpha_meaning(
    st: SetValuedTable,
    attrs: Sequence[str],
    alpha,
    x_set: Iterable[str],
    kind: TNorm,
    max_formulas: int = DEFAULT_MAX_FORMULAS,
) -> tuple[frozenset[Formula], frozenset[Formula]]:
    """Formulas whose nonempty thresholded meaning set lies inside the
    class (positive) or its complement (negative).

    These two regions are disjoint by construction: a nonempty set cannot
    be inside both the class and its complement.
    """
    members = _check_class(st, x_set)
    complement = frozenset(st.objects) - members
    schemas = _schemas(st, attrs)
    dpos: set[Formula] = set()
    dneg: set[Formula] = set()
    for p in enumerate_cdl(schemas, STRICT, max_formulas):
        m = alpha_meaning_set(st, p, alpha, kind)
        if not m:
            continue
        if m <= members:
            dpos.add(p)
        elif m <= complement:
            dneg.add(p)
    return frozenset(dpos), frozenset(dneg)


def confidence(st: SetValuedTable, p: Formula, x_set: Iterable[str], kind: TNorm) -> Confidence:
    """Evaluate the defining fuzzy-logic expression directly.

    accept = T( T over x of I(D(x), 1_X(x)), N(T over x of I(D(x), 1_Xc(x))) )
    and reject swaps the class with its complement. T and I are the paired
    operators of ``kind``; N is the standard negator. Closed forms are
    available separately for cross-checking.
    """
    members = _check_class(st, x_set)
    profile = sat_profile(st, p, kind)
    degrees = [profile.degrees[x] for x in st.objects]
    inside = [ONE if x in members else ZERO for x in st.objects]

    def toward(indicator: list[Fraction]) -> Fraction:
        return tnorm(kind, (implication(kind, d, i) for d, i in zip(degrees, indicator)))

    co_indicator = [ONE - i for i in inside]
    accept = tnorm(kind, (toward(inside), negate(toward(co_indicator))))
    reject = tnorm(kind, (toward(co_indicator), negate(toward(inside))))
    return Confidence(p, accept, reject, members)


def confidence_closed(
    st: SetValuedTable, p: Formula, x_set: Iterable[str], kind: TNorm
) -> Confidence:
    """Closed forms of the confidence degrees.

    MIN:     accept = min(1 - max degree over the complement,
                          max degree over the class)
    PRODUCT: accept = prod over the complement of (1 - D)
                      * (1 - prod over the class of (1 - D))
    reject swaps the index sets. Max over an empty set counts as 0 and a
    product over an empty set as 1.
    """
    members = _check_class(st, x_set)
    profile = sat_profile(st, p, kind)
    inside = [profile.degrees[x] for x in st.objects if x in members]
    outside = [profile.degrees[x] for x in st.objects if x not in members]

    if kind is TNorm.MIN:
        def one_sided(pro: list[Fraction], contra: list[Fraction]) -> Fraction:
            hi_contra = max(contra, default=ZERO)
            hi_pro = max(pro, default=ZERO)
            return min(ONE - hi_contra, hi_pro)

    else:
        def one_sided(pro: list[Fraction], contra: list[Fraction]) -> Fraction:
            miss_contra = ONE
            for d in contra:
                miss_contra *= ONE - d
            miss_pro = ONE
            for d in pro:
                miss_pro *= ONE - d
            return miss_contra * (ONE - miss_pro)

    return Confidence(p, one_sided(inside, outside), one_sided(outside, inside), members)


def description_regions_confidence(
    st: SetValuedTable,
    attrs: Sequence[str],
    alpha,
    x_set: Iterable[str],
    kind: TNorm,
    max_formulas: int = DEFAULT_MAX_FORMULAS,
) -> tuple[frozenset[Formula], frozenset[Formula]]:
    """Formulas whose acceptance (resp. rejection) confidence passes the
    threshold. Overlap is possible and resolved at rule derivation."""
    members = _check_class(st, x_set)
    threshold = as_degree(alpha)
    schemas = _schemas(st, attrs)
    dpos: set[Formula] = set()
    dneg: set[Formula] = set()
    for p in enumerate_cdl(schemas, STRICT, max_formulas):
        conf = confidence(st, p, members, kind)
        if conf.accept >= threshold:
            dpos.add(p)
        if conf.reject >= threshold:
            dneg.add(p)
    return frozenset(dpos), frozenset(dneg)
