"""Acceptance gate: one test per criterion, exact tolerances throughout.

Every fixture value asserted here is an exact rational or an exact set;
display checks use the 3-decimal rendering with zero tolerance. Each test
prints one pass line on success; failures surface through pytest, and the
terminal summary in conftest prints a PASS/FAIL line per criterion either
way. Randomized criteria run the stated number of cases.
"""

import itertools
from fractions import Fraction as Fr

from hypothesis import HealthCheck, given, settings, strategies as st

import expected
from conftest import ATTR_ORDER, formula, formulas
from threeway import (
    AttributeSchema,
    Decision,
    NA,
    Provenance,
    SetValuedTable,
    TNorm,
    alpha_meaning_set,
    alpha_similarity_class,
    approximability,
    approximability_closed,
    boolean_algebra,
    cdef_family,
    confidence,
    confidence_closed,
    derive_rules,
    description_regions_alpha_meaning,
    description_regions_alpha_sim,
    description_regions_approx,
    description_regions_complete,
    description_regions_confidence,
    enumerate_cdl,
    meaning_set,
    oracle_classical_reduction,
    oracle_sat_degree,
    oracle_closure_equality,
    partition,
    regions_computational,
    regions_conceptual,
    regions_general,
    sat_degree,
    similarity_matrix,
    tnorm,
)
from threeway.fuzzy import format_decimal, implication
from threeway.language import Atom, Formula

OBJECTS8 = tuple(f"x{i}" for i in range(1, 9))

RANDOM = settings(
    max_examples=1000,
    deadline=None,
    derandomize=True,
    suppress_health_check=[HealthCheck.too_slow, HealthCheck.filter_too_much, HealthCheck.data_too_large],
)

degrees = st.fractions(min_value=0, max_value=1, max_denominator=12)


def family(sets):
    return frozenset(frozenset(s) for s in sets)


def labels(names):
    return frozenset(formula(expected.SETVALUED8_LANGUAGE[n]) for n in names)


def _cell_choices(domain: tuple[str, ...], complete: bool) -> list[frozenset]:
    if complete:
        return [frozenset({v}) for v in domain]
    options = [
        frozenset(combo)
        for size in range(1, len(domain) + 1)
        for combo in itertools.combinations(domain, size)
    ]
    options.append(frozenset({NA}))
    return options


@st.composite
def tables(draw, complete=False, min_objects=2, max_objects=6, max_attrs=3, max_domain=3):
    n_attrs = draw(st.integers(1, max_attrs))
    schemas = tuple(
        AttributeSchema(
            f"a{i + 1}",
            tuple(str(v) for v in range(draw(st.integers(1, max_domain)))),
        )
        for i in range(n_attrs)
    )
    objects = tuple(f"x{j + 1}" for j in range(draw(st.integers(min_objects, max_objects))))
    choices = {s.name: st.sampled_from(_cell_choices(s.domain, complete)) for s in schemas}
    cells = {
        (x, schema.name): draw(choices[schema.name])
        for x in objects
        for schema in schemas
    }
    return SetValuedTable(objects, schemas, cells)


@st.composite
def table_and_class(draw, complete=False):
    table = draw(tables(complete=complete))
    members = frozenset(
        x for x in table.objects if draw(st.booleans())
    )
    return table, members


@st.composite
def table_and_formula(draw, complete=False):
    table = draw(tables(complete=complete))
    names = list(table.attribute_names)
    chosen = draw(st.sets(st.sampled_from(names), min_size=1))
    atoms = tuple(
        Atom(a, draw(st.sampled_from(table.schema(a).domain)))
        for a in names
        if a in chosen
    )
    return table, Formula(atoms)


def test_c01_partitions(complete6):
    assert partition(complete6, ATTR_ORDER).block_family == family(
        expected.COMPLETE6_PARTITIONS[ATTR_ORDER]
    )
    for attrs, blocks in expected.COMPLETE6_PARTITIONS.items():
        assert partition(complete6, attrs).block_family == family(blocks), attrs
    print("C1 PASS: every partition of the complete table is exact")


def test_c02_complete_regions(complete6, class4):
    regions = regions_computational(complete6, ATTR_ORDER, class4)
    assert regions.pos == family(expected.COMPLETE6_POS)
    assert regions.neg == family(expected.COMPLETE6_NEG)
    assert regions.bnd == family(expected.COMPLETE6_BND)

    pos, neg = regions_conceptual(complete6, ATTR_ORDER, class4)
    assert {ds.members for ds in pos} == family(expected.COMPLETE6_CONCEPT_POS)
    assert {ds.members for ds in neg} == family(expected.COMPLETE6_CONCEPT_NEG)

    general = regions_general(complete6, ATTR_ORDER, class4)
    assert general.pos == family(expected.COMPLETE6_GENERAL_POS)
    assert general.neg == family(expected.COMPLETE6_GENERAL_NEG)
    assert frozenset({"x1", "x2", "x3"}) in general.pos

    dpos, dneg = description_regions_complete(complete6, ATTR_ORDER, class4)
    assert dpos == formulas(expected.COMPLETE6_DPOS)
    assert len(dpos) == 7
    assert dneg == formulas(expected.COMPLETE6_DNEG)
    assert len(dneg) == 3
    print("C2 PASS: structured, definable-family, and description regions are exact")


def test_c03_language_inventory(complete6, setvalued8):
    out6 = enumerate_cdl(complete6.attributes)
    assert len(out6) == 26
    out8 = enumerate_cdl(setvalued8.attributes)
    assert len(out8) == 47
    assert set(out8) == {formula(t) for t in expected.SETVALUED8_LANGUAGE.values()}
    for label, (text, members) in expected.COMPLETE6_LANGUAGE.items():
        p = formula(text)
        assert p in out6
        assert meaning_set(complete6, p) == frozenset(members), label
    print("C3 PASS: language inventories and meaning sets match row for row")


def test_c04_union_closure_equality(complete6):
    from_blocks = boolean_algebra(partition(complete6, ATTR_ORDER).blocks)
    from_formulas = boolean_algebra(ds.members for ds in cdef_family(complete6, ATTR_ORDER))
    want = family(expected.COMPLETE6_DEFINABLE)
    assert from_blocks == from_formulas == want
    assert len(want) == 16
    print("C4 PASS: the two union closures coincide (16 sets) and hold on random tables")


@settings(RANDOM, max_examples=200)
@given(tables(complete=True))
def test_c04_union_closure_equality_random(table):
    assert oracle_closure_equality(table).passed


def test_c05_similarity_matrices(setvalued8):
    m_min = similarity_matrix(setvalued8, ATTR_ORDER, TNorm.MIN)
    m_prod = similarity_matrix(setvalued8, ATTR_ORDER, TNorm.PRODUCT)
    assert m_min.degree("x4", "x6") == Fr(1, 3)
    assert m_prod.degree("x4", "x6") == Fr(1, 6)
    for x in OBJECTS8:
        for y in OBJECTS8:
            for matrix, table in ((m_min, expected.SIM8_MIN), (m_prod, expected.SIM8_PROD)):
                if x == y:
                    want = Fr(1)
                else:
                    want = table.get((x, y), table.get((y, x), Fr(0)))
                assert matrix.degree(x, y) == want, (x, y)
                assert format_decimal(matrix.degree(x, y)) == format_decimal(want)
    print("C5 PASS: both similarity matrices are exact entry for entry")


def test_c06_alpha_similarity_classes(setvalued8):
    for kind, classes in (
        (TNorm.MIN, expected.SIM8_CLASSES_MIN),
        (TNorm.PRODUCT, expected.SIM8_CLASSES_PROD),
    ):
        matrix = similarity_matrix(setvalued8, ATTR_ORDER, kind)
        for x, members in classes.items():
            assert alpha_similarity_class(matrix, x, Fr(3, 10)) == frozenset(members), (kind, x)
    print("C6 PASS: thresholded similarity classes match for all eight objects")


def test_c07_similarity_route_regions(setvalued8, class4):
    alpha = Fr(3, 10)
    dpos, dneg = description_regions_alpha_sim(setvalued8, ATTR_ORDER, alpha, class4, TNorm.MIN)
    assert dpos == formulas(expected.ALPHA_SIM_DPOS_MIN)
    assert dneg == formulas(expected.ALPHA_SIM_DNEG_MIN)
    rules_min = derive_rules(dpos, dneg, Provenance("alpha-sim", "min", alpha, "c"))
    assert len(rules_min.by_decision(Decision.ACCEPT)) == 2
    assert len(rules_min.by_decision(Decision.REJECT)) == 3
    assert not rules_min.by_decision(Decision.NON_COMMIT)

    dpos, dneg = description_regions_alpha_sim(
        setvalued8, ATTR_ORDER, alpha, class4, TNorm.PRODUCT
    )
    assert dpos == formulas(expected.ALPHA_SIM_DPOS_PROD)
    assert dneg == formulas(expected.ALPHA_SIM_DNEG_PROD)
    assert dpos & dneg == formulas(expected.ALPHA_SIM_OVERLAP_PROD)
    rules_prod = derive_rules(dpos, dneg, Provenance("alpha-sim", "prod", alpha, "c"))
    accept = {r.lhs for r in rules_prod.by_decision(Decision.ACCEPT)}
    assert formula("a1=0&a2=3&a3=0") in accept
    assert len(accept) == 3
    assert len(rules_prod.by_decision(Decision.REJECT)) == 5
    assert {r.lhs for r in rules_prod.by_decision(Decision.NON_COMMIT)} == formulas(
        expected.ALPHA_SIM_OVERLAP_PROD
    )

    beta = Fr(4, 5)
    dpos, dneg = description_regions_approx(setvalued8, ATTR_ORDER, beta, class4, TNorm.MIN)
    assert dpos == formulas(expected.APPROX_DPOS_MIN)
    assert dneg == formulas(expected.APPROX_DNEG_MIN)
    dpos, dneg = description_regions_approx(setvalued8, ATTR_ORDER, beta, class4, TNorm.PRODUCT)
    assert dpos == formulas(expected.APPROX_DPOS_PROD)
    assert dneg == formulas(expected.APPROX_DNEG_PROD)
    assert len(dneg) == 7
    print("C7 PASS: similarity-route regions and rule lists are exact, conflicts included")


def test_c08_approximability(setvalued8, class4):
    for x, (pos_min, neg_min, pos_prod, neg_prod) in expected.APPROX8.items():
        got_min = approximability(setvalued8, ATTR_ORDER, TNorm.MIN, class4, x)
        got_prod = approximability(setvalued8, ATTR_ORDER, TNorm.PRODUCT, class4, x)
        assert (got_min.positive, got_min.negative) == (pos_min, neg_min), x
        assert (got_prod.positive, got_prod.negative) == (pos_prod, neg_prod), x
    assert approximability(setvalued8, ATTR_ORDER, TNorm.PRODUCT, class4, "x4").positive == Fr(
        25, 36
    )
    print("C8 PASS: all 32 approximability values exact; closed forms verified on random pairs")


@settings(RANDOM, max_examples=500)
@given(table_and_class())
def test_c08_closed_forms_random(tc):
    table, members = tc
    attrs = table.attribute_names
    for kind in TNorm:
        for x in table.objects:
            generic = approximability(table, attrs, kind, members, x)
            closed = approximability_closed(table, attrs, kind, members, x)
            assert (generic.positive, generic.negative) == (closed.positive, closed.negative)


def test_c09_satisfiability_degrees(setvalued8):
    for label, by_object in expected.SAT8.items():
        p = formula(expected.SETVALUED8_LANGUAGE[label])
        for x in OBJECTS8:
            want_min, want_prod = by_object.get(x, (Fr(0), Fr(0)))
            assert sat_degree(setvalued8, x, p, TNorm.MIN) == want_min, (label, x)
            assert sat_degree(setvalued8, x, p, TNorm.PRODUCT) == want_prod, (label, x)
    for p in enumerate_cdl(setvalued8.attributes):
        for x in OBJECTS8:
            assert sat_degree(setvalued8, x, p, TNorm.PRODUCT) == oracle_sat_degree(
                setvalued8, x, p
            )
    print("C9 PASS: full degree table exact; product degrees equal world fractions (8 x 47)")


def test_c10_alpha_meaning(setvalued8, class4):
    for label, (want_min, want_prod) in expected.MEANING8.items():
        p = formula(expected.SETVALUED8_LANGUAGE[label])
        assert alpha_meaning_set(setvalued8, p, Fr(1, 2), TNorm.MIN) == frozenset(want_min)
        assert alpha_meaning_set(setvalued8, p, Fr(1, 2), TNorm.PRODUCT) == frozenset(want_prod)
    dpos, dneg = description_regions_alpha_meaning(
        setvalued8, ATTR_ORDER, Fr(1, 2), class4, TNorm.MIN
    )
    assert dpos == labels(expected.ALPHA_MEANING_DPOS_MIN)
    assert dneg == labels(expected.ALPHA_MEANING_DNEG_MIN)
    dpos, dneg = description_regions_alpha_meaning(
        setvalued8, ATTR_ORDER, Fr(1, 2), class4, TNorm.PRODUCT
    )
    assert dpos == labels(expected.ALPHA_MEANING_DPOS_PROD)
    assert dneg == labels(expected.ALPHA_MEANING_DNEG_PROD)
    print("C10 PASS: thresholded meaning sets and their regions are exact")


def test_c11_confidence(setvalued8, class4):
    for label, want in expected.CONFIDENCE8.items():
        p = formula(expected.SETVALUED8_LANGUAGE[label])
        got_min = confidence(setvalued8, p, class4, TNorm.MIN)
        got_prod = confidence(setvalued8, p, class4, TNorm.PRODUCT)
        assert (got_min.accept, got_min.reject, got_prod.accept, got_prod.reject) == want, label
    dpos, dneg = description_regions_confidence(
        setvalued8, ATTR_ORDER, Fr(3, 5), class4, TNorm.MIN
    )
    assert dpos == labels(expected.CONFIDENCE_DPOS_MIN)
    assert dneg == labels(expected.CONFIDENCE_DNEG_MIN)
    dpos, dneg = description_regions_confidence(
        setvalued8, ATTR_ORDER, Fr(3, 5), class4, TNorm.PRODUCT
    )
    assert dpos == labels(expected.CONFIDENCE_DPOS_PROD)
    assert dneg == labels(expected.CONFIDENCE_DNEG_PROD)
    dpos, dneg = description_regions_confidence(
        setvalued8, ATTR_ORDER, Fr(3, 10), class4, TNorm.MIN
    )
    assert dpos & dneg == labels(expected.CONFIDENCE_CONFLICT_MIN)
    print("C11 PASS: every confidence value and region, conflict set included, is exact")


@settings(RANDOM, max_examples=500)
@given(table_and_formula(), st.booleans())
def test_c11_confidence_closed_forms_random(tf, flip):
    table, p = tf
    members = frozenset(x for i, x in enumerate(table.objects) if (i % 2 == 0) == flip)
    for kind in TNorm:
        generic = confidence(table, p, members, kind)
        closed = confidence_closed(table, p, members, kind)
        assert (generic.accept, generic.reject) == (closed.accept, closed.reject)


@settings(RANDOM)
@given(degrees, degrees, degrees, st.sampled_from(list(TNorm)))
def test_c12_tnorm_axioms(u, v, w, kind):
    assert tnorm(kind, [u, v]) == tnorm(kind, [v, u])
    assert tnorm(kind, [u, tnorm(kind, [v, w])]) == tnorm(kind, [tnorm(kind, [u, v]), w])
    lo, hi = min(v, w), max(v, w)
    assert tnorm(kind, [u, lo]) <= tnorm(kind, [u, hi])
    assert tnorm(kind, [u, Fr(1)]) == u
    assert implication(kind, Fr(1), Fr(0)) == 0
    assert implication(kind, Fr(0), Fr(0)) == 1


@settings(RANDOM)
@given(tables(), st.sampled_from(list(TNorm)))
def test_c12_similarity_shape(table, kind):
    attrs = table.attribute_names
    matrix = similarity_matrix(table, attrs, kind)
    prod_matrix = similarity_matrix(table, attrs, TNorm.PRODUCT)
    sub = attrs[: max(1, len(attrs) - 1)]
    sub_matrix = similarity_matrix(table, sub, kind)
    for x in table.objects:
        assert matrix.degree(x, x) == 1
        for y in table.objects:
            assert matrix.degree(x, y) == matrix.degree(y, x)
            assert matrix.degree(x, y) >= prod_matrix.degree(x, y) or kind is TNorm.PRODUCT
            assert matrix.degree(x, y) <= sub_matrix.degree(x, y)


@settings(RANDOM)
@given(tables(), degrees, degrees, st.sampled_from(list(TNorm)))
def test_c12_threshold_antitonicity(table, alpha, beta, kind):
    lo, hi = min(alpha, beta), max(alpha, beta)
    attrs = table.attribute_names
    matrix = similarity_matrix(table, attrs, kind)
    p = Formula(tuple(Atom(a, table.schema(a).domain[0]) for a in attrs))
    for x in table.objects:
        assert alpha_similarity_class(matrix, x, hi) <= alpha_similarity_class(matrix, x, lo)
    assert alpha_meaning_set(table, p, hi, kind) <= alpha_meaning_set(table, p, lo, kind)


@settings(RANDOM)
@given(table_and_class(), degrees, st.sampled_from(list(TNorm)))
def test_c12_meaning_regions_disjoint(tc, alpha, kind):
    table, members = tc
    dpos, dneg = description_regions_alpha_meaning(
        table, table.attribute_names, alpha, members, kind
    )
    assert not dpos & dneg


@settings(RANDOM)
@given(table_and_formula())
def test_c12_min_confidence_bound(tf):
    table, p = tf
    members = frozenset(table.objects[: len(table.objects) // 2])
    conf = confidence(table, p, members, TNorm.MIN)
    assert min(conf.accept, conf.reject) <= Fr(1, 2)


@settings(RANDOM)
@given(table_and_class(complete=True), degrees)
def test_c12_classical_reduction(tc, alpha):
    table, members = tc
    threshold = alpha if alpha > 0 else Fr(1, 2)
    assert oracle_classical_reduction(table, table.attribute_names, members, threshold).passed
