"""Turn description regions into three-way decision rule sets.

Acceptance rules come from the positive region minus the negative one,
rejection rules from the symmetric difference, and formulas caught in
both become explicit non-commitment rules so the conflict stays visible.
Anything not matched by a rule falls to the non-commitment default.
"""

from __future__ import annotations

import enum
import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, Mapping

from .errors import IncompleteTableError
from .fuzzy import format_exact
from .language import Formula, formula_json, render_formula, satisfies


class Decision(enum.Enum):
    ACCEPT = "accept"
    REJECT = "reject"
    NON_COMMIT = "non-commit"


_MARKS = {Decision.ACCEPT: "(A)", Decision.REJECT: "(R)", Decision.NON_COMMIT: "(N)"}


@dataclass(frozen=True)
class Provenance:
    """Where a rule came from: method id, T-norm name, threshold, class label."""

    method: str
    tnorm: str | None = None
    alpha: Fraction | None = None
    class_label: str = ""


@dataclass(frozen=True)
class Rule:
    lhs: Formula
    decision: Decision
    provenance: Provenance


@dataclass(frozen=True)
class RuleSet:
    """Ordered rules plus the implicit non-commitment default."""

    rules: tuple[Rule, ...]
    default: Decision = Decision.NON_COMMIT

    def by_decision(self, decision: Decision) -> tuple[Rule, ...]:
        return tuple(r for r in self.rules if r.decision == decision)


def _default_key(p: Formula):
    return (len(p.atoms), tuple((a.attr, a.value) for a in p.atoms))


def derive_rules(
    dpos: Iterable[Formula],
    dneg: Iterable[Formula],
    provenance: Provenance,
    sort_key: Callable[[Formula], object] | None = None,
) -> RuleSet:
    """Split two formula regions into accept / reject / explicit
    non-commitment rules.

    ``sort_key`` fixes the rule order; callers that enumerated the
    language pass its enumeration key so output order is reproducible.
    """
    pos = frozenset(dpos)
    neg = frozenset(dneg)
    key = sort_key or _default_key
    rules = [Rule(p, Decision.ACCEPT, provenance) for p in sorted(pos - neg, key=key)]
    rules += [Rule(p, Decision.REJECT, provenance) for p in sorted(neg - pos, key=key)]
    rules += [Rule(p, Decision.NON_COMMIT, provenance) for p in sorted(pos & neg, key=key)]
    return RuleSet(tuple(rules))


def apply_rules(rs: RuleSet, row: Mapping[str, str]) -> Decision:
    """Classify a complete row.

    Accept if only acceptance rules match, reject if only rejection rules
    match, non-commit on conflict or when nothing matches. The row must
    assign a value to every attribute any rule mentions; classifying
    incomplete rows is undefined.
    """
    mentioned = {atom.attr for rule in rs.rules for atom in rule.lhs.atoms}
    missing = mentioned - set(row)
    if missing:
        raise IncompleteTableError(f"row lacks values on {sorted(missing)!r}")
    accepted = any(
        satisfies(row, rule.lhs) for rule in rs.rules if rule.decision is Decision.ACCEPT
    )
    rejected = any(
        satisfies(row, rule.lhs) for rule in rs.rules if rule.decision is Decision.REJECT
    )
    if accepted and rejected:
        return Decision.NON_COMMIT
    if accepted:
        return Decision.ACCEPT
    if rejected:
        return Decision.REJECT
    return rs.default


def merge(rulesets: Iterable[RuleSet]) -> RuleSet:
    """Combine rule sets derived from different attribute subsets.

    A formula accepted by one source and rejected by another is downgraded
    to an explicit non-commitment rule.
    """
    pos: dict[Formula, Rule] = {}
    neg: dict[Formula, Rule] = {}
    other: dict[Formula, Rule] = {}
    for rs in rulesets:
        for rule in rs.rules:
            target = {
                Decision.ACCEPT: pos,
                Decision.REJECT: neg,
                Decision.NON_COMMIT: other,
            }[rule.decision]
            target.setdefault(rule.lhs, rule)
    conflicts = set(pos) & set(neg)
    rules = [rule for p, rule in pos.items() if p not in conflicts]
    rules += [rule for p, rule in neg.items() if p not in conflicts]
    rules += [
        Rule(p, Decision.NON_COMMIT, pos[p].provenance) for p in conflicts
    ]
    rules += [rule for p, rule in other.items() if p not in conflicts and p not in pos and p not in neg]
    rules.sort(key=lambda r: _default_key(r.lhs))
    return RuleSet(tuple(rules))


def render(rs: RuleSet, fmt: str = "text") -> str:
    """Serialize a rule set; output bytes are deterministic."""
    if fmt == "text":
        lines = []
        for decision in (Decision.ACCEPT, Decision.REJECT, Decision.NON_COMMIT):
            for rule in rs.by_decision(decision):
                lines.append(f"{_MARKS[decision]} {render_formula(rule.lhs)}")
        lines.append(f"{_MARKS[rs.default]} otherwise")
        return "\n".join(lines) + "\n"
    if fmt == "json":
        return json.dumps(rules_json(rs), indent=2) + "\n"
    raise ValueError(f"unknown format {fmt!r}")


def rules_json(rs: RuleSet) -> dict:
    """JSON-ready form following the documented schema."""
    prov = rs.rules[0].provenance if rs.rules else Provenance(method="")
    return {
        "method": prov.method,
        "tnorm": prov.tnorm,
        "alpha": None if prov.alpha is None else format_exact(prov.alpha),
        "class": prov.class_label,
        "rules": [
            {"lhs": formula_json(rule.lhs), "decision": rule.decision.value}
            for rule in rs.rules
        ],
        "default": rs.default.value,
    }
