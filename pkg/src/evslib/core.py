"""Generic ordered-semigroup-with-scalar-action contract and its verifier.

An instance packages a carrier fragment behind five operations: add, scale,
leq, equal, and a distinguished zero. The verifier runs the six structure
axioms over a seeded finite sample with exact arithmetic:

  A1  addition is a commutative semigroup with identity zero
  A2  the order is translation- and scaling-compatible
  A3  (i) scale distributes over add, (ii) scale composes multiplicatively,
      (iii) (a+b)x <= ax + bx, (iv) 1x = x
  A4  ax = zero iff a = 0 or x = zero
  A5  x + (-1)x = zero iff x is minimal
  A6  below every element sits a minimal element

A1-A4 are decided exactly on the sample. A5 and A6 quantify over the whole
carrier, which is usually infinite, so they are checked sample-relatively and
labeled as such: minimality means no sampled witness below, and the A6 search
ranges over sampled elements that are both order-minimal and satisfy the A5
characterization p + (-1)p = zero. The verifier refutes; it never certifies a
carrier-wide claim. Every failure carries a counterexample that re-evaluates
to a violation when replayed through the instance operations.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, combinations_with_replacement, product
from typing import Any, Callable, Optional, Sequence

from .errors import InputError
from .rationals import fmt, parse_rational

ZERO = Fraction(0)
ONE = Fraction(1)
MINUS_ONE = Fraction(-1)


@dataclass(frozen=True)
class EvsInstance:
    """Operations of one carrier fragment, plus serialization for replay.

    The optional hooks extend the instance for the order tools: `comparing`
    is an exact comparing function (None when the instance cannot provide
    one), `eps_independence` produces decay witnesses for independence up to
    epsilon, and `lsolve` handles testing-set membership in instances whose
    primitive space is larger than {zero}.
    """

    name: str
    zero: Any
    add: Callable[[Any, Any], Any]
    scale: Callable[[Fraction, Any], Any]
    leq: Callable[[Any, Any], bool]
    equal: Callable[[Any, Any], bool]
    element_to_json: Callable[[Any], Any]
    element_from_json: Callable[[Any], Any]
    zero_primitive: bool = False
    homogeneous: bool = False
    comparing: Optional[Callable[[Any, Any], Optional[Fraction]]] = None
    eps_independence: Optional[Callable] = None
    lsolve: Optional[Callable] = None


# ---------------------------------------------------------------------------
# Law registry: one predicate per checkable law, shared with replay
# ---------------------------------------------------------------------------


def _is_sample_minimal(inst: EvsInstance, z, sample) -> bool:
    return not any(
        inst.leq(y, z) and not inst.equal(y, z) for y in sample
    )


def _sample_primitives(inst: EvsInstance, sample) -> list:
    """Sampled elements that are order-minimal and additively characterized."""
    return [
        p for p in sample
        if _is_sample_minimal(inst, p, sample)
        and inst.equal(inst.add(p, inst.scale(MINUS_ONE, p)), inst.zero)
    ]


def _law_a1_identity(inst, els, scs, sample):
    (x,) = els
    return inst.equal(inst.add(x, inst.zero), x)


def _law_a1_commutativity(inst, els, scs, sample):
    x, y = els
    return inst.equal(inst.add(x, y), inst.add(y, x))


def _law_a1_associativity(inst, els, scs, sample):
    x, y, z = els
    return inst.equal(inst.add(inst.add(x, y), z), inst.add(x, inst.add(y, z)))


def _law_a2_translation(inst, els, scs, sample):
    x, y, z = els
    return (not inst.leq(x, y)) or inst.leq(inst.add(x, z), inst.add(y, z))


def _law_a2_scaling(inst, els, scs, sample):
    x, y = els
    (a,) = scs
    return (not inst.leq(x, y)) or inst.leq(inst.scale(a, x), inst.scale(a, y))


def _law_a3_i(inst, els, scs, sample):
    x, y = els
    (a,) = scs
    return inst.equal(
        inst.scale(a, inst.add(x, y)),
        inst.add(inst.scale(a, x), inst.scale(a, y)),
    )


def _law_a3_ii(inst, els, scs, sample):
    (x,) = els
    a, b = scs
    return inst.equal(inst.scale(a, inst.scale(b, x)), inst.scale(a * b, x))


def _law_a3_iii(inst, els, scs, sample):
    (x,) = els
    a, b = scs
    return inst.leq(
        inst.scale(a + b, x),
        inst.add(inst.scale(a, x), inst.scale(b, x)),
    )


def _law_a3_iv(inst, els, scs, sample):
    (x,) = els
    return inst.equal(inst.scale(ONE, x), x)


def _law_a4(inst, els, scs, sample):
    (x,) = els
    (a,) = scs
    vanishes = inst.equal(inst.scale(a, x), inst.zero)
    should = (a == 0) or inst.equal(x, inst.zero)
    return vanishes == should


def _law_a5(inst, els, scs, sample):
    (z,) = els
    additive = inst.equal(inst.add(z, inst.scale(MINUS_ONE, z)), inst.zero)
    return additive == _is_sample_minimal(inst, z, sample)


def _law_a6(inst, els, scs, sample):
    (x,) = els
    return any(inst.leq(p, x) for p in _sample_primitives(inst, sample))


def _law_balanced(inst, els, scs, sample):
    (x,) = els
    (a,) = scs
    return inst.leq(inst.scale(a, x), x)


def _law_homogeneous(inst, els, scs, sample):
    (x,) = els
    (a,) = scs
    return inst.equal(inst.scale(a, x), inst.scale(abs(a), x))


LAWS: dict[str, Callable] = {
    "A1.identity": _law_a1_identity,
    "A1.commutativity": _law_a1_commutativity,
    "A1.associativity": _law_a1_associativity,
    "A2.translation": _law_a2_translation,
    "A2.scaling": _law_a2_scaling,
    "A3.i": _law_a3_i,
    "A3.ii": _law_a3_ii,
    "A3.iii": _law_a3_iii,
    "A3.iv": _law_a3_iv,
    "A4": _law_a4,
    "A5": _law_a5,
    "A6": _law_a6,
    "balanced": _law_balanced,
    "homogeneous": _law_homogeneous,
    "convex": _law_a3_iii,  # with the equality check done by the caller
}


def _counterexample(inst: EvsInstance, law: str, els, scs) -> dict:
    return {
        "law": law,
        "elements": [inst.element_to_json(e) for e in els],
        "scalars": [fmt(a) for a in scs],
    }


def replay_counterexample(inst: EvsInstance, ce: dict,
                          sample: Optional[Sequence] = None) -> bool:
    """Re-evaluate a recorded counterexample; True means the violation is
    reproduced (the law predicate fails again)."""
    law = ce["law"]
    els = [inst.element_from_json(e) for e in ce["elements"]]
    scs = [parse_rational(a) for a in ce["scalars"]]
    if law == "convex":
        x = els[0]
        a, b = scs
        lhs = inst.scale(a + b, x)
        rhs = inst.add(inst.scale(a, x), inst.scale(b, x))
        return not inst.equal(lhs, rhs)
    return not LAWS[law](inst, els, scs, sample)


# ---------------------------------------------------------------------------
# Reports
# ---------------------------------------------------------------------------


@dataclass
class CheckEntry:
    axiom: str
    status: str                      # "pass" | "fail" | "not-applicable"
    sample_relative: bool = False
    counterexample: Optional[dict] = None
    reason: Optional[str] = None

    def to_json(self) -> dict:
        doc = {
            "axiom": self.axiom,
            "status": self.status,
            "sampleRelative": self.sample_relative,
        }
        if self.counterexample is not None:
            doc["counterexample"] = self.counterexample
        if self.reason is not None:
            doc["reason"] = self.reason
        return doc


@dataclass
class AxiomReport:
    instance: str
    seed: int
    sample_size: int
    scalars: list[Fraction]
    entries: list[CheckEntry]

    def entry(self, axiom: str) -> CheckEntry:
        for e in self.entries:
            if e.axiom == axiom:
                return e
        raise KeyError(axiom)

    def passed(self) -> bool:
        return all(e.status == "pass" for e in self.entries)

    def to_json(self) -> dict:
        return {
            "instance": self.instance,
            "seed": self.seed,
            "sampleSize": self.sample_size,
            "scalars": [fmt(a) for a in self.scalars],
            "axioms": [e.to_json() for e in self.entries],
            "pass": self.passed(),
        }


@dataclass
class PropertyReport:
    instance: str
    entries: list[CheckEntry]

    def entry(self, name: str) -> CheckEntry:
        for e in self.entries:
            if e.axiom == name:
                return e
        raise KeyError(name)

    def to_json(self) -> dict:
        return {
            "instance": self.instance,
            "properties": [e.to_json() for e in self.entries],
            "pass": all(e.status == "pass" for e in self.entries),
        }


# ---------------------------------------------------------------------------
# Axiom suite
# ---------------------------------------------------------------------------


def _validate_inputs(inst: EvsInstance, sample, scalars) -> list[Fraction]:
    if not sample:
        raise InputError("sample must be nonempty")
    if not any(inst.equal(x, inst.zero) for x in sample):
        raise InputError("sample must contain the instance zero")
    scalars = [parse_rational(a) for a in scalars]
    for needed in (ZERO, ONE, MINUS_ONE):
        if needed not in scalars:
            raise InputError("scalar list must contain 0, 1 and -1")
    return scalars


def check_axioms(inst: EvsInstance, sample: Sequence, scalars: Sequence,
                 seed: int) -> AxiomReport:
    """Run A1-A6 over the sample; all pairs and triples are exhausted.

    A5/A6 verdicts are sample-relative by necessity and are flagged so. The
    seed is recorded for report replay; the sample itself is an input and is
    expected to be deterministic in it.
    """
    scalars = _validate_inputs(inst, sample, scalars)
    sample = list(sample)
    entries: list[CheckEntry] = []

    def first_failure(law: str, tuples) -> Optional[dict]:
        pred = LAWS[law]
        for els, scs in tuples:
            if not pred(inst, els, scs, sample):
                return _counterexample(inst, law, els, scs)
        return None

    # A1
    ce = first_failure("A1.identity", (((x,), ()) for x in sample))
    if ce is None:
        ce = first_failure(
            "A1.commutativity", ((pair, ()) for pair in combinations(sample, 2))
        )
    if ce is None:
        ce = first_failure(
            "A1.associativity", ((tri, ()) for tri in combinations(sample, 3))
        )
    entries.append(CheckEntry("A1", "fail" if ce else "pass", counterexample=ce))

    # A2 over comparable sampled pairs
    comparable = [
        (x, y)
        for x, y in product(sample, repeat=2)
        if not inst.equal(x, y) and inst.leq(x, y)
    ]
    if not comparable:
        entries.append(CheckEntry("A2", "not-applicable",
                                  reason="no comparable pairs in sample"))
    else:
        ce = first_failure(
            "A2.translation",
            (((x, y, z), ()) for x, y in comparable for z in sample),
        )
        if ce is None:
            ce = first_failure(
                "A2.scaling",
                (((x, y), (a,)) for x, y in comparable for a in scalars),
            )
        entries.append(CheckEntry("A2", "fail" if ce else "pass", counterexample=ce))

    # A3
    for law, tuples in (
        ("A3.i", ((pair, (a,)) for pair in combinations(sample, 2) for a in scalars)),
        ("A3.ii", (((x,), ab) for x in sample for ab in product(scalars, repeat=2))),
        ("A3.iii", (((x,), ab) for x in sample
                    for ab in combinations_with_replacement(scalars, 2))),
        ("A3.iv", (((x,), ()) for x in sample)),
    ):
        ce = first_failure(law, tuples)
        entries.append(CheckEntry(law, "fail" if ce else "pass", counterexample=ce))

    # A4
    ce = first_failure("A4", (((x,), (a,)) for x in sample for a in scalars))
    entries.append(CheckEntry("A4", "fail" if ce else "pass", counterexample=ce))

    # A5 (sample-relative)
    ce = first_failure("A5", (((z,), ()) for z in sample))
    entries.append(CheckEntry("A5", "fail" if ce else "pass",
                              sample_relative=True, counterexample=ce))

    # A6 (sample-relative); the primitive candidates are computed once
    primitives = _sample_primitives(inst, sample)
    ce = None
    for x in sample:
        if not any(inst.leq(p, x) for p in primitives):
            ce = _counterexample(inst, "A6", (x,), ())
            break
    entries.append(CheckEntry("A6", "fail" if ce else "pass",
                              sample_relative=True, counterexample=ce))

    return AxiomReport(inst.name, seed, len(sample), scalars, entries)


# ---------------------------------------------------------------------------
# Named-property suite
# ---------------------------------------------------------------------------


def check_properties(inst: EvsInstance, sample: Sequence,
                     scalars: Sequence) -> PropertyReport:
    """Balanced / homogeneous / convex and the primitive-structure properties.

    Balanced is checked independently over the |a| <= 1 scalars, never
    inferred from homogeneity. The primitive properties use the
    sample-relative minimal set, so their verdicts are sample-relative; the
    additive-primitivity comparison is only scored on pairs whose primitive
    sets are fully witnessed inside the sample, and comes out inconclusive if
    no pair is.
    """
    scalars = _validate_inputs(inst, sample, scalars)
    sample = list(sample)
    entries: list[CheckEntry] = []

    small = [a for a in scalars if abs(a) <= 1]
    ce = None
    for x in sample:
        for a in small:
            if not _law_balanced(inst, (x,), (a,), sample):
                ce = _counterexample(inst, "balanced", (x,), (a,))
                break
        if ce:
            break
    entries.append(CheckEntry("balanced", "fail" if ce else "pass",
                              counterexample=ce))

    ce = None
    for x in sample:
        for a in scalars:
            if not _law_homogeneous(inst, (x,), (a,), sample):
                ce = _counterexample(inst, "homogeneous", (x,), (a,))
                break
        if ce:
            break
    entries.append(CheckEntry("homogeneous", "fail" if ce else "pass",
                              counterexample=ce))

    nonneg = [a for a in scalars if a >= 0]
    ce = None
    for x in sample:
        for a, b in combinations_with_replacement(nonneg, 2):
            lhs = inst.scale(a + b, x)
            rhs = inst.add(inst.scale(a, x), inst.scale(b, x))
            if not inst.equal(lhs, rhs):
                ce = _counterexample(inst, "convex", (x,), (a, b))
                break
        if ce:
            break
    entries.append(CheckEntry("convex", "fail" if ce else "pass",
                              counterexample=ce))

    minimal = minimal_elements(sample, inst)
    strays = [m for m in minimal if not inst.equal(m, inst.zero)]
    entries.append(CheckEntry(
        "zero-primitive",
        "fail" if strays else "pass",
        sample_relative=True,
        counterexample=None if not strays else {
            "law": "zero-primitive",
            "elements": [inst.element_to_json(strays[0])],
            "scalars": [],
        },
    ))

    primitives = _sample_primitives(inst, sample)
    ce = None
    for x in sample:
        below = [p for p in primitives if inst.leq(p, x)]
        if len(below) != 1:
            ce = {
                "law": "single-primitive",
                "elements": [inst.element_to_json(x)],
                "scalars": [],
                "primitiveCount": len(below),
            }
            break
    entries.append(CheckEntry("single-primitive", "fail" if ce else "pass",
                              sample_relative=True, counterexample=ce))

    entries.append(_additive_primitive_entry(inst, sample, primitives))
    return PropertyReport(inst.name, entries)


def _additive_primitive_entry(inst: EvsInstance, sample, primitives) -> CheckEntry:
    def prims_below(x):
        return [p for p in primitives if inst.leq(p, x)]

    def witnessed(elements):
        return all(
            any(inst.equal(e, s) for s in sample) for e in elements
        )

    scored = 0
    for x, y in combinations_with_replacement(sample, 2):
        px, py = prims_below(x), prims_below(y)
        if not px or not py:
            continue
        total = inst.add(x, y)
        ptotal = prims_below(total)
        sums = [inst.add(p, q) for p in px for q in py]
        if not ptotal or not witnessed(sums):
            continue
        scored += 1
        ok = all(
            any(inst.equal(s, t) for t in ptotal) for s in sums
        ) and all(
            any(inst.equal(t, s) for s in sums) for t in ptotal
        )
        if not ok:
            return CheckEntry("additive-primitive", "fail", sample_relative=True,
                              counterexample={
                                  "law": "additive-primitive",
                                  "elements": [inst.element_to_json(x),
                                               inst.element_to_json(y)],
                                  "scalars": [],
                              })
    if scored == 0:
        return CheckEntry("additive-primitive", "not-applicable",
                          sample_relative=True,
                          reason="no pair with fully witnessed primitive sets")
    return CheckEntry("additive-primitive", "pass", sample_relative=True)


# ---------------------------------------------------------------------------
# Minimal elements and order sanity
# ---------------------------------------------------------------------------


def minimal_elements(universe: Sequence, inst: EvsInstance) -> list:
    """All universe elements with no distinct universe element below them;
    this is the sample-relative minimal set, not a carrier-wide claim."""
    universe = list(universe)
    if not universe:
        raise InputError("universe must be nonempty")
    return [u for u in universe if _is_sample_minimal(inst, u, universe)]


def check_partial_order(inst: EvsInstance, sample: Sequence) -> Optional[dict]:
    """Reflexivity, antisymmetry and transitivity of leq on the sample;
    returns a counterexample record or None."""
    sample = list(sample)
    for x in sample:
        if not inst.leq(x, x):
            return {"law": "reflexive", "elements": [inst.element_to_json(x)]}
    for x, y in combinations(sample, 2):
        if inst.leq(x, y) and inst.leq(y, x) and not inst.equal(x, y):
            return {"law": "antisymmetric",
                    "elements": [inst.element_to_json(x), inst.element_to_json(y)]}
    below = {
        i: {j for j, y in enumerate(sample) if inst.leq(sample[i], y)}
        for i in range(len(sample))
    }
    for i in range(len(sample)):
        for j in below[i]:
            if not below[j] <= below[i]:
                k = min(below[j] - below[i])
                return {"law": "transitive",
                        "elements": [inst.element_to_json(sample[i]),
                                     inst.element_to_json(sample[j]),
                                     inst.element_to_json(sample[k])]}
    return None
