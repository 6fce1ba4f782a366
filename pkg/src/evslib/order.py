"""Testing-set membership and order comparability over explicit finite universes.

The testing set of a nonzero element x collects everything that dominates a
nonzero multiple of x (plus a primitive). Membership is decided through the
instance's exact comparing function where one exists: the certificate is the
comparing value itself, the largest alpha with alpha*x <= y, and a certificate
replays as a concrete inequality. Instances without an exact comparing
function yield inconclusive verdicts, optionally upgraded to
epsilon-qualified independence by decay witnesses; nothing is ever guessed.

Every verdict here is universe-relative: carrier-wide set claims are not
executable over infinite carriers, so reports quantify only over the supplied
element lists and say so.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Any, Optional, Sequence

from .core import EvsInstance, minimal_elements
from .errors import InputError
from .rationals import fmt

POSITIVE = "positive"
REFUTED = "refuted"
INCONCLUSIVE = "inconclusive"


@dataclass(frozen=True)
class Universe:
    """Finite list of nonzero elements of one instance; the zero element is
    held by the instance itself and is excluded from the list."""

    instance: EvsInstance
    elements: tuple

    def __init__(self, instance: EvsInstance, elements: Sequence):
        elements = tuple(elements)
        if not elements:
            raise InputError("universe must be nonempty")
        if instance.zero is not None:
            if any(instance.equal(e, instance.zero) for e in elements):
                raise InputError("universe elements must be nonzero")
        object.__setattr__(self, "instance", instance)
        object.__setattr__(self, "elements", elements)


@dataclass(frozen=True)
class LCertificate:
    """Outcome of a testing-set membership query for (x, y): does y dominate a
    nonzero multiple of x (plus a primitive)?"""

    status: str                       # positive | refuted | inconclusive
    alpha: Optional[Fraction] = None
    primitive: Optional[Any] = None   # only on the explicit-primitive route
    reason: Optional[str] = None

    def to_json(self, instance: Optional[EvsInstance] = None) -> dict:
        doc = {"status": self.status}
        if self.alpha is not None:
            doc["alpha"] = fmt(self.alpha)
        if self.primitive is not None and instance is not None:
            doc["primitive"] = instance.element_to_json(self.primitive)
        if self.reason is not None:
            doc["reason"] = self.reason
        return doc


def _require_nonzero(instance: EvsInstance, *elements) -> None:
    if instance.zero is None:
        return
    for e in elements:
        if instance.equal(e, instance.zero):
            raise InputError("testing sets are defined for nonzero elements only")


def in_l(instance: EvsInstance, x, y,
         universe: Optional[Universe] = None) -> LCertificate:
    """Decide y in L(x).

    Zero-primitive homogeneous instances with an exact comparing function get
    the maximal certificate alpha = comparing(x, y); zero refutes membership.
    Instances with a larger primitive space search the universe's minimal
    elements for an explicit primitive witness and report inconclusive when
    the universe has none that fits.
    """
    _require_nonzero(instance, x, y)
    if instance.zero_primitive and instance.homogeneous and instance.comparing:
        value = instance.comparing(x, y)
        if value is None:
            return LCertificate(INCONCLUSIVE,
                                reason="comparing function unavailable")
        if value > 0:
            return LCertificate(POSITIVE, alpha=value)
        return LCertificate(REFUTED, alpha=Fraction(0),
                            reason="comparing value is exactly zero")
    if instance.lsolve is not None:
        if universe is None:
            return LCertificate(
                INCONCLUSIVE,
                reason="primitive search needs a universe of candidates",
            )
        candidates = minimal_elements(
            list(universe.elements) + [instance.zero], instance
        )
        found = instance.lsolve(x, y, candidates)
        if found is not None:
            alpha, prim = found
            return LCertificate(POSITIVE, alpha=alpha, primitive=prim)
        return LCertificate(
            INCONCLUSIVE,
            reason="universe lacks a primitive witness for this pair",
        )
    return LCertificate(INCONCLUSIVE,
                        reason="instance exposes no exact comparing function")


def replay_certificate(instance: EvsInstance, x, y, cert: LCertificate) -> bool:
    """A positive certificate must replay as a concrete order inequality."""
    if cert.status != POSITIVE:
        return False
    scaled = instance.scale(cert.alpha, x)
    if cert.primitive is not None:
        scaled = instance.add(scaled, cert.primitive)
    return instance.leq(scaled, y)


def _scan_domain(a, universe: Universe) -> list:
    """Universe elements plus the query element itself, so asking about the
    zero element includes it in its own up-set."""
    inst = universe.instance
    domain = list(universe.elements)
    if not any(inst.equal(a, e) for e in domain):
        domain.append(a)
    return domain


def up_set(a, universe: Universe) -> list:
    inst = universe.instance
    return [e for e in _scan_domain(a, universe) if inst.leq(a, e)]


def down_set(a, universe: Universe) -> list:
    inst = universe.instance
    return [e for e in _scan_domain(a, universe) if inst.leq(e, a)]


# ---------------------------------------------------------------------------
# Set-level reports
# ---------------------------------------------------------------------------


@dataclass
class PairVerdict:
    x: Any
    y: Any
    forward: Optional[LCertificate]      # y in L(x)?
    backward: Optional[LCertificate]     # x in L(y)?
    eps_witness: Optional[dict] = None   # decay certificate, both directions

    def independent(self) -> Optional[bool]:
        if self.eps_witness is not None:
            return True
        if self.forward is None or self.backward is None:
            return None
        statuses = {self.forward.status, self.backward.status}
        if POSITIVE in statuses:
            return False
        if statuses == {REFUTED}:
            return True
        return None


@dataclass
class IndependenceReport:
    status: str       # pass | pass-with-eps | fail | inconclusive
    pairs: list[PairVerdict]
    epsilon: Optional[Fraction]

    def to_json(self, instance: EvsInstance) -> dict:
        items = []
        for p in self.pairs:
            entry = {
                "x": instance.element_to_json(p.x),
                "y": instance.element_to_json(p.y),
            }
            if p.forward is not None:
                entry["yInLx"] = p.forward.to_json(instance)
            if p.backward is not None:
                entry["xInLy"] = p.backward.to_json(instance)
            if p.eps_witness is not None:
                entry["epsWitness"] = p.eps_witness
            items.append(entry)
        doc = {"status": self.status, "universeRelative": True, "pairs": items}
        if self.epsilon is not None:
            doc["epsilon"] = fmt(self.epsilon)
        return doc


def orderly_independent_set(instance: EvsInstance, S: Sequence,
                            eps=None,
                            universe: Optional[Universe] = None) -> IndependenceReport:
    """Pairwise independence of a set: passes when every pair is refuted in
    both directions; a single positive certificate fails the set. Pairs the
    instance cannot decide exactly are settled by epsilon decay witnesses when
    available, downgrading a pass to pass-with-eps."""
    S = list(S)
    _require_nonzero(instance, *S)
    epsilon = None if eps is None else Fraction(eps)
    pairs: list[PairVerdict] = []
    any_fail = any_eps = any_inconclusive = False
    for x, y in combinations(S, 2):
        if instance.comparing is not None or instance.eps_independence is None:
            fwd = in_l(instance, x, y, universe)
            bwd = in_l(instance, y, x, universe)
        else:
            fwd = bwd = None
        verdict = PairVerdict(x, y, fwd, bwd)
        if verdict.independent() is False:
            any_fail = True
        elif verdict.independent() is None:
            if instance.eps_independence is not None and epsilon is not None:
                report = instance.eps_independence(x, y, epsilon)
                verdict.eps_witness = (
                    report.to_json() if hasattr(report, "to_json") else report
                )
                any_eps = True
            else:
                any_inconclusive = True
        pairs.append(verdict)
    if any_fail:
        status = "fail"
    elif any_inconclusive:
        status = INCONCLUSIVE
    elif any_eps:
        status = "pass-with-eps"
    else:
        status = "pass"
    return IndependenceReport(status, pairs, epsilon)


@dataclass
class GeneratesReport:
    status: str                       # pass | fail | inconclusive
    coverage: list[dict]              # per universe element
    failure_witness: Optional[Any]

    def to_json(self, instance: EvsInstance) -> dict:
        doc = {
            "status": self.status,
            "universeRelative": True,
            "coverage": self.coverage,
        }
        if self.failure_witness is not None:
            doc["failureWitness"] = instance.element_to_json(self.failure_witness)
        return doc


def generates(instance: EvsInstance, B: Sequence,
              universe: Universe) -> GeneratesReport:
    """Does every universe element carry a positive membership certificate
    from some element of B?"""
    B = list(B)
    _require_nonzero(instance, *B)
    coverage = []
    witness = None
    any_inconclusive = False
    for u in universe.elements:
        found = None
        saw_inconclusive = False
        for b in B:
            cert = in_l(instance, b, u, universe)
            if cert.status == POSITIVE:
                found = (b, cert)
                break
            if cert.status == INCONCLUSIVE:
                saw_inconclusive = True
        if found is not None:
            b, cert = found
            coverage.append({
                "element": instance.element_to_json(u),
                "generator": instance.element_to_json(b),
                "certificate": cert.to_json(instance),
            })
        else:
            coverage.append({
                "element": instance.element_to_json(u),
                "generator": None,
                "inconclusive": saw_inconclusive,
            })
            if saw_inconclusive:
                any_inconclusive = True
            elif witness is None:
                witness = u
    if witness is not None:
        status = "fail"
    elif any_inconclusive:
        status = INCONCLUSIVE
    else:
        status = "pass"
    return GeneratesReport(status, coverage, witness)


def is_basis(instance: EvsInstance, B: Sequence, universe: Universe,
             eps=None) -> dict:
    """Generator and orderly independent at once, both universe-relative."""
    gen = generates(instance, B, universe)
    indep = orderly_independent_set(instance, B, eps=eps, universe=universe)
    if gen.status == "pass" and indep.status in ("pass", "pass-with-eps"):
        status = "pass" if indep.status == "pass" else "pass-with-eps"
    elif gen.status == "fail" or indep.status == "fail":
        status = "fail"
    else:
        status = INCONCLUSIVE
    return {
        "status": status,
        "universeRelative": True,
        "generates": gen.to_json(instance),
        "orderlyIndependent": indep.to_json(instance),
    }


def feasible_in_universe(instance: EvsInstance, x,
                         universe: Universe) -> dict:
    """Is the nonzero part of the universe's down-set of x inside L(x)?"""
    _require_nonzero(instance, x)
    below = [y for y in universe.elements if instance.leq(y, x)]
    entries = []
    witness = None
    any_inconclusive = False
    for y in below:
        cert = in_l(instance, x, y, universe)
        entries.append({
            "element": instance.element_to_json(y),
            "certificate": cert.to_json(instance),
        })
        if cert.status == REFUTED and witness is None:
            witness = y
        elif cert.status == INCONCLUSIVE:
            any_inconclusive = True
    if witness is not None:
        status = "fail"
    elif any_inconclusive:
        status = INCONCLUSIVE
    else:
        status = "pass"
    doc = {
        "status": status,
        "universeRelative": True,
        "downSetSize": len(below),
        "memberships": entries,
    }
    if witness is not None:
        doc["failureWitness"] = instance.element_to_json(witness)
    return doc
