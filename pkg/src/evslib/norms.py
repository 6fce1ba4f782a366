"""Weighted sup norms on finitely supported rational vectors.

A vector is a finite map from abstract basis indices to nonzero rationals; a
weight map w assigns every relevant index a positive rational, and the induced
norm is max over the support of w(h)|lambda_h|.

The interesting family lives over a partitioned index enumeration: positions
h0, h1, ... are split deterministically into a backbone B (even positions) and,
through the Cantor pairing of the odd positions, two indexed fibers d(t,i) and
e(t,i) hanging off every backbone member t. For a proper nonempty subset C of
the backbone and a rational gamma > 1, the family weight is

    1        on B and on fibers of t outside C
    gamma^i  on d(t,i) with t in C
    gamma^-i on e(t,i) with t in C

Distinct parameter choices give norms whose mutual comparing values vanish in
the limit; at finite index i the witness ratios are exact rational powers, so
independence up to any epsilon is certified by explicit basis vectors rather
than asserted. The scheme is depth-stable: the tag of a position never changes
as the enumeration deepens, and fiber vectors beyond the enumerated prefix are
still legitimate indices with well-defined weights.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Optional, Sequence

from .core import EvsInstance
from .errors import InputError
from .metrics import MetricMatrix
from .rationals import fmt, parse_rational

ZERO = Fraction(0)
ONE = Fraction(1)


# ---------------------------------------------------------------------------
# Finitely supported vectors
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class FSVector:
    """Finitely supported rational coordinate map; zero coordinates are never
    stored, and the empty map is the zero vector."""

    coords: tuple[tuple[str, Fraction], ...]

    @classmethod
    def from_dict(cls, mapping) -> "FSVector":
        items = []
        for name, value in mapping.items():
            v = parse_rational(value)
            if v != 0:
                items.append((str(name), v))
        items.sort()
        return cls(tuple(items))

    @classmethod
    def unit(cls, name: str) -> "FSVector":
        return cls(((name, ONE),))

    @classmethod
    def zero(cls) -> "FSVector":
        return cls(())

    def get(self, name: str) -> Fraction:
        for n, v in self.coords:
            if n == name:
                return v
        return ZERO

    @property
    def support(self) -> tuple[str, ...]:
        return tuple(n for n, _ in self.coords)

    def is_zero(self) -> bool:
        return not self.coords

    def add(self, other: "FSVector") -> "FSVector":
        acc = dict(self.coords)
        for n, v in other.coords:
            acc[n] = acc.get(n, ZERO) + v
        return FSVector.from_dict(acc)

    def sub(self, other: "FSVector") -> "FSVector":
        return self.add(other.scale(Fraction(-1)))

    def scale(self, factor: Fraction) -> "FSVector":
        factor = parse_rational(factor)
        if factor == 0:
            return FSVector.zero()
        return FSVector(tuple((n, factor * v) for n, v in self.coords))

    def to_json(self) -> dict:
        return {n: fmt(v) for n, v in self.coords}


# ---------------------------------------------------------------------------
# Deterministic partition of the index enumeration
# ---------------------------------------------------------------------------


def _cantor_pair(a: int, r: int) -> int:
    return (a + r) * (a + r + 1) // 2 + r


def _cantor_unpair(j: int) -> tuple[int, int]:
    w = (math.isqrt(8 * j + 1) - 1) // 2
    r = j - w * (w + 1) // 2
    return w - r, r


_TAG_RE = re.compile(r"^([de])\((h\d+),(\d+)\)$")
_POS_RE = re.compile(r"^h(\d+)$")

Tag = tuple  # ("B", t) | ("D", t, i) | ("E", t, i)


@dataclass(frozen=True)
class PartitionSpec:
    """Backbone/fiber assignment of the enumerated indices h0 .. h(depth-1).

    Even positions form the backbone B. The j-th odd position is routed by the
    Cantor unpairing j -> (a, r) to the fiber of the a-th backbone member;
    even pair-ranks r land in the d-fiber, odd ranks in the e-fiber, with the
    fiber index i running 1, 2, ... in each. The assignment of a position is
    independent of depth, so deepening only extends the enumerated prefix.
    """

    depth: int

    def __post_init__(self):
        if self.depth < 4:
            raise InputError(
                "partition depth must be at least 4 to make the backbone and "
                "both fiber kinds available"
            )

    # -- scheme, total over all positions ------------------------------------

    @staticmethod
    def tag_of_position(k: int) -> Tag:
        if k < 0:
            raise InputError("positions are nonnegative")
        if k % 2 == 0:
            return ("B", f"h{k}")
        a, r = _cantor_unpair((k - 1) // 2)
        t = f"h{2 * a}"
        if r % 2 == 0:
            return ("D", t, r // 2 + 1)
        return ("E", t, (r + 1) // 2)

    @staticmethod
    def position_of_tag(tag: Tag) -> int:
        kind = tag[0]
        if kind == "B":
            k = _backbone_position(tag[1])
            return k
        _, t, i = tag
        if i < 1:
            raise InputError("fiber indices start at 1")
        a = _backbone_position(t) // 2
        r = 2 * (i - 1) if kind == "D" else 2 * i - 1
        return 2 * _cantor_pair(a, r) + 1

    @staticmethod
    def name_of_tag(tag: Tag) -> str:
        if tag[0] == "B":
            return tag[1]
        return f"{tag[0].lower()}({tag[1]},{tag[2]})"

    def resolve(self, name: str) -> Tag:
        """Accept a positional name "h7" or a fiber name "d(h0,2)" / "e(h0,5)"
        and return its tag; fiber names may point beyond the enumerated depth."""
        m = _POS_RE.match(name)
        if m:
            return self.tag_of_position(int(m.group(1)))
        m = _TAG_RE.match(name)
        if m:
            kind, t, i = m.group(1), m.group(2), int(m.group(3))
            if _backbone_position(t) % 2 != 0:
                raise InputError(f"{t} is not a backbone member")
            return ("D" if kind == "d" else "E", t, i)
        raise InputError(f"unrecognized index name {name!r}")

    # -- enumerated prefix ----------------------------------------------------

    def b_members(self) -> list[str]:
        return [f"h{k}" for k in range(0, self.depth, 2)]

    def assignment(self) -> dict[str, str]:
        return {
            f"h{k}": self.name_of_tag(self.tag_of_position(k))
            if k % 2 else "B"
            for k in range(self.depth)
        }

    def to_json(self) -> dict:
        return {
            "depth": self.depth,
            "B": self.b_members(),
            "assignment": self.assignment(),
        }


def _backbone_position(name: str) -> int:
    m = _POS_RE.match(name)
    if not m:
        raise InputError(f"not a positional index name: {name!r}")
    return int(m.group(1))


def build_partition(depth: int) -> PartitionSpec:
    return PartitionSpec(depth)


# ---------------------------------------------------------------------------
# The norm family
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class NormFamilyParams:
    partition: PartitionSpec
    subset_c: tuple[str, ...]
    gamma: Fraction

    def __post_init__(self):
        members = self.partition.b_members()
        c = sorted(set(self.subset_c))
        object.__setattr__(self, "subset_c", tuple(c))
        object.__setattr__(self, "gamma", parse_rational(self.gamma))
        if not c:
            raise InputError("the subset C must be nonempty")
        if any(t not in members for t in c):
            raise InputError("C must consist of backbone members")
        if len(c) >= len(members):
            raise InputError("C must be a proper subset of the backbone")
        if self.gamma <= 1:
            raise InputError("gamma must exceed 1")

    @classmethod
    def from_json(cls, doc) -> "NormFamilyParams":
        try:
            depth = int(doc["depth"])
            subset = tuple(str(t) for t in doc["subsetC"])
            gamma = parse_rational(doc["gamma"])
        except (KeyError, TypeError) as exc:
            raise InputError(
                'family spec needs "depth", "subsetC" and "gamma"'
            ) from exc
        return cls(PartitionSpec(depth), subset, gamma)

    def to_json(self) -> dict:
        return {
            "depth": self.partition.depth,
            "subsetC": list(self.subset_c),
            "gamma": fmt(self.gamma),
        }

    def weight_of_tag(self, tag: Tag) -> Fraction:
        if tag[0] == "B":
            return ONE
        _, t, i = tag
        if t not in self.subset_c:
            return ONE
        return self.gamma ** i if tag[0] == "D" else self.gamma ** -i


class WeightMap:
    """Positive rational weight per basis index.

    Family-derived maps carry a closed-form rule so that fiber indices beyond
    the enumerated prefix still have weights; plain maps are just finite
    dictionaries and evaluating outside them is an input error.
    """

    def __init__(self, entries: dict, rule: Optional[Callable[[str], Fraction]] = None):
        parsed = {}
        for name, value in entries.items():
            w = parse_rational(value)
            if w <= 0:
                raise InputError(f"weight for {name} must be positive")
            parsed[str(name)] = w
        self.entries = parsed
        self.rule = rule

    def weight(self, name: str) -> Fraction:
        if name in self.entries:
            return self.entries[name]
        if self.rule is not None:
            return self.rule(name)
        raise InputError(f"no weight assigned to index {name!r}")

    def index_set(self) -> tuple[str, ...]:
        return tuple(sorted(self.entries))

    def to_json(self) -> dict:
        return {name: fmt(w) for name, w in sorted(self.entries.items())}

    @classmethod
    def from_json(cls, doc) -> "WeightMap":
        return cls(dict(doc))


def weight_function(params: NormFamilyParams) -> WeightMap:
    """Materialize the family weights on the enumerated prefix, backed by the
    closed-form rule for every other index (positional or fiber-named)."""
    part = params.partition

    def rule(name: str) -> Fraction:
        return params.weight_of_tag(part.resolve(name))

    entries = {
        f"h{k}": params.weight_of_tag(part.tag_of_position(k))
        for k in range(part.depth)
    }
    return WeightMap(entries, rule=rule)


def eval_weighted_norm(w: WeightMap, x: FSVector) -> Fraction:
    """max over the support of w(h) |lambda_h|; zero exactly on the zero vector."""
    best = ZERO
    for name, value in x.coords:
        candidate = w.weight(name) * abs(value)
        if candidate > best:
            best = candidate
    return best


# ---------------------------------------------------------------------------
# Independence witnesses
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class WitnessDirection:
    """One decaying direction: the named fiber vectors witness that the
    comparing value of `of` relative to `relative_to` is below epsilon."""

    family: str          # "d" or "e"
    t: str
    ratio_base: Fraction
    index: int
    ratio: Fraction

    def witness_name(self, i: Optional[int] = None) -> str:
        return f"{self.family}({self.t},{self.index if i is None else i})"

    def to_json(self) -> dict:
        return {
            "witnessFamily": self.family,
            "t": self.t,
            "witness": self.witness_name(),
            "ratioBase": fmt(self.ratio_base),
            "index": self.index,
            "ratioAtIndex": fmt(self.ratio),
        }


@dataclass(frozen=True)
class WitnessReport:
    case: int
    epsilon: Fraction
    first_relative_to_second: WitnessDirection
    second_relative_to_first: WitnessDirection

    def to_json(self) -> dict:
        return {
            "case": self.case,
            "epsilon": fmt(self.epsilon),
            "firstRelativeToSecond": self.first_relative_to_second.to_json(),
            "secondRelativeToFirst": self.second_relative_to_first.to_json(),
            "independentUpToEpsilon": True,
        }


def _smallest_decay_index(base: Fraction, eps: Fraction) -> tuple[int, Fraction]:
    i, ratio = 1, base
    while ratio >= eps:
        i += 1
        ratio *= base
    return i, ratio


def independence_witness(p: NormFamilyParams, q: NormFamilyParams,
                         eps) -> WitnessReport:
    """Certify, in both directions, that the comparing values of two distinct
    family norms drop below epsilon, with explicit fiber-vector witnesses.

    Direction naming: firstRelativeToSecond bounds inf |x|_p / |x|_q, the
    comparing value of the first norm relative to the second.

    With C_p != C_q (case 1) a backbone member t in the symmetric difference
    gives ratio gamma^-i along one fiber of t in each direction, where gamma
    belongs to the parameter set containing t. With C_p = C_q (case 2) the
    gammas differ and both directions decay like (gamma_min/gamma_max)^i.
    """
    eps = parse_rational(eps)
    if not 0 < eps < 1:
        raise InputError("epsilon must lie strictly between 0 and 1")
    if p.partition.depth != q.partition.depth:
        raise InputError("the two parameter sets use different partitions")
    if p.subset_c == q.subset_c and p.gamma == q.gamma:
        raise InputError("parameter sets are equal; no independence witness")

    cp, cq = set(p.subset_c), set(q.subset_c)
    if cp != cq:
        case = 1
        if cp - cq:
            t = min(cp - cq)
            base = 1 / p.gamma
            fam_first, fam_second = "e", "d"
        else:
            t = min(cq - cp)
            base = 1 / q.gamma
            fam_first, fam_second = "d", "e"
    else:
        case = 2
        t = min(cp)
        base = min(p.gamma, q.gamma) / max(p.gamma, q.gamma)
        if p.gamma > q.gamma:
            fam_first, fam_second = "e", "d"
        else:
            fam_first, fam_second = "d", "e"

    i, ratio = _smallest_decay_index(base, eps)
    first = WitnessDirection(fam_first, t, base, i, ratio)
    second = WitnessDirection(fam_second, t, base, i, ratio)
    return WitnessReport(case, eps, first, second)


def sample_comparing_bound(f_params: NormFamilyParams, g_params: NormFamilyParams,
                           sample: Sequence[FSVector]) -> Fraction:
    """Exact minimum of g(x)/f(x) over the sample: an upper bound for the
    comparing value of g relative to f."""
    if not sample:
        raise InputError("sample must be nonempty")
    wf, wg = weight_function(f_params), weight_function(g_params)
    best = None
    for x in sample:
        if x.is_zero():
            raise InputError("sample must not contain the zero vector")
        ratio = eval_weighted_norm(wg, x) / eval_weighted_norm(wf, x)
        if best is None or ratio < best:
            best = ratio
    return best


# ---------------------------------------------------------------------------
# Embedding into metrics
# ---------------------------------------------------------------------------


def embed_norm_to_metric(w: WeightMap, points: Sequence[FSVector]) -> MetricMatrix:
    """Distance table m[i][j] = |points[i] - points[j]|_w; the translation-
    invariant metric induced by the norm."""
    points = list(points)
    if len(points) < 2:
        raise InputError("need at least two points")
    for i in range(len(points)):
        for j in range(i + 1, len(points)):
            if points[i].coords == points[j].coords:
                raise InputError("points must be pairwise distinct")
    labels = tuple(f"p{k}" for k in range(1, len(points) + 1))
    rows = tuple(
        tuple(eval_weighted_norm(w, points[i].sub(points[j]))
              for j in range(len(points)))
        for i in range(len(points))
    )
    return MetricMatrix(labels, rows)


# ---------------------------------------------------------------------------
# Finite-dimensional certificates
# ---------------------------------------------------------------------------


def finite_dim_basis_certificate(f: WeightMap, others: Sequence[WeightMap],
                                 sample: Sequence[FSVector]) -> dict:
    """Over a fixed finite index set, certify sample-relative mutual
    dependence of every g with f: alpha * f <= g <= beta * f on the sample,
    with alpha/beta the extreme sampled ratios."""
    index_set = f.index_set()
    for g in others:
        if g.index_set() != index_set:
            raise InputError("weight maps are over different index sets")
    sample = list(sample)
    if not sample:
        raise InputError("sample must be nonempty")
    covered = {name for x in sample for name in x.support}
    if not covered <= set(index_set):
        raise InputError("sample leaves the shared index set")
    units = {name for x in sample if len(x.coords) == 1 and abs(x.coords[0][1]) == 1
             for name in x.support}
    if not set(index_set) <= units:
        raise InputError("sample must include every unit coordinate vector")

    results = []
    for g in others:
        ratios = []
        for x in sample:
            if x.is_zero():
                raise InputError("sample must not contain the zero vector")
            ratios.append(eval_weighted_norm(g, x) / eval_weighted_norm(f, x))
        alpha, beta = min(ratios), max(ratios)
        verified = all(
            alpha * eval_weighted_norm(f, x) <= eval_weighted_norm(g, x)
            <= beta * eval_weighted_norm(f, x)
            for x in sample
        )
        results.append({
            "alpha": fmt(alpha),
            "beta": fmt(beta),
            "sandwichVerified": verified,
            "weights": g.to_json(),
        })
    return {
        "indexSet": list(index_set),
        "reference": f.to_json(),
        "sampleSize": len(sample),
        "certificates": results,
        "pass": all(r["sandwichVerified"] for r in results),
    }


# ---------------------------------------------------------------------------
# Verifier support: norms as exact value tables over probe vectors
# ---------------------------------------------------------------------------


def norm_value_table(w: WeightMap, probes: Sequence[FSVector]) -> tuple:
    return tuple(eval_weighted_norm(w, x) for x in probes)


def norm_table_instance(probes: Sequence[FSVector]) -> EvsInstance:
    """Norms probed on a fixed finite vector sample.

    Sums and scalings of norms act pointwise on values, so exact value tables
    are closed under the operations and faithfully decide the pointwise
    axioms; the order is the pointwise one. The all-zero table is the zero
    element O.
    """
    probes = tuple(probes)
    width = len(probes)
    zero = (ZERO,) * width

    def check(t):
        if len(t) != width:
            raise InputError("value table over a different probe set")
        return t

    return EvsInstance(
        name=f"norms[{width} probes]",
        zero=zero,
        add=lambda a, b: tuple(x + y for x, y in zip(check(a), check(b))),
        scale=lambda al, a: tuple(abs(al) * x for x in check(a)),
        leq=lambda a, b: all(x <= y for x, y in zip(check(a), check(b))),
        equal=lambda a, b: check(a) == check(b),
        element_to_json=lambda a: [fmt(x) for x in a],
        element_from_json=lambda doc: tuple(parse_rational(x) for x in doc),
        zero_primitive=True,
        homogeneous=True,
    )


def seeded_norm_sample(depth: int, seed: int,
                       count: int) -> tuple[tuple[FSVector, ...], list]:
    """Probe vectors and a deterministic sample of norm value tables.

    Probes are the unit coordinate vectors of the enumerated prefix plus a few
    mixed-support vectors; elements mix random positive weight maps, scaled
    companions, and two family norms.
    """
    import random as _random

    rng = _random.Random(seed)
    part = PartitionSpec(depth)
    names = [f"h{k}" for k in range(depth)]

    probes = [FSVector.unit(n) for n in names]
    for _ in range(6):
        support = rng.sample(names, rng.randint(2, 3))
        coords = {
            n: Fraction(rng.choice((-3, -2, -1, 1, 2, 3)), rng.choice((1, 2)))
            for n in support
        }
        probes.append(FSVector.from_dict(coords))

    def random_weights() -> WeightMap:
        return WeightMap({
            n: Fraction(rng.randint(1, 8), rng.randint(1, 4)) for n in names
        })

    elements = [(ZERO,) * len(probes)]
    members = part.b_members()
    for c, gamma in ((members[:1], Fraction(2)), (members[:2], Fraction(3))):
        params = NormFamilyParams(part, tuple(c), gamma)
        elements.append(norm_value_table(weight_function(params), probes))
    while len(elements) < count:
        table = norm_value_table(random_weights(), probes)
        elements.append(table)
        if len(elements) < count and len(elements) % 5 == 2:
            elements.append(tuple(2 * v for v in table))
    return tuple(probes), elements[:count]


def norm_family_instance(partition: PartitionSpec) -> EvsInstance:
    """Family norms as order-tool elements keyed by their parameters; the only
    supported comparisons are epsilon-qualified independence witnesses."""

    def unsupported(*_args):
        raise InputError(
            "family norms support only epsilon-witness comparisons"
        )

    return EvsInstance(
        name=f"norm-family[depth {partition.depth}]",
        zero=None,
        add=unsupported,
        scale=unsupported,
        leq=unsupported,
        equal=lambda a, b: a == b,
        element_to_json=lambda p: p.to_json(),
        element_from_json=NormFamilyParams.from_json,
        zero_primitive=True,
        homogeneous=True,
        eps_independence=lambda p, q, eps: independence_witness(p, q, eps),
    )
