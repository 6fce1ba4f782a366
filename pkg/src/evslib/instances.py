"""Concrete instances for the axiom verifier and the order tools.

Four carriers are wired up: exact metrics on a finite labeled set, weighted
sup norms probed on a finite vector sample (see norms.py), the half-line cone
[0,inf) x V, and finite point sets of a fixed dimension under Minkowski sum.
Two deliberately broken metric variants (reversed order, scaling without the
absolute value) exist to exercise the failure paths.

Samplers are deterministic in their seed and are built so that the
sample-relative minimal structure matches the carrier-wide one: the cone
sampler pairs every (r, v) with its primitive (0, v), and the hyperspace
sampler pairs every set with one singleton subset. Without those companions
the A5/A6 checks would be refuted by sampling artifacts rather than by the
algebra.
"""

from __future__ import annotations

import random
from fractions import Fraction
from typing import Sequence

from .core import EvsInstance
from .errors import InputError
from .metrics import (
    MetricMatrix,
    add_metrics,
    comparing_function_metric,
    equal_metrics,
    leq_metrics,
    random_metric,
    scale_metric,
    transform_bounded,
    transform_min,
)
from .rationals import fmt, parse_rational

ZERO = Fraction(0)

#: Default scalar set: contains 0, 1, -1, values inside and outside the unit
#: ball, and a negative non-unit for the homogeneity checks.
DEFAULT_SCALARS = (
    Fraction(0), Fraction(1), Fraction(-1), Fraction(1, 2),
    Fraction(-1, 2), Fraction(2), Fraction(-3, 2),
)


# ---------------------------------------------------------------------------
# Metrics on a finite carrier
# ---------------------------------------------------------------------------
#
# For the verifier the elements are packed upper triangles (flat tuples of
# rationals), which keeps the exhaustive pair/triple loops cheap; reports
# render them back as full matrices. The order tools use the MetricMatrix
# form directly, where the exact comparing function lives.


def pack_matrix(m: MetricMatrix) -> tuple:
    n = m.size
    return tuple(m.rows[i][j] for i in range(n) for j in range(i + 1, n))


def unpack_matrix(labels: Sequence[str], packed: Sequence[Fraction]) -> MetricMatrix:
    n = len(labels)
    rows = [[ZERO] * n for _ in range(n)]
    it = iter(packed)
    for i in range(n):
        for j in range(i + 1, n):
            v = next(it)
            rows[i][j] = rows[j][i] = v
    return MetricMatrix(tuple(labels), tuple(tuple(r) for r in rows))


def carrier_labels(size: int) -> tuple[str, ...]:
    return tuple(f"x{k}" for k in range(1, size + 1))


def metric_packed_instance(labels: Sequence[str]) -> EvsInstance:
    labels = tuple(labels)
    width = len(labels) * (len(labels) - 1) // 2
    zero = (ZERO,) * width

    def check(t):
        if len(t) != width:
            raise InputError("element is over a different carrier")
        return t

    return EvsInstance(
        name=f"metrics[{len(labels)}-point carrier]",
        zero=zero,
        add=lambda a, b: tuple(x + y for x, y in zip(check(a), check(b))),
        scale=lambda al, a: tuple(abs(al) * x for x in check(a)),
        leq=lambda a, b: all(x <= y for x, y in zip(check(a), check(b))),
        equal=lambda a, b: check(a) == check(b),
        element_to_json=lambda a: unpack_matrix(labels, a).to_json(),
        element_from_json=lambda doc: pack_matrix(MetricMatrix.from_json(doc)),
        zero_primitive=True,
        homogeneous=True,
    )


def metric_matrix_instance(labels: Sequence[str]) -> EvsInstance:
    labels = tuple(labels)

    def comparing(x: MetricMatrix, y: MetricMatrix) -> Fraction:
        return comparing_function_metric(x, y)

    return EvsInstance(
        name=f"metrics[{len(labels)}-point carrier]",
        zero=MetricMatrix.zero(labels),
        add=add_metrics,
        scale=scale_metric,
        leq=leq_metrics,
        equal=equal_metrics,
        element_to_json=lambda m: m.to_json(),
        element_from_json=MetricMatrix.from_json,
        zero_primitive=True,
        homogeneous=True,
        comparing=comparing,
    )


def metric_reversed_order_instance(labels: Sequence[str]) -> EvsInstance:
    """Mutant: the pointwise order is flipped. Zero becomes a maximum, so no
    sampled element has an additively characterized minimal below it."""
    base = metric_packed_instance(labels)
    return EvsInstance(
        name=f"metrics-reversed-order[{len(labels)}-point carrier]",
        zero=base.zero,
        add=base.add,
        scale=base.scale,
        leq=lambda a, b: base.leq(b, a),
        equal=base.equal,
        element_to_json=base.element_to_json,
        element_from_json=base.element_from_json,
    )


def metric_no_abs_scale_instance(labels: Sequence[str]) -> EvsInstance:
    """Mutant: scalar action without the absolute value; homogeneity breaks
    at alpha = -1."""
    base = metric_packed_instance(labels)
    return EvsInstance(
        name=f"metrics-no-abs-scale[{len(labels)}-point carrier]",
        zero=base.zero,
        add=base.add,
        scale=lambda al, a: tuple(al * x for x in a),
        leq=base.leq,
        equal=base.equal,
        element_to_json=base.element_to_json,
        element_from_json=base.element_from_json,
    )


def seeded_metric_matrices(labels: Sequence[str], seed: int,
                           count: int) -> list[MetricMatrix]:
    """Deterministic metric sample: the zero table first, then random metrics
    interleaved with order-comparable companions (doubles, bounded and
    truncated transforms) so the compatibility axioms see comparable pairs."""
    rng = random.Random(seed)
    labels = tuple(labels)
    out: list[MetricMatrix] = [MetricMatrix.zero(labels)]
    while len(out) < count:
        m = random_metric(rng, labels)
        out.append(m)
        if len(out) < count and len(out) % 4 == 1:
            out.append(scale_metric(Fraction(2), m))
        if len(out) < count and len(out) % 8 == 3:
            out.append(transform_bounded(m))
        if len(out) < count and len(out) % 8 == 7:
            out.append(transform_min(m))
    return out[:count]


def seeded_metric_sample(labels: Sequence[str], seed: int, count: int) -> list:
    return [pack_matrix(m) for m in seeded_metric_matrices(labels, seed, count)]


# ---------------------------------------------------------------------------
# The cone [0, inf) x V
# ---------------------------------------------------------------------------


def _parse_vec(doc, dim: int) -> tuple:
    vec = tuple(parse_rational(v) for v in doc)
    if len(vec) != dim:
        raise InputError(f"vector dimension {len(vec)} != {dim}")
    return vec


def cone_instance(dim: int) -> EvsInstance:
    """(r,a) + (s,b) = (r+s, a+b); alpha(r,a) = (|alpha| r, alpha a);
    (r,a) <= (s,b) iff r <= s and a = b. The minimal elements are the
    slice {0} x V, so this instance is single primitive but not zero
    primitive."""
    zero = (ZERO, (ZERO,) * dim)

    def check(e):
        r, v = e
        if len(v) != dim:
            raise InputError("cone element of mismatched dimension")
        return e

    def add(a, b):
        (r, va), (s, vb) = check(a), check(b)
        return (r + s, tuple(x + y for x, y in zip(va, vb)))

    def scale(al, a):
        r, v = check(a)
        return (abs(al) * r, tuple(al * x for x in v))

    def leq(a, b):
        (r, va), (s, vb) = check(a), check(b)
        return r <= s and va == vb

    def lsolve(x, z, primitives):
        """Find alpha != 0 and a primitive p among the candidates with
        z >= alpha*x + p; cone order pins p = (0, w - alpha*v)."""
        (r, v) = x
        (s, w) = z
        if r == 0:
            return None
        for p in primitives:
            (pr, pv) = p
            if pr != 0:
                continue
            target = tuple(wc - pc for wc, pc in zip(w, pv))
            alphas = {tc / vc for tc, vc in zip(target, v) if vc != 0}
            if len(alphas) > 1:
                continue
            if alphas:
                alpha = alphas.pop()
                if any(vc == 0 and tc != 0 for tc, vc in zip(target, v)):
                    continue
            else:
                if any(tc != 0 for tc in target):
                    continue
                alpha = s / r
                if alpha == 0:
                    continue
            if alpha != 0 and abs(alpha) * r <= s:
                return alpha, p
        return None

    return EvsInstance(
        name=f"cone[dim {dim}]",
        zero=zero,
        add=add,
        scale=scale,
        leq=leq,
        equal=lambda a, b: check(a) == check(b),
        element_to_json=lambda e: {"r": fmt(e[0]), "v": [fmt(x) for x in e[1]]},
        element_from_json=lambda doc: (
            parse_rational(doc["r"]),
            _parse_vec(doc["v"], dim),
        ),
        lsolve=lsolve,
    )


def seeded_cone_sample(dim: int, seed: int, count: int) -> list:
    rng = random.Random(seed)
    zero = (ZERO, (ZERO,) * dim)
    out = [zero]

    def rnd_vec():
        return tuple(
            Fraction(rng.randint(-6, 6), rng.choice((1, 2))) for _ in range(dim)
        )

    while len(out) < count:
        v = rnd_vec()
        r = Fraction(rng.randint(1, 8), rng.choice((1, 2)))
        out.append((ZERO, v))
        if len(out) < count:
            out.append((r, v))
        if len(out) < count and rng.random() < 0.4:
            out.append((2 * r, v))
    return out[:count]


# ---------------------------------------------------------------------------
# Finite point sets under Minkowski sum
# ---------------------------------------------------------------------------


def hyperspace_instance(dim: int) -> EvsInstance:
    """A + B = {a+b}, alpha A = {alpha a} (no absolute value: scaling may
    reflect the set), A <= B iff A is a subset of B. The zero is the origin
    singleton; the minimal elements are exactly the singletons."""
    zero = frozenset({(ZERO,) * dim})

    def check(a):
        if not a:
            raise InputError("point sets must be nonempty")
        for p in a:
            if len(p) != dim:
                raise InputError("point of mismatched dimension")
        return a

    def add(a, b):
        return frozenset(
            tuple(x + y for x, y in zip(p, q)) for p in check(a) for q in check(b)
        )

    def scale(al, a):
        return frozenset(tuple(al * x for x in p) for p in check(a))

    return EvsInstance(
        name=f"hyperspace[dim {dim}]",
        zero=zero,
        add=add,
        scale=scale,
        leq=lambda a, b: check(a) <= check(b),
        equal=lambda a, b: check(a) == check(b),
        element_to_json=lambda a: sorted([fmt(x) for x in p] for p in a),
        element_from_json=lambda doc: frozenset(
            _parse_vec(p, dim) for p in doc
        ),
    )


def seeded_hyper_sample(dim: int, seed: int, count: int) -> list:
    rng = random.Random(seed)
    zero = frozenset({(ZERO,) * dim})
    out = [zero]

    def rnd_point():
        return tuple(
            Fraction(rng.randint(-5, 5), rng.choice((1, 2))) for _ in range(dim)
        )

    while len(out) < count:
        size = rng.randint(1, 3)
        pts = set()
        while len(pts) < size:
            pts.add(rnd_point())
        a = frozenset(pts)
        if len(a) > 1 and len(out) + 2 > count:
            a = frozenset({min(a)})  # no room left for the singleton companion
        out.append(a)
        if len(a) > 1:
            out.append(frozenset({min(a)}))
    return out[:count]


# ---------------------------------------------------------------------------
# Registry used by the CLI and the acceptance suite
# ---------------------------------------------------------------------------


def build_instance(name: str, *, carrier: int = 6, depth: int = 12,
                   dim: int = 2, seed: int = 0, sample: int = 50):
    """Return (instance, sample, scalars) for a named instance."""
    if name in ("metrics", "dx"):
        labels = carrier_labels(carrier)
        return (metric_packed_instance(labels),
                seeded_metric_sample(labels, seed, sample), DEFAULT_SCALARS)
    if name == "metrics-reversed-order":
        labels = carrier_labels(carrier)
        return (metric_reversed_order_instance(labels),
                seeded_metric_sample(labels, seed, sample), DEFAULT_SCALARS)
    if name == "metrics-no-abs-scale":
        labels = carrier_labels(carrier)
        return (metric_no_abs_scale_instance(labels),
                seeded_metric_sample(labels, seed, sample), DEFAULT_SCALARS)
    if name in ("norms", "nx"):
        from .norms import norm_table_instance, seeded_norm_sample
        probes, elements = seeded_norm_sample(depth, seed, sample)
        return norm_table_instance(probes), elements, DEFAULT_SCALARS
    if name == "cone":
        return (cone_instance(dim), seeded_cone_sample(dim, seed, sample),
                DEFAULT_SCALARS)
    if name == "hyperspace":
        return (hyperspace_instance(dim), seeded_hyper_sample(dim, seed, sample),
                DEFAULT_SCALARS)
    raise InputError(
        f"unknown instance {name!r}; choose from metrics, norms, cone, "
        f"hyperspace, metrics-reversed-order, metrics-no-abs-scale"
    )
