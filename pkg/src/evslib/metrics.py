"""Exact metrics on finite labeled carriers and their ordered-semigroup structure.

The space under study is the set of all metrics on a carrier together with the
constant zero table O, ordered pointwise, with pointwise addition and the
scalar action (alpha, rho) -> |alpha| * rho. On a finite carrier every
comparability question is decided exactly: the comparing value of rho relative
to d is the minimum of rho(x,y)/d(x,y) over distinct pairs, a plain minimum of
rationals.

Countable carriers are handled through LazyMetric: a named closed-form metric
that can be materialized on the first N canonical carrier points at any depth.
Truncations only ever yield upper bounds for carrier-wide infima, so
depth-indexed results are reported as bound sequences with trend flags, never
as the limiting value. Carrier-wide certificates and refutations are produced
only where exact family bounds license them (bounded-vs-unbounded, positive
infimum vs vanishing infimum).
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Callable, Iterator, Optional, Sequence

from .errors import InputError, UndefinedRelativeElementError
from .rationals import fmt, parse_rational

ZERO = Fraction(0)
ONE = Fraction(1)
TWO = Fraction(2)
HALF = Fraction(1, 2)


# ---------------------------------------------------------------------------
# Finite carriers: exact distance tables
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class MetricMatrix:
    """Symmetric rational distance table over a finite labeled carrier.

    The constructor enforces shape only (square, symmetric, distinct labels);
    whether the table actually satisfies the metric axioms is the job of
    validate_metric, so that candidate tables (e.g. pointwise limits) can be
    represented and then rejected with a structured violation.
    """

    labels: tuple[str, ...]
    rows: tuple[tuple[Fraction, ...], ...]

    def __post_init__(self):
        n = len(self.labels)
        if n == 0:
            raise InputError("empty carrier")
        if len(set(self.labels)) != n:
            raise InputError("carrier labels must be distinct")
        if len(self.rows) != n or any(len(r) != n for r in self.rows):
            raise InputError("matrix is not square with one row per label")
        for i in range(n):
            for j in range(i):
                if self.rows[i][j] != self.rows[j][i]:
                    raise InputError(
                        f"matrix is not symmetric at ({self.labels[i]}, {self.labels[j]})"
                    )

    # -- construction -------------------------------------------------------

    @classmethod
    def from_rows(cls, labels: Sequence[str], rows: Sequence[Sequence]) -> "MetricMatrix":
        parsed = tuple(tuple(parse_rational(v) for v in row) for row in rows)
        return cls(tuple(labels), parsed)

    @classmethod
    def zero(cls, labels: Sequence[str]) -> "MetricMatrix":
        n = len(labels)
        return cls(tuple(labels), tuple(tuple(ZERO for _ in range(n)) for _ in range(n)))

    @classmethod
    def from_json(cls, doc) -> "MetricMatrix":
        if not isinstance(doc, dict) or "labels" not in doc or "rows" not in doc:
            raise InputError('matrix document needs "labels" and "rows"')
        return cls.from_rows(doc["labels"], doc["rows"])

    @classmethod
    def from_csv_text(cls, text: str) -> "MetricMatrix":
        reader = csv.reader(io.StringIO(text))
        table = [row for row in reader if row and any(cell.strip() for cell in row)]
        if not table:
            raise InputError("empty CSV")
        labels = [cell.strip() for cell in table[0]]
        return cls.from_rows(labels, [[c.strip() for c in row] for row in table[1:]])

    # -- accessors ----------------------------------------------------------

    @property
    def size(self) -> int:
        return len(self.labels)

    def entry(self, i: int, j: int) -> Fraction:
        return self.rows[i][j]

    def is_zero(self) -> bool:
        return all(v == 0 for row in self.rows for v in row)

    def off_diagonal(self) -> Iterator[tuple[int, int, Fraction]]:
        """Yield (i, j, value) over unordered distinct pairs, i < j."""
        for i, j in combinations(range(self.size), 2):
            yield i, j, self.rows[i][j]

    def off_diag_min(self) -> Fraction:
        return min(v for _, _, v in self.off_diagonal())

    def off_diag_max(self) -> Fraction:
        return max(v for _, _, v in self.off_diagonal())

    def map_entries(self, fn: Callable[[Fraction], Fraction]) -> "MetricMatrix":
        """Entrywise image with zero diagonal kept exactly zero."""
        n = self.size
        rows = tuple(
            tuple(ZERO if i == j else fn(self.rows[i][j]) for j in range(n))
            for i in range(n)
        )
        return MetricMatrix(self.labels, rows)

    def to_json(self) -> dict:
        return {
            "labels": list(self.labels),
            "rows": [[fmt(v) for v in row] for row in self.rows],
        }


def _require_same_labels(a: MetricMatrix, b: MetricMatrix) -> None:
    if a.labels != b.labels:
        raise InputError("matrices are over different carriers (label mismatch)")


# ---------------------------------------------------------------------------
# Validation
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class MetricValidation:
    passed: bool
    violation: Optional[dict]
    size: int

    def to_json(self) -> dict:
        return {"pass": self.passed, "violation": self.violation, "size": self.size}


def validate_metric(m: MetricMatrix) -> MetricValidation:
    """Check the metric axioms on a candidate table.

    Reports the first violated axiom with its witnessing pair or triple.
    Shape problems (non-square, non-symmetric) are input errors raised at
    construction, not axiom failures. The all-zero table fails here (identity
    of indiscernibles) even though it is the legitimate additive identity O of
    the surrounding space.
    """
    n = m.size
    for i in range(n):
        if m.rows[i][i] != 0:
            return MetricValidation(False, {
                "axiom": "zero-diagonal",
                "indices": [m.labels[i]],
                "value": fmt(m.rows[i][i]),
            }, n)
    for i, j, v in m.off_diagonal():
        if v < 0:
            return MetricValidation(False, {
                "axiom": "nonnegativity",
                "indices": [m.labels[i], m.labels[j]],
                "value": fmt(v),
            }, n)
        if v == 0:
            return MetricValidation(False, {
                "axiom": "identity-of-indiscernibles",
                "indices": [m.labels[i], m.labels[j]],
                "value": "0/1",
            }, n)
    rows = m.rows
    for i in range(n):
        ri = rows[i]
        for j in range(n):
            rj = rows[j]
            dij = ri[j]
            for k in range(n):
                if ri[k] > dij + rj[k]:
                    return MetricValidation(False, {
                        "axiom": "triangle",
                        "indices": [m.labels[i], m.labels[j], m.labels[k]],
                        "lhs": fmt(ri[k]),
                        "rhs": fmt(dij + rj[k]),
                    }, n)
    return MetricValidation(True, None, n)


# ---------------------------------------------------------------------------
# evs operations on tables
# ---------------------------------------------------------------------------


def add_metrics(a: MetricMatrix, b: MetricMatrix) -> MetricMatrix:
    """Entrywise sum; the zero table O is an accepted operand (identity)."""
    _require_same_labels(a, b)
    rows = tuple(
        tuple(x + y for x, y in zip(ra, rb)) for ra, rb in zip(a.rows, b.rows)
    )
    return MetricMatrix(a.labels, rows)


def scale_metric(alpha, a: MetricMatrix) -> MetricMatrix:
    """Scalar action (alpha, rho) -> |alpha| * rho; O is accepted, and
    alpha = 0 yields O."""
    mag = abs(parse_rational(alpha))
    rows = tuple(tuple(mag * v for v in row) for row in a.rows)
    return MetricMatrix(a.labels, rows)


def leq_metrics(a: MetricMatrix, b: MetricMatrix) -> bool:
    """Entrywise order; comparisons with O are meaningful (O is the minimum)."""
    _require_same_labels(a, b)
    return all(x <= y for ra, rb in zip(a.rows, b.rows) for x, y in zip(ra, rb))


def equal_metrics(a: MetricMatrix, b: MetricMatrix) -> bool:
    _require_same_labels(a, b)
    return a.rows == b.rows


# ---------------------------------------------------------------------------
# Comparing function and pair classification
# ---------------------------------------------------------------------------


def comparing_function_metric(d: MetricMatrix, rho: MetricMatrix) -> Fraction:
    """Exact comparing value of rho relative to d: min over distinct pairs of
    rho(x,y)/d(x,y). The returned value c satisfies c*d <= rho with at least
    one tight pair."""
    _require_same_labels(d, rho)
    if d.size < 2:
        raise InputError("comparing values need at least two carrier points")
    if d.is_zero():
        raise UndefinedRelativeElementError(
            "comparing function is undefined relative to the zero element O"
        )
    best: Optional[Fraction] = None
    for i, j, dv in d.off_diagonal():
        if dv == 0:
            raise InputError(
                f"relative element vanishes on the distinct pair "
                f"({d.labels[i]}, {d.labels[j]}); not a metric"
            )
        ratio = rho.rows[i][j] / dv
        if best is None or ratio < best:
            best = ratio
    assert best is not None
    return best


MUTUALLY_DEPENDENT = "mutually-dependent"
ONE_SIDED_SECOND_IN_FIRST = "one-sided-second-in-L(first)"
ONE_SIDED_FIRST_IN_SECOND = "one-sided-first-in-L(second)"
ORDERLY_INDEPENDENT = "orderly-independent"


@dataclass(frozen=True)
class ComparisonReport:
    """Both comparing values for a pair, a four-way classification, and, when
    the pair is mutually dependent, the sandwich c2*rho <= d <= (1/c1)*rho."""

    c_first_second: Fraction   # comparing value of the second relative to the first
    c_second_first: Fraction
    classification: str
    sandwich: Optional[dict]

    def to_json(self) -> dict:
        return {
            "comparingSecondRelativeFirst": fmt(self.c_first_second),
            "comparingFirstRelativeSecond": fmt(self.c_second_first),
            "classification": self.classification,
            "secondInTestingSetOfFirst": self.c_first_second > 0,
            "firstInTestingSetOfSecond": self.c_second_first > 0,
            "sandwich": self.sandwich,
        }


def classify_pair(d: MetricMatrix, rho: MetricMatrix) -> ComparisonReport:
    """Classify an exact pair by its two comparing values.

    On a finite carrier both values of a valid metric pair are positive, so
    valid pairs always come out mutually dependent; the other labels are
    reachable only through tables that vanish somewhere off-diagonal, which
    comparing_function_metric rejects for the relative element.
    """
    if d.is_zero() or rho.is_zero():
        raise UndefinedRelativeElementError("classification needs two nonzero elements")
    c1 = comparing_function_metric(d, rho)
    c2 = comparing_function_metric(rho, d)
    if c1 > 0 and c2 > 0:
        label = MUTUALLY_DEPENDENT
        sandwich = {
            "lower": fmt(c2),
            "upper": fmt(1 / c1),
            "lowerHolds": leq_metrics(scale_metric(c2, rho), d),
            "upperHolds": leq_metrics(d, scale_metric(1 / c1, rho)),
        }
    elif c1 > 0:
        label, sandwich = ONE_SIDED_SECOND_IN_FIRST, None
    elif c2 > 0:
        label, sandwich = ONE_SIDED_FIRST_IN_SECOND, None
    else:
        label, sandwich = ORDERLY_INDEPENDENT, None
    return ComparisonReport(c1, c2, label, sandwich)


# ---------------------------------------------------------------------------
# Metric transforms
# ---------------------------------------------------------------------------


def transform_bounded(rho):
    """rho -> rho/(1+rho), entrywise; a bounded metric below the input.
    The zero table is rejected (the companion of O is not a metric)."""
    if isinstance(rho, MetricMatrix):
        if rho.is_zero():
            raise UndefinedRelativeElementError("transform of the zero element")
        return rho.map_entries(lambda v: v / (1 + v))
    if isinstance(rho, LazyMetric):
        return _lazy_bounded(rho)
    raise InputError(f"cannot transform {type(rho).__name__}")


def transform_min(rho):
    """rho -> min(1, rho), entrywise; truncation at height one."""
    if isinstance(rho, MetricMatrix):
        if rho.is_zero():
            raise UndefinedRelativeElementError("transform of the zero element")
        return rho.map_entries(lambda v: min(ONE, v))
    if isinstance(rho, LazyMetric):
        return _lazy_min(rho)
    raise InputError(f"cannot transform {type(rho).__name__}")


# ---------------------------------------------------------------------------
# Countable carriers and closed-form families
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Carrier:
    """Canonical countable carrier: points are indexed x_1, x_2, ...

    kind "indexed"   -- bare indices, no coordinates.
    kind "grid"      -- x_k = (k-1)*step on a half-line grid.
    kind "symgrid"   -- depth-driven symmetric grid on [-1, 1]: at odd depth N
                        the points are -1 + (j-1)*(2/(N-1)), j = 1..N, so the
                        grid always contains -1, 0, 1 and straddles |x| = 1/2
                        with exact classification of every point.
    kind "points2d"  -- an explicit finite list of rational plane points.
    """

    kind: str
    step: Optional[Fraction] = None
    points: Optional[tuple[tuple[Fraction, Fraction], ...]] = None

    def check_depth(self, depth: int) -> None:
        if depth < 2:
            raise InputError("depth must be at least 2")
        if self.kind == "symgrid":
            if depth < 3 or depth % 2 == 0:
                raise InputError("symmetric grid depth must be odd and at least 3")
            implied = Fraction(2, depth - 1)
            if self.step is not None and self.step != implied:
                raise InputError(
                    f"declared step {fmt(self.step)} is inconsistent with depth "
                    f"{depth} (the symmetric grid on [-1,1] implies {fmt(implied)})"
                )
        if self.kind == "points2d" and depth > len(self.points):
            raise InputError(
                f"depth {depth} exceeds the {len(self.points)} listed points"
            )

    def coord(self, k: int, depth: int):
        """Coordinate of the k-th point (1-based) at the given depth."""
        if self.kind == "indexed":
            return k
        if self.kind == "grid":
            return (k - 1) * self.step
        if self.kind == "symgrid":
            half = (depth - 1) // 2
            return Fraction(-1) + Fraction(k - 1, half)
        if self.kind == "points2d":
            return self.points[k - 1]
        raise InputError(f"unknown carrier kind {self.kind!r}")


def indexed_carrier() -> Carrier:
    return Carrier("indexed")


def grid_carrier(step) -> Carrier:
    step = parse_rational(step)
    if step <= 0:
        raise InputError("grid step must be positive")
    return Carrier("grid", step=step)


def symmetric_grid_carrier(step=None) -> Carrier:
    """Symmetric grid on [-1, 1]; the materialization depth fixes the actual
    step, and a declared step is only checked for consistency against it."""
    return Carrier("symgrid", step=None if step is None else parse_rational(step))


def points_carrier(points: Sequence[Sequence]) -> Carrier:
    parsed = tuple(
        (parse_rational(p[0]), parse_rational(p[1])) for p in points
    )
    if len(set(parsed)) != len(parsed):
        raise InputError("carrier points must be pairwise distinct")
    if len(parsed) < 2:
        raise InputError("need at least 2 carrier points")
    return Carrier("points2d", points=parsed)


@dataclass(frozen=True)
class LazyMetric:
    """Closed-form metric over a countable carrier, materializable at any depth.

    sup_bound is an exact upper bound for all off-diagonal values (None when
    none is declared), inf_value the exact infimum over distinct pairs of the
    full carrier (None when depth-dependent or unknown), and unbounded marks
    families whose values provably exceed every bound. These three feed the
    carrier-wide comparison rules; truncations alone never decide a limit.
    """

    family: str
    carrier: Carrier
    weight: Optional[Fraction] = None        # cauchy: second-coordinate weight 1/n
    base: Optional["LazyMetric"] = None      # transforms wrap their source
    factor: Optional[Fraction] = None        # scaled-of: the |alpha| multiplier
    sup_bound: Optional[Fraction] = None
    inf_value: Optional[Fraction] = None
    unbounded: bool = False

    # -- evaluation ---------------------------------------------------------

    def eval(self, i: int, j: int, depth: int, carrier: Optional[Carrier] = None) -> Fraction:
        """Distance between carrier points i and j (1-based) at a depth."""
        c = carrier or self.carrier
        if i == j:
            return ZERO
        if self.family == "discrete":
            return ONE
        if self.family == "shrinking":
            return abs(Fraction(1, i) - Fraction(1, j))
        if self.family == "usual":
            return abs(c.coord(i, depth) - c.coord(j, depth))
        if self.family == "kappa":
            a, b = c.coord(i, depth), c.coord(j, depth)
            if abs(a) <= HALF and abs(b) <= HALF:
                return abs(a - b)
            return TWO
        if self.family == "cauchy":
            (u, u2), (v, v2) = c.coord(i, depth), c.coord(j, depth)
            return abs(u - v) + self.weight * abs(u2 - v2)
        if self.family == "bounded-of":
            v = self.base.eval(i, j, depth, c)
            return v / (1 + v)
        if self.family == "min-of":
            return min(ONE, self.base.eval(i, j, depth, c))
        if self.family == "scaled-of":
            return self.factor * self.base.eval(i, j, depth, c)
        raise InputError(f"unknown metric family {self.family!r}")

    def materialize(self, depth: int, carrier: Optional[Carrier] = None) -> MetricMatrix:
        c = carrier or self.carrier
        c.check_depth(depth)
        labels = tuple(f"x{k}" for k in range(1, depth + 1))
        rows = tuple(
            tuple(self.eval(i, j, depth, c) for j in range(1, depth + 1))
            for i in range(1, depth + 1)
        )
        return MetricMatrix(labels, rows)

    def describe(self) -> dict:
        doc = {"family": self.family, "carrier": self.carrier.kind}
        if self.carrier.step is not None:
            doc["step"] = fmt(self.carrier.step)
        if self.weight is not None:
            doc["weight"] = fmt(self.weight)
        if self.factor is not None:
            doc["factor"] = fmt(self.factor)
        if self.base is not None:
            doc["base"] = self.base.describe()
        return doc


def _lazy_bounded(m: LazyMetric) -> LazyMetric:
    if m.inf_value is None:
        inf = None
    else:
        inf = m.inf_value / (1 + m.inf_value)
    if m.sup_bound is not None and not m.unbounded:
        sup = m.sup_bound / (1 + m.sup_bound)
    else:
        sup = ONE
    return LazyMetric("bounded-of", m.carrier, base=m,
                      sup_bound=sup, inf_value=inf, unbounded=False)


def _lazy_min(m: LazyMetric) -> LazyMetric:
    inf = None if m.inf_value is None else min(ONE, m.inf_value)
    sup = ONE if (m.sup_bound is None or m.unbounded) else min(ONE, m.sup_bound)
    return LazyMetric("min-of", m.carrier, base=m,
                      sup_bound=sup, inf_value=inf, unbounded=False)


def scale_lazy(alpha, m: LazyMetric) -> LazyMetric:
    """|alpha|-multiple of a closed-form metric; alpha must be nonzero since
    the zero table is not a LazyMetric."""
    factor = abs(parse_rational(alpha))
    if factor == 0:
        raise InputError("scaling a closed-form metric by zero leaves the family")
    return LazyMetric(
        "scaled-of", m.carrier, base=m, factor=factor,
        sup_bound=None if m.sup_bound is None else factor * m.sup_bound,
        inf_value=None if m.inf_value is None else factor * m.inf_value,
        unbounded=m.unbounded,
    )


def discrete_metric(carrier: Optional[Carrier] = None) -> LazyMetric:
    return LazyMetric("discrete", carrier or indexed_carrier(),
                      sup_bound=ONE, inf_value=ONE)


def shrinking_metric(carrier: Optional[Carrier] = None) -> LazyMetric:
    """All carrier points at mutual distance |1/n - 1/m|: the infimum over
    distinct pairs of the full countable carrier is exactly 0."""
    return LazyMetric("shrinking", carrier or indexed_carrier(),
                      sup_bound=ONE, inf_value=ZERO)


def usual_metric(carrier: Carrier) -> LazyMetric:
    if carrier.kind == "grid":
        return LazyMetric("usual", carrier, inf_value=carrier.step, unbounded=True)
    if carrier.kind == "symgrid":
        return LazyMetric("usual", carrier, sup_bound=TWO)
    raise InputError("the usual metric needs a one-dimensional coordinate carrier")


def kappa_metric() -> LazyMetric:
    return LazyMetric("kappa", symmetric_grid_carrier(), sup_bound=TWO)


def cauchy_dn_metric(n, points: Sequence[Sequence]) -> LazyMetric:
    n = parse_rational(n)
    if n.denominator != 1 or n < 1:
        raise InputError("cauchy-dn index n must be an integer >= 1")
    return LazyMetric("cauchy", points_carrier(points), weight=Fraction(1, int(n)))


BUILTIN_NAMES = ("discrete", "usual-grid", "shrinking", "kappa", "cauchy-dn")


def builtin_lazy(name: str, params: Optional[dict] = None) -> LazyMetric:
    """Construct a named closed-form metric on its canonical carrier."""
    params = dict(params or {})
    if name == "discrete":
        _no_extra(params, ())
        return discrete_metric()
    if name == "shrinking":
        _no_extra(params, ())
        return shrinking_metric()
    if name == "usual-grid":
        step = params.pop("step", None)
        if step is None:
            raise InputError("usual-grid needs a positive rational step")
        _no_extra(params, ())
        return usual_metric(grid_carrier(step))
    if name == "kappa":
        step = params.pop("step", None)
        _no_extra(params, ())
        return LazyMetric("kappa", symmetric_grid_carrier(step), sup_bound=TWO)
    if name == "cauchy-dn":
        n = params.pop("n", None)
        points = params.pop("points", None)
        if n is None or points is None:
            raise InputError("cauchy-dn needs an index n and a list of plane points")
        _no_extra(params, ())
        return cauchy_dn_metric(n, points)
    raise InputError(f"unknown builtin metric {name!r}; choose from {BUILTIN_NAMES}")


def _no_extra(params: dict, allowed: tuple) -> None:
    extra = set(params) - set(allowed)
    if extra:
        raise InputError(f"unexpected parameters: {sorted(extra)}")


def builtin_metric(name: str, params: Optional[dict], depth: int) -> MetricMatrix:
    """Materialize a named metric on the first `depth` canonical carrier points."""
    return builtin_lazy(name, params).materialize(depth)


def resolve_carrier(a: LazyMetric, b: LazyMetric) -> Carrier:
    """Common carrier for a pair: index-only families ride any carrier, and at
    most one side may impose a coordinate carrier."""
    specific = [m.carrier for m in (a, b) if m.carrier.kind != "indexed"]
    if len(specific) == 2 and specific[0] != specific[1]:
        both_sym = all(c.kind == "symgrid" for c in specific)
        steps = {c.step for c in specific if c.step is not None}
        if both_sym and len(steps) <= 1:
            return symmetric_grid_carrier(steps.pop() if steps else None)
        raise InputError("the two metrics live on different carriers")
    return specific[0] if specific else indexed_carrier()


# ---------------------------------------------------------------------------
# Depth-indexed comparison
# ---------------------------------------------------------------------------


def partial_comparing_function(d: LazyMetric, rho: LazyMetric,
                               depths: Sequence[int]) -> list[Fraction]:
    """Exact pair minima of rho/d over the first depths[k] carrier points.

    Each value is an upper bound for the carrier-wide infimum; when the
    truncated carriers are nested the sequence is nonincreasing.
    """
    depths = list(depths)
    if any(n < 2 for n in depths):
        raise InputError("all depths must be at least 2")
    if any(b <= a for a, b in zip(depths, depths[1:])):
        raise InputError("depths must be strictly increasing")
    carrier = resolve_carrier(d, rho)
    out = []
    for depth in depths:
        dm = d.materialize(depth, carrier)
        rm = rho.materialize(depth, carrier)
        out.append(comparing_function_metric(dm, rm))
    return out


def _direction_rules(d: LazyMetric, rho: LazyMetric) -> Optional[dict]:
    """Carrier-wide verdict for the comparing value of rho relative to d, when
    the exact family bounds decide it; None otherwise.

    positive: inf rho > 0 and d bounded above  => (inf rho / sup d) * d <= rho.
    zero:     inf rho = 0 and inf d > 0        => ratios along rho's vanishing
              pairs are forced below every bound.
    zero:     rho bounded above and d unbounded.
    """
    if rho.inf_value is not None and rho.inf_value > 0 and \
            d.sup_bound is not None and not d.unbounded:
        cert = rho.inf_value / d.sup_bound
        return {"status": "positive", "certificate": cert,
                "reason": "relative element bounded above while the argument's "
                          "distances are bounded away from zero"}
    if rho.inf_value == 0 and d.inf_value is not None and d.inf_value > 0:
        return {"status": "refuted", "value": ZERO,
                "reason": "the argument has vanishing infimum over distinct "
                          "pairs while the relative element does not"}
    if rho.sup_bound is not None and not rho.unbounded and d.unbounded:
        return {"status": "refuted", "value": ZERO,
                "reason": "the relative element is unbounded while the "
                          "argument is bounded"}
    return None


def classify_lazy_pair(d: LazyMetric, rho: LazyMetric,
                       depths: Sequence[int]) -> dict:
    """Classification of a countable-carrier pair.

    Each direction is decided carrier-wide when a bound rule applies;
    otherwise it is reported as a depth-indexed upper-bound sequence with a
    strictly-decreasing trend flag and counts as undetermined, never as zero.
    """
    directions = {}
    for key, (x, y) in (
        ("secondRelativeFirst", (d, rho)),
        ("firstRelativeSecond", (rho, d)),
    ):
        rule = _direction_rules(x, y)
        seq = partial_comparing_function(x, y, depths)
        entry = {
            "depths": list(depths),
            "upperBounds": [fmt(v) for v in seq],
            "strictlyDecreasing": all(b < a for a, b in zip(seq, seq[1:])),
        }
        if rule is None:
            entry["status"] = "undetermined"
        else:
            entry["status"] = rule["status"]
            entry["reason"] = rule["reason"]
            if rule["status"] == "positive":
                entry["certificate"] = fmt(rule["certificate"])
        directions[key] = entry
    s1 = directions["secondRelativeFirst"]["status"]
    s2 = directions["firstRelativeSecond"]["status"]
    if s1 == "positive" and s2 == "positive":
        label = MUTUALLY_DEPENDENT
    elif s1 == "positive" and s2 == "refuted":
        label = ONE_SIDED_SECOND_IN_FIRST
    elif s1 == "refuted" and s2 == "positive":
        label = ONE_SIDED_FIRST_IN_SECOND
    elif s1 == "refuted" and s2 == "refuted":
        label = ORDERLY_INDEPENDENT
    else:
        label = "undetermined-at-depth"
    return {
        "classification": label,
        "directions": directions,
        "first": d.describe(),
        "second": rho.describe(),
    }


# ---------------------------------------------------------------------------
# Incompleteness demonstration
# ---------------------------------------------------------------------------


def cauchy_incompleteness_demo(ns: Sequence[int],
                               point_pairs: Sequence[Sequence]) -> dict:
    """Exhibit a Cauchy family of plane metrics whose pointwise limit is not a
    metric.

    The family is d_n((u,u'),(v,v')) = |u-v| + (1/n)|u'-v'|. On the sampled
    pairs the oscillation between indices n and m is exactly
    |u'-v'| * |1/n - 1/m| <= C * |1/n - 1/m| with C the largest second-
    coordinate spread, and the pointwise limit |u-v| vanishes on any pair with
    equal first coordinates, which validate_metric rejects.
    """
    ns = sorted(set(int(n) for n in ns))
    if len(ns) < 2 or ns[0] < 1:
        raise InputError("need at least two indices n >= 1")
    pairs = []
    for entry in point_pairs:
        (x, y) = entry
        px = (parse_rational(x[0]), parse_rational(x[1]))
        py = (parse_rational(y[0]), parse_rational(y[1]))
        pairs.append((px, py))
    if not pairs:
        raise InputError("need at least one sample point pair")
    witnesses = [(x, y) for x, y in pairs if x[0] == y[0] and x[1] != y[1]]
    if not witnesses:
        raise InputError(
            "need a witness pair with equal first coordinates and distinct "
            "second coordinates"
        )

    spread = max(abs(x[1] - y[1]) for x, y in pairs)

    def dn(n: int, x, y) -> Fraction:
        return abs(x[0] - y[0]) + Fraction(1, n) * abs(x[1] - y[1])

    checks = []
    bound_ok = True
    for n, m in combinations(ns, 2):
        budget = spread * abs(Fraction(1, n) - Fraction(1, m))
        worst = max(abs(dn(n, x, y) - dn(m, x, y)) for x, y in pairs)
        ok = worst <= budget
        bound_ok = bound_ok and ok
        checks.append({
            "n": n, "m": m,
            "maxGap": fmt(worst),
            "budget": fmt(budget),
            "holds": ok,
        })

    points = []
    for x, y in pairs:
        for p in (x, y):
            if p not in points:
                points.append(p)
    labels = tuple(f"({fmt(p[0])},{fmt(p[1])})" for p in points)
    limit_rows = tuple(
        tuple(abs(p[0] - q[0]) for q in points) for p in points
    )
    limit = MetricMatrix(labels, limit_rows)
    verdict = validate_metric(limit)

    return {
        "indices": ns,
        "oscillationConstant": fmt(spread),
        "cauchyChecks": checks,
        "cauchyBoundHolds": bound_ok,
        "limitMatrix": limit.to_json(),
        "limitValidation": verdict.to_json(),
        "limitIsMetric": verdict.passed,
        "demonstratesIncompleteness": bound_ok and not verdict.passed,
    }


# ---------------------------------------------------------------------------
# Seeded random metrics (shared by the verifier samples and the test oracles)
# ---------------------------------------------------------------------------


def random_metric(rng, labels: Sequence[str]) -> MetricMatrix:
    """Random rational metric: a scaled mix of a box table (all entries within
    a factor two of each other, so triangle holds) and a star table
    d(i,j) = a_i + a_j."""
    n = len(labels)
    style = rng.choice(("box", "star", "mix"))
    scale = Fraction(rng.randint(1, 8), rng.randint(1, 4))

    def box_entry():
        return 1 + Fraction(rng.randint(0, 12), 12)

    weights = [Fraction(rng.randint(1, 6), 2) for _ in range(n)]
    rows = [[ZERO] * n for _ in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            if style == "box":
                v = box_entry()
            elif style == "star":
                v = weights[i] + weights[j]
            else:
                v = box_entry() + weights[i] + weights[j]
            rows[i][j] = rows[j][i] = scale * v
    return MetricMatrix(tuple(labels), tuple(tuple(r) for r in rows))
