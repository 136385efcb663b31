"""Pixel-grid algorithms for closed planar sets presented by ball provers.

Two kinds of closed sets are handled, both derived from a continuous
non-increasing curve f on [0, 1]:

* the graph {(delta, f(delta))}, approximated by the N-strip of grid
  squares meeting it, with its two boundary staircases; and
* the monotone domain U = {(R, delta) : R <= f(delta)}, approximated from
  two sides with an exceptional staircase of undecided squares between.

For a continuous non-increasing f the geometric predicates reduce to
endpoint evaluations, which is what makes certified interval evaluation
sufficient:

    closed square meets graph  <=>  f(x0) >= y0  and  f(x1) <= y1
    closed square meets U      <=>  f(x0) >= y0
    open   square meets U      <=>  f(x0) >  y0

(x0/x1 the square's delta range clipped to the curve span, y0/y1 its rate
range). Exact curves (polylines) decide every predicate outright; interval
curves leave the genuinely boundary-touching squares undecided at every
precision, which is precisely the exceptional set the theory expects.

The "wait until stabilization" loops are realized as fixpoint rounds on
the N-grid with doubling precision and a per-ball cap; a square still
undecided at the cap is treated as meeting the set (conservative: strips
may widen, never falsely thin). Presentations over general rational balls
enumerate a canonical dovetailed ball sequence so soundness examples can
be exercised directly; the grid algorithms consume the per-ball deciders.
"""

from __future__ import annotations

import enum
import time
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, Iterator, Optional, Sequence, Union

from .bounds import BoundCurve
from .errors import (
    ContractViolationError,
    InternalContractError,
    StabilizationTimeoutError,
)
from .geometry import (
    BallKind,
    GridBall,
    RatBall,
    RatPoint,
    balls_closures_intersect,
    format_rational,
    grid_balls,
)

ZERO = Fraction(0)
ONE = Fraction(1)

DEFAULT_BASE_PRECISION = 12
DEFAULT_PRECISION_CAP = 96


class Decision(enum.Enum):
    INTERSECTS = "intersects"
    DISJOINT = "disjoint"
    UNKNOWN = "unknown"


def _require_usable(curve: BoundCurve):
    if not curve.continuous:
        raise ContractViolationError(
            f"curve {curve.name!r} is not continuous; grid deciders need the IVP"
        )


class GraphBallDecider:
    """Decides closed-rectangle intersection with the graph of a curve."""

    def __init__(self, curve: BoundCurve):
        _require_usable(curve)
        self.curve = curve

    def decide(self, d_lo: Fraction, d_hi: Fraction, r_lo: Fraction, r_hi: Fraction,
               precision: int) -> Decision:
        span_lo, span_hi = self._span()
        a = max(d_lo, span_lo)
        b = min(d_hi, span_hi)
        if a > b:
            return Decision.DISJOINT
        fa = self.curve.eval(a, precision)
        fb = self.curve.eval(b, precision)
        if fa.lo >= r_lo and fb.hi <= r_hi:
            return Decision.INTERSECTS
        if fa.hi < r_lo or fb.lo > r_hi:
            return Decision.DISJOINT
        return Decision.UNKNOWN

    def decide_ball(self, ball: GridBall, precision: int) -> Decision:
        return self.decide(ball.delta_lo, ball.delta_hi, ball.r_lo, ball.r_hi, precision)

    def _span(self) -> tuple[Fraction, Fraction]:
        span = getattr(self.curve, "span", None)
        return span if span is not None else (ZERO, ONE)


class DomainBallDecider:
    """Decides grid squares against the monotone domain U = {R <= f(delta)}.

    The curve must evaluate on all of [0, 1] (polylines must span it)."""

    def __init__(self, curve: BoundCurve):
        _require_usable(curve)
        span = getattr(curve, "span", None)
        if span is not None and (span[0] > ZERO or span[1] < ONE):
            raise ContractViolationError(
                "domain decisions need a curve spanning [0, 1]"
            )
        self.curve = curve

    def decide_closed(self, ball: GridBall, precision: int) -> Decision:
        """Closed square vs U: intersects iff f(x0) >= y0."""
        fa = self.curve.eval(ball.delta_lo, precision)
        if fa.lo >= ball.r_lo:
            return Decision.INTERSECTS
        if fa.hi < ball.r_lo:
            return Decision.DISJOINT
        return Decision.UNKNOWN

    def decide_open(self, ball: GridBall, precision: int) -> Decision:
        """Open square vs U: intersects iff f(x0) > y0."""
        fa = self.curve.eval(ball.delta_lo, precision)
        if fa.lo > ball.r_lo:
            return Decision.INTERSECTS
        if fa.hi <= ball.r_lo:
            return Decision.DISJOINT
        return Decision.UNKNOWN


# --- canonical enumeration of rational balls -------------------------------


def _unpair(z: int) -> tuple[int, int]:
    w = (_isqrt(8 * z + 1) - 1) // 2
    t = w * (w + 1) // 2
    b = z - t
    return w - b, b


def _isqrt(n: int) -> int:
    import math

    return math.isqrt(n)


def _calkin_wilf(index: int) -> Fraction:
    """index-th positive rational (1-based) along the Calkin-Wilf tree."""
    if index < 1:
        raise ContractViolationError("Calkin-Wilf index is 1-based")
    num, den = 1, 1
    bits = bin(index)[3:]  # path below the root
    for bit in bits:
        if bit == "0":
            den = num + den
        else:
            num = num + den
    return Fraction(num, den)


def _signed_rational(index: int) -> Fraction:
    if index == 0:
        return ZERO
    half, odd = divmod(index + 1, 2)
    value = _calkin_wilf(half)
    return value if odd else -value


def canonical_ball(index: int) -> RatBall:
    """Deterministic enumeration covering every open rational ball."""
    z1, radius_idx = _unpair(index)
    delta_idx, r_idx = _unpair(z1)
    center = RatPoint(r=_signed_rational(r_idx), delta=_signed_rational(delta_idx))
    return RatBall(center, _calkin_wilf(radius_idx + 1), BallKind.OPEN)


# --- presentations ---------------------------------------------------------


class _StagedEnumeration:
    """Shared driver: deterministic stages, each possibly emitting new balls."""

    def __init__(self):
        self._stage = 0
        self._emitted: list = []
        self._emitted_keys: set = set()

    @property
    def progress(self) -> int:
        return self._stage

    @property
    def emitted(self) -> tuple:
        return tuple(self._emitted)

    def advance(self, stages: int) -> list:
        """Run the dovetail for ``stages`` rounds; return newly emitted balls."""
        fresh: list = []
        for _ in range(stages):
            self._stage += 1
            for ball in self._stage_emissions(self._stage):
                key = self._key(ball)
                if key not in self._emitted_keys:
                    self._emitted_keys.add(key)
                    self._emitted.append(ball)
                    fresh.append(ball)
        return fresh

    def _key(self, ball):
        if isinstance(ball, RatBall):
            return (ball.center.r, ball.center.delta, ball.radius, ball.kind)
        return ball

    def _stage_emissions(self, stage: int) -> Iterable:
        raise NotImplementedError


class DensePointPresentation(_StagedEnumeration):
    """Sound ball enumerator for the closure of a restartable point stream.

    At stage s, the first s canonical balls are tested against the first s
    streamed points; a ball is emitted once it contains a streamed point,
    which certifies it meets the closure of the stream's range.
    """

    kind = "re"

    def __init__(self, stream_factory: Callable[[], Iterator[RatPoint]]):
        super().__init__()
        self._factory = stream_factory
        self._iter: Optional[Iterator[RatPoint]] = None
        self._points: list[RatPoint] = []
        self._exhausted = False

    def _pull_points(self, count: int):
        if self._iter is None:
            self._iter = self._factory()
        while not self._exhausted and len(self._points) < count:
            try:
                self._points.append(next(self._iter))
            except StopIteration:
                self._exhausted = True

    def _stage_emissions(self, stage: int):
        self._pull_points(stage)
        prefix = self._points[:stage]
        for idx in range(stage):
            ball = canonical_ball(idx)
            if any(ball.contains(p) for p in prefix):
                yield ball


def re_from_dense_points(stream_factory: Callable[[], Iterator[RatPoint]]) -> DensePointPresentation:
    return DensePointPresentation(stream_factory)


class CurveGraphCoPresentation(_StagedEnumeration):
    """Enumerates open rational balls whose closures provably miss the graph."""

    kind = "co"

    def __init__(self, curve: BoundCurve, base_precision: int = DEFAULT_BASE_PRECISION):
        super().__init__()
        self.decider = GraphBallDecider(curve)
        self.base_precision = base_precision

    def _stage_emissions(self, stage: int):
        precision = min(DEFAULT_PRECISION_CAP, self.base_precision + 4 * stage)
        for idx in range(stage):
            ball = canonical_ball(idx)
            d_iv, r_iv = ball.delta_interval, ball.r_interval
            if self.decider.decide(d_iv.lo, d_iv.hi, r_iv.lo, r_iv.hi, precision) is Decision.DISJOINT:
                yield ball


class CurveGraphRePresentation(_StagedEnumeration):
    """Enumerates open rational balls that provably meet the graph.

    A ball is emitted once some dyadic sample point delta strictly inside
    it has its curve value proven strictly inside the ball's rate range.
    """

    kind = "re"

    def __init__(self, curve: BoundCurve, base_precision: int = DEFAULT_BASE_PRECISION):
        super().__init__()
        _require_usable(curve)
        self.curve = curve
        self.base_precision = base_precision

    def _stage_emissions(self, stage: int):
        precision = min(DEFAULT_PRECISION_CAP, self.base_precision + 4 * stage)
        span = getattr(self.curve, "span", (ZERO, ONE))
        for idx in range(stage):
            ball = canonical_ball(idx)
            d_iv, r_iv = ball.delta_interval, ball.r_interval
            a = max(d_iv.lo, span[0])
            b = min(d_iv.hi, span[1])
            if a > b:
                continue
            for delta in _sample_points(a, b, d_iv.lo, d_iv.hi, depth=stage):
                value = self.curve.eval(delta, precision)
                if value.lo > r_iv.lo and value.hi < r_iv.hi:
                    yield ball
                    break


def _sample_points(a: Fraction, b: Fraction, open_lo: Fraction, open_hi: Fraction,
                   depth: int) -> Iterator[Fraction]:
    """Dyadic probes of [a, b] lying strictly inside (open_lo, open_hi)."""
    for endpoint in (a, b):
        if open_lo < endpoint < open_hi:
            yield endpoint
    if a == b:
        return
    steps = 1 << min(depth, 8)
    width = b - a
    for i in range(1, steps):
        yield a + width * Fraction(i, steps)


def core_from_curve(curve: BoundCurve, base_precision: int = DEFAULT_BASE_PRECISION) -> CurveGraphCoPresentation:
    return CurveGraphCoPresentation(curve, base_precision)


def re_from_curve(curve: BoundCurve, base_precision: int = DEFAULT_BASE_PRECISION) -> CurveGraphRePresentation:
    return CurveGraphRePresentation(curve, base_precision)


class DomainCoPresentation(_StagedEnumeration):
    """Closed-rectangle provers for the complement side of a monotone domain."""

    kind = "co"

    def __init__(self, curve: BoundCurve, base_precision: int = DEFAULT_BASE_PRECISION):
        super().__init__()
        self.decider = DomainBallDecider(curve)
        self.base_precision = base_precision

    def _stage_emissions(self, stage: int):
        precision = min(DEFAULT_PRECISION_CAP, self.base_precision + 4 * stage)
        for idx in range(stage):
            ball = canonical_ball(idx)
            if _domain_closed_disjoint(self.decider.curve, ball, precision):
                yield ball


class DomainRePresentation(_StagedEnumeration):
    """Open-rectangle provers for the inside of a monotone domain."""

    kind = "re"

    def __init__(self, curve: BoundCurve, base_precision: int = DEFAULT_BASE_PRECISION):
        super().__init__()
        self.decider = DomainBallDecider(curve)
        self.base_precision = base_precision

    def _stage_emissions(self, stage: int):
        precision = min(DEFAULT_PRECISION_CAP, self.base_precision + 4 * stage)
        for idx in range(stage):
            ball = canonical_ball(idx)
            if _domain_open_intersects(self.decider.curve, ball, precision):
                yield ball


def _domain_closed_disjoint(curve: BoundCurve, ball: RatBall, precision: int) -> bool:
    d_iv, r_iv = ball.delta_interval, ball.r_interval
    x0 = max(d_iv.lo, ZERO)
    x1 = min(d_iv.hi, ONE)
    y0 = max(r_iv.lo, ZERO)
    y1 = min(r_iv.hi, ONE)
    if x0 > x1 or y0 > y1:
        return True  # no overlap with the unit square at all
    value = curve.eval(x0, precision)
    return value.hi < y0


def _domain_open_intersects(curve: BoundCurve, ball: RatBall, precision: int) -> bool:
    d_iv, r_iv = ball.delta_interval, ball.r_interval
    x0 = max(d_iv.lo, ZERO)
    x1 = min(d_iv.hi, ONE)
    if x0 > x1 or (x0 == x1 and not d_iv.lo < x0 < d_iv.hi):
        return False
    y0 = max(r_iv.lo, ZERO)
    if y0 >= r_iv.hi:
        return False
    value = curve.eval(x0, precision)
    return value.lo > y0


def domain_presentations(curve: BoundCurve, base_precision: int = DEFAULT_BASE_PRECISION
                         ) -> tuple[DomainRePresentation, DomainCoPresentation]:
    """(r.e., co-r.e.) pair presenting U = {R <= f(delta)}."""
    return DomainRePresentation(curve, base_precision), DomainCoPresentation(curve, base_precision)


# --- N-strips (graph approximation) ----------------------------------------


@dataclass(frozen=True)
class NStrip:
    """Union of grid squares meeting a decreasing curve's graph.

    ``column_ranges`` maps each occupied column i to its contiguous row
    range (lo, hi) inclusive. ``gamma_plus``/``gamma_minus`` are the upper
    and lower boundary staircases. ``capped`` lists squares kept
    conservatively because they were still undecided at the precision cap.
    """

    n_grid: int
    column_ranges: tuple[tuple[int, int, int], ...]  # (i, lo, hi) sorted by i
    gamma_plus: tuple[RatPoint, ...]
    gamma_minus: tuple[RatPoint, ...]
    capped: tuple[tuple[int, int], ...] = ()

    @property
    def balls(self) -> tuple[GridBall, ...]:
        out = []
        for i, lo, hi in self.column_ranges:
            out.extend(GridBall(self.n_grid, i, j) for j in range(lo, hi + 1))
        return tuple(out)

    def ball_set(self) -> frozenset[tuple[int, int]]:
        return frozenset((b.i, b.j) for b in self.balls)

    @property
    def columns(self) -> tuple[int, ...]:
        return tuple(i for i, _, _ in self.column_ranges)

    def column_range(self, i: int) -> Optional[tuple[int, int]]:
        for col, lo, hi in self.column_ranges:
            if col == i:
                return lo, hi
        return None

    @property
    def end_segments(self) -> tuple[tuple[RatPoint, RatPoint], tuple[RatPoint, RatPoint]]:
        """The two vertical boundary segments at the strip ends."""
        n = Fraction(self.n_grid)
        first_i, first_lo, first_hi = self.column_ranges[0]
        last_i, last_lo, last_hi = self.column_ranges[-1]
        left = (
            RatPoint(Fraction(first_lo) / n, Fraction(first_i) / n),
            RatPoint(Fraction(first_hi + 1) / n, Fraction(first_i) / n),
        )
        right = (
            RatPoint(Fraction(last_lo) / n, Fraction(last_i + 1) / n),
            RatPoint(Fraction(last_hi + 1) / n, Fraction(last_i + 1) / n),
        )
        return left, right

    @property
    def end_segments_degenerate(self) -> tuple[bool, bool]:
        """Flags end columns that collapse to a single square."""
        first = self.column_ranges[0]
        last = self.column_ranges[-1]
        return (first[1] == first[2], last[1] == last[2])

    def max_column_height(self) -> Fraction:
        return max(Fraction(hi - lo + 1, self.n_grid) for _, lo, hi in self.column_ranges)

    def boundary_within(self, dist: Fraction) -> bool:
        """Exact check: each boundary staircase within max-metric ``dist`` of the other."""
        return polyline_within(dist, self.gamma_minus, self.gamma_plus) and polyline_within(
            dist, self.gamma_plus, self.gamma_minus
        )

    def to_json(self) -> dict:
        return {
            "n_grid": self.n_grid,
            "balls": sorted([i, j] for (i, j) in self.ball_set()),
            "gamma_plus": [[format_rational(v.delta), format_rational(v.r)] for v in self.gamma_plus],
            "gamma_minus": [[format_rational(v.delta), format_rational(v.r)] for v in self.gamma_minus],
            "capped": sorted(list(pair) for pair in self.capped),
            "end_segments_degenerate": list(self.end_segments_degenerate),
        }


def _staircase(columns: Sequence[tuple[int, int]], n_grid: int) -> tuple[RatPoint, ...]:
    """Boundary polyline over contiguous columns; (i, level) pairs give the
    boundary row index per column (exclusive top for the upper staircase)."""
    n = Fraction(n_grid)
    verts: list[RatPoint] = []

    def push(x: Fraction, y: Fraction):
        if verts and verts[-1] == RatPoint(y, x):
            return
        verts.append(RatPoint(y, x))

    first_i = columns[0][0]
    push(Fraction(first_i) / n, Fraction(columns[0][1]) / n)
    for (i, level), nxt in zip(columns, list(columns[1:]) + [None]):
        push(Fraction(i + 1) / n, Fraction(level) / n)
        if nxt is not None:
            push(Fraction(nxt[0]) / n, Fraction(nxt[1]) / n)
    return tuple(verts)


CurveOrCo = Union[BoundCurve, CurveGraphCoPresentation]


def build_strip(
    source: CurveOrCo,
    n_grid: int,
    timeout_ms: Optional[int] = None,
    base_precision: int = DEFAULT_BASE_PRECISION,
    precision_cap: int = DEFAULT_PRECISION_CAP,
) -> NStrip:
    """Grid squares not provably disjoint from the curve's graph, once the
    fixpoint rounds stabilize, together with the boundary staircases.

    Accepts the graph's co-r.e. presentation or the curve itself. Squares
    undecided at the precision cap stay in the strip (conservative) and are
    reported in ``capped``. Raises StabilizationTimeoutError with partial
    state when the wall clock runs out first.
    """
    decider = source.decider if isinstance(source, CurveGraphCoPresentation) else GraphBallDecider(source)
    deadline = time.monotonic() + timeout_ms / 1000.0 if timeout_ms is not None else None

    status: dict[tuple[int, int], Decision] = {
        (b.i, b.j): Decision.UNKNOWN for b in grid_balls(n_grid)
    }
    precision = base_precision
    while True:
        changed = False
        for (i, j), current in sorted(status.items()):
            if current is not Decision.UNKNOWN:
                continue
            if deadline is not None and time.monotonic() > deadline:
                raise StabilizationTimeoutError(
                    "strip construction timed out", partial=dict(status)
                )
            decision = decider.decide_ball(GridBall(n_grid, i, j), precision)
            if decision is not Decision.UNKNOWN:
                status[(i, j)] = decision
                changed = True
        undecided = [key for key, dec in status.items() if dec is Decision.UNKNOWN]
        if not undecided:
            break
        if precision >= precision_cap and not changed:
            break
        precision = min(precision_cap, precision * 2)

    capped = tuple(sorted(key for key, dec in status.items() if dec is Decision.UNKNOWN))
    members = {key for key, dec in status.items() if dec is not Decision.DISJOINT}
    if not members:
        raise InternalContractError("no grid square meets the presented graph")
    return _assemble_strip(n_grid, members, capped)


def _assemble_strip(n_grid: int, members: set[tuple[int, int]],
                    capped: tuple[tuple[int, int], ...]) -> NStrip:
    by_col: dict[int, list[int]] = {}
    for i, j in members:
        by_col.setdefault(i, []).append(j)
    cols = sorted(by_col)
    if cols != list(range(cols[0], cols[-1] + 1)):
        raise InternalContractError("strip columns are not contiguous")
    ranges = []
    for i in cols:
        rows = sorted(by_col[i])
        if rows != list(range(rows[0], rows[-1] + 1)):
            raise InternalContractError(f"strip column {i} is not contiguous")
        ranges.append((i, rows[0], rows[-1]))
    for (i, lo, hi), (i2, lo2, hi2) in zip(ranges, ranges[1:]):
        if lo2 > hi + 1 or hi2 < lo - 1:
            raise InternalContractError(f"strip disconnected between columns {i} and {i2}")
    gamma_plus = _staircase([(i, hi + 1) for i, lo, hi in ranges], n_grid)
    gamma_minus = _staircase([(i, lo) for i, lo, hi in ranges], n_grid)
    return NStrip(
        n_grid=n_grid,
        column_ranges=tuple(ranges),
        gamma_plus=gamma_plus,
        gamma_minus=gamma_minus,
        capped=capped,
    )


# --- three-way point classification ----------------------------------------


@dataclass(frozen=True)
class PointPartition:
    below: tuple[RatPoint, ...]
    inside: tuple[RatPoint, ...]
    above: tuple[RatPoint, ...]


def classify_points(points: Sequence[RatPoint], strip: NStrip) -> PointPartition:
    """Exact partition of unit-square points against the strip.

    A point in any strip square (closed) is Inside; otherwise it compares
    against the strip's row range over the columns whose closed delta-range
    contains it. For connected strips the verdict cannot be mixed.
    """
    n = strip.n_grid
    below: list[RatPoint] = []
    inside: list[RatPoint] = []
    above: list[RatPoint] = []
    for p in points:
        if not p.in_unit_square():
            raise ContractViolationError(f"point {p} outside the unit square")
        scaled = p.delta * n
        exact_col = int(scaled) if scaled.denominator == 1 else None
        if exact_col is not None:
            cols = [c for c in (exact_col - 1, exact_col) if 0 <= c <= n - 1]
        else:
            cols = [int(scaled)]
        ranges = []
        for c in cols:
            rng = strip.column_range(c)
            if rng is None:
                raise ContractViolationError(
                    f"strip has no squares in column {c}; cannot classify"
                )
            ranges.append(rng)
        verdicts = []
        for lo, hi in ranges:
            if Fraction(lo, n) <= p.r <= Fraction(hi + 1, n):
                verdicts.append("inside")
            elif p.r < Fraction(lo, n):
                verdicts.append("below")
            else:
                verdicts.append("above")
        if "inside" in verdicts:
            inside.append(p)
        elif all(v == "below" for v in verdicts):
            below.append(p)
        elif all(v == "above" for v in verdicts):
            above.append(p)
        else:
            raise InternalContractError(f"mixed verdict for {p}: strip not connected?")
    return PointPartition(tuple(below), tuple(inside), tuple(above))


# --- exceptional-ball two-sided approximation -------------------------------


@dataclass(frozen=True)
class AdmissibleSet:
    """Final partition of the N-grid against a monotone domain.

    ``exceptional`` is the post-amendment undecided set X; ``admissible``
    records whether it satisfies (a) at most one square per row and per
    column and (b) further right implies strictly lower.
    """

    n_grid: int
    u_plus: frozenset[tuple[int, int]]
    u_minus: frozenset[tuple[int, int]]
    exceptional: tuple[tuple[int, int], ...]
    initial_undecided: tuple[tuple[int, int], ...]
    admissible: bool

    def to_json(self) -> dict:
        return {
            "n_grid": self.n_grid,
            "u_plus": sorted(list(p) for p in self.u_plus),
            "u_minus": sorted(list(p) for p in self.u_minus),
            "exceptional": [list(p) for p in self.exceptional],
            "initial_undecided": [list(p) for p in self.initial_undecided],
            "admissible": self.admissible,
        }


def _check_admissible(cells: Sequence[tuple[int, int]]) -> bool:
    rows = [j for _, j in cells]
    cols = [i for i, _ in cells]
    if len(set(rows)) != len(rows) or len(set(cols)) != len(cols):
        return False
    ordered = sorted(cells)
    for (i1, j1), (i2, j2) in zip(ordered, ordered[1:]):
        if i2 > i1 and j2 >= j1:
            return False
    return True


DomainSource = Union[BoundCurve, tuple[DomainRePresentation, DomainCoPresentation]]


def two_sided_approx(
    re: Union[BoundCurve, DomainRePresentation],
    co: Optional[DomainCoPresentation] = None,
    n_grid: int = 4,
    timeout_ms: Optional[int] = None,
    base_precision: int = DEFAULT_BASE_PRECISION,
    precision_cap: int = DEFAULT_PRECISION_CAP,
    strict: bool = True,
) -> AdmissibleSet:
    """Run the two provers over the N-grid until stabilization, then apply
    the amendment pass moving undecided squares whose closures miss the
    decided sides.

    Call either with a (re, co) presentation pair for the same domain, or
    with a single curve in place of ``re``. With ``strict`` (default) a
    non-admissible final exceptional set raises InternalContractError,
    which indicates the presented set was not the domain of a strictly
    decreasing curve; pass strict=False to get the flagged result instead
    (useful for deliberately degenerate stand-ins such as constant curves).
    """
    if isinstance(re, BoundCurve):
        if co is not None:
            raise ContractViolationError("pass either a curve or a presentation pair")
        decider = DomainBallDecider(re)
    else:
        if co is None:
            raise ContractViolationError("need both re and co presentations")
        if re.decider.curve is not co.decider.curve:
            raise ContractViolationError("re and co must present the same domain")
        decider = co.decider
    deadline = time.monotonic() + timeout_ms / 1000.0 if timeout_ms is not None else None

    cells = [(b.i, b.j) for b in grid_balls(n_grid)]
    closed_state: dict[tuple[int, int], Decision] = {c: Decision.UNKNOWN for c in cells}
    open_state: dict[tuple[int, int], Decision] = {c: Decision.UNKNOWN for c in cells}

    precision = base_precision
    while True:
        changed = False
        for cell in cells:
            if deadline is not None and time.monotonic() > deadline:
                raise StabilizationTimeoutError(
                    "two-sided approximation timed out",
                    partial={"closed": dict(closed_state), "open": dict(open_state)},
                )
            ball = GridBall(n_grid, *cell)
            if closed_state[cell] is Decision.UNKNOWN:
                dec = decider.decide_closed(ball, precision)
                if dec is not Decision.UNKNOWN:
                    closed_state[cell] = dec
                    changed = True
            if open_state[cell] is Decision.UNKNOWN:
                dec = decider.decide_open(ball, precision)
                if dec is not Decision.UNKNOWN:
                    open_state[cell] = dec
                    changed = True
        pending = [
            c
            for c in cells
            if closed_state[c] is Decision.UNKNOWN or open_state[c] is Decision.UNKNOWN
        ]
        if not pending:
            break
        if precision >= precision_cap and not changed:
            break
        precision = min(precision_cap, precision * 2)

    u_plus = {c for c in cells if closed_state[c] is Decision.DISJOINT}
    u_minus = {c for c in cells if open_state[c] is Decision.INTERSECTS}
    undecided = [c for c in cells if c not in u_plus and c not in u_minus]
    initial_undecided = tuple(sorted(undecided))

    # amendment pass against the *initial* decided sets, in deterministic order
    u_minus_initial = frozenset(u_minus)
    u_plus_initial = frozenset(u_plus)
    remaining = []
    for cell in initial_undecided:
        ball = GridBall(n_grid, *cell).to_ball()
        if not any(
            balls_closures_intersect(ball, GridBall(n_grid, *other).to_ball())
            for other in u_minus_initial
        ):
            u_plus.add(cell)
        elif not any(
            balls_closures_intersect(ball, GridBall(n_grid, *other).to_ball())
            for other in u_plus_initial
        ):
            u_minus.add(cell)
        else:
            remaining.append(cell)

    exceptional = tuple(sorted(remaining))
    admissible = _check_admissible(exceptional)
    if strict and not admissible:
        raise InternalContractError(
            "exceptional set is not admissible; input was not a strictly "
            "decreasing monotone domain"
        )
    return AdmissibleSet(
        n_grid=n_grid,
        u_plus=frozenset(u_plus),
        u_minus=frozenset(u_minus),
        exceptional=exceptional,
        initial_undecided=initial_undecided,
        admissible=admissible,
    )


# --- staircase curve estimates ----------------------------------------------


@dataclass(frozen=True)
class CurveEstimate:
    """Per-column two-sided staircase estimate of the bounding curve.

    ``upper_values[i]`` is the bottom edge of the lowest square in column i
    known to lie outside the domain (default 1); ``lower_values[i]`` the top
    edge of the highest square known to meet its interior (default 0). Both
    are within 1/N of the true curve at the column's left abscissa, and each
    exceptional square contributes its lower-left corner as a point
    estimate sitting exactly on the curve for exact stand-ins.
    """

    n_grid: int
    upper_values: tuple[Fraction, ...]
    lower_values: tuple[Fraction, ...]
    corner_points: tuple[RatPoint, ...]

    @property
    def error_bound(self) -> Fraction:
        return Fraction(1, self.n_grid)

    def abscissae(self) -> tuple[Fraction, ...]:
        return tuple(Fraction(i, self.n_grid) for i in range(self.n_grid))

    def upper_polyline(self) -> tuple[RatPoint, ...]:
        return _values_staircase(self.upper_values, self.n_grid)

    def lower_polyline(self) -> tuple[RatPoint, ...]:
        return _values_staircase(self.lower_values, self.n_grid)


def _values_staircase(values: Sequence[Fraction], n_grid: int) -> tuple[RatPoint, ...]:
    verts: list[RatPoint] = []
    n = Fraction(n_grid)
    for i, value in enumerate(values):
        left = Fraction(i) / n
        right = Fraction(i + 1) / n
        if not verts or verts[-1].r != value:
            verts.append(RatPoint(value, left))
        verts.append(RatPoint(value, right))
    return tuple(verts)


def curve_estimate(adm: AdmissibleSet) -> CurveEstimate:
    n = adm.n_grid
    upper = []
    lower = []
    exceptional = set(adm.exceptional)
    for i in range(n):
        tops = [j for (ci, j) in adm.u_plus if ci == i]
        tops += [j for (ci, j) in exceptional if ci == i]
        upper.append(Fraction(min(tops), n) if tops else ONE)
        bots = [j for (ci, j) in adm.u_minus if ci == i]
        lower.append(Fraction(max(bots) + 1, n) if bots else ZERO)
    corners = tuple(
        GridBall(n, i, j).lower_left for i, j in sorted(exceptional)
    )
    return CurveEstimate(
        n_grid=n,
        upper_values=tuple(upper),
        lower_values=tuple(lower),
        corner_points=corners,
    )


# --- exact polyline proximity ------------------------------------------------


def _segments(vertices: Sequence[RatPoint]) -> list[tuple[RatPoint, RatPoint]]:
    segs = []
    for a, b in zip(vertices, vertices[1:]):
        if a.delta != b.delta and a.r != b.r:
            raise ContractViolationError("polyline segments must be axis-parallel")
        segs.append((a, b))
    return segs


def polyline_within(dist: Fraction, inner: Sequence[RatPoint], outer: Sequence[RatPoint]) -> bool:
    """Exact test: every point of ``inner`` lies within max-metric ``dist``
    of some point of ``outer``. Both polylines must be axis-parallel.

    The max-metric ``dist``-neighborhood of an axis-parallel segment is the
    inflated bounding rectangle, so the test reduces to covering each inner
    segment by rectangles, an exact rational interval-union computation.
    """
    rects = []
    for a, b in _segments(outer):
        x0, x1 = sorted((a.delta, b.delta))
        y0, y1 = sorted((a.r, b.r))
        rects.append((x0 - dist, x1 + dist, y0 - dist, y1 + dist))

    for a, b in _segments(inner):
        covered: list[tuple[Fraction, Fraction]] = []
        for x0, x1, y0, y1 in rects:
            piece = _segment_in_rect(a, b, x0, x1, y0, y1)
            if piece is not None:
                covered.append(piece)
        if not _covers_unit(covered):
            return False
    return True


def _segment_in_rect(a: RatPoint, b: RatPoint, x0, x1, y0, y1) -> Optional[tuple[Fraction, Fraction]]:
    """Parameter subinterval of segment a->b inside the rectangle, or None."""
    lo, hi = ZERO, ONE

    for start, end, lo_bound, hi_bound in (
        (a.delta, b.delta, x0, x1),
        (a.r, b.r, y0, y1),
    ):
        span = end - start
        if span == 0:
            if not lo_bound <= start <= hi_bound:
                return None
            continue
        t0 = (lo_bound - start) / span
        t1 = (hi_bound - start) / span
        if t0 > t1:
            t0, t1 = t1, t0
        lo = max(lo, t0)
        hi = min(hi, t1)
        if lo > hi:
            return None
    return (lo, hi)


def _covers_unit(intervals: list[tuple[Fraction, Fraction]]) -> bool:
    if not intervals:
        return False
    intervals.sort()
    reach = ZERO
    for lo, hi in intervals:
        if lo > reach:
            return False
        reach = max(reach, hi)
        if reach >= ONE:
            return True
    return reach >= ONE
