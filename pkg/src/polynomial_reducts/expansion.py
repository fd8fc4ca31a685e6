#!/usr/bin/env python3
"""
Expansion lab: witness-set families, exact image sizes and fitted growth exponents.

Set families:
- arithmetic and geometric progressions of exact rationals;
- bounded-coefficient combinations of monomials in formal generators, B_r^d, where every
  generator has degree < d and coefficients lie in {0, ..., r-1}.

Formal elements are stored as coefficient vectors indexed by the monomials of Q_d so that
set operations stay cheap; they convert to ``MPoly`` on demand.
"""

from __future__ import annotations

import csv
import logging
import math
from collections.abc import Callable, Iterable, Sequence
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field, replace
from decimal import ROUND_HALF_EVEN, Decimal, localcontext
from itertools import product
from pathlib import Path
from typing import Any, Union

from polynomial_reducts.algebra.mpoly import ExpVec, MPoly, ev_get, ev_mul, make_expvec
from polynomial_reducts.algebra.rational import Rat, as_rat, render_rat
from polynomial_reducts.config.settings_loader import Settings
from polynomial_reducts.constants import (
    DEFAULT_DEGREE_CAP,
    DEFAULT_GENERATORS,
    ContainmentMethod,
    WitnessFamily,
)
from polynomial_reducts.exceptions import PreconditionError, guard_error, shape_error
from polynomial_reducts.types import ExpansionRowDict, ExpansionSummaryDict

logger = logging.getLogger(__name__)

Element = Union[Rat, int, MPoly]

CSV_HEADER = ("N", "image_size", "exponent")

UNIT = "1"


# =============================================================================
# WITNESS PARAMETERS
# =============================================================================

@dataclass(frozen=True)
class WitnessParams:
    """
    Parameters of a B_r^d witness set.

    ``generators`` are formal symbol names, or pairwise distinct integers >= 2 for the
    integer specialization. ``degree_cap`` is d (each generator appears with degree < d)
    and ``coeff_bound`` is r (coefficients in {0, ..., r-1}).
    """
    generators: tuple[str, ...] | tuple[int, ...] = DEFAULT_GENERATORS
    degree_cap: int = DEFAULT_DEGREE_CAP
    coeff_bound: int = 2

    def __post_init__(self) -> None:
        if self.degree_cap < 1:
            raise PreconditionError(
                f"degree cap must be >= 1, got {self.degree_cap}",
                requirement="d >= 1",
                operation="WitnessParams",
            )
        if self.coeff_bound < 2:
            raise PreconditionError(
                f"coefficient bound must be >= 2, got {self.coeff_bound}",
                requirement="coeff_bound >= 2",
                operation="WitnessParams",
            )
        if not self.generators:
            raise PreconditionError(
                "at least one generator is required",
                requirement="generators non-empty",
                operation="WitnessParams",
            )
        if len(set(self.generators)) != len(self.generators):
            raise PreconditionError(
                f"generators must be distinct: {list(self.generators)}",
                requirement="generators distinct",
                operation="WitnessParams",
            )
        kinds = {isinstance(g, str) for g in self.generators}
        if len(kinds) != 1:
            raise PreconditionError(
                "generators mix symbols and integers",
                requirement="all formal or all integer",
                operation="WitnessParams",
            )
        if not self.formal and any(int(g) < 2 for g in self.generators):
            raise PreconditionError(
                "integer generators must be >= 2",
                requirement="generators >= 2",
                operation="WitnessParams",
            )

    @property
    def formal(self) -> bool:
        return isinstance(self.generators[0], str)

    @property
    def symbols(self) -> tuple[str, ...]:
        """Symbol names; integer generators get placeholder names g0, g1, ..."""
        if self.formal:
            return tuple(str(g) for g in self.generators)
        return tuple(f"g{i}" for i in range(len(self.generators)))

    def monomials(self) -> list[ExpVec]:
        """Q_d: every monomial with each generator degree < d, in a fixed order."""
        names = self.symbols
        return [
            make_expvec(zip(names, exps))
            for exps in product(range(self.degree_cap), repeat=len(names))
        ]

    @property
    def expected_size(self) -> int:
        """coeff_bound ** |Q_d|, the size of B in formal mode."""
        return self.coeff_bound ** (self.degree_cap ** len(self.generators))

    def widened(self) -> WitnessParams:
        """Parameters of the containment target B_{2r}^{d+1}."""
        return replace(self, degree_cap=self.degree_cap + 1, coeff_bound=2 * self.coeff_bound)


def _check_set_size(size: int, settings: Settings, operation: str) -> None:
    logger.debug("%s: set size %d (limit %d)", operation, size, settings.max_set_size)
    if size > settings.max_set_size:
        raise guard_error("max_set_size", settings.max_set_size, size, operation=operation)


def _check_evaluations(count: int, settings: Settings, operation: str) -> None:
    logger.debug("%s: %d evaluations (limit %d)", operation, count, settings.max_evaluations)
    if count > settings.max_evaluations:
        raise guard_error("max_evaluations", settings.max_evaluations, count, operation=operation)


def _require_formal(params: WitnessParams, operation: str) -> None:
    if not params.formal:
        raise PreconditionError(
            "operation needs formal generators",
            requirement="formal mode",
            operation=operation,
        )


# =============================================================================
# WITNESS SETS
# =============================================================================

@dataclass(frozen=True)
class WitnessSet:
    """B_r^d as coefficient vectors over ``monomials``; ``collisions`` counts merged sums."""
    params: WitnessParams
    monomials: tuple[ExpVec, ...]
    vectors: tuple[tuple[int, ...], ...]
    values: frozenset[int] | None = None
    collisions: int = 0

    def __len__(self) -> int:
        if self.values is not None:
            return len(self.values)
        return len(self.vectors)

    def to_mpoly(self, vector: Sequence[int]) -> MPoly:
        return MPoly({ev: c for ev, c in zip(self.monomials, vector) if c})

    def elements(self) -> list[Element]:
        """Exact elements: MPoly in formal mode, integers in integer mode."""
        if self.values is not None:
            return sorted(self.values)
        return [self.to_mpoly(v) for v in self.vectors]


def witness_B(params: WitnessParams, settings: Settings | None = None) -> WitnessSet:
    """
    Build B_r^d for the given parameters.

    In formal mode distinct coefficient vectors give distinct elements, so the set has
    exactly coeff_bound ** |Q_d| members. In integer mode the monomials are evaluated at
    the integer generators and coinciding sums are counted as collisions.

    Raises:
        GuardError: if coeff_bound ** |Q_d| exceeds ``max_set_size``
    """
    settings = settings or Settings()
    _check_set_size(params.expected_size, settings, "witness_B")

    monomials = tuple(params.monomials())
    vectors = tuple(product(range(params.coeff_bound), repeat=len(monomials)))

    if params.formal:
        logger.debug("witness_B formal: %d elements over %d monomials", len(vectors), len(monomials))
        return WitnessSet(params, monomials, vectors)

    names = params.symbols
    point = dict(zip(names, (int(g) for g in params.generators)))
    weights = [_monomial_value(ev, point) for ev in monomials]
    values = frozenset(sum(c * w for c, w in zip(vector, weights)) for vector in vectors)
    collisions = len(vectors) - len(values)
    if collisions:
        logger.info("witness_B integer mode: %d collisions at %s", collisions, point)
    return WitnessSet(params, monomials, vectors, values, collisions)


def _monomial_value(ev: ExpVec, point: dict[str, int]) -> int:
    value = 1
    for var, exp in ev:
        value *= point[var] ** exp
    return value


# =============================================================================
# CONTAINMENT
# =============================================================================

@dataclass(frozen=True)
class ContainmentResult:
    holds: bool
    method: ContainmentMethod
    counterexample: MPoly | None = None
    checked_pairs: int = 0


def _multiplier(token: str, params: WitnessParams, operation: str = "containment_check") -> ExpVec:
    if token == UNIT:
        return ()
    if token not in params.symbols:
        raise PreconditionError(
            f"unknown generator {token!r}",
            requirement=f"one of {list(params.symbols)} or 1",
            operation=operation,
        )
    return ((token, 1),)


def _in_target(coeffs: dict[ExpVec, int], degree_cap: int, coeff_bound: int) -> bool:
    for ev, c in coeffs.items():
        if c >= coeff_bound:
            return False
        if any(exp >= degree_cap for _, exp in ev):
            return False
    return True


def _combine(
    a: Sequence[int], a_map: Sequence[ExpVec], b: Sequence[int], b_map: Sequence[ExpVec]
) -> dict[ExpVec, int]:
    acc: dict[ExpVec, int] = {}
    for c, ev in zip(a, a_map):
        if c:
            acc[ev] = acc.get(ev, 0) + c
    for c, ev in zip(b, b_map):
        if c:
            acc[ev] = acc.get(ev, 0) + c
    return acc


def containment_check(
    alpha: str,
    beta: str,
    params: WitnessParams,
    settings: Settings | None = None,
    target: WitnessParams | None = None,
) -> ContainmentResult:
    """
    Check alpha*B + beta*B against a target set, B_{2r}^{d+1} by default.

    ``alpha`` and ``beta`` are generator names or ``"1"``. Every pair is checked when
    |B|^2 fits in ``max_evaluations``; otherwise only the pair of all-maximal elements is
    checked, which is sufficient because membership only depends on the support and on
    coefficient sizes, both largest there.
    """
    settings = settings or Settings()
    _require_formal(params, "containment_check")
    target = target or params.widened()
    _check_set_size(params.expected_size, settings, "containment_check")

    monomials = params.monomials()
    a_map = [ev_mul(ev, _multiplier(alpha, params)) for ev in monomials]
    b_map = [ev_mul(ev, _multiplier(beta, params)) for ev in monomials]
    size = params.expected_size

    if size * size <= settings.max_evaluations:
        vectors = list(product(range(params.coeff_bound), repeat=len(monomials)))
        checked = 0
        for a in vectors:
            for b in vectors:
                checked += 1
                acc = _combine(a, a_map, b, b_map)
                if not _in_target(acc, target.degree_cap, target.coeff_bound):
                    logger.info("containment fails for %s*B + %s*B", alpha, beta)
                    return ContainmentResult(
                        False, ContainmentMethod.EXHAUSTIVE, MPoly(acc), checked
                    )
        return ContainmentResult(True, ContainmentMethod.EXHAUSTIVE, None, checked)

    top = [params.coeff_bound - 1] * len(monomials)
    acc = _combine(top, a_map, top, b_map)
    if _in_target(acc, target.degree_cap, target.coeff_bound):
        return ContainmentResult(True, ContainmentMethod.EXTREMAL, None, 1)
    return ContainmentResult(False, ContainmentMethod.EXTREMAL, MPoly(acc), 1)


# =============================================================================
# PROGRESSIONS
# =============================================================================

def ap_set(start: Rat | int, step: Rat | int, n: int) -> list[Rat]:
    """start, start + step, ..., start + (n-1)*step."""
    start, step = as_rat(start), as_rat(step)
    if n < 1:
        raise PreconditionError(f"set size must be >= 1, got {n}", requirement="N >= 1",
                                operation="ap_set")
    if not step:
        raise PreconditionError("progression step is zero", requirement="step != 0",
                                operation="ap_set")
    return [start + k * step for k in range(n)]


def gp_set(start: Rat | int, ratio: Rat | int, n: int) -> list[Rat]:
    """start, start*ratio, ..., start*ratio^(n-1)."""
    start, ratio = as_rat(start), as_rat(ratio)
    if n < 1:
        raise PreconditionError(f"set size must be >= 1, got {n}", requirement="N >= 1",
                                operation="gp_set")
    if not start:
        raise PreconditionError("progression start is zero", requirement="start != 0",
                                operation="gp_set")
    if ratio in (0, 1, -1):
        raise PreconditionError(
            f"degenerate ratio {render_rat(ratio)}",
            requirement="ratio not in {0, 1, -1}",
            operation="gp_set",
        )
    return [start * ratio ** k for k in range(n)]


# =============================================================================
# IMAGE SIZES
# =============================================================================

def _roles(p: MPoly) -> tuple[str, str]:
    support = sorted(p.support_vars())
    if set(support) <= {"x", "y"}:
        return "x", "y"
    if len(support) == 2:
        return support[0], support[1]
    raise shape_error(
        "image sizes need a polynomial in at most two variables",
        expected_shape="P(x, y)",
        actual_variables=support,
        operation="image_size",
    )


def _integer_grid(p: MPoly, x: str, y: str) -> tuple[list[list[int]], int]:
    """Coefficient grid c[i][j] of x^i y^j scaled to integers, and the scale."""
    scale = 1
    for _, c in p.items():
        scale = math.lcm(scale, c.denominator)
    grid = [[0] * (p.degree_in(y) + 1) for _ in range(p.degree_in(x) + 1)]
    for ev, c in p.items():
        grid[ev_get(ev, x)][ev_get(ev, y)] = int(c * scale)
    return grid, scale


def _integer_rows(grid: list[list[int]], a_values: Iterable[int], b_values: list[int]) -> set[int]:
    """Scaled values P(a, b) for the given a's and every b, as plain integers."""
    deg_y = len(grid[0]) - 1
    b_powers = [[b ** j for b in b_values] for j in range(deg_y + 1)]
    seen: set[int] = set()
    for a in a_values:
        a_pow = 1
        h = [0] * (deg_y + 1)
        for row in grid:
            for j, c in enumerate(row):
                if c:
                    h[j] += c * a_pow
            a_pow *= a
        const = h[0]
        terms = [(c, b_powers[j]) for j, c in enumerate(h) if c and j]
        if not terms:
            seen.add(const)
        elif len(terms) == 1:
            c, column = terms[0]
            seen.update(const + c * v for v in column)
        else:
            values = [const] * len(b_values)
            for c, column in terms:
                values = [acc + c * v for acc, v in zip(values, column)]
            seen.update(values)
    return seen


def _exact_rows(
    p: MPoly, x: str, y: str, a_values: Iterable[Element], b_values: list[Element]
) -> set[Any]:
    seen: set[Any] = set()
    formal = any(isinstance(v, MPoly) for v in b_values)
    for a in a_values:
        row = p.substitute(x, a)
        if formal or isinstance(a, MPoly):
            seen.update(row.substitute(y, b) for b in b_values)
        else:
            seen.update(row.evaluate({y: b}) for b in b_values)
    return seen


def _chunks(items: list[Element], count: int) -> list[list[Element]]:
    size = -(-len(items) // count)
    return [items[i:i + size] for i in range(0, len(items), size)]


def image_size(
    p: MPoly,
    a_set: Iterable[Element],
    b_set: Iterable[Element],
    settings: Settings | None = None,
) -> int:
    """
    |{P(a, b) : a in A, b in B}| with exact-value equality.

    Integer inputs take a fast path over plain ints (coefficients scaled to a common
    denominator); rationals and formal elements are evaluated exactly through ``MPoly``.
    With ``workers > 1`` the rows of A are split across a thread pool and the partial
    value sets are merged.

    Raises:
        PreconditionError: if A or B is empty
        GuardError: if |A|*|B| exceeds ``max_evaluations``
        ShapeError: if P has more than two variables or shares a name with a generator
    """
    settings = settings or Settings()
    a_values = list(dict.fromkeys(a_set))
    b_values = list(dict.fromkeys(b_set))
    if not a_values or not b_values:
        raise PreconditionError("image of an empty set", requirement="A, B non-empty",
                                operation="image_size")
    _check_evaluations(len(a_values) * len(b_values), settings, "image_size")
    x, y = _roles(p)
    formal_vars = set().union(*(v.support_vars() for v in a_values + b_values if isinstance(v, MPoly)))
    clash = sorted(formal_vars & p.support_vars())
    if clash:
        raise shape_error(
            f"witness generators {clash} are also variables of {p}",
            expected_shape="P in variables disjoint from the generators",
            actual_variables=sorted(p.support_vars()),
            operation="image_size",
        )

    integral = all(_is_integral(v) for v in a_values + b_values)
    if integral and not p.is_zero():
        grid, _ = _integer_grid(p, x, y)
        a_ints = [int(v) for v in a_values]
        b_ints = [int(v) for v in b_values]

        def work(chunk: list[Any]) -> set[Any]:
            return _integer_rows(grid, chunk, b_ints)

        parts = _run(work, a_ints, settings.workers)
    else:
        def work_exact(chunk: list[Any]) -> set[Any]:
            return _exact_rows(p, x, y, chunk, b_values)

        parts = _run(work_exact, a_values, settings.workers)

    image: set[Any] = set().union(*parts)
    logger.debug("image of %s on %dx%d points: %d values", p, len(a_values), len(b_values), len(image))
    return len(image)


def _is_integral(value: Element) -> bool:
    if isinstance(value, MPoly):
        return False
    return as_rat(value).denominator == 1


def _run(work: Callable[[list[Any]], set[Any]], items: list[Any], workers: int) -> list[set[Any]]:
    if workers <= 1 or len(items) < 2:
        return [work(items)]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(work, _chunks(items, workers)))


# =============================================================================
# SERIES
# =============================================================================

def fitted_exponent(image: int, n: int, precision: int) -> Decimal:
    """log(image)/log(n) rounded half-even to ``precision`` decimal places."""
    if n < 2:
        raise PreconditionError(f"exponent undefined for N = {n}", requirement="N >= 2",
                                operation="fitted_exponent")
    with localcontext() as ctx:
        ctx.prec = 40
        ratio = Decimal(image).ln() / Decimal(n).ln()
        return ratio.quantize(Decimal(1).scaleb(-precision), rounding=ROUND_HALF_EVEN)


@dataclass(frozen=True)
class ExpansionRow:
    """One measured point of a growth profile."""
    set_size: int
    image_size: int
    exponent: Decimal

    def to_dict(self) -> ExpansionRowDict:
        return {"N": self.set_size, "image_size": self.image_size, "exponent": str(self.exponent)}


@dataclass(frozen=True)
class ExpansionSeries:
    polynomial: MPoly
    family: WitnessFamily
    rows: tuple[ExpansionRow, ...] = field(default_factory=tuple)
    csv_path: Path | None = None

    @property
    def final_exponent(self) -> Decimal | None:
        return self.rows[-1].exponent if self.rows else None

    def to_dict(self) -> ExpansionSummaryDict:
        final = self.final_exponent
        return {
            "polynomial": str(self.polynomial),
            "family": self.family.value,
            "rows": [row.to_dict() for row in self.rows],
            "final_exponent": str(final) if final is not None else None,
            "csv_path": str(self.csv_path) if self.csv_path is not None else None,
        }


def family_set(
    family: WitnessFamily,
    size: int,
    settings: Settings,
    params: WitnessParams | None = None,
) -> list[Element]:
    """The test set of one row: an N-term progression or B_r^d with r = size."""
    if family is WitnessFamily.AP:
        return list(ap_set(settings.ap_start, settings.ap_step, size))
    if family is WitnessFamily.GP:
        return list(gp_set(settings.gp_start, settings.gp_ratio, size))
    base = params or WitnessParams()
    return witness_B(replace(base, coeff_bound=size), settings).elements()


def expansion_series(
    p: MPoly,
    family: WitnessFamily | str,
    sizes: Sequence[int],
    settings: Settings | None = None,
    params: WitnessParams | None = None,
) -> ExpansionSeries:
    """
    Measure |P(A, A)| on a family of sets, one row per requested size.

    For progressions ``sizes`` are the set sizes N. For the witness family they are
    coefficient bounds r and each row's N is |B_r^d|.

    Raises:
        PreconditionError: if sizes are not strictly ascending
        GuardError: propagated from set construction and evaluation
    """
    settings = settings or Settings()
    family = WitnessFamily(family)
    if not sizes:
        raise PreconditionError("no sizes requested", requirement="sizes non-empty",
                                operation="expansion_series")
    if any(b <= a for a, b in zip(sizes, sizes[1:])):
        raise PreconditionError(
            f"sizes must be strictly ascending: {list(sizes)}",
            requirement="sizes ascending",
            operation="expansion_series",
        )

    rows: list[ExpansionRow] = []
    for size in sizes:
        values = family_set(family, size, settings, params)
        image = image_size(p, values, values, settings)
        row = ExpansionRow(len(values), image, fitted_exponent(image, len(values), settings.precision))
        logger.info("%s %s N=%d: |image|=%d exponent=%s", p, family.value, row.set_size,
                    row.image_size, row.exponent)
        rows.append(row)
    return ExpansionSeries(p, family, tuple(rows))


def write_csv(rows: Iterable[ExpansionRow], path: Path) -> Path:
    """Write ``N,image_size,exponent`` rows."""
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", newline="", encoding="utf-8") as handle:
        writer = csv.DictWriter(handle, fieldnames=CSV_HEADER, lineterminator="\n")
        writer.writeheader()
        for row in rows:
            writer.writerow(dict(row.to_dict()))
    logger.debug("wrote expansion rows to %s", path)
    return path


# =============================================================================
# Z/S GROWTH
# =============================================================================

def default_pairs(params: WitnessParams) -> list[tuple[str, str]]:
    """Every ordered pair drawn from the generators and 1."""
    tokens = [UNIT, *params.symbols]
    return [(a, b) for a in tokens for b in tokens]


def _encodings(params: WitnessParams, multiplier: ExpVec, index: dict[ExpVec, int], base: int) -> list[int]:
    """Base-(2r) integer code of multiplier*s for every s in B; digits stay below the base."""
    monomials = params.monomials()
    weights = [base ** index[ev_mul(ev, multiplier)] for ev in monomials]
    return [
        sum(c * w for c, w in zip(vector, weights))
        for vector in product(range(params.coeff_bound), repeat=len(monomials))
    ]


@dataclass(frozen=True)
class ZkMeasurement:
    s_size: int
    z_size: int
    ratio: Decimal
    bound: Decimal


def zk_measure(
    params: WitnessParams,
    pairs: Sequence[tuple[str, str]] | None = None,
    settings: Settings | None = None,
) -> ZkMeasurement:
    """
    Sizes of S = B_r^d and Z = union of t_i*S + t_j*S over ``pairs``.

    Sums are computed on base-2r digit codes over the monomials of Q_{d+1}; every digit
    of a sum is at most 2r-2, so equal codes are equal elements. ``bound`` is
    log|B_{2r}^{d+1}| / log|B_r^d|, which caps the ratio for pairs from generators and 1.
    """
    settings = settings or Settings()
    _require_formal(params, "zk_ratio")
    pairs = list(pairs) if pairs is not None else default_pairs(params)
    if not pairs:
        raise PreconditionError("no pairs given", requirement="pairs non-empty",
                                operation="zk_ratio")
    s_size = params.expected_size
    _check_set_size(s_size, settings, "zk_ratio")
    _check_evaluations(s_size * s_size * len(pairs), settings, "zk_ratio")

    target = params.widened()
    index = {ev: i for i, ev in enumerate(target.monomials())}
    base = target.coeff_bound
    codes: dict[str, list[int]] = {}
    for token in {t for pair in pairs for t in pair}:
        codes[token] = _encodings(params, _multiplier(token, params, "zk_ratio"), index, base)

    z: set[int] = set()
    for left, right in pairs:
        right_codes = codes[right]
        for a in codes[left]:
            z.update(a + b for b in right_codes)

    with localcontext() as ctx:
        ctx.prec = 40
        log_s = Decimal(s_size).ln()
        ratio = Decimal(len(z)).ln() / log_s
        bound = Decimal(target.expected_size).ln() / log_s
    quantum = Decimal(1).scaleb(-settings.precision)
    measurement = ZkMeasurement(
        s_size,
        len(z),
        ratio.quantize(quantum, rounding=ROUND_HALF_EVEN),
        bound.quantize(quantum, rounding=ROUND_HALF_EVEN),
    )
    logger.debug("zk %s: |S|=%d |Z|=%d", params, s_size, len(z))
    return measurement


def zk_ratio(
    params: WitnessParams,
    pairs: Sequence[tuple[str, str]] | None = None,
    settings: Settings | None = None,
) -> Decimal:
    """log|Z| / log|S| at the given parameters."""
    return zk_measure(params, pairs, settings).ratio
