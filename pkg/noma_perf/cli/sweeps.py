"""Parameter sweeps and the figure presets built on them."""
import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Optional, Tuple

import numpy as np

from analytic.asymptotic import (
    asymptotic_outage_high_snr, asymptotic_outage_large_D
)
from analytic.goodput import goodput
from analytic.outage import avg_outage
from analytic.results import GoodputMethod, OutageQuery
from core.allocation import build_plan
from core.channel import stats_for
from core.exceptions import ConsistencyFault, NomaError, ParameterDomainError
from montecarlo.engine import DEFAULT_BLOCK, simulate

from .config import db_to_linear

logger = logging.getLogger(__name__)

EXACT = 'analytic-exact'
ASYMPTOTIC_HIGH = 'analytic-asymptotic-high'
ASYMPTOTIC_LOW = 'analytic-asymptotic-low'
MONTECARLO = 'montecarlo'
ENGINES = (EXACT, ASYMPTOTIC_HIGH, ASYMPTOTIC_LOW, MONTECARLO)

AXES = ('snr_db', 'radius', 'corr_coeff')
GOODPUT = 'goodput'

OUTAGE_FORMS = {
    EXACT: avg_outage,
    ASYMPTOTIC_HIGH: asymptotic_outage_high_snr,
    ASYMPTOTIC_LOW: asymptotic_outage_large_D,
}
GOODPUT_FORMS = {
    EXACT: GoodputMethod.EXACT,
    ASYMPTOTIC_HIGH: GoodputMethod.ASYMPTOTIC_SMALL_D,
    ASYMPTOTIC_LOW: GoodputMethod.ASYMPTOTIC_LARGE_D,
}


@dataclass(frozen=True)
class SweepSpec:
    axis: str
    grid: Tuple[float, ...]
    queries: Tuple
    engines: Tuple[str, ...]
    mc_trials: int = 100_000
    seed: int = 42

    def __post_init__(self):
        if self.axis not in AXES:
            raise ParameterDomainError(f'unknown axis {self.axis!r}')
        grid = tuple(float(value) for value in self.grid)
        if not grid:
            raise ParameterDomainError('grid must not be empty')
        if any(b <= a for a, b in zip(grid, grid[1:])):
            raise ParameterDomainError('grid must be strictly increasing')
        object.__setattr__(self, 'grid', grid)

        engines = tuple(self.engines)
        if not engines:
            raise ParameterDomainError('at least one engine is needed')
        unknown = set(engines) - set(ENGINES)
        if unknown:
            raise ParameterDomainError(f'unknown engines {sorted(unknown)}')
        # rows follow the canonical engine order
        object.__setattr__(
            self, 'engines', tuple(e for e in ENGINES if e in engines)
        )

        queries = []
        for query in self.queries:
            if query == GOODPUT:
                queries.append(GOODPUT)
                continue
            stream, user_order = (int(v) for v in query)
            if stream < 1 or user_order < 1:
                raise ParameterDomainError(f'bad query {query!r}')
            queries.append((stream, user_order))
        if not queries:
            raise ParameterDomainError('at least one query is needed')
        outages = sorted(set(q for q in queries if q != GOODPUT))
        tail = [GOODPUT] if GOODPUT in queries else []
        object.__setattr__(self, 'queries', tuple(outages + tail))
        if self.mc_trials < 1:
            raise ParameterDomainError('mc_trials must be >= 1')
        if not 0 <= self.seed < 2 ** 64:
            raise ParameterDomainError('seed must be an unsigned 64-bit value')


@dataclass(frozen=True)
class ResultRow:
    axis: str
    axis_value: float
    engine: str
    stream: Optional[int]
    user_order: Optional[int]
    value: Optional[float]
    ci_lo: Optional[float] = None
    ci_hi: Optional[float] = None
    err_est: Optional[float] = None

    def __post_init__(self):
        has_ci = self.ci_lo is not None and self.ci_hi is not None
        if self.value is not None and has_ci != (self.engine == MONTECARLO):
            raise ConsistencyFault(
                'confidence bounds belong to Monte Carlo rows only'
            )

    @property
    def is_error(self):
        return self.value is None


def apply_axis(cfg, axis, value):
    if axis == 'snr_db':
        return cfg.replace(avg_snr=db_to_linear(value))
    if axis == 'radius':
        return cfg.replace(radius=value)
    return cfg.replace(corr_coeff=value)


def _address(query):
    return (None, None) if query == GOODPUT else query


def _analytic_row(spec, value, engine, query, cfg, stats, plan):
    stream, user_order = _address(query)
    if query == GOODPUT:
        result = goodput(cfg, stats, plan, GOODPUT_FORMS[engine])
    else:
        q = OutageQuery(stream, user_order, cfg, stats, plan)
        result = OUTAGE_FORMS[engine](q)
    if result.regime_note:
        logger.info('%s=%s %s: %s', spec.axis, value, engine,
                    result.regime_note)
    return ResultRow(
        spec.axis, value, engine, stream, user_order,
        value=result.value, err_est=result.err_est,
    )


def _montecarlo_row(spec, value, query, tally):
    stream, user_order = _address(query)
    if query == GOODPUT:
        estimate = tally.goodput()
    else:
        estimate = tally.outage(stream, user_order)
    return ResultRow(
        spec.axis, value, MONTECARLO, stream, user_order,
        value=estimate.mean, ci_lo=estimate.ci_lo, ci_hi=estimate.ci_hi,
        err_est=estimate.half_width,
    )


def _error_row(spec, value, engine, query, exc):
    logger.warning(
        '%s=%s engine %s query %s failed: %s',
        spec.axis, value, engine, query, exc,
    )
    stream, user_order = _address(query)
    return ResultRow(spec.axis, value, engine, stream, user_order, None)


def _check_query(query, cfg):
    if query == GOODPUT:
        return
    stream, user_order = query
    if stream > cfg.n_streams or user_order > cfg.group_cap:
        raise ParameterDomainError(
            f'(m, k) = ({stream}, {user_order}) outside the system'
        )


def evaluate_point(spec, cfg, value, threads=1, block_size=DEFAULT_BLOCK):
    """Rows of one axis value, ordered by engine then query."""
    rows = []
    try:
        point = apply_axis(cfg, spec.axis, value)
        stats, plan = stats_for(point), build_plan(point)
    except NomaError as exc:
        for engine in spec.engines:
            for query in spec.queries:
                rows.append(_error_row(spec, value, engine, query, exc))
        return rows

    for engine in spec.engines:
        tally = None
        if engine == MONTECARLO:
            try:
                tally = simulate(
                    point, stats, plan, spec.mc_trials, spec.seed,
                    threads=threads, block_size=block_size,
                )
            except ConsistencyFault:
                raise
            except NomaError as exc:
                rows.extend(
                    _error_row(spec, value, engine, query, exc)
                    for query in spec.queries
                )
                continue
        for query in spec.queries:
            try:
                _check_query(query, point)
                if tally is not None:
                    rows.append(_montecarlo_row(spec, value, query, tally))
                else:
                    rows.append(_analytic_row(
                        spec, value, engine, query, point, stats, plan,
                    ))
            except ConsistencyFault:
                raise
            except NomaError as exc:
                rows.append(_error_row(spec, value, engine, query, exc))
    return rows


def run_sweep(spec, cfg, threads=1, block_size=DEFAULT_BLOCK):
    """Table of rows for every (axis value, engine, query).

    Axis points run in parallel; rows come back in grid order.
    """
    logger.info(
        'sweep over %s: %d points, engines %s',
        spec.axis, len(spec.grid), ', '.join(spec.engines),
    )
    if threads <= 1 or len(spec.grid) == 1:
        parts = [
            evaluate_point(spec, cfg, value, threads, block_size)
            for value in spec.grid
        ]
    else:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            parts = list(pool.map(
                lambda value: evaluate_point(
                    spec, cfg, value, 1, block_size,
                ),
                spec.grid,
            ))
    return [row for part in parts for row in part]


def _grid(start, stop, step):
    count = int(round((stop - start) / step)) + 1
    return tuple(float(v) for v in np.round(
        start + step * np.arange(count), 10
    ))


def figure_spec(name, cfg, mc_trials, seed):
    """Sweep behind one of the reproduced figures."""
    outage_queries = tuple((1, k) for k in range(1, cfg.group_cap + 1))
    presets = {
        'fig1': ('snr_db', _grid(30, 80, 5), outage_queries,
                 (EXACT, ASYMPTOTIC_HIGH, MONTECARLO)),
        'fig2': ('snr_db', _grid(30, 80, 5), (GOODPUT,),
                 (EXACT, ASYMPTOTIC_HIGH, MONTECARLO)),
        'fig3': ('radius', _grid(5, 200, 5), (GOODPUT,),
                 (EXACT, ASYMPTOTIC_HIGH, ASYMPTOTIC_LOW, MONTECARLO)),
        'fig4': ('corr_coeff', _grid(0, 0.9, 0.1), (GOODPUT,),
                 (EXACT, MONTECARLO)),
    }
    if name not in presets:
        raise ParameterDomainError(f'unknown figure {name!r}')
    axis, grid, queries, engines = presets[name]
    return SweepSpec(
        axis=axis, grid=grid, queries=queries, engines=engines,
        mc_trials=mc_trials, seed=seed,
    )
