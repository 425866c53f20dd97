''' delta heat maps over the (n, m) grid of a lattice

    Rows m are computed independently, in worker processes when jobs > 1.
    The constant is refined until every cell is decided or MAX_BITS is reached.
'''
import logging
from concurrent.futures import ProcessPoolExecutor, as_completed
from fractions import Fraction

import mpmath
import pandas as pd

from cmfield.cf import Sentinel, delta_measure, format_delta
from cmfield.config import config
from cmfield.exact import decimal_digits
from cmfield.lattice import Lattice

logger = logging.getLogger(__name__)

COLUMNS = ["n", "m", "P_digits", "Q_digits", "delta"]


def _row_cells(lattice, m, N):
    prefix = lattice.column_prefix(m)
    return [(n, *(prefix @ v)) for n, v in enumerate(lattice.row(m, N)) if n >= 1]


def _row_worker(pair, m, N):
    return m, _row_cells(Lattice(pair), m, N)


def compute_rows(lattice, N, M, jobs=None):
    ''' {m: [(n, P, Q), ...]} for 1 <= n <= N, 1 <= m <= M '''
    jobs = jobs or config['JOBS']
    rows = {}
    if jobs <= 1:
        for m in range(1, M + 1):
            rows[m] = _row_cells(lattice, m, N)
        return rows
    with ProcessPoolExecutor(max_workers=jobs) as ex:
        futures = {ex.submit(_row_worker, lattice.pair, m, N): m for m in range(1, M + 1)}
        for fut in as_completed(futures):
            m, cells = fut.result()
            rows[m] = cells
    return rows


class Heatmap():
    ''' delta(n, m) = -1 - ln|L - P/Q| / ln(reduced Q) on an N x M grid '''

    def __init__(self, lattice, N, M, L, jobs=None):
        self.lattice = lattice
        self.N = N
        self.M = M
        self.L = L
        self.jobs = jobs
        self._rows = None
        self._cells = None
        self.error_log = []

    @property
    def rows(self):
        if self._rows is None:
            self._rows = compute_rows(self.lattice, self.N, self.M, self.jobs)
        return self._rows

    @property
    def cells(self):
        if self._cells is None:
            self._cells = self._evaluate()
        return self._cells

    def _evaluate(self):
        cells = {}
        max_bits = max((abs(int(Fraction(Q).numerator)).bit_length()
                        for cells_m in self.rows.values() for _, _, Q in cells_m), default=1)
        bits = max(config['CONST_BITS'], 4 * max_bits)
        L = self.L.refine(bits)
        pending = [(n, m, P, Q) for m, cells_m in sorted(self.rows.items()) for n, P, Q in cells_m]
        while True:
            undecided = []
            for n, m, P, Q in pending:
                if Q == 0:
                    cells[(n, m)] = (P, Q, Sentinel.UNDEF)
                    continue
                delta = delta_measure(P, Q, L)
                cells[(n, m)] = (P, Q, delta)
                if delta is Sentinel.UNDET:
                    undecided.append((n, m, P, Q))
            if not undecided or L.source != "builtin" or bits >= config['MAX_BITS']:
                break
            bits = min(bits * 4, config['MAX_BITS'])
            logger.info("%d undecided cells, refining %s to %d bits", len(undecided), L.name, bits)
            L = self.L.refine(bits)
            pending = undecided
        if undecided:
            self.error_log.append("%d cells undecided at %d bits" % (len(undecided), bits))
        self.L = L
        return cells

    def delta(self, n, m):
        return self.cells[(n, m)][2]

    def _cell_rows(self):
        for (n, m), (P, Q, delta) in sorted(self.cells.items(), key=lambda kv: (kv[0][1], kv[0][0])):
            yield n, m, decimal_digits(Fraction(P).numerator), decimal_digits(Fraction(Q).numerator), delta

    def to_frame(self):
        data = [[n, m, p_digits, q_digits, format_delta(delta)]
                for n, m, p_digits, q_digits, delta in self._cell_rows()]
        return pd.DataFrame(data, columns=COLUMNS)

    def row_summary(self, dps=30):
        ''' last value on every row and its distance to L, the same limit on all rows shows up here '''
        data = []
        with mpmath.workdps(dps):
            target = mpmath.mpf(self.L.value.numerator) / self.L.value.denominator
            for m in range(1, self.M + 1):
                P, Q, _ = self.cells[(self.N, m)]
                if Q == 0:
                    continue
                value = Fraction(P, Q)
                approx = mpmath.mpf(value.numerator) / value.denominator
                data.append([m, mpmath.nstr(approx, 20), mpmath.nstr(abs(approx - target), 5)])
        return pd.DataFrame(data, columns=["m", "value", "distance"])

    def to_document(self, definition=None):
        cap = config['DELTA_CAP']
        cells = []
        for n, m, p_digits, q_digits, delta in self._cell_rows():
            if delta is Sentinel.INF:
                value = cap
            elif isinstance(delta, Sentinel):
                value = None
            else:
                value = delta
            cells.append({"n": n, "m": m, "P_digits": p_digits, "Q_digits": q_digits,
                          "delta": format_delta(delta), "delta_value": value})
        return {"field": definition.to_dict() if definition is not None else {"name": self.lattice.name},
                "constant": self.L.metadata(),
                "grid": {"N": self.N, "M": self.M},
                "cells": cells,
                "rows": [{"m": int(r["m"]), "value": r["value"], "distance": r["distance"]}
                         for r in self.row_summary().to_dict(orient="records")]}
