''' Computer search for conjugate pairs and for completions of a partial field

    For a fixed f both conjugacy conditions are linear in the coefficients of fbar:
    the linear condition directly, the quadratic one because the mixed part of f*fbar
    is linear in fbar. Each f therefore costs one small linear system, screened in
    floating point with numpy and then solved exactly over QQ.
'''
import itertools
import logging
import math
from concurrent.futures import ProcessPoolExecutor, as_completed
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from cmfield.config import config
from cmfield.exact import BiPoly, Mat2, ContractViolation
from cmfield.exact.linalg import nullspace, rank, solve_affine
from cmfield.field import ConjugacyError, validate_pair, is_degenerate
from cmfield.filters import NonZeroBFilter, IntegralBoxFilter, passes_filters

logger = logging.getLogger(__name__)

MODES = ("enumerate_pairs", "complete_MY")

# translations (alpha, beta) with |alpha|, |beta| <= TRANSLATION_RADIUS are identified
TRANSLATION_RADIUS = 2


class SearchSpaceTooLarge(Exception):

    def __init__(self, size, cap):
        super().__init__("search space has %d candidates, the cap is %d (CMF_SEARCH_CAP)" % (size, cap))
        self.size = size
        self.cap = cap


def _monomials(total, deg_x=None, deg_y=None):
    deg_x = total if deg_x is None else deg_x
    deg_y = total if deg_y is None else deg_y
    return [(i, t - i) for t in range(total + 1) for i in range(t, -1, -1)
            if i <= deg_x and t - i <= deg_y]


@dataclass(frozen=True)
class SearchSpace():
    deg_x: int
    deg_y: int
    coeff_box: int = 1
    mode: str = "enumerate_pairs"
    total_degree: int = None

    def __post_init__(self):
        if self.mode not in MODES:
            raise ContractViolation("search mode must be one of %s" % ", ".join(MODES))
        if min(self.deg_x, self.deg_y, self.coeff_box) < 0:
            raise ContractViolation("degree bounds and coefficient box must be non-negative")

    @classmethod
    def for_degree(cls, degree, box):
        return cls(degree, degree, box)

    @property
    def degree(self):
        if self.total_degree is not None:
            return self.total_degree
        return max(self.deg_x, self.deg_y)

    @property
    def f_monomials(self):
        return _monomials(self.degree, self.deg_x, self.deg_y)

    @property
    def fbar_monomials(self):
        return _monomials(self.degree)

    def size(self):
        if self.mode == "complete_MY":
            return 4 * (self.deg_x + 1) * (self.deg_y + 1)
        return (2 * self.coeff_box + 1) ** len(self.f_monomials)


class _PairSystem():
    ''' the conditions on fbar for a given f, as integer matrices over fixed monomial bases '''

    def __init__(self, space):
        self.box = space.coeff_box
        self.f_monos = space.f_monomials
        self.u_monos = space.fbar_monomials
        lin_index = {m: r for r, m in enumerate(self.u_monos)}
        n_f, n_u = len(self.f_monos), len(self.u_monos)

        # fbar(x+1, y) - fbar(x, y-1) = f(x, y) - f(x+1, y-1)
        self.L = np.zeros((len(lin_index), n_u), dtype=np.int64)
        for k, (p, q) in enumerate(self.u_monos):
            e = BiPoly.monomial(1, p, q)
            for mono, c in (e.shift(1, 0) - e.shift(0, -1)).items():
                self.L[lin_index[mono], k] = int(c)
        self.R = np.zeros((len(lin_index), n_f), dtype=np.int64)
        for t, (i, j) in enumerate(self.f_monos):
            e = BiPoly.monomial(1, i, j)
            for mono, c in (e - e.shift(1, -1)).items():
                self.R[lin_index[mono], t] = int(c)

        mixed = sorted({(i + p, j + q) for i, j in self.f_monos for p, q in self.u_monos
                        if i + p > 0 and j + q > 0})
        mixed_index = {m: r for r, m in enumerate(mixed)}
        self.S = np.zeros((n_f, len(mixed), n_u), dtype=np.int64)
        for t, (i, j) in enumerate(self.f_monos):
            for k, (p, q) in enumerate(self.u_monos):
                if (i + p, j + q) in mixed_index:
                    self.S[t, mixed_index[(i + p, j + q)], k] = 1

    def solve(self, fvec):
        ''' every fbar, integral combinations of the solution space inside the box '''
        A = np.vstack([self.L, np.tensordot(fvec, self.S, axes=1)])
        b = np.concatenate([self.R @ fvec, np.zeros(self.S.shape[1], dtype=np.int64)])
        t = np.linalg.lstsq(A.astype(float), b.astype(float), rcond=None)[0]
        if np.linalg.norm(A @ t - b) > 1e-8 * (1 + np.linalg.norm(b)):
            return []
        solved = solve_affine(A.tolist(), b.tolist(), len(self.u_monos))
        if solved is None:
            return []
        particular, null = solved
        null = [_primitive(v) for v in null]
        out = []
        for combo in itertools.product(range(-self.box, self.box + 1), repeat=len(null)):
            v = [Fraction(p) + sum(c * n[k] for c, n in zip(combo, null)) for k, p in enumerate(particular)]
            out.append(BiPoly(dict(zip(self.u_monos, v))))
        return out


def _primitive(v):
    den = 1
    for c in v:
        den = math.lcm(den, Fraction(c).denominator)
    ints = [int(Fraction(c) * den) for c in v]
    g = math.gcd(*ints) or 1
    return [c // g for c in ints]


def canonical_pair(f, fbar):
    ''' divide out the joint content and make the leading coefficient of f positive '''
    coeffs = [Fraction(c) for poly in (f, fbar) for _, c in poly.items()]
    if not coeffs:
        return f, fbar
    num = math.gcd(*[c.numerator for c in coeffs])
    den = math.lcm(*[c.denominator for c in coeffs])
    scale = Fraction(den, num)
    lead = f.leading_coefficient() if not f.is_zero() else fbar.leading_coefficient()
    if lead < 0:
        scale = -scale
    return f * scale, fbar * scale


def _weight(values):
    return (sum(1 for c in values if c != 0), sum(abs(c) for c in values))


def _pair_weight(pair):
    values = [c for poly in (pair.f, pair.fbar) for _, c in poly.items()]
    return _weight(values) + pair.key()


def _f_vectors(space):
    box = range(-space.coeff_box, space.coeff_box + 1)
    vectors = []
    for vec in itertools.product(box, repeat=len(space.f_monomials)):
        nonzero = [c for c in vec if c != 0]
        # f and -f give the same canonical pair
        if nonzero and nonzero[0] > 0:
            vectors.append(vec)
    return sorted(vectors, key=lambda v: _weight(v) + (v,))


def _scan(space, vectors, filters):
    system = _PairSystem(space)
    found = []
    for vec in vectors:
        f = BiPoly(dict(zip(system.f_monos, vec)))
        for fbar in system.solve(np.array(vec, dtype=np.int64)):
            try:
                pair = validate_pair(f, fbar)
            except ConjugacyError:
                continue
            if not passes_filters(pair, filters):
                continue
            found.append(validate_pair(*canonical_pair(f, fbar)))
    return found


def _deduplicate(pairs):
    unique = {}
    for pair in pairs:
        unique.setdefault(pair.key(), pair)
    seen = set()
    result = []
    for pair in sorted(unique.values(), key=_pair_weight):
        if pair.key() in seen:
            continue
        result.append(pair)
        for alpha, beta in itertools.product(range(-TRANSLATION_RADIUS, TRANSLATION_RADIUS + 1), repeat=2):
            f, fbar = canonical_pair(pair.f.shift(alpha, beta), pair.fbar.shift(alpha, beta))
            seen.add((str(f), str(fbar)))
    return result


def enumerate_pairs(space, filters=None, jobs=None, cap=None):
    ''' canonical conjugate pairs with f in the coefficient box, lightest first '''
    if space.mode != "enumerate_pairs":
        raise ContractViolation("enumerate_pairs needs an enumerate_pairs search space")
    cap = cap or config['SEARCH_CAP']
    size = space.size()
    if size > cap:
        raise SearchSpaceTooLarge(size, cap)
    if filters is None:
        filters = [NonZeroBFilter(), IntegralBoxFilter(space.coeff_box)]
    vectors = _f_vectors(space)
    logger.info("scanning %d polynomials f (space size %d)", len(vectors), size)
    jobs = jobs or config['JOBS']
    if jobs <= 1:
        found = _scan(space, vectors, filters)
    else:
        found = []
        with ProcessPoolExecutor(max_workers=jobs) as ex:
            futures = [ex.submit(_scan, space, vectors[i::jobs], filters) for i in range(jobs)]
            for fut in as_completed(futures):
                found.extend(fut.result())
    pairs = _deduplicate(found)
    stats = degeneracy_stats(pairs)
    logger.info("%d canonical pairs, %d degenerate", stats["pairs"], stats["degenerate"])
    return pairs


def degeneracy_stats(pairs):
    degenerate = sum(1 for p in pairs if is_degenerate(p))
    return {"pairs": len(pairs), "degenerate": degenerate, "non_degenerate": len(pairs) - degenerate}


@dataclass
class CompletionResult():
    ''' solution space of MX(x,y) MY(x+1,y) = MY(x,y) MX(x,y+1) over the unknown coefficients of MY '''
    unknowns: list
    vectors: list

    def matrix(self, vector):
        entries = [{} for _ in range(4)]
        for (e, mono), c in zip(self.unknowns, vector):
            if c != 0:
                entries[e][mono] = c
        return Mat2(*[BiPoly(terms) for terms in entries])

    @property
    def basis(self):
        return [self.matrix(v) for v in self.vectors]

    @property
    def candidates(self):
        return [M for M in self.basis if not BiPoly.coerce(M.det()).is_zero()]

    def __len__(self):
        return len(self.vectors)

    def contains(self, MY):
        ''' exact membership of MY in the solution space '''
        index = {u: k for k, u in enumerate(self.unknowns)}
        v = [0] * len(self.unknowns)
        for e, poly in enumerate(MY.entries()):
            for mono, c in BiPoly.coerce(poly).items():
                if (e, mono) not in index:
                    return False
                v[index[(e, mono)]] = c
        if not any(v):
            return True
        if not self.vectors:
            return False
        return rank(self.vectors + [v]) == rank(self.vectors)


def complete_MY(MX, deg_x, deg_y):
    ''' every MY with deg_x(entries) <= deg_x and deg_y(entries) <= deg_y that conserves with MX '''
    MX = MX.map(BiPoly.coerce)
    MX_up = MX.shift(0, 1)
    unknowns = [(e, (i, j)) for e in range(4) for i in range(deg_x + 1) for j in range(deg_y + 1)]
    columns = []
    for e, (i, j) in unknowns:
        entries = [BiPoly()] * 4
        entries[e] = BiPoly.monomial(1, i, j)
        MY = Mat2(*entries)
        residual = MX @ MY.shift(1, 0) - MY @ MX_up
        columns.append({(r, mono): c for r, poly in enumerate(residual.entries())
                        for mono, c in BiPoly.coerce(poly).items()})
    keys = sorted(set().union(*columns))
    rows = [[col.get(key, 0) for col in columns] for key in keys]
    logger.info("completing MY: %d unknowns, %d equations", len(unknowns), len(rows))
    vectors = nullspace(rows, len(unknowns))
    result = CompletionResult(unknowns, vectors)
    logger.info("solution space of dimension %d, %d invertible basis elements",
                len(result), len(result.candidates))
    return result
