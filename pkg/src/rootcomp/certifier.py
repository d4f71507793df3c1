"""Certify that G(O).xi and G(O).xi~ are disjoint.

If xi~ = g.xi then g lies in G(O) n t^lam G(O) t^-lam and
h = x~^-1 g x lies in t^nu* G(O) t^-nu*. Both give valuation lower bounds
on entries of g; bounds are pushed through h until the determinant of g
is forced into tO, contradicting invertibility.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from itertools import permutations

import numpy as np
from scipy.optimize import linear_sum_assignment

from . import matrix as mx
from .grassmannian import ConvolutionTriple
from .series import LaurentPoly
from .typea import Coweight, PositiveRoot, pairing

UNIT_DET_NOTE = (
    "intertwiner g in PGL(O) lifted to GL(O) with unit determinant; "
    "det bound >= 1 contradicts invertibility"
)


class PreconditionMismatch(ValueError):
    pass


@dataclass
class ValBoundMatrix:
    bounds: list
    steps: list = field(default_factory=list)

    @property
    def size(self) -> int:
        return len(self.bounds)

    def copy(self) -> ValBoundMatrix:
        return ValBoundMatrix([list(r) for r in self.bounds], list(self.steps))

    def __getitem__(self, ij):
        i, j = ij
        return self.bounds[i][j]

    def raise_to(self, i: int, j: int, value: int, reason) -> bool:
        old = self.bounds[i][j]
        if value <= old:
            return False
        self.bounds[i][j] = value
        self.steps.append({"entry": [i + 1, j + 1], "old": old, "new": value, "forced_by": reason})
        return True


def init_bounds(lam: Coweight) -> ValBoundMatrix:
    v = lam.vector
    size = len(v)
    return ValBoundMatrix([[max(0, v[i] - v[j]) if i < j else 0 for j in range(size)] for i in range(size)])


@dataclass(frozen=True)
class SymbolicTerm:
    source: tuple  # 0-based (a, b) position in g
    coefficient: LaurentPoly

    @property
    def exponent(self) -> int:
        return self.coefficient.valuation

    @property
    def sign(self) -> int:
        lead = self.coefficient.coeff(self.exponent)
        return 1 if lead > 0 else -1


@dataclass(frozen=True)
class SymbolicEntry:
    terms: tuple

    def as_dict(self) -> dict:
        return {t.source: t.coefficient for t in self.terms}

    def evaluate(self, g) -> LaurentPoly:
        out = LaurentPoly.const(0)
        for t in self.terms:
            a, b = t.source
            out = out + t.coefficient * g[a][b]
        return out


def _is_unipotent(m) -> bool:
    size = len(m)
    for i in range(size):
        for j in range(size):
            e = m[i][j]
            if i == j and e != LaurentPoly.const(1):
                return False
            if i > j and e:
                return False
            if i < j and e and not e.is_monomial():
                return False
    return True


def symbolic_conjugate(xt, x) -> tuple:
    """h = xt^-1 g x for indeterminate g, as a matrix of SymbolicEntry."""
    if not (_is_unipotent(xt) and _is_unipotent(x)):
        raise ValueError("symbolic_conjugate needs upper unipotent matrices with monomial entries")
    xt_inv = mx.inverse(xt)
    size = len(x)
    out = []
    for i in range(size):
        row = []
        for j in range(size):
            terms = []
            for a in range(size):
                left = xt_inv[i][a]
                if not left:
                    continue
                for b in range(size):
                    right = x[b][j]
                    if right:
                        c = left * right
                        if c:
                            terms.append(SymbolicTerm((a, b), c))
            row.append(SymbolicEntry(tuple(terms)))
        out.append(tuple(row))
    return tuple(out)


def four_case_h(lam: Coweight, b: PositiveRoot, N: int, i: int, j: int) -> dict:
    """h_ij = g_ij + g_ip b_j - g_{q+1,j} c_i - g_{q+1,p} c_i b_j as {0-based source: coeff}.

    b_j = t^{<e_pj, lam> - N} for p < j <= q+1, c_i = t^{<e_{i,q+1}, lam> - N}
    for p <= i <= q, both zero otherwise. Indices are 1-based.
    """
    p, q, n = b.p, b.q, b.n

    def bj(j):
        return LaurentPoly.monomial(pairing(PositiveRoot(n, p, j), lam) - N) if p < j <= q + 1 else None

    def ci(i):
        return LaurentPoly.monomial(pairing(PositiveRoot(n, i, q + 1), lam) - N) if p <= i <= q else None

    out = {}

    def put(src, c):
        key = (src[0] - 1, src[1] - 1)
        v = out.get(key, LaurentPoly.const(0)) + c
        if v:
            out[key] = v
        else:
            out.pop(key, None)

    put((i, j), LaurentPoly.const(1))
    if bj(j) is not None:
        put((i, p), bj(j))
    if ci(i) is not None:
        put((q + 1, j), -ci(i))
        if bj(j) is not None:
            put((q + 1, p), -(ci(i) * bj(j)))
    return out


def requirements(nu_star: Coweight) -> list:
    v = nu_star.vector
    return [[max(0, a - b) for b in v] for a in v]


def propagate_bounds(bm: ValBoundMatrix, sym, target: Coweight | None, rule: str = "all-but-one",
                     max_rounds: int = 10_000, required: list | None = None) -> ValBoundMatrix:
    """Raise bounds on g from val(h_ij) >= max(0, <e_ij, target>) until nothing changes.

    ``rule="all-but-one"``: when every other term already meets the
    requirement, the remaining term is raised to it; ties propagate nothing.
    ``rule="ultrametric"``: a term equals h minus the other terms, so its
    valuation is at least min(requirement, the other terms' bounds).
    This subsumes the first rule.

    ``required`` overrides the requirement matrix derived from ``target``.
    """
    if rule not in ("ultrametric", "all-but-one"):
        raise ValueError(f"unknown rule {rule!r}")
    bm = bm.copy()
    req = required if required is not None else requirements(target)
    size = bm.size
    for _ in range(max_rounds):
        changed = False
        for i in range(size):
            for j in range(size):
                r = req[i][j]
                terms = sym[i][j].terms
                if r <= 0 or not terms:
                    continue
                vals = [bm[t.source] + t.exponent for t in terms]
                for k, t in enumerate(terms):
                    others = vals[:k] + vals[k + 1:]
                    low = min(others, default=math.inf)
                    if rule == "all-but-one":
                        if low < r:
                            continue
                        floor = r
                    else:
                        floor = min(r, low)
                    a, b = t.source
                    if bm.raise_to(a, b, floor - t.exponent, [i + 1, j + 1]):
                        changed = True
                        vals[k] = bm[t.source] + t.exponent
        if not changed:
            return bm
    raise RuntimeError("bound propagation did not reach a fixpoint")


def det_min_valuation(bm: ValBoundMatrix, with_permutation: bool = False):
    """min over permutations pi of sum_i bounds[i][pi(i)] (a lower bound for val det g)."""
    cost = np.array(bm.bounds, dtype=np.int64)
    rows, cols = linear_sum_assignment(cost)
    value = int(cost[rows, cols].sum())
    if with_permutation:
        return value, [int(c) + 1 for c in cols]
    return value


def det_min_valuation_bruteforce(bm: ValBoundMatrix) -> int:
    size = bm.size
    return min(sum(bm.bounds[i][p[i]] for i in range(size)) for p in permutations(range(size)))


@dataclass
class Certificate:
    verdict: str  # "Disjoint" or "Unknown"
    det_bound: int
    bounds: list
    steps: list
    permutation: list
    rule: str = "all-but-one"
    note: str = UNIT_DET_NOTE

    @property
    def disjoint(self) -> bool:
        return self.verdict == "Disjoint"

    def as_record(self) -> dict:
        return {
            "verdict": self.verdict,
            "det_bound": self.det_bound,
            "bounds": self.bounds,
            "steps": self.steps,
            "permutation": self.permutation,
            "rule": self.rule,
            "note": self.note,
        }


def certify_disjoint(tr1: ConvolutionTriple, tr2: ConvolutionTriple, rule: str = "auto") -> Certificate:
    """Disjoint when every g with g.tr1 = tr2 would have det in tO; otherwise Unknown.

    ``rule="auto"`` tries the all-but-one rule and falls back to the
    ultrametric rule when that is inconclusive.
    """
    if tr1.middle_factor is None or tr2.middle_factor is None:
        raise PreconditionMismatch("middle points must be given as u * t^nu_star")
    (x, nu1), (xt, nu2) = tr1.middle_factor, tr2.middle_factor
    if tr1.lam != tr2.lam or nu1 != nu2:
        raise PreconditionMismatch("triples must share lambda and nu_star")
    sym = symbolic_conjugate(xt, x)
    rules = ["all-but-one", "ultrametric"] if rule == "auto" else [rule]
    for r in rules:
        bm = propagate_bounds(init_bounds(tr1.lam), sym, nu1, rule=r)
        value, perm = det_min_valuation(bm, with_permutation=True)
        if value >= 1:
            break
    verdict = "Disjoint" if value >= 1 else "Unknown"
    return Certificate(verdict, value, [list(row) for row in bm.bounds], bm.steps, perm, r)
