"""Points of the affine Grassmannian of PGL_{n+1} and their relative positions."""

from __future__ import annotations

from dataclasses import dataclass, field

from . import matrix as mx
from .matrix import SingularMatrixError
from .series import TruncPoly
from .typea import Coweight, dualize_w0


@dataclass(eq=False)
class GrPoint:
    """Coset ``m * G(O)`` in PGL_{n+1}(K)/PGL_{n+1}(O).

    Representatives are far from unique, so ``==`` is identity; use
    :func:`coset_equal`.
    """

    matrix: tuple

    def __post_init__(self):
        self.matrix = mx.as_matrix(self.matrix)
        if any(len(r) != len(self.matrix) for r in self.matrix):
            raise ValueError("GrPoint needs a square matrix")

    @property
    def n(self) -> int:
        return len(self.matrix) - 1

    def __str__(self):
        return mx.format_matrix(self.matrix)


def base_point(n: int) -> GrPoint:
    return GrPoint(mx.identity(n + 1))


def torus_point(v: Coweight) -> GrPoint:
    return GrPoint(mx.torus(v.vector))


def _eliminate(rows, K):
    """Smith exponents of ``rows`` (entries TruncPoly mod t^K), or None if stuck."""
    found = []
    while rows:
        best = None
        for r, row in enumerate(rows):
            for c, e in enumerate(row):
                v = e.valuation
                if v < K and (best is None or v < best[0]):
                    best = (v, r, c)
                    if v == 0:
                        break
            if best and best[0] == 0:
                break
        if best is None:
            return None
        a, r, c = best
        found.append(a)
        prow = rows[r]
        unit_inv = prow[c].shift_down(a).unit_inverse()
        reduced_prow = [e.shift_down(a) for e in prow]
        new_rows = []
        for i, row in enumerate(rows):
            if i == r:
                continue
            if row[c].is_zero():
                new_rows.append([e for j, e in enumerate(row) if j != c])
                continue
            f = row[c].shift_down(a) * unit_inv
            new_rows.append(
                [
                    e - (f * reduced_prow[j]).shift_up(a, K) if not prow[j].is_zero() else e
                    for j, e in enumerate(row)
                    if j != c
                ]
            )
        rows = new_rows
    return found


def smith_invariants(m) -> tuple:
    """Exponents a_1 >= ... >= a_{n+1} with m = u diag(t^a) u' for u, u' in GL(O).

    Minimal-valuation pivoting over Q[t]/(t^K); K grows until every pivot
    is found below t^K, capped by a degree bound on val(det).
    """
    m = mx.as_matrix(m)
    entries = [e for row in m for e in row if e]
    if not entries:
        raise SingularMatrixError("zero matrix")
    shift = min(e.valuation for e in entries)
    row_deg = []
    for row in m:
        nz = [e for e in row if e]
        if not nz:
            raise SingularMatrixError("zero row")
        row_deg.append(max(e.degree for e in nz) - shift)
    bound = sum(row_deg)
    K = min(bound + 1, 8)
    while True:
        rows = [[TruncPoly.from_laurent(e.shift(-shift), K) for e in row] for row in m]
        found = _eliminate(rows, K)
        if found is not None:
            return tuple(sorted((a + shift for a in found), reverse=True))
        if K > bound:
            raise SingularMatrixError("matrix is singular")
        K = min(2 * K, bound + 1)


def _normalized(inv: tuple) -> tuple:
    low = min(inv)
    return tuple(a - low for a in inv)


def relative_position(L1: GrPoint, L2: GrPoint) -> Coweight:
    """d(L1, L2): invariant factors of L1^-1 L2, centrally normalized."""
    q = mx.mul(mx.inverse_up_to_scalar(L1.matrix), L2.matrix)
    inv = smith_invariants(q)
    return Coweight(len(inv) - 1, inv)


def position_from_base(L: GrPoint) -> Coweight:
    """d([0], L)."""
    inv = smith_invariants(L.matrix)
    return Coweight(len(inv) - 1, inv)


def coset_equal(L1: GrPoint, L2: GrPoint) -> bool:
    q = mx.mul(mx.inverse_up_to_scalar(L1.matrix), L2.matrix)
    inv = smith_invariants(q)
    return not any(_normalized(inv))


@dataclass(eq=False)
class ConvolutionTriple:
    """(L1, L2, L3 = [0]) with target positions (lam, mu, nu).

    ``middle_factor`` optionally records L2 = g * t^{nu_star} with g in G(O),
    which the orbit-dimension and disjointness code require.
    """

    L1: GrPoint
    L2: GrPoint
    L3: GrPoint
    lam: Coweight
    mu: Coweight
    nu: Coweight
    middle_factor: tuple | None = None
    label: str = ""
    beta: object = None
    N: int | None = None

    @property
    def n(self) -> int:
        return self.lam.n


@dataclass
class MembershipReport:
    ok: bool
    distances: tuple
    expected: tuple = field(default_factory=tuple)


def verify_convolution_triple(tr: ConvolutionTriple) -> MembershipReport:
    if not mx.is_identity(tr.L3.matrix):
        raise ValueError("third point of a cyclic triple must be the base point")
    d1 = position_from_base(tr.L1)
    d2 = relative_position(tr.L1, tr.L2)
    d3 = dualize_w0(position_from_base(tr.L2))
    expected = (tr.lam, tr.mu, tr.nu)
    got = (d1, d2, d3)
    return MembershipReport(got == expected, got, expected)
