"""Dimensions of diagonal G(O)-orbits via the tangent quotient g(O) / (stabilizer algebra).

The Lie algebra is modelled as gl_{n+1}(O) truncated at t^M. Scalar
matrices lie in every conjugate of gl(O), so they drop out of every
quotient dimension computed here.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from . import matrix as mx
from .grassmannian import ConvolutionTriple
from .linalg import Echelon, nullspace
from .points import build_counterexample_xi, u_matrix
from .series import LaurentPoly, TruncPoly
from .typea import (
    Coweight,
    PositiveRoot,
    check_root_component_conditions,
    coroot_vector,
    pairing,
    positive_roots,
    rho_pairing,
)


class UnstableTruncation(RuntimeError):
    pass


class NotFactored(ValueError):
    pass


# -- coordinates -------------------------------------------------------------


def _var(size: int, M: int, i: int, j: int, k: int) -> int:
    return (i * size + j) * M + k


def _inverse_in_GO(g: tuple, M: int) -> tuple:
    """g^-1 modulo t^M for g in GL(O)."""
    if any(e and e.valuation < 0 for row in g for e in row):
        raise NotFactored("middle factor has negative valuations")
    d = mx.det(g)
    if not d or d.valuation != 0:
        raise NotFactored("middle factor is not invertible over O")
    if d.is_constant():
        return mx.inverse(g)
    dinv = TruncPoly.from_laurent(d, M).unit_inverse().to_laurent()
    adj = mx.adjugate(g)
    return mx.map_entries(adj, lambda e: LaurentPoly.from_dict({k: (e * dinv).coeff(k) for k in range(M)}))


def _rows_for_entry(A, B, i, j, top, M, skip):
    """Coefficient rows t^0..t^{top-1} of (A v B)_{ij} as linear forms in v."""
    size = len(A)
    terms = []
    for a in range(size):
        x = A[i][a]
        if not x:
            continue
        for b in range(size):
            y = B[b][j]
            if y:
                terms.append((a, b, list((x * y).terms())))
    out = []
    for k in range(top):
        row = {}
        for a, b, pr in terms:
            for e, c in pr:
                if e > k:
                    break
                v = _var(size, M, a, b, k - e)
                if v in skip:
                    continue
                nv = row.get(v, 0) + c
                if nv:
                    row[v] = nv
                else:
                    row.pop(v)
        out.append(row)
    return out


def conjugation_rows(A: tuple, B: tuple, thresholds, M: int, skip=frozenset()) -> list:
    """Rows saying coefficient t^k of (A v B)_{ij} vanishes for k < thresholds[i][j].

    A and B have entries of nonnegative valuation. Variables in ``skip``
    (already forced to zero) are left out.
    """
    size = len(A)
    rows = []
    for i in range(size):
        for j in range(size):
            top = min(thresholds[i][j], M)
            if top > 0:
                rows.extend(r for r in _rows_for_entry(A, B, i, j, top, M, skip) if r)
    return rows


def torus_thresholds(v) -> list:
    """val(X_ij) >= v_i - v_j characterises Ad_{t^v} gl(O) inside gl(O)."""
    return [[max(0, a - b) for b in v] for a in v]


def torus_zero_vars(v, M: int) -> set:
    size = len(v)
    th = torus_thresholds(v)
    return {_var(size, M, i, j, k) for i in range(size) for j in range(size) for k in range(min(th[i][j], M))}


@dataclass
class Subspace:
    """Subspace of gl_{n+1}(O)/t^M cut out by linear rows; ``dim`` over Q."""

    n: int
    M: int
    rows: list
    _rank: int | None = field(default=None, repr=False)

    @property
    def ambient_dim(self) -> int:
        return (self.n + 1) ** 2 * self.M

    @property
    def codim(self) -> int:
        if self._rank is None:
            e = Echelon()
            e.extend(self.rows)
            self._rank = e.rank
        return self._rank

    @property
    def dim(self) -> int:
        return self.ambient_dim - self.codim

    def intersect(self, other: Subspace) -> Subspace:
        if (other.n, other.M) != (self.n, self.M):
            raise ValueError("subspaces live in different truncations")
        return Subspace(self.n, self.M, self.rows + other.rows)

    def basis(self) -> list:
        return nullspace(self.rows, range(self.ambient_dim))


def stabilizer_lattice(kind: str, n: int, M: int, lam: Coweight | None = None, g: tuple | None = None,
                       nu_star: Coweight | None = None) -> Subspace:
    """``kind`` is ``"base"`` (all of gl(O)), ``"torus"`` (Ad_{t^lam} gl(O) n gl(O))
    or ``"conjugated"`` (Ad_{g t^nu_star} gl(O) n gl(O), g in G(O))."""
    if kind == "base":
        return Subspace(n, M, [])
    if kind == "torus":
        zero = sorted(torus_zero_vars(lam.vector, M))
        return Subspace(n, M, [{v: 1} for v in zero])
    if kind == "conjugated":
        ginv = _inverse_in_GO(g, M)
        th = torus_thresholds(nu_star.vector)
        return Subspace(n, M, conjugation_rows(ginv, g, th, M))
    raise ValueError(f"unknown stabilizer kind {kind!r}")


# -- closed forms ---------------------------------------------------------------


def closed_form_orbit_dim(lam: Coweight, mu: Coweight, b: PositiveRoot, N: int) -> int:
    rep = check_root_component_conditions(lam, mu, b, N)
    if not rep.ok:
        raise ValueError("root-component conditions fail")
    val = rho_pairing(2 * lam + 2 * mu - N * coroot_vector(b))
    return int(val)


def closed_form_quotient_dim(mu: Coweight, b: PositiveRoot, N: int) -> int:
    """dim V/W = <2 rho, mu> - N <rho, b^v>."""
    return int(2 * rho_pairing(mu) - N * rho_pairing(coroot_vector(b)))


def truncation_bound(lam: Coweight, mu: Coweight, b: PositiveRoot | None, N: int) -> int:
    s = lam + mu
    top = max(pairing(r, s) for r in positive_roots(lam.n))
    return 2 * top + N + 2


# -- case table --------------------------------------------------------------


def classify_entry(i: int, j: int, p: int, q: int) -> str:
    if i >= j:
        return "A"
    inside = p < j <= q + 1
    if i == p:
        return "E" if inside else "C"
    return "D" if inside else "B"


@dataclass(frozen=True)
class CaseEntry:
    case: str
    list_bound: int
    refined_bound: int


def case_valuation_table(lam: Coweight, b: PositiveRoot, N: int) -> dict:
    """Minimal valuations of (x^-1 v x)_{ij} for v in V, before and after phi_1(v) = 0."""
    p, q, n = b.p, b.q, b.n
    table = {}
    for i in range(1, n + 2):
        for j in range(1, n + 2):
            case = classify_entry(i, j, p, q)
            if case == "A":
                table[(i, j)] = CaseEntry("A", 0, 0)
                continue
            e = pairing(PositiveRoot(n, i, j), lam)
            if case == "B":
                lb, rb = e, e
            elif case == "C":
                lb, rb = e - N, e
            elif case == "D":
                lb, rb = (e, e) if i > p else (e - N, e)
            else:
                lb, rb = e - N, e - N
            table[(i, j)] = CaseEntry(case, lb, rb)
    return table


def quotient_dim_from_table(table: dict, lam: Coweight, mu: Coweight, b: PositiveRoot, N: int) -> int:
    """Sum over strictly upper entries of (required valuation in W) - (refined bound in W')."""
    nu_star = lam + mu - N * coroot_vector(b)
    total = 0
    for (i, j), entry in table.items():
        if entry.case == "A":
            continue
        total += pairing(PositiveRoot(b.n, i, j), nu_star) - entry.refined_bound
    return total


# -- orbit dimension -----------------------------------------------------------


@dataclass
class OrbitDimReport:
    dim_linear_algebra: int
    dim_closed_form: int | None
    truncation: int
    stable: bool
    dim_g_over_V: int = 0
    dim_V_over_W: int = 0
    dim_trace_zero: int | None = None

    @property
    def matches(self) -> bool | None:
        if self.dim_closed_form is None:
            return None
        return self.dim_closed_form == self.dim_linear_algebra


def _dims(lam_vec, g, nu_star_vec, M: int, trace_zero: bool):
    size = len(lam_vec)
    zero = torus_zero_vars(lam_vec, M)
    ginv = _inverse_in_GO(g, M)
    rows = conjugation_rows(ginv, g, torus_thresholds(nu_star_vec), M, skip=zero)
    e = Echelon()
    e.extend(rows)
    g_over_V = len(zero)
    total = g_over_V + e.rank
    tz = None
    if trace_zero:
        for k in range(M):
            e.add({_var(size, M, i, i, k): 1 for i in range(size)})
        tz = g_over_V + e.rank - M
    return total, g_over_V, total - g_over_V, tz


def _default_truncation(tr: ConvolutionTriple) -> int:
    return truncation_bound(tr.lam, tr.mu, tr.beta, tr.N or 0)


def orbit_dimension(tr: ConvolutionTriple, M: int | None = None, trace_zero: bool = False,
                    allow_unstable: bool = False) -> OrbitDimReport:
    """dim G(O).xi as dim gl(O)/(V n Ad_{g t^nu*} gl(O)), checked at M and M+1."""
    if tr.middle_factor is None:
        raise NotFactored("middle point must be given as g * t^nu_star")
    g, nu_star = tr.middle_factor
    if M is None:
        M = _default_truncation(tr)
    lam_vec = tr.lam.vector
    first = _dims(lam_vec, g, nu_star.vector, M, trace_zero)
    second = _dims(lam_vec, g, nu_star.vector, M + 1, trace_zero)
    stable = first == second
    if not stable and not allow_unstable:
        raise UnstableTruncation(f"dimensions differ at M={M} and M+1: {first} vs {second}")
    closed = None
    if tr.beta is not None and tr.N is not None:
        closed = closed_form_orbit_dim(tr.lam, tr.mu, tr.beta, tr.N)
    total, gv, vw, tz = first
    return OrbitDimReport(total, closed, M, stable, gv, vw, tz)


# -- the one-parameter family ------------------------------------------------------


@dataclass
class TransversalityReport:
    a: Fraction
    orbit_dim: int
    derivative_tangent: bool
    truncation: int
    stable: bool

    @property
    def family_dim(self) -> int:
        return self.orbit_dim + (0 if self.derivative_tangent else 1)


def derivative_tangent_to_orbit(tr: ConvolutionTriple, X: tuple, M: int) -> bool:
    """Is (0, X.L2, 0) tangent to G(O).tr at tr?

    True iff X lies in V + Ad_{L2} gl(O), i.e. some w in V has
    (g^-1 (X - w) g)_{ij} of valuation >= nu*_i - nu*_j.
    """
    g, nu_star = tr.middle_factor
    size = len(g)
    ginv = _inverse_in_GO(g, M)
    zero = torus_zero_vars(tr.lam.vector, M)
    th = torus_thresholds(nu_star.vector)
    Y = mx.mul_all(ginv, X, g)
    # augmented column placed after every variable
    rhs_col = size * size * M
    e = Echelon()
    for i in range(size):
        for j in range(size):
            top = min(th[i][j], M)
            if top <= 0:
                continue
            for k, row in enumerate(_rows_for_entry(ginv, g, i, j, top, M, zero)):
                c = Y[i][j].coeff(k)
                if c:
                    row[rhs_col] = c
                if not e.is_consistent_with(row, rhs_col):
                    return False
                e.add(row)
    return True


def family_transversality(a, M: int | None = None) -> TransversalityReport:
    tr = build_counterexample_xi(a)
    if M is None:
        M = truncation_bound(tr.lam, tr.mu, PositiveRoot.from_simple_range(2, 1, 2), 2)
    rep = orbit_dimension(tr, M)
    a = Fraction(a)
    du = mx.as_matrix([[0, 0, LaurentPoly.monomial(2)], [0, 0, 0], [0, 0, 0]])
    X = mx.mul(du, mx.inverse(u_matrix(a)))
    tangent = derivative_tangent_to_orbit(tr, X, M)
    tangent_next = derivative_tangent_to_orbit(tr, X, M + 1)
    if tangent != tangent_next:
        raise UnstableTruncation("transversality verdict changes between M and M+1")
    return TransversalityReport(a, rep.dim_linear_algebra, tangent, M, rep.stable)
