"""Explicit elements: root subgroups, the points xi and xi~, sigma, and the family xi(a)."""

from __future__ import annotations

from collections import deque
from fractions import Fraction

from . import matrix as mx
from .grassmannian import ConvolutionTriple, GrPoint, base_point, coset_equal, torus_point
from .series import ONE, ZERO, LaurentPoly
from .typea import (
    Coweight,
    PositiveRoot,
    check_root_component_conditions,
    dualize_w0,
    pairing,
    two_rho_vee,
)


class ConditionsViolated(ValueError):
    pass


def root_element(n: int, i: int, j: int, a) -> tuple:
    """x_{e_i - e_j}(a) = I + a E_{ij} (1-based, i != j)."""
    if i == j or not (1 <= i <= n + 1 and 1 <= j <= n + 1):
        raise ValueError(f"({i},{j}) is not a root of A_{n}")
    return mx.elementary(n + 1, i - 1, j - 1, a)


def chevalley(r: PositiveRoot, a, negative: bool = False) -> tuple:
    """x_r(a), or x_{-r}(a) when ``negative``."""
    if negative:
        return root_element(r.n, r.j, r.i, a)
    return root_element(r.n, r.i, r.j, a)


def commutator(g1, g2) -> tuple:
    """(g1, g2) = g1 g2 g1^-1 g2^-1."""
    return mx.mul_all(g1, g2, mx.inverse(g1), mx.inverse(g2))


def commutator_sign(r1: tuple, r2: tuple):
    """Structure constant for signed roots (i,j), (k,l) in this pinning.

    Returns ``(root, sign)`` with (x_r1(a), x_r2(b)) = x_root(sign*a*b), or
    ``None`` when the sum is not a root (then they commute).
    """
    (i, j), (k, l) = r1, r2
    if j == k and i != l:
        return (i, l), 1
    if i == l and j != k:
        return (k, j), -1
    return None


def s_beta(b: PositiveRoot) -> tuple:
    """Weyl representative x_b(1) x_{-b}(-1) x_b(1)."""
    return mx.mul_all(chevalley(b, 1), chevalley(b, -1, negative=True), chevalley(b, 1))


def torus_identity_sides(b: PositiveRoot, N: int):
    tN = LaurentPoly.monomial(N)
    tmN = LaurentPoly.monomial(-N)
    lhs = mx.torus((-N * c for c in _raw_coroot(b)))
    rhs = mx.mul_all(
        chevalley(b, -tmN),
        chevalley(b, tN, negative=True),
        mx.inverse(s_beta(b)),
        chevalley(b, tmN, negative=True),
    )
    return lhs, rhs


def _raw_coroot(b: PositiveRoot) -> list:
    v = [0] * (b.n + 1)
    v[b.i - 1], v[b.j - 1] = 1, -1
    return v


def torus_identity_defect(b: PositiveRoot, N: int):
    """Diagonal of lhs^-1 rhs when it is a constant diagonal matrix, else ``None``.

    With s_b = x_b(1) x_{-b}(-1) x_b(1) the two sides differ by b^v(-1),
    which lies in T(O).
    """
    lhs, rhs = torus_identity_sides(b, N)
    q = mx.mul(mx.inverse(lhs), rhs)
    size = len(q)
    if any(q[r][c] for r in range(size) for c in range(size) if r != c):
        return None
    if not all(q[r][r].is_constant() and q[r][r] for r in range(size)):
        return None
    return tuple(q[r][r].coeff(0) for r in range(size))


def verify_torus_identity(b: PositiveRoot, N: int) -> bool:
    """t^{-N b^v} = x_b(-t^-N) x_{-b}(t^N) s_b^-1 x_{-b}(t^-N) as points of Gr."""
    lhs, rhs = torus_identity_sides(b, N)
    return coset_equal(GrPoint(lhs), GrPoint(rhs))


def _require(lam, mu, b, N):
    rep = check_root_component_conditions(lam, mu, b, N)
    if not rep.ok:
        raise ConditionsViolated(
            f"conditions fail for lambda={lam}, mu={mu}, beta={b}, N={N}: "
            f"cond1={rep.cond1}, witnesses={rep.witnesses}"
        )
    return rep


def _unipotent(n: int, entries: dict) -> tuple:
    size = n + 1
    return tuple(
        tuple(
            ONE if r == c else entries.get((r + 1, c + 1), ZERO)
            for c in range(size)
        )
        for r in range(size)
    )


def build_x(lam: Coweight, b: PositiveRoot, N: int) -> tuple:
    """prod_{i=p}^{q} x_{alpha_{p,i}}(t^{<alpha_{p,i}, lam> - N})."""
    entries = {}
    for i in range(b.p, b.q + 1):
        e = pairing(PositiveRoot(b.n, b.p, i + 1), lam) - N
        if e < 0:
            raise ConditionsViolated(f"negative exponent {e} at ({b.p},{i + 1})")
        entries[(b.p, i + 1)] = LaurentPoly.monomial(e)
    return _unipotent(b.n, entries)


def build_x_tilde(lam: Coweight, b: PositiveRoot, N: int) -> tuple:
    """prod_{i=p}^{q} x_{alpha_{i,q}}(t^{<alpha_{i,q}, lam> - N}): entries in column q+1."""
    entries = {}
    for i in range(b.p, b.q + 1):
        e = pairing(PositiveRoot(b.n, i, b.q + 1), lam) - N
        if e < 0:
            raise ConditionsViolated(f"negative exponent {e} at ({i},{b.q + 1})")
        entries[(i, b.q + 1)] = LaurentPoly.monomial(e)
    return _unipotent(b.n, entries)


def build_naive_g(lam: Coweight, b: PositiveRoot, N: int) -> tuple:
    """The single generator x_b(t^{<b, lam> - N})."""
    e = pairing(b, lam) - N
    if e < 0:
        raise ConditionsViolated(f"<beta, lambda> - N = {e} < 0")
    return chevalley(b, LaurentPoly.monomial(e))


def triple_from_factor(lam: Coweight, mu: Coweight, nu_star: Coweight, g: tuple, label: str = "",
                       beta: PositiveRoot | None = None, N: int | None = None) -> ConvolutionTriple:
    """([lam], g [nu_star], [0]) with nu = -w0(nu_star)."""
    L2 = GrPoint(mx.mul(g, mx.torus(nu_star.vector)))
    return ConvolutionTriple(
        torus_point(lam),
        L2,
        base_point(lam.n),
        lam,
        mu,
        dualize_w0(nu_star),
        middle_factor=(g, nu_star),
        label=label,
        beta=beta,
        N=N,
    )


def build_xi(lam: Coweight, mu: Coweight, b: PositiveRoot, N: int) -> ConvolutionTriple:
    rep = _require(lam, mu, b, N)
    return triple_from_factor(lam, mu, rep.shifted, build_x(lam, b, N), "xi", b, N)


def build_xi_tilde(lam: Coweight, mu: Coweight, b: PositiveRoot, N: int) -> ConvolutionTriple:
    rep = _require(lam, mu, b, N)
    return triple_from_factor(lam, mu, rep.shifted, build_x_tilde(lam, b, N), "xi~", b, N)


def build_naive_xi(lam: Coweight, mu: Coweight, b: PositiveRoot, N: int) -> ConvolutionTriple:
    rep = _require(lam, mu, b, N)
    return triple_from_factor(lam, mu, rep.shifted, build_naive_g(lam, b, N), "naive", b, N)


def w0_tilde(n: int) -> tuple:
    """Antidiagonal representative of w0 with signs +1, -1, +1, ... by column."""
    size = n + 1
    return tuple(
        tuple(
            LaurentPoly.const(1 if c % 2 == 0 else -1) if r == size - 1 - c else ZERO
            for c in range(size)
        )
        for r in range(size)
    )


def sigma_matrix(m) -> tuple:
    """A -> w0~ (A^t)^-1 w0~^-1 followed by t -> -t (up to a central scalar)."""
    w = w0_tilde(len(m) - 1)
    inv_t = mx.transpose(mx.inverse_up_to_scalar(m))
    return mx.substitute_neg_t(mx.mul_all(w, inv_t, mx.transpose(w)))


def apply_sigma(L: GrPoint) -> GrPoint:
    return GrPoint(sigma_matrix(L.matrix))


def sign_torus_equivalent(a, b) -> bool:
    """True iff D1 a D2 == b for some diagonal sign matrices D1, D2."""
    size = len(a)
    # bipartite parity graph: row r and column c get signs with d_r * e_c = a_rc / b_rc
    edges = {}
    for r in range(size):
        for c in range(size):
            x, y = a[r][c], b[r][c]
            if not x and not y:
                continue
            if x == y:
                s = 1
            elif x == -y:
                s = -1
            else:
                return False
            edges.setdefault(("r", r), []).append((("c", c), s))
            edges.setdefault(("c", c), []).append((("r", r), s))
    sign = {}
    for start in edges:
        if start in sign:
            continue
        sign[start] = 1
        todo = deque([start])
        while todo:
            u = todo.popleft()
            for w, s in edges[u]:
                want = sign[u] * s
                if w not in sign:
                    sign[w] = want
                    todo.append(w)
                elif sign[w] != want:
                    return False
    return True


def u_matrix(a) -> tuple:
    """u(a) = [[1, t, a t^2], [0, 1, t], [0, 0, 1]]."""
    a = Fraction(a)
    t = LaurentPoly.monomial(1)
    return mx.as_matrix([[1, t, LaurentPoly.monomial(2, a)], [0, 1, t], [0, 0, 1]])


def _check_family_parameter(a) -> Fraction:
    a = Fraction(a)
    if a in (0, 1):
        raise ValueError(f"parameter a must avoid 0 and 1, got {a}")
    return a


def build_counterexample_xi(a) -> ConvolutionTriple:
    """xi(a) = ([2 rho^v], u(a) [2 rho^v], [0]) for PGL_3."""
    a = _check_family_parameter(a)
    two_rho = two_rho_vee(2)
    return triple_from_factor(two_rho, two_rho, two_rho, u_matrix(a), f"xi({a})",
                              PositiveRoot.from_simple_range(2, 1, 2), 2)


def counterexample_witness(a) -> bool:
    """Check t^-2rho K t^-2rho u(a) t^2rho = L (up to a central scalar), K, L in G(O).

    K, L are the explicit matrices certifying d([2rho], u(a)[2rho]) = 2rho.
    """
    a = _check_family_parameter(a)
    t = LaurentPoly.monomial(1)
    K = mx.as_matrix(
        [
            [t * t, -t, 1 - a],
            [t * Fraction(-1) * (1 / (a - 1)), a / (a - 1), 0],
            [1 / a, 0, 0],
        ]
    )
    L = mx.as_matrix([[1, 0, 0], [t * (-1 / (a - 1)), 1, 0], [LaurentPoly.monomial(2, 1 / a), t * (1 / a), 1]])
    two_rho = two_rho_vee(2).vector
    tp = mx.torus(two_rho)
    tm = mx.torus([-x for x in two_rho])
    lhs = mx.mul_all(tm, K, tm, u_matrix(a), tp)
    ratio = mx.scalar_ratio(lhs, L)
    in_GO = all(
        all(not e or e.valuation >= 0 for row in m for e in row) and mx.det(m).is_constant() and mx.det(m)
        for m in (K, L)
    )
    return ratio is not None and ratio.is_monomial() and in_GO

