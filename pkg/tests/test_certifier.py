
import pytest

from helpers import rng_for
from rootcomp import matrix as mx
from rootcomp.certifier import (
    PreconditionMismatch,
    ValBoundMatrix,
    certify_disjoint,
    det_min_valuation,
    det_min_valuation_bruteforce,
    four_case_h,
    init_bounds,
    propagate_bounds,
    requirements,
    symbolic_conjugate,
)
from rootcomp.points import build_counterexample_xi, build_x, build_x_tilde, build_xi, build_xi_tilde
from rootcomp.series import LaurentPoly
from rootcomp.typea import Coweight, PositiveRoot, pairing, two_rho_vee

LAM = Coweight(4, (2, 2, 1, 0, 0))
MU = Coweight(4, (4, 3, 2, 1, 0))
BETA = PositiveRoot.from_simple_range(4, 2, 3)
t = LaurentPoly.monomial(1)


def test_init_bounds_examples():
    assert init_bounds(Coweight.zero(3)).bounds == [[0] * 4 for _ in range(4)]
    bm = init_bounds(LAM)
    assert bm[0, 4] == 2
    assert all(bm[i, j] == 0 for i in range(5) for j in range(i + 1))


def test_symbolic_identity():
    ident = mx.identity(4)
    sym = symbolic_conjugate(ident, ident)
    for i in range(4):
        for j in range(4):
            assert sym[i][j].as_dict() == {(i, j): LaurentPoly.const(1)}
    with pytest.raises(ValueError):
        symbolic_conjugate(mx.torus((1, 0)), ident[:2])


def test_symbolic_row_q_example():
    # h_{q,j} for j > q+1 carries -g_{q+1,j} t^{<e_{q,q+1}, lam> - N}
    sym = symbolic_conjugate(build_x_tilde(LAM, BETA, 1), build_x(LAM, BETA, 1))
    q = BETA.q
    coeff = LaurentPoly.monomial(pairing(PositiveRoot(4, q, q + 1), LAM) - 1, -1)
    entry = sym[q - 1][4].as_dict()
    assert entry[(q, 4)] == coeff
    assert entry[(q - 1, 4)] == LaurentPoly.const(1)


def test_unipotent_inverse_exact():
    xt = build_x_tilde(LAM, BETA, 1)
    assert mx.is_identity(mx.mul(xt, mx.inverse(xt)))


def test_symbolic_matches_four_case_formula(battery):
    for spec in battery:
        lam, b, N = spec.lam, spec.beta, spec.N
        sym = symbolic_conjugate(build_x_tilde(lam, b, N), build_x(lam, b, N))
        size = spec.n + 1
        for i in range(size):
            for j in range(size):
                assert sym[i][j].as_dict() == four_case_h(lam, b, N, i + 1, j + 1)


def test_symbolic_evaluates_exactly():
    rng = rng_for(31)
    xt, x = build_x_tilde(LAM, BETA, 1), build_x(LAM, BETA, 1)
    sym = symbolic_conjugate(xt, x)
    for _ in range(10):
        g = mx.as_matrix([[LaurentPoly([rng.randint(-3, 3) for _ in range(3)]) for _ in range(5)] for _ in range(5)])
        h = mx.mul_all(mx.inverse(xt), g, x)
        assert all(sym[i][j].evaluate(g) == h[i][j] for i in range(5) for j in range(5))


def test_propagation_examples():
    sym = symbolic_conjugate(build_x_tilde(LAM, BETA, 1), build_x(LAM, BETA, 1))
    nu_star = LAM + MU - Coweight(4, (0, 1, 0, -1, 0))
    for rule in ("all-but-one", "ultrametric"):
        bm = propagate_bounds(init_bounds(LAM), sym, nu_star, rule=rule)
        assert bm[3, 3] >= 1 and bm[3, 4] >= 1
    ident = symbolic_conjugate(mx.identity(3), mx.identity(3))
    bm = propagate_bounds(init_bounds(Coweight.zero(2)), ident, Coweight.zero(2))
    assert bm.bounds == [[0] * 3 for _ in range(3)] and bm.steps == []
    target = Coweight(2, (3, 1, 0))
    bm = propagate_bounds(init_bounds(Coweight.zero(2)), ident, target)
    assert bm.bounds == requirements(target)
    with pytest.raises(ValueError):
        propagate_bounds(init_bounds(LAM), sym, nu_star, rule="guess")


def test_propagation_is_monotone(battery):
    for spec in battery[:40]:
        sym = symbolic_conjugate(build_x_tilde(spec.lam, spec.beta, spec.N), build_x(spec.lam, spec.beta, spec.N))
        nu_star = build_xi(spec.lam, spec.mu, spec.beta, spec.N).middle_factor[1]
        start = init_bounds(spec.lam)
        bm = propagate_bounds(start, sym, nu_star)
        for step in bm.steps:
            assert step["new"] > step["old"]
        assert all(bm.bounds[i][j] >= start.bounds[i][j] for i in range(start.size) for j in range(start.size))


def _random_g(rng, lower, size):
    g = []
    for i in range(size):
        row = []
        for j in range(size):
            if rng.random() < 0.2:
                row.append(LaurentPoly())
            else:
                row.append(LaurentPoly([rng.randint(-2, 2) or 1, rng.randint(-2, 2)], lower[i][j] + rng.randint(0, 1)))
        g.append(row)
    return mx.as_matrix(g)


@pytest.mark.parametrize("rule", ["all-but-one", "ultrametric"])
def test_propagation_soundness(rule):
    """Requirements read off a concrete g never push bounds past g's true valuations."""
    rng = rng_for(32)
    cases = [(LAM, BETA, 1), (two_rho_vee(2), PositiveRoot(2, 1, 3), 2), (Coweight(3, (3, 2, 1, 0)), PositiveRoot(3, 1, 4), 1)]
    for lam, b, N in cases:
        xt, x = build_x_tilde(lam, b, N), build_x(lam, b, N)
        sym = symbolic_conjugate(xt, x)
        size = lam.n + 1
        start = init_bounds(lam)
        for _ in range(100):
            g = _random_g(rng, start.bounds, size)
            h = mx.mul_all(mx.inverse(xt), g, x)
            req = [[min(h[i][j].valuation, 8) if h[i][j] else 8 for j in range(size)] for i in range(size)]
            bm = propagate_bounds(start, sym, None, rule=rule, required=req)
            for i in range(size):
                for j in range(size):
                    if g[i][j]:
                        assert bm[i, j] <= g[i][j].valuation


def test_det_min_valuation_examples():
    assert det_min_valuation(ValBoundMatrix([[0] * 3 for _ in range(3)])) == 0
    bm = ValBoundMatrix([[0, 2, 2], [1, 1, 0], [1, 1, 0]])
    assert det_min_valuation(bm) == det_min_valuation_bruteforce(bm) == 1
    value, perm = det_min_valuation(ValBoundMatrix([[5, 0], [0, 5]]), with_permutation=True)
    assert value == 0 and perm == [2, 1]


def test_det_min_valuation_against_bruteforce():
    rng = rng_for(33)
    for _ in range(200):
        size = rng.randint(1, 5)
        bm = ValBoundMatrix([[rng.randint(0, 4) for _ in range(size)] for _ in range(size)])
        assert det_min_valuation(bm) == det_min_valuation_bruteforce(bm)


def test_det_bound_is_sound_for_monomial_matrices():
    rng = rng_for(34)
    for _ in range(200):
        size = rng.randint(2, 4)
        bounds = [[rng.randint(0, 3) for _ in range(size)] for _ in range(size)]
        g = mx.as_matrix([[LaurentPoly.monomial(bounds[i][j] + rng.randint(0, 2), rng.choice([-2, -1, 1, 3]))
                           if rng.random() > 0.15 else 0 for j in range(size)] for i in range(size)])
        d = mx.det(g)
        if d:
            assert d.valuation >= det_min_valuation(ValBoundMatrix(bounds))


def test_certify_examples():
    xi, xt = build_xi(LAM, MU, BETA, 1), build_xi_tilde(LAM, MU, BETA, 1)
    cert = certify_disjoint(xi, xt)
    assert cert.disjoint and cert.det_bound >= 1
    rec = cert.as_record()
    assert rec["steps"] and rec["permutation"] and "unit determinant" in rec["note"]
    assert certify_disjoint(xi, xi).verdict == "Unknown"
    tr, theta = two_rho_vee(2), PositiveRoot(2, 1, 3)
    assert certify_disjoint(build_xi(tr, tr, theta, 2), build_xi_tilde(tr, tr, theta, 2)).disjoint


def test_certify_never_excludes_identity(battery):
    for spec in battery:
        if spec.is_family:
            continue
        xi = build_xi(spec.lam, spec.mu, spec.beta, spec.N)
        for rule in ("all-but-one", "ultrametric", "auto"):
            assert certify_disjoint(xi, xi, rule).verdict == "Unknown"


def test_certify_preconditions():
    xi = build_xi(LAM, MU, BETA, 1)
    other = build_xi(LAM, LAM, BETA, 1)
    with pytest.raises(PreconditionMismatch):
        certify_disjoint(xi, other)
    fam = build_counterexample_xi(2)
    fam.middle_factor = None
    with pytest.raises(PreconditionMismatch):
        certify_disjoint(fam, fam)
