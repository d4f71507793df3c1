"""One test per acceptance criterion; conftest prints a PASS/FAIL line for each."""

from helpers import random_GO, random_poly, rng_for
from rootcomp import matrix as mx
from rootcomp.certifier import certify_disjoint
from rootcomp.grassmannian import GrPoint, coset_equal, verify_convolution_triple
from rootcomp.lr import (
    character_decompose,
    decomposition_multiplicity,
    lr_coefficient,
    root_component_multiplicity,
)
from rootcomp.orbitdim import (
    case_valuation_table,
    closed_form_orbit_dim,
    closed_form_quotient_dim,
    family_transversality,
    orbit_dimension,
    quotient_dim_from_table,
)
from rootcomp.points import (
    apply_sigma,
    build_naive_xi,
    build_xi,
    build_xi_tilde,
    chevalley,
    commutator,
    commutator_sign,
    root_element,
    verify_torus_identity,
)
from rootcomp.series import LaurentPoly
from rootcomp.typea import Coweight, pairing, positive_roots, rho_pairing, two_rho_vee

t = LaurentPoly.monomial(1)


def _plain(battery):
    return [c for c in battery if not c.is_family]


def _pair(c):
    return build_xi(c.lam, c.mu, c.beta, c.N), build_xi_tilde(c.lam, c.mu, c.beta, c.N)


def test_criterion_1_membership(battery):
    cases = _plain(battery)
    assert max(c.n for c in cases) == 5
    assert {c.N for c in cases} >= {1, 2}
    bad = []
    for c in cases:
        for tr in _pair(c):
            if not verify_convolution_triple(tr).ok:
                bad.append((c.to_line(), tr.label))
    assert not bad


def test_criterion_2_dimension(battery):
    bad = []
    for c in _plain(battery):
        closed = closed_form_orbit_dim(c.lam, c.mu, c.beta, c.N)
        for tr in _pair(c):
            rep = orbit_dimension(tr)
            if not (rep.stable and rep.dim_linear_algebra == closed):
                bad.append((c.to_line(), tr.label, rep.dim_linear_algebra, closed))
    assert not bad


def test_criterion_3_quotient_dimension(battery):
    bad = []
    for c in _plain(battery):
        closed = closed_form_quotient_dim(c.mu, c.beta, c.N)
        table = quotient_dim_from_table(case_valuation_table(c.lam, c.beta, c.N), c.lam, c.mu, c.beta, c.N)
        solver = [orbit_dimension(tr).dim_V_over_W for tr in _pair(c)]
        if table != closed or any(s != closed for s in solver):
            bad.append((c.to_line(), closed, table, solver))
    assert not bad


def test_criterion_4_disjointness(battery):
    bad = []
    for c in _plain(battery):
        cert = certify_disjoint(*_pair(c))
        want = "Unknown" if c.beta.is_simple else "Disjoint"
        if cert.verdict != want:
            bad.append((c.to_line(), cert.verdict, want))
    assert not bad


def test_criterion_5_family():
    for a in (2, 3, -1):
        rep = family_transversality(a)
        assert rep.stable
        assert rep.orbit_dim == 11
        assert not rep.derivative_tangent
        assert rep.family_dim == 12
    assert rho_pairing(3 * two_rho_vee(2)) == 12


def _random_partition(rng, size):
    return tuple(sorted((rng.randint(0, 5) for _ in range(size)), reverse=True))


def test_criterion_6_multiplicity(battery):
    assert lr_coefficient((4, 2), (4, 2), (6, 4, 2), 2) == 3

    rng = rng_for(6)
    hits = 0
    for _ in range(100):
        n = rng.randint(1, 4)
        size = n + 1
        lam, mu = _random_partition(rng, size), _random_partition(rng, size)
        decomp = character_decompose(Coweight(n, lam), Coweight(n, mu), n)
        if rng.random() < 0.5:
            nu = rng.choice(decomp)[0].vector
        else:
            nu = _random_partition(rng, size)
        m = decomposition_multiplicity(decomp, Coweight(n, nu))
        hits += m > 0
        assert lr_coefficient(lam, mu, nu, n) == m, (lam, mu, nu)
    assert hits >= 40

    bad = []
    for c in _plain(battery):
        m = root_component_multiplicity(c.lam, c.mu, c.beta, c.N)
        if m < 1 or (not c.beta.is_simple and m < 2):
            bad.append((c.to_line(), m))
    assert not bad


def test_criterion_7_structural():
    rng = rng_for(7)
    for _ in range(200):
        n = rng.randint(1, 5)
        b = rng.choice(positive_roots(n))
        assert verify_torus_identity(b, rng.randint(1, 6))

    for _ in range(200):
        n = rng.randint(1, 5)
        lam = Coweight(n, tuple(rng.randint(-3, 3) for _ in range(n + 1)))
        b = rng.choice(positive_roots(n))
        a = random_poly(rng, -1, 2, zero_prob=0)
        tl, tli = mx.torus(lam.vector), mx.torus([-x for x in lam.vector])
        k = pairing(b, lam)
        assert mx.mul_all(tl, chevalley(b, a), tli) == chevalley(b, a * t ** k)
        assert mx.mul_all(tl, chevalley(b, a, negative=True), tli) == chevalley(b, a * t ** -k, negative=True)

    nontrivial = 0
    while nontrivial < 200:
        n = rng.randint(2, 5)
        r1, r2 = (tuple(rng.sample(range(1, n + 2), 2)) for _ in range(2))
        a = LaurentPoly.const(rng.choice([-3, -2, -1, 1, 2, 3]))
        c = random_poly(rng, 0, 1, zero_prob=0)
        comm = commutator(root_element(n, *r1, a), root_element(n, *r2, c))
        res = commutator_sign(r1, r2)
        if res is None:
            if r1 != (r2[1], r2[0]):
                assert mx.is_identity(comm)
            continue
        (i, l), sign = res
        assert comm == root_element(n, i, l, a * c * sign)
        nontrivial += 1

    for _ in range(200):
        size = rng.randint(2, 4)
        m = mx.mul(random_GO(rng, size, hi=1), mx.torus([rng.randint(-2, 3) for _ in range(size)]))
        L = GrPoint(m)
        assert coset_equal(apply_sigma(apply_sigma(L)), L)


def test_criterion_8_negative_control(battery):
    bad = []
    checked = 0
    for c in _plain(battery):
        if c.beta.is_simple:
            continue
        closed = closed_form_orbit_dim(c.lam, c.mu, c.beta, c.N)
        naive = orbit_dimension(build_naive_xi(c.lam, c.mu, c.beta, c.N), allow_unstable=False)
        checked += 1
        if not naive.dim_linear_algebra < closed:
            bad.append((c.to_line(), naive.dim_linear_algebra, closed))
    assert checked > 0 and not bad
