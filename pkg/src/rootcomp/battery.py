"""Case descriptions, the standard battery, and the per-case claim runner."""

from __future__ import annotations

import argparse
import random
import shlex
from dataclasses import dataclass, field
from fractions import Fraction
from importlib import resources

from . import certifier, lr, orbitdim, points
from .grassmannian import verify_convolution_triple
from .typea import (
    Coweight,
    PositiveRoot,
    check_root_component_conditions,
    coroot_vector,
    format_coweight,
    parse_coweight,
    parse_root,
    positive_roots,
    rho_beta,
    rho_pairing,
    two_rho_vee,
)

FAMILY_N = 2
EXPECT_FLAGS = ("expect_dim", "expect_mult", "expect_disjoint", "expect_member")


class CaseError(ValueError):
    pass


@dataclass(frozen=True)
class CaseSpec:
    n: int
    lam: Coweight
    mu: Coweight
    beta: PositiveRoot
    N: int
    a: Fraction | None = None
    expect: tuple = field(default=(), compare=False)

    @property
    def key(self) -> tuple:
        return (self.n, self.beta.p, self.beta.q, self.N, self.lam.vector, self.mu.vector,
                self.a if self.a is not None else Fraction(-10**9))

    @property
    def is_family(self) -> bool:
        return self.a is not None

    def expectation(self, name: str):
        return dict(self.expect).get(name)

    def to_line(self) -> str:
        parts = [
            f"--n {self.n}",
            f"--lambda {format_coweight(self.lam)}",
            f"--mu {format_coweight(self.mu)}",
            f"--beta {self.beta.p}..{self.beta.q}",
            f"--N {self.N}",
        ]
        if self.a is not None:
            parts.append(f"--a {self.a}")
        for name, value in self.expect:
            parts.append(f"--{name.replace('_', '-')} {value}")
        return " ".join(parts)

    def __str__(self):
        return self.to_line()


def add_case_arguments(p: argparse.ArgumentParser, with_expectations: bool = False):
    p.add_argument("--n", type=int)
    p.add_argument("--lambda", dest="lam")
    p.add_argument("--mu")
    p.add_argument("--beta")
    p.add_argument("--N", type=int)
    p.add_argument("--a")
    if with_expectations:
        p.add_argument("--expect-dim", type=int)
        p.add_argument("--expect-mult", type=int)
        p.add_argument("--expect-disjoint", choices=["Disjoint", "Unknown"])
        p.add_argument("--expect-member", choices=["yes", "no"])


class _LineParser(argparse.ArgumentParser):
    def error(self, message):
        raise CaseError(message)


_line_parser = _LineParser(prog="case", add_help=False)
add_case_arguments(_line_parser, with_expectations=True)


def spec_from_namespace(ns) -> CaseSpec:
    a = None
    if getattr(ns, "a", None) is not None:
        try:
            a = Fraction(ns.a)
        except (ValueError, ZeroDivisionError):
            raise CaseError(f"bad parameter --a {ns.a!r}") from None
        if a in (0, 1):
            raise CaseError(f"parameter a must avoid 0 and 1, got {a}")
        n = ns.n if ns.n is not None else FAMILY_N
        if n != FAMILY_N:
            raise CaseError("the one-parameter family lives in rank 2 (--n 2)")
    else:
        n = ns.n
    if n is None or n < 1:
        raise CaseError("--n must be a positive integer")
    try:
        if a is not None:
            default = two_rho_vee(n)
            lam = parse_coweight(ns.lam, n) if ns.lam else default
            mu = parse_coweight(ns.mu, n) if ns.mu else default
            beta = parse_root(ns.beta, n) if ns.beta else PositiveRoot.from_simple_range(n, 1, n)
            N = ns.N if ns.N is not None else 2
            if (lam, mu, beta, N) != (default, default, PositiveRoot.from_simple_range(n, 1, n), 2):
                raise CaseError("--a fixes lambda = mu = 2rho, beta = 1..2, N = 2")
        else:
            missing = [f for f, v in (("--lambda", ns.lam), ("--mu", ns.mu), ("--beta", ns.beta), ("--N", ns.N)) if v is None]
            if missing:
                raise CaseError("missing " + ", ".join(missing))
            lam, mu = parse_coweight(ns.lam, n), parse_coweight(ns.mu, n)
            beta = parse_root(ns.beta, n)
            N = ns.N
    except CaseError:
        raise
    except ValueError as e:
        raise CaseError(str(e)) from None
    if N < 0:
        raise CaseError("--N must be nonnegative")
    expect = tuple((k, getattr(ns, k)) for k in EXPECT_FLAGS if getattr(ns, k, None) is not None)
    return CaseSpec(n, lam, mu, beta, N, a, expect)


def parse_case_line(line: str) -> CaseSpec:
    return spec_from_namespace(_line_parser.parse_args(shlex.split(line)))


def read_cases(text: str) -> list:
    out = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        try:
            out.append(parse_case_line(line))
        except CaseError as e:
            raise CaseError(f"line {lineno}: {e}") from None
    return out


def shipped_battery_text() -> str:
    return resources.files("rootcomp").joinpath("data/battery.txt").read_text()


# -- generation --------------------------------------------------------------


def minimal_cases(max_n: int = 5, Ns=(1, 2)) -> list:
    """lam = mu = N * rho_beta for every positive root of A_n, n <= max_n."""
    out = []
    for n in range(1, max_n + 1):
        for b in positive_roots(n):
            for N in Ns:
                lam = N * rho_beta(b)
                out.append(CaseSpec(n, lam, lam, b, N))
    return out


def random_dominant(rng: random.Random, n: int, high: int) -> Coweight:
    return Coweight.from_fundamental([rng.randint(0, high) for _ in range(n)])


def augmented_cases(count: int = 20, seed: int = 20240611, max_n: int = 5, high: int = 1) -> list:
    """Random dominant additions to the minimal data; each case still satisfies the conditions."""
    rng = random.Random(seed)
    base = minimal_cases(max_n)
    out = []
    while len(out) < count:
        c = rng.choice(base)
        lam = c.lam + random_dominant(rng, c.n, high)
        mu = c.mu + random_dominant(rng, c.n, high)
        if not check_root_component_conditions(lam, mu, c.beta, c.N).ok:
            continue
        spec = CaseSpec(c.n, lam, mu, c.beta, c.N)
        if spec not in out and spec not in base:
            out.append(spec)
    return out


def named_cases() -> list:
    n4 = 4
    running = CaseSpec(n4, parse_coweight("fw:0,1,1,0", n4), parse_coweight("fw:1,1,1,1", n4),
                       parse_root("2..3", n4), 1,
                       expect=(("expect_dim", 30), ("expect_disjoint", "Disjoint"), ("expect_member", "yes")))
    tr = two_rho_vee(2)
    theta = PositiveRoot.from_simple_range(2, 1, 2)
    constructed = CaseSpec(2, tr, tr, theta, 2,
                           expect=(("expect_dim", 12), ("expect_mult", 3), ("expect_disjoint", "Disjoint")))
    fam = [CaseSpec(2, tr, tr, theta, 2, Fraction(a), expect=(("expect_dim", 11), ("expect_member", "yes")))
           for a in (2, 3, -1)]
    return [running, constructed] + fam


def battery_cases() -> list:
    return minimal_cases() + augmented_cases() + named_cases()


def render_battery_file() -> str:
    lines = ["# n <= 5, every positive root, N in {1, 2}, lambda = mu = N * rho_beta"]
    lines += [c.to_line() for c in minimal_cases()]
    lines.append("# random dominant augmentations (seeded)")
    lines += [c.to_line() for c in augmented_cases()]
    lines.append("# worked cases")
    lines += [c.to_line() for c in named_cases()]
    return "\n".join(lines) + "\n"


# -- running claims -----------------------------------------------------------------


@dataclass
class Claim:
    name: str
    expected: object
    got: object
    ok: bool
    basis: str  # "closed-form", "oracle", "structural" or "expectation"

    def as_record(self) -> dict:
        def plain(x):
            if isinstance(x, Fraction):
                return str(x)
            return x

        return {"claim": self.name, "expected": plain(self.expected), "got": plain(self.got),
                "ok": self.ok, "basis": self.basis}


def _claim(claims, name, expected, got, basis, ok=None):
    if ok is None:
        ok = expected == got
    claims.append(Claim(name, expected, got, bool(ok), basis))


def claims_check(spec: CaseSpec) -> list:
    rep = check_root_component_conditions(spec.lam, spec.mu, spec.beta, spec.N)
    claims = []
    _claim(claims, "condition1", True, rep.cond1, "structural")
    _claim(claims, "condition2", True, rep.cond2, "structural")
    return claims


def _triples(spec: CaseSpec) -> list:
    if spec.is_family:
        return [points.build_counterexample_xi(spec.a)]
    xi = points.build_xi(spec.lam, spec.mu, spec.beta, spec.N)
    if spec.beta.is_simple:
        return [xi]
    return [xi, points.build_xi_tilde(spec.lam, spec.mu, spec.beta, spec.N)]


def claims_verify(spec: CaseSpec) -> list:
    claims = []
    for tr in _triples(spec):
        rep = verify_convolution_triple(tr)
        _claim(claims, f"member[{tr.label}]", True, rep.ok, "structural")
        want = spec.expectation("expect_member")
        if want is not None:
            _claim(claims, f"expect-member[{tr.label}]", want, "yes" if rep.ok else "no", "expectation")
    if spec.is_family:
        _claim(claims, "family-witness", True, points.counterexample_witness(spec.a), "structural")
    return claims


def claims_orbitdim(spec: CaseSpec, M: int | None = None) -> list:
    claims = []
    if spec.is_family:
        rep = orbitdim.family_transversality(spec.a, M)
        closed = orbitdim.closed_form_orbit_dim(spec.lam, spec.mu, spec.beta, spec.N)
        _claim(claims, "orbit-dim[family]", closed - 1, rep.orbit_dim, "closed-form")
        _claim(claims, "transverse", True, not rep.derivative_tangent, "structural")
        _claim(claims, "family-dim", closed, rep.family_dim, "closed-form")
        want = spec.expectation("expect_dim")
        if want is not None:
            _claim(claims, "expect-dim", want, rep.orbit_dim, "expectation")
        return claims
    closed_vw = orbitdim.closed_form_quotient_dim(spec.mu, spec.beta, spec.N)
    table = orbitdim.case_valuation_table(spec.lam, spec.beta, spec.N)
    table_vw = orbitdim.quotient_dim_from_table(table, spec.lam, spec.mu, spec.beta, spec.N)
    _claim(claims, "V/W[table]", closed_vw, table_vw, "closed-form")
    dims = {}
    for tr in _triples(spec):
        rep = orbitdim.orbit_dimension(tr, M, allow_unstable=True)
        dims[tr.label] = rep.dim_linear_algebra
        _claim(claims, f"stable[{tr.label}]", True, rep.stable, "structural")
        _claim(claims, f"orbit-dim[{tr.label}]", rep.dim_closed_form, rep.dim_linear_algebra, "closed-form")
        _claim(claims, f"V/W[{tr.label}]", closed_vw, rep.dim_V_over_W, "closed-form")
    want = spec.expectation("expect_dim")
    if want is not None:
        _claim(claims, "expect-dim", want, dims["xi"], "expectation")
    if not spec.beta.is_simple:
        naive = points.build_naive_xi(spec.lam, spec.mu, spec.beta, spec.N)
        rep = orbitdim.orbit_dimension(naive, M, allow_unstable=True)
        closed = orbitdim.closed_form_orbit_dim(spec.lam, spec.mu, spec.beta, spec.N)
        _claim(claims, "naive-below", f"< {closed}", rep.dim_linear_algebra, "closed-form",
               ok=rep.dim_linear_algebra < closed)
    return claims


def claims_disjoint(spec: CaseSpec) -> tuple:
    """Claims plus the certificate (for traces)."""
    claims = []
    if spec.is_family:
        raise CaseError("disjointness applies to (xi, xi~) pairs, not to the family")
    xi = points.build_xi(spec.lam, spec.mu, spec.beta, spec.N)
    xt = points.build_xi_tilde(spec.lam, spec.mu, spec.beta, spec.N)
    cert = certifier.certify_disjoint(xi, xt)
    expected = "Unknown" if spec.beta.is_simple else "Disjoint"
    _claim(claims, "disjoint", expected, cert.verdict, "structural")
    want = spec.expectation("expect_disjoint")
    if want is not None:
        _claim(claims, "expect-disjoint", want, cert.verdict, "expectation")
    return claims, cert


def claims_mult(spec: CaseSpec) -> list:
    claims = []
    m = lr.root_component_multiplicity(spec.lam, spec.mu, spec.beta, spec.N, check=not spec.is_family)
    orbits = 1 if spec.beta.is_simple else 2
    _claim(claims, "multiplicity>=1", ">= 1", m, "oracle", ok=m >= 1)
    if not spec.beta.is_simple:
        _claim(claims, "multiplicity>=2", ">= 2", m, "oracle", ok=m >= 2)
    _claim(claims, "orbits<=multiplicity", f"{orbits} <= m", m, "oracle", ok=orbits <= m)
    want = spec.expectation("expect_mult")
    if want is not None:
        _claim(claims, "expect-mult", want, m, "expectation")
    return claims


def nu_of(spec: CaseSpec) -> Coweight:
    return spec.lam + spec.mu - spec.N * coroot_vector(spec.beta)


def run_case(spec: CaseSpec, M: int | None = None) -> dict:
    """All claims for one case; used by the battery runner."""
    claims = claims_check(spec)
    if all(c.ok for c in claims):
        claims += claims_verify(spec)
        claims += claims_orbitdim(spec, M)
        if not spec.is_family:
            claims += claims_disjoint(spec)[0]
        claims += claims_mult(spec)
    return {
        "case": spec.to_line(),
        "ok": all(c.ok for c in claims),
        "claims": [c.as_record() for c in claims],
        "closed_form_dim": int(rho_pairing(2 * spec.lam + 2 * spec.mu - spec.N * coroot_vector(spec.beta))),
    }
