"""Coweights and positive roots for PGL_{n+1}, and the root-component conditions."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction


class RankMismatch(ValueError):
    pass


class NotDominant(ValueError):
    pass


@dataclass(frozen=True)
class Coweight:
    """Integer (n+1)-vector modulo the central direction (1, ..., 1).

    The stored ``vector`` is canonical (minimum entry 0), so dataclass
    equality is equality of classes.
    """

    n: int
    vector: tuple

    def __post_init__(self):
        v = tuple(int(x) for x in self.vector)
        if self.n < 1 or len(v) != self.n + 1:
            raise ValueError(f"rank {self.n} needs a vector of length {self.n + 1}, got {v}")
        m = min(v)
        object.__setattr__(self, "vector", tuple(x - m for x in v))

    @classmethod
    def from_fundamental(cls, coeffs) -> Coweight:
        """``sum c_i * fw_i`` where ``fw_i`` lifts to (1^i, 0^(n+1-i))."""
        coeffs = [int(c) for c in coeffs]
        n = len(coeffs)
        v = [sum(coeffs[k:]) for k in range(n)] + [0]
        return cls(n, tuple(v))

    @classmethod
    def fundamental(cls, n: int, i: int) -> Coweight:
        if not 1 <= i <= n:
            raise ValueError(f"fundamental coweight index {i} out of range for n={n}")
        return cls(n, (1,) * i + (0,) * (n + 1 - i))

    @classmethod
    def zero(cls, n: int) -> Coweight:
        return cls(n, (0,) * (n + 1))

    @property
    def fundamental_coefficients(self) -> tuple:
        v = self.vector
        return tuple(v[i] - v[i + 1] for i in range(self.n))

    def _same_rank(self, other: Coweight):
        if other.n != self.n:
            raise RankMismatch(f"rank {self.n} vs {other.n}")

    def __add__(self, other: Coweight) -> Coweight:
        self._same_rank(other)
        return Coweight(self.n, tuple(a + b for a, b in zip(self.vector, other.vector)))

    def __sub__(self, other: Coweight) -> Coweight:
        self._same_rank(other)
        return Coweight(self.n, tuple(a - b for a, b in zip(self.vector, other.vector)))

    def __neg__(self) -> Coweight:
        return Coweight(self.n, tuple(-a for a in self.vector))

    def __mul__(self, k: int) -> Coweight:
        return Coweight(self.n, tuple(k * a for a in self.vector))

    __rmul__ = __mul__

    def __str__(self):
        return "v:" + ",".join(str(x) for x in self.vector)


@dataclass(frozen=True, order=True)
class PositiveRoot:
    """The root e_i - e_j (1 <= i < j <= n+1), i.e. alpha_i + ... + alpha_{j-1}."""

    n: int
    i: int
    j: int

    def __post_init__(self):
        if not 1 <= self.i < self.j <= self.n + 1:
            raise ValueError(f"invalid positive root ({self.i},{self.j}) for n={self.n}")

    @classmethod
    def from_simple_range(cls, n: int, p: int, q: int) -> PositiveRoot:
        """alpha_p + ... + alpha_q."""
        if not 1 <= p <= q <= n:
            raise ValueError(f"invalid simple range {p}..{q} for n={n}")
        return cls(n, p, q + 1)

    @classmethod
    def simple(cls, n: int, i: int) -> PositiveRoot:
        return cls.from_simple_range(n, i, i)

    @property
    def p(self) -> int:
        return self.i

    @property
    def q(self) -> int:
        return self.j - 1

    @property
    def is_simple(self) -> bool:
        return self.j == self.i + 1

    @property
    def height(self) -> int:
        return self.j - self.i

    def __str__(self):
        return f"{self.p}..{self.q}"


def positive_roots(n: int) -> list:
    return [PositiveRoot(n, i, j) for i in range(1, n + 2) for j in range(i + 1, n + 2)]


def pairing(r: PositiveRoot, v: Coweight) -> int:
    if r.n != v.n:
        raise RankMismatch(f"root of rank {r.n} paired with coweight of rank {v.n}")
    return v.vector[r.i - 1] - v.vector[r.j - 1]


def simple_pairing(i: int, v: Coweight) -> int:
    """<alpha_i, v>."""
    return v.vector[i - 1] - v.vector[i]


def rho_pairing(v: Coweight) -> Fraction:
    """<rho, v> = sum_i (n + 2 - 2i)/2 * v_i."""
    n = v.n
    return sum(Fraction(n + 2 - 2 * i, 2) * x for i, x in enumerate(v.vector, start=1))


def coroot_vector(b: PositiveRoot) -> Coweight:
    v = [0] * (b.n + 1)
    v[b.i - 1] = 1
    v[b.j - 1] = -1
    return Coweight(b.n, tuple(v))


def is_dominant(v: Coweight) -> bool:
    x = v.vector
    return all(x[k] >= x[k + 1] for k in range(len(x) - 1))


def dualize_w0(v: Coweight) -> Coweight:
    """-w0(v): reverse and negate."""
    if not is_dominant(v):
        raise NotDominant(f"{v} is not dominant")
    return Coweight(v.n, tuple(-x for x in reversed(v.vector)))


def sigma_root(b: PositiveRoot) -> PositiveRoot:
    """Image of a positive root under the diagram automorphism."""
    m = b.n + 2
    return PositiveRoot(b.n, m - b.j, m - b.i)


def _subtracts_to_root_or_zero(b: PositiveRoot, i: int) -> bool:
    # beta - alpha_i is a root or zero exactly at the two ends of the string
    return i == b.p or i == b.q


@dataclass
class ConditionReport:
    cond1: bool
    cond2: bool
    witnesses: list = field(default_factory=list)
    shifted: Coweight | None = None

    @property
    def ok(self) -> bool:
        return self.cond1 and self.cond2


def check_root_component_conditions(lam: Coweight, mu: Coweight, b: PositiveRoot, N: int) -> ConditionReport:
    """Check (1) lam + mu - N b^v dominant and (2) the pairing condition at the string ends.

    ``witnesses`` lists every simple index violating (2).
    """
    lam._same_rank(mu)
    if b.n != lam.n:
        raise RankMismatch("root rank differs from coweight rank")
    for name, v in (("lambda", lam), ("mu", mu)):
        if not is_dominant(v):
            raise NotDominant(f"{name} = {v} is not dominant")
    shifted = lam + mu - N * coroot_vector(b)
    cond1 = is_dominant(shifted)
    witnesses = [
        i
        for i in range(1, lam.n + 1)
        if (simple_pairing(i, lam) < N or simple_pairing(i, mu) < N) and _subtracts_to_root_or_zero(b, i)
    ]
    return ConditionReport(cond1, not witnesses, witnesses, shifted)


def rho_beta(b: PositiveRoot) -> Coweight:
    """Minimal dominant coweight satisfying the pairing condition: fw_p + fw_q (once if p == q)."""
    out = Coweight.zero(b.n)
    for i in sorted({b.p, b.q}):
        out = out + Coweight.fundamental(b.n, i)
    return out


def two_rho_vee(n: int) -> Coweight:
    """Sum of the positive coroots, i.e. 2 * (fw_1 + ... + fw_n)."""
    return Coweight(n, tuple(2 * (n - k) for k in range(n + 1)))


def parse_coweight(text: str, n: int | None = None) -> Coweight:
    """``fw:c1,...,cn`` (fundamental coefficients) or ``v:x1,...,x_{n+1}``."""
    text = text.strip()
    kind, sep, body = text.partition(":")
    if not sep:
        raise ValueError(f"coweight {text!r} needs a 'fw:' or 'v:' prefix")
    try:
        nums = [int(x) for x in body.split(",")] if body.strip() else []
    except ValueError:
        raise ValueError(f"bad integer list in coweight {text!r}") from None
    if kind == "fw":
        if n is not None and len(nums) != n:
            raise ValueError(f"fw: coweight needs {n} coefficients, got {len(nums)}")
        if not nums:
            raise ValueError("empty coweight")
        return Coweight.from_fundamental(nums)
    if kind == "v":
        if n is not None and len(nums) != n + 1:
            raise ValueError(f"v: coweight needs {n + 1} entries, got {len(nums)}")
        if len(nums) < 2:
            raise ValueError("v: coweight needs at least 2 entries")
        return Coweight(len(nums) - 1, tuple(nums))
    raise ValueError(f"unknown coweight prefix {kind!r}")


def format_coweight(v: Coweight, style: str = "fw") -> str:
    if style == "fw":
        return "fw:" + ",".join(str(c) for c in v.fundamental_coefficients)
    return str(v)


def parse_root(text: str, n: int) -> PositiveRoot:
    """``p..q`` for alpha_p + ... + alpha_q."""
    p, sep, q = text.strip().partition("..")
    if not sep:
        raise ValueError(f"root {text!r} must look like 'p..q'")
    try:
        return PositiveRoot.from_simple_range(n, int(p), int(q))
    except ValueError as e:
        raise ValueError(f"bad root {text!r}: {e}") from None
