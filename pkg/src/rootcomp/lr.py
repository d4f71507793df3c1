"""Tensor product multiplicities for SL_{n+1}: LR tableaux and a character-based cross-check."""

from __future__ import annotations

from collections import Counter
from fractions import Fraction
from functools import lru_cache

from .points import ConditionsViolated
from .typea import Coweight, NotDominant, PositiveRoot, check_root_component_conditions, coroot_vector, is_dominant


class ScaleExceeded(RuntimeError):
    pass


MAX_MONOMIALS = 100_000


def _strip(parts) -> tuple:
    parts = list(parts)
    while parts and parts[-1] == 0:
        parts.pop()
    return tuple(parts)


def coweight_to_partition(v: Coweight) -> tuple:
    if not is_dominant(v):
        raise NotDominant(f"{v} is not dominant")
    return _strip(v.vector)


def _normalize(part, size: int) -> tuple:
    """Pad to ``size`` parts and remove full columns."""
    part = list(part)
    if len(part) > size:
        raise ValueError(f"partition {tuple(part)} has more than {size} parts")
    if any(a < b for a, b in zip(part, part[1:])) or any(a < 0 for a in part):
        raise ValueError(f"{tuple(part)} is not a partition")
    part += [0] * (size - len(part))
    low = part[-1]
    return tuple(a - low for a in part)


def lr_coefficient(lam, mu, nu, n: int) -> int:
    """c^nu_{lam,mu} for SL_{n+1}; nu is moved by full columns so |nu| = |lam| + |mu|."""
    size = n + 1
    lam, mu, nu = (_normalize(p, size) for p in (lam, mu, nu))
    extra = sum(lam) + sum(mu) - sum(nu)
    if extra < 0 or extra % size:
        return 0
    nu = tuple(a + extra // size for a in nu)
    if any(a < b for a, b in zip(nu, lam)):
        return 0
    return _count_lr(lam, mu, nu)


def _count_lr(lam, mu, nu) -> int:
    # cells of nu/lam in reading order: rows top to bottom, each row right to left
    cells = [(r, c) for r in range(len(nu)) for c in range(nu[r] - 1, lam[r] - 1, -1)]
    content = [m for m in mu if m]
    if len(cells) != sum(content):
        return 0
    filling = {}
    counts = [0] * (len(content) + 1)

    def place(k: int) -> int:
        if k == len(cells):
            return 1
        r, c = cells[k]
        top = min(len(content), r + 1)
        right = filling.get((r, c + 1))
        if right is not None:
            top = min(top, right)
        above = filling.get((r - 1, c))
        low = above + 1 if above is not None else 1
        total = 0
        for v in range(low, top + 1):
            if counts[v] >= content[v - 1]:
                continue
            if v > 1 and counts[v] + 1 > counts[v - 1]:
                continue
            counts[v] += 1
            filling[(r, c)] = v
            total += place(k + 1)
            del filling[(r, c)]
            counts[v] -= 1
        return total

    return place(0)


# -- characters -------------------------------------------------------------------


@lru_cache(maxsize=None)
def _character(part: tuple, m: int) -> dict:
    """Weight multiplicities of the GL_m module with highest weight ``part`` (length m)."""
    if m == 1:
        return {(part[0],): 1}
    out = Counter()
    total = sum(part)

    def interlacing(i, prefix):
        if i == m - 1:
            yield tuple(prefix)
            return
        lo = part[i + 1]
        for x in range(lo, part[i] + 1):
            prefix.append(x)
            yield from interlacing(i + 1, prefix)
            prefix.pop()

    for sub in interlacing(0, []):
        last = total - sum(sub)
        for w, c in _character(sub, m - 1).items():
            out[w + (last,)] += c
    if len(out) > MAX_MONOMIALS:
        raise ScaleExceeded("character has too many weights")
    return dict(out)


def character(part, size: int) -> dict:
    part = tuple(part) + (0,) * (size - len(part))
    # the branching recursion costs about dim V, so refuse huge modules up front
    if weyl_dimension(part, size) > 20 * MAX_MONOMIALS:
        raise ScaleExceeded(f"module of highest weight {part} is too large")
    return _character(part, size)


def weyl_dimension(part, size: int) -> int:
    part = tuple(part) + (0,) * (size - len(part))
    num = Fraction(1)
    for i in range(size):
        for j in range(i + 1, size):
            num *= Fraction(part[i] - part[j] + j - i, j - i)
    return int(num)


def character_decompose(lam: Coweight, mu: Coweight, n: int) -> list:
    """[(nu, multiplicity)] with V(lam) (x) V(mu) = sum of V(nu)^mult, by stripping highest weights."""
    size = n + 1
    a = character(coweight_to_partition(lam), size)
    b = character(coweight_to_partition(mu), size)
    if len(a) * len(b) > 50 * MAX_MONOMIALS:
        raise ScaleExceeded("product character too large")
    prod = Counter()
    for wa, ca in a.items():
        for wb, cb in b.items():
            prod[tuple(x + y for x, y in zip(wa, wb))] += ca * cb
    if len(prod) > MAX_MONOMIALS:
        raise ScaleExceeded("product character too large")
    out = []
    while True:
        live = [w for w, c in prod.items() if c]
        if not live:
            break
        top = max(live)
        m = prod[top]
        if m < 0 or any(x < y for x, y in zip(top, top[1:])):
            raise ArithmeticError("highest remaining weight is not dominant with positive multiplicity")
        for w, c in _character(top, size).items():
            prod[w] -= m * c
        out.append((Coweight(n, top), m))
    return out


def decomposition_multiplicity(decomp: list, nu: Coweight) -> int:
    return sum(m for v, m in decomp if v == nu)


def root_component_multiplicity(lam: Coweight, mu: Coweight, b: PositiveRoot, N: int, check: bool = True) -> int:
    """m^{lam + mu - N b^v}_{lam, mu}; raises when the conditions fail unless ``check`` is False."""
    if check:
        rep = check_root_component_conditions(lam, mu, b, N)
        if not rep.ok:
            raise ConditionsViolated(f"conditions fail: cond1={rep.cond1}, witnesses={rep.witnesses}")
    nu = lam + mu - N * coroot_vector(b)
    if not is_dominant(nu):
        return 0
    return lr_coefficient(coweight_to_partition(lam), coweight_to_partition(mu), coweight_to_partition(nu), lam.n)
