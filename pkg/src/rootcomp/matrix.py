"""Square matrices over LaurentPoly, stored as tuples of row tuples."""

from __future__ import annotations

from .series import ONE, ZERO, LaurentPoly


class SingularMatrixError(ValueError):
    pass


def as_matrix(rows) -> tuple:
    return tuple(tuple(LaurentPoly.coerce(e) for e in row) for row in rows)


def identity(size: int) -> tuple:
    return tuple(tuple(ONE if i == j else ZERO for j in range(size)) for i in range(size))


def diag(entries) -> tuple:
    entries = [LaurentPoly.coerce(e) for e in entries]
    k = len(entries)
    return tuple(tuple(entries[i] if i == j else ZERO for j in range(k)) for i in range(k))


def torus(exponents) -> tuple:
    return diag([LaurentPoly.monomial(e) for e in exponents])


def elementary(size: int, i: int, j: int, a) -> tuple:
    """I + a E_{ij} with 0-based indices."""
    a = LaurentPoly.coerce(a)
    return tuple(
        tuple(ONE if r == c else (a if (r, c) == (i, j) else ZERO) for c in range(size))
        for r in range(size)
    )


def mul(a, b) -> tuple:
    cols = len(b[0])
    out = []
    for row in a:
        nz = [(k, x) for k, x in enumerate(row) if x]
        out.append(
            tuple(
                sum((x * b[k][c] for k, x in nz if b[k][c]), ZERO)
                for c in range(cols)
            )
        )
    return tuple(out)


def mul_all(*ms) -> tuple:
    out = ms[0]
    for m in ms[1:]:
        out = mul(out, m)
    return out


def scale(m, s) -> tuple:
    s = LaurentPoly.coerce(s)
    return tuple(tuple(e * s for e in row) for row in m)


def add(a, b) -> tuple:
    return tuple(tuple(x + y for x, y in zip(ra, rb)) for ra, rb in zip(a, b))


def sub(a, b) -> tuple:
    return tuple(tuple(x - y for x, y in zip(ra, rb)) for ra, rb in zip(a, b))


def transpose(m) -> tuple:
    return tuple(zip(*m))


def map_entries(m, f) -> tuple:
    return tuple(tuple(f(e) for e in row) for row in m)


def is_identity(m) -> bool:
    return all(e == (ONE if i == j else ZERO) for i, row in enumerate(m) for j, e in enumerate(row))


def scalar_ratio(a, b):
    """Return ``c`` with ``a == c * b`` for a central scalar ``c``, else ``None``."""
    ratio = None
    for ra, rb in zip(a, b):
        for x, y in zip(ra, rb):
            if not y:
                if x:
                    return None
                continue
            if not x:
                return None
            try:
                r = x.exact_div(y)
            except ValueError:
                return None
            if ratio is None:
                ratio = r
            elif r != ratio:
                return None
    return ratio


def det(m) -> LaurentPoly:
    """Determinant by fraction-free (Bareiss) elimination."""
    a = [list(row) for row in m]
    size = len(a)
    if size == 0:
        return ONE
    sign = 1
    prev = ONE
    for k in range(size - 1):
        if not a[k][k]:
            for r in range(k + 1, size):
                if a[r][k]:
                    a[k], a[r] = a[r], a[k]
                    sign = -sign
                    break
            else:
                return ZERO
        piv = a[k][k]
        for i in range(k + 1, size):
            aik = a[i][k]
            for j in range(k + 1, size):
                num = piv * a[i][j] - aik * a[k][j]
                a[i][j] = num.exact_div(prev) if num else ZERO
            a[i][k] = ZERO
        prev = piv
    return a[-1][-1] * sign


def minor(m, i: int, j: int) -> tuple:
    return tuple(tuple(e for c, e in enumerate(row) if c != j) for r, row in enumerate(m) if r != i)


def adjugate(m) -> tuple:
    size = len(m)
    if size == 1:
        return ((ONE,),)
    cof = [[det(minor(m, i, j)) * (-1 if (i + j) % 2 else 1) for j in range(size)] for i in range(size)]
    return transpose(tuple(tuple(r) for r in cof))


def _triangular_kind(m):
    size = len(m)
    upper = all(not m[i][j] for i in range(size) for j in range(i))
    lower = all(not m[i][j] for i in range(size) for j in range(i + 1, size))
    return upper, lower


def _upper_inverse(m) -> tuple:
    # back substitution; diagonal entries must be monomials
    size = len(m)
    inv_diag = [m[i][i] ** -1 for i in range(size)]
    x = [[ZERO] * size for _ in range(size)]
    for c in range(size):
        for i in range(size - 1, -1, -1):
            s = ONE if i == c else ZERO
            for k in range(i + 1, size):
                if m[i][k] and x[k][c]:
                    s = s - m[i][k] * x[k][c]
            x[i][c] = s * inv_diag[i]
    return tuple(tuple(r) for r in x)


def inverse(m) -> tuple:
    """Exact inverse; requires a monomial determinant (so the inverse is Laurent)."""
    upper, lower = _triangular_kind(m)
    if (upper or lower) and all(m[i][i].is_monomial() for i in range(len(m))):
        if upper:
            return _upper_inverse(m)
        return transpose(_upper_inverse(transpose(m)))
    d = det(m)
    if not d:
        raise SingularMatrixError("matrix is singular")
    if not d.is_monomial():
        raise ValueError("determinant is not a monomial; inverse is not Laurent")
    return scale(adjugate(m), d ** -1)


def inverse_up_to_scalar(m) -> tuple:
    """A Laurent matrix proportional to ``m^-1``: the inverse when possible, else the adjugate."""
    try:
        return inverse(m)
    except ValueError as e:
        if isinstance(e, SingularMatrixError):
            raise
    d = det(m)
    if not d:
        raise SingularMatrixError("matrix is singular")
    return adjugate(m)


def substitute_neg_t(m) -> tuple:
    return map_entries(m, LaurentPoly.substitute_neg_t)


def parse_matrix(text: str) -> tuple:
    """Rows separated by ';', entries by ','; entries are Laurent polynomials in t."""
    rows = [r for r in text.strip().split(";")]
    out = [[LaurentPoly.parse(e) for e in r.split(",")] for r in rows]
    if any(len(r) != len(out) for r in out):
        raise ValueError("matrix must be square")
    return as_matrix(out)


def format_matrix(m) -> str:
    return ";".join(",".join(str(e) for e in row) for row in m)
