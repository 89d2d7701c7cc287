"""Exact integer arithmetic: factorization, primality, integer matrices,
Hermite/Smith normal forms, and lattice indices.

Everything operates on Python ints (arbitrary precision).  Matrices are
row-major lists of lists; the row span of a matrix is "the lattice" it
presents.  One fixed Hermite convention is used everywhere: row-style,
positive pivots, entries above a pivot reduced into [0, pivot).
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from math import gcd, isqrt

from .errors import InputError

# Witnesses making Miller-Rabin deterministic below 3.3e24 (> 2^64).
_MR_BASES_64 = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)

_SMALL_PRIMES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47)


def xgcd(a: int, b: int) -> tuple[int, int, int]:
    """Extended Euclid: returns (x, y, g) with x*a + y*b == g = gcd(a, b) >= 0."""
    x, next_x = 1, 0
    y, next_y = 0, 1
    g, next_g = a, b
    while next_g:
        q = g // next_g
        x, next_x = next_x, x - q * next_x
        y, next_y = next_y, y - q * next_y
        g, next_g = next_g, g - q * next_g
    if g < 0:
        x, y, g = -x, -y, -g
    return x, y, g


def _miller_rabin(n: int, base: int) -> bool:
    if base % n == 0:
        return True
    d = n - 1
    r = 0
    while d % 2 == 0:
        d //= 2
        r += 1
    x = pow(base, d, n)
    if x == 1 or x == n - 1:
        return True
    for _ in range(r - 1):
        x = x * x % n
        if x == n - 1:
            return True
    return False


def is_prime(n: int) -> bool:
    """Primality: trial division, then Miller-Rabin (deterministic bases
    below 2**64, 40 random rounds above)."""
    if n < 2:
        return False
    for p in _SMALL_PRIMES:
        if n == p:
            return True
        if n % p == 0:
            return False
    if n < 2**64:
        return all(_miller_rabin(n, b) for b in _MR_BASES_64)
    rng = random.Random(n)
    return all(_miller_rabin(n, rng.randrange(2, n - 1)) for _ in range(40))


def _pollard_rho(n: int) -> int:
    # n odd composite, not a prime power of a small prime.
    rng = random.Random(n)
    while True:
        c = rng.randrange(1, n)
        x = y = rng.randrange(0, n)
        d = 1
        while d == 1:
            x = (x * x + c) % n
            y = (y * y + c) % n
            y = (y * y + c) % n
            d = gcd(abs(x - y), n)
        if d != n:
            return d


@dataclass(frozen=True)
class Factorization:
    """A certified factorization: value == prod(p**e), primes strictly
    increasing, every p prime."""

    value: int
    factors: tuple[tuple[int, int], ...]

    def __post_init__(self):
        prod = 1
        prev = 1
        for p, e in self.factors:
            if p <= prev or e <= 0 or not is_prime(p):
                raise InputError(f"bad factorization of {self.value}")
            prev = p
            prod *= p**e
        if prod != self.value:
            raise InputError(f"factor product mismatch for {self.value}")

    def primes(self) -> list[int]:
        return [p for p, _ in self.factors]


def factor(n: int) -> Factorization:
    """Factor a positive integer by trial division with a Pollard rho
    fallback.  Rejects n = 0."""
    if n <= 0:
        raise InputError("factor() needs a positive integer")
    value = n
    out: dict[int, int] = {}
    for p in _SMALL_PRIMES:
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
    d = 49
    while d * d <= n and d < 2**20:
        d += 2
        while n % d == 0:
            out[d] = out.get(d, 0) + 1
            n //= d
    stack = [n] if n > 1 else []
    while stack:
        m = stack.pop()
        if m == 1:
            continue
        if is_prime(m):
            out[m] = out.get(m, 0) + 1
            continue
        r = isqrt(m)
        if r * r == m:
            stack += [r, r]
            continue
        d = _pollard_rho(m)
        stack += [d, m // d]
    return Factorization(value, tuple(sorted(out.items())))


def divisors(n: int) -> list[int]:
    """All positive divisors of n, sorted."""
    ds = [1]
    for p, e in factor(n).factors:
        ds = [d * p**k for d in ds for k in range(e + 1)]
    return sorted(ds)


# ---------------------------------------------------------------------------
# Integer matrices and lattices


@dataclass(frozen=True)
class IntMatrix:
    rows: int
    cols: int
    entries: tuple[int, ...]  # row-major

    def __post_init__(self):
        if self.rows < 0 or self.cols < 0 or len(self.entries) != self.rows * self.cols:
            raise InputError("entries length must be rows*cols")

    @staticmethod
    def from_rows(rows: list[list[int]], cols: int | None = None) -> "IntMatrix":
        if not rows:
            return IntMatrix(0, 0 if cols is None else cols, ())
        n = len(rows[0]) if cols is None else cols
        if any(len(r) != n for r in rows):
            raise InputError("ragged rows")
        return IntMatrix(len(rows), n, tuple(x for r in rows for x in r))

    def row_list(self) -> list[list[int]]:
        n = self.cols
        return [list(self.entries[i * n : (i + 1) * n]) for i in range(self.rows)]

    @staticmethod
    def identity(n: int) -> "IntMatrix":
        return IntMatrix.from_rows([[1 if i == j else 0 for j in range(n)] for i in range(n)], n)


def _add_to_echelon(basis: list[list[int]], pivots: list[int], vec: list[int], ncols: int):
    """Fold one vector into a row-echelon basis, reducing columns in
    ascending order so leading-column structure is preserved."""
    j = next((k for k in range(ncols) if vec[k]), None)
    while j is not None:
        if j in pivots:
            bi = pivots.index(j)
            b = basis[bi]
            a, c = b[j], vec[j]
            if c % a == 0:
                q = c // a
                for k in range(j, ncols):
                    vec[k] -= q * b[k]
            else:
                x, y, g = xgcd(a, c)
                ag, cg = a // g, c // g
                bnew = [x * b[k] + y * vec[k] for k in range(ncols)]
                vnew = [-cg * b[k] + ag * vec[k] for k in range(ncols)]
                basis[bi] = bnew
                vec[:] = vnew
            j = next((k for k in range(j, ncols) if vec[k]), None)
        else:
            if vec[j] < 0:
                vec = [-x for x in vec]
            where = 0
            while where < len(pivots) and pivots[where] < j:
                where += 1
            basis.insert(where, vec)
            pivots.insert(where, j)
            return


def _hnf_rows(rows: list[list[int]], ncols: int) -> list[list[int]]:
    """Row-style HNF of the lattice spanned by ``rows``; zero rows dropped.
    Pivots positive, entries above each pivot reduced into [0, pivot)."""
    basis: list[list[int]] = []  # kept in echelon order
    pivots: list[int] = []
    for r in rows:
        if any(r):
            _add_to_echelon(basis, pivots, r[:], ncols)
    # reduce entries above pivots; ascending pivot order per row, so a
    # subtraction never disturbs an already-reduced earlier column
    for ai in range(len(basis)):
        for bi in range(ai + 1, len(basis)):
            j = pivots[bi]
            q = basis[ai][j] // basis[bi][j]  # floor -> remainder in [0, pivot)
            if q:
                for k in range(j, ncols):
                    basis[ai][k] -= q * basis[bi][k]
    return basis


def hnf(m: IntMatrix) -> IntMatrix:
    """Hermite normal form of the row lattice of ``m``.

    The zero matrix maps to the zero matrix (row count preserved); otherwise
    zero rows are dropped.
    """
    basis = _hnf_rows(m.row_list(), m.cols)
    if not basis:
        return IntMatrix(m.rows, m.cols, (0,) * (m.rows * m.cols))
    return IntMatrix.from_rows(basis, m.cols)


def hnf_rows(rows: list[list[int]], ncols: int) -> list[list[int]]:
    """HNF as a plain list of nonzero rows (convenience for internal use)."""
    return _hnf_rows(rows, ncols)


def in_row_span(vec: list[int], hnf_basis: list[list[int]], ncols: int) -> bool:
    """Integer membership of ``vec`` in the lattice with the given HNF basis."""
    v = list(vec)
    pivots = [next(k for k in range(ncols) if row[k]) for row in hnf_basis]
    for row, j in zip(hnf_basis, pivots):
        if v[j] == 0:
            continue
        if v[j] % row[j] != 0:
            return False
        q = v[j] // row[j]
        for k in range(j, ncols):
            v[k] -= q * row[k]
    return not any(v)


def lattice_rank(rows: list[list[int]], ncols: int) -> int:
    return len(_hnf_rows(rows, ncols))


def lattice_index(sub: IntMatrix, sup: IntMatrix) -> int | str:
    """Index [sup : sub] of one row lattice in another.

    Returns "infinite" when the ranks differ; rejects sub not contained in
    sup (checked by membership solves).
    """
    if sub.cols != sup.cols:
        raise InputError("ambient dimensions differ")
    n = sub.cols
    hs = _hnf_rows(sub.row_list(), n)
    hp = _hnf_rows(sup.row_list(), n)
    for row in hs:
        if not in_row_span(row, hp, n):
            raise InputError("sub lattice is not contained in sup lattice")
    if len(hs) != len(hp):
        return "infinite"
    num = 1
    for row, piv in zip(hs, [next(k for k in range(n) if r[k]) for r in hs]):
        num *= row[piv]
    den = 1
    for row, piv in zip(hp, [next(k for k in range(n) if r[k]) for r in hp]):
        den *= row[piv]
    assert num % den == 0
    return num // den


def left_kernel(rows: list[list[int]], ncols: int) -> list[list[int]]:
    """Basis of {x : x * M == 0} for the matrix with the given rows.

    Computed by running the HNF elimination on [M | I] and collecting the
    transform rows that end on zero rows of the HNF part.
    """
    m = len(rows)
    aug = [list(rows[i]) + [1 if j == i else 0 for j in range(m)] for i in range(m)]
    # run the elimination keyed on the first ncols columns; a row whose
    # matrix part vanishes contributes its transform part to the kernel
    basis: list[list[int]] = []
    pivots: list[int] = []
    kernel: list[list[int]] = []
    width = ncols + m
    for vec in aug:
        j = next((k for k in range(ncols) if vec[k]), None)
        while j is not None:
            if j in pivots:
                bi = pivots.index(j)
                b = basis[bi]
                a, c = b[j], vec[j]
                if c % a == 0:
                    q = c // a
                    for k in range(j, width):
                        vec[k] -= q * b[k]
                else:
                    x, y, g = xgcd(a, c)
                    ag, cg = a // g, c // g
                    bnew = [x * b[k] + y * vec[k] for k in range(width)]
                    vnew = [-cg * b[k] + ag * vec[k] for k in range(width)]
                    basis[bi] = bnew
                    vec[:] = vnew
                j = next((k for k in range(j, ncols) if vec[k]), None)
            else:
                where = 0
                while where < len(pivots) and pivots[where] < j:
                    where += 1
                basis.insert(where, vec)
                pivots.insert(where, j)
                break
        else:
            kernel.append(vec[ncols:])
    return _hnf_rows(kernel, m)


def smith_invariants(rows: list[list[int]], ncols: int) -> list[int]:
    """Nontrivial invariant factors (each dividing the next) of the cokernel
    ZZ^ncols / row-span, including 0 entries for free rank.

    Returned list has length ncols: d_1 | d_2 | ... (1 entries included).
    """
    work = [r[:] for r in rows]
    m = len(work)
    n = ncols
    invs: list[int] = []
    top = 0
    leftcol = 0
    while top < m and leftcol < n:
        # find a nonzero entry
        found = None
        for i in range(top, m):
            for j in range(leftcol, n):
                if work[i][j]:
                    found = (i, j)
                    break
            if found:
                break
        if not found:
            break
        i0, j0 = found
        work[top], work[i0] = work[i0], work[top]
        for r in work:
            r[leftcol], r[j0] = r[j0], r[leftcol]
        while True:
            # clear column
            again = False
            for i in range(top + 1, m):
                a, c = work[top][leftcol], work[i][leftcol]
                if c == 0:
                    continue
                if c % a == 0:
                    q = c // a
                    for k in range(leftcol, n):
                        work[i][k] -= q * work[top][k]
                else:
                    x, y, g = xgcd(a, c)
                    rt = [x * work[top][k] + y * work[i][k] for k in range(n)]
                    ri = [-(c // g) * work[top][k] + (a // g) * work[i][k] for k in range(n)]
                    work[top][leftcol:] = rt[leftcol:]
                    work[i][leftcol:] = ri[leftcol:]
            # clear row
            for j in range(leftcol + 1, n):
                a, c = work[top][leftcol], work[top][j]
                if c == 0:
                    continue
                if c % a == 0:
                    q = c // a
                    for r in work:
                        r[j] -= q * r[leftcol]
                else:
                    x, y, g = xgcd(a, c)
                    for r in work:
                        r[leftcol], r[j] = x * r[leftcol] + y * r[j], -(c // g) * r[leftcol] + (a // g) * r[j]
                    again = True
            if not again and all(work[i][leftcol] == 0 for i in range(top + 1, m)):
                break
        invs.append(abs(work[top][leftcol]))
        top += 1
        leftcol += 1
    # enforce divisibility chain
    for i in range(len(invs)):
        for j in range(i + 1, len(invs)):
            a, b = invs[i], invs[j]
            g = gcd(a, b)
            invs[i], invs[j] = g, a // g * b if g else 0
    invs.sort(key=lambda d: (d == 0, d))
    return invs + [0] * (ncols - len(invs))
