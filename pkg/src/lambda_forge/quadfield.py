"""Exact arithmetic in imaginary quadratic orders: elements, ideals in a
fixed two-generator normal form, norms, principality by bounded lattice
search, class groups from reduced binary quadratic forms, and residue unit
groups.

Only imaginary quadratic fields are supported (the unit group is finite and
the norm form is positive definite, so every search here terminates with a
certificate).  Real quadratic fields are rejected at construction.

An ideal is stored as a triple (a, b, c) meaning the Z-module
    Z * (a*c)  +  Z * ((b + w)*c)
where w is the standard generator of the maximal order.  This normal form
is unique with a > 0, c > 0, 0 <= b < a, and a | N(b + w), so equality of
ideals is structural equality of triples.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import lru_cache
from math import gcd, isqrt

from .errors import BoundExceededError, InputError
from .intlinalg import factor, hnf_rows, is_prime

_SQUAREFREE_CACHE: dict[int, bool] = {}


def _is_squarefree(n: int) -> bool:
    if n not in _SQUAREFREE_CACHE:
        _SQUAREFREE_CACHE[n] = all(e == 1 for _, e in factor(n).factors)
    return _SQUAREFREE_CACHE[n]


@dataclass(frozen=True)
class QuadField:
    """The imaginary quadratic field of radicand d < 0, d squarefree.

    The generator w of the ring of integers is sqrt(d) when d = 2,3 mod 4
    and (1+sqrt(d))/2 when d = 1 mod 4; it satisfies w^2 = t*w - n with
    t = trace(w), n = norm(w).
    """

    d: int

    def __post_init__(self):
        if self.d >= 0:
            raise InputError("only imaginary quadratic fields (d < 0) are supported")
        if not _is_squarefree(-self.d):
            raise InputError("d must be squarefree")

    @property
    def trace_w(self) -> int:
        return 1 if self.d % 4 == 1 else 0

    @property
    def norm_w(self) -> int:
        return (1 - self.d) // 4 if self.d % 4 == 1 else -self.d

    @property
    def disc(self) -> int:
        return self.d if self.d % 4 == 1 else 4 * self.d

    def one(self) -> "QuadInt":
        return QuadInt(self, 1, 0)

    def omega(self) -> "QuadInt":
        return QuadInt(self, 0, 1)

    def element(self, a: int, b: int = 0) -> "QuadInt":
        return QuadInt(self, a, b)

    def to_json(self) -> dict:
        return {"d": self.d}

    @staticmethod
    def from_json(data: dict) -> "QuadField":
        return QuadField(int(data["d"]))


@dataclass(frozen=True, eq=True)
class QuadInt:
    """The algebraic integer a + b*w."""

    field: QuadField
    a: int
    b: int

    def __hash__(self):  # hot path: avoid re-hashing the field dataclass
        return hash((self.field.d, self.a, self.b))

    def __add__(self, other: "QuadInt") -> "QuadInt":
        return QuadInt(self.field, self.a + other.a, self.b + other.b)

    def __sub__(self, other: "QuadInt") -> "QuadInt":
        return QuadInt(self.field, self.a - other.a, self.b - other.b)

    def __neg__(self) -> "QuadInt":
        return QuadInt(self.field, -self.a, -self.b)

    def __mul__(self, other: "QuadInt") -> "QuadInt":
        t, n = self.field.trace_w, self.field.norm_w
        a1, b1, a2, b2 = self.a, self.b, other.a, other.b
        return QuadInt(
            self.field,
            a1 * a2 - b1 * b2 * n,
            a1 * b2 + a2 * b1 + b1 * b2 * t,
        )

    def scale(self, k: int) -> "QuadInt":
        return QuadInt(self.field, k * self.a, k * self.b)

    def conj(self) -> "QuadInt":
        t = self.field.trace_w
        return QuadInt(self.field, self.a + self.b * t, -self.b)

    def norm(self) -> int:
        t, n = self.field.trace_w, self.field.norm_w
        return self.a * self.a + self.a * self.b * t + self.b * self.b * n

    def is_zero(self) -> bool:
        return self.a == 0 and self.b == 0

    def __str__(self):
        if self.b == 0:
            return str(self.a)
        bw = "w" if self.b == 1 else ("-w" if self.b == -1 else f"{self.b}*w")
        if self.a == 0:
            return bw
        return f"{self.a}{'+' if self.b > 0 else ''}{bw}"


def _units(field: QuadField) -> list[QuadInt]:
    if field.d == -1:
        i = field.omega()
        return [field.one(), i, -field.one(), -i]
    if field.d == -3:
        w = field.omega()  # primitive sixth root of unity
        return [field.one(), w, w * w, -field.one(), -w, -(w * w)]
    return [field.one(), -field.one()]


def unit_group(field: QuadField) -> list[QuadInt]:
    """All roots of unity in the field: order 4 for d=-1, 6 for d=-3,
    2 otherwise."""
    return _units(field)


@dataclass(frozen=True, eq=True)
class QuadIdeal:
    """Nonzero integral ideal in normal form (see module docstring)."""

    field: QuadField
    a: int
    b: int
    c: int

    def __hash__(self):  # hot path: avoid re-hashing the field dataclass
        return hash((self.field.d, self.a, self.b, self.c))

    def __post_init__(self):
        f = self.field
        if self.a <= 0 or self.c <= 0 or not (0 <= self.b < self.a):
            raise InputError("ideal triple out of normal form")
        if QuadInt(f, self.b, 1).norm() % self.a != 0:
            raise InputError("triple does not span an ideal (a | N(b+w) fails)")

    def norm(self) -> int:
        return self.a * self.c * self.c

    def basis(self) -> tuple[QuadInt, QuadInt]:
        f = self.field
        return QuadInt(f, self.a * self.c, 0), QuadInt(f, self.b * self.c, self.c)

    def is_one(self) -> bool:
        return self.a == 1 and self.b == 0 and self.c == 1

    def contains(self, x: QuadInt) -> bool:
        if x.b % self.c != 0:
            return False
        q = x.b // self.c
        u = x.a - q * self.b * self.c
        return u % (self.a * self.c) == 0

    def conj(self) -> "QuadIdeal":
        g1, g2 = self.basis()
        return ideal_from_module(self.field, [g1.conj(), g2.conj()])

    def residues(self) -> list[QuadInt]:
        """Coset representatives of O/I: {u + v*w : 0<=u<a*c, 0<=v<c}."""
        f = self.field
        return [QuadInt(f, u, v) for v in range(self.c) for u in range(self.a * self.c)]

    def reduce(self, x: QuadInt) -> QuadInt:
        """Canonical representative of x modulo the ideal."""
        q = x.b // self.c
        b2 = x.b - q * self.c
        a2 = (x.a - q * self.b * self.c) % (self.a * self.c)
        return QuadInt(self.field, a2, b2)

    def __str__(self):
        return f"[{self.a}, {self.b}+w, {self.c}]"

    def to_json(self) -> list[int]:
        return [self.a, self.b, self.c]

    @staticmethod
    def from_json(field: QuadField, data: list) -> "QuadIdeal":
        a, b, c = (int(x) for x in data)
        return QuadIdeal(field, a, b, c)

    @staticmethod
    def parse(field: QuadField, text: str) -> "QuadIdeal":
        m = re.fullmatch(r"\s*\[\s*(-?\d+)\s*,\s*(-?\d+)\s*\+\s*w\s*,\s*(-?\d+)\s*\]\s*", text)
        if not m:
            raise InputError(f"cannot parse ideal {text!r}; expected \"[a, b+w, c]\"")
        return QuadIdeal(field, int(m.group(1)), int(m.group(2)), int(m.group(3)))


def ideal_from_module(field: QuadField, gens: list[QuadInt]) -> QuadIdeal:
    """Normal form of the Z-module spanned by the generators, which must be
    an O-module (checked)."""
    rows = [[g.b, g.a] for g in gens if not g.is_zero()]  # (w, 1) coordinates
    if not rows:
        raise InputError("zero module is not an ideal")
    basis = hnf_rows(rows, 2)
    if len(basis) != 2:
        raise InputError("module has rank < 2, not an ideal")
    # basis = [(V, B'), (0, A')]: module Z*(B' + V w) + Z*A'
    (v, bq), (z, aq) = basis
    assert z == 0
    if aq % v != 0 or bq % v != 0:
        raise InputError("module is not closed under multiplication by w")
    c, a, b = v, aq // v, (bq // v) % (aq // v)
    ideal = QuadIdeal(field, a, b, c)
    g1, g2 = ideal.basis()
    w = field.omega()
    for g in (g1, g2):
        if not ideal.contains(g * w):
            raise InputError("module is not closed under multiplication by w")
    return ideal


def principal_ideal(x: QuadInt) -> QuadIdeal:
    if x.is_zero():
        raise InputError("zero element generates no ideal")
    return ideal_from_module(x.field, [x, x * x.field.omega()])


def ideal_from_int(field: QuadField, n: int) -> QuadIdeal:
    return principal_ideal(QuadInt(field, n, 0))


def ideal_mul(x: QuadIdeal, y: QuadIdeal) -> QuadIdeal:
    if x.field != y.field:
        raise InputError("ideals from different fields")
    g1, g2 = x.basis()
    h1, h2 = y.basis()
    return ideal_from_module(x.field, [g1 * h1, g1 * h2, g2 * h1, g2 * h2])


def ideal_gcd(x: QuadIdeal, y: QuadIdeal) -> QuadIdeal:
    """The ideal sum x + y, i.e. the gcd in the divisibility order."""
    if x.field != y.field:
        raise InputError("ideals from different fields")
    return ideal_from_module(x.field, list(x.basis()) + list(y.basis()))


def ideal_div(x: QuadIdeal, y: QuadIdeal) -> QuadIdeal:
    """Exact ideal quotient x / y; errors if y does not divide x."""
    num = ideal_mul(x, y.conj())
    n = y.norm()
    g1, g2 = num.basis()
    for g in (g1, g2):
        if g.a % n or g.b % n:
            raise InputError("ideal division is not exact")
    return ideal_from_module(x.field, [QuadInt(x.field, g1.a // n, g1.b // n), QuadInt(x.field, g2.a // n, g2.b // n)])


def ideal_divides(d: QuadIdeal, x: QuadIdeal) -> bool:
    g1, g2 = x.basis()
    return d.contains(g1) and d.contains(g2)


def norm_solutions(field: QuadField, n: int) -> list[QuadInt]:
    """All integers of the field with norm exactly n (n >= 0).

    The norm form is positive definite: 4*N(u+v*w) = (2u+tv)^2 + |disc|*v^2,
    so the search region is a finite ellipse.
    """
    if n < 0:
        return []
    if n == 0:
        return [QuadInt(field, 0, 0)]
    t = field.trace_w
    absd = -field.disc
    out = []
    vmax = isqrt(4 * n // absd)
    for v in range(-vmax, vmax + 1):
        rem = 4 * n - absd * v * v
        s = isqrt(rem)
        if s * s != rem:
            continue
        for sign in ((s, -s) if s else (s,)):
            if (sign - t * v) % 2 == 0:
                out.append(QuadInt(field, (sign - t * v) // 2, v))
    return out


def is_principal(ideal: QuadIdeal) -> QuadInt | None:
    """A generator if the ideal is principal, else None.

    Searches the finitely many elements of norm N(ideal); any such element
    lying in the ideal generates it (equal norms force equality).
    """
    n = ideal.norm()
    for x in norm_solutions(ideal.field, n):
        if ideal.contains(x):
            return x
    return None


def primes_above(p: int, field: QuadField) -> list[tuple[QuadIdeal, int, int]]:
    """Primes of the field above a rational prime p, as (ideal, e, f) with
    sum of e*f equal to 2."""
    if not is_prime(p):
        raise InputError(f"{p} is not prime")
    t, n = field.trace_w, field.norm_w
    # b with p | N(b + w), i.e. roots of x^2 + t*x + n mod p
    roots = [b for b in range(p) if (b * b + t * b + n) % p == 0]
    if not roots:
        return [(ideal_from_int(field, p), 1, 2)]
    if len(roots) == 1 or roots[0] == roots[-1] or (len(roots) == 2 and roots[0] == roots[1]):
        pass
    ideals = []
    for b in sorted(set(roots)):
        ideals.append(ideal_from_module(field, [QuadInt(field, p, 0), QuadInt(field, b, 1), QuadInt(field, 0, p), QuadInt(field, b, 1) * field.omega()]))
    if len(ideals) == 2:
        return [(ideals[0], 1, 1), (ideals[1], 1, 1)]
    # single root: ramified iff p divides the discriminant
    if field.disc % p == 0:
        return [(ideals[0], 2, 1)]
    return [(ideals[0], 1, 1), (ideal_div(ideal_from_int(field, p), ideals[0]), 1, 1)]


def ideal_valuation(x: QuadIdeal, q: QuadIdeal) -> int:
    """Largest k with q^k dividing x."""
    v = 0
    cur = x
    while ideal_divides(q, cur):
        cur = ideal_div(cur, q)
        v += 1
    return v


def ideal_factor(x: QuadIdeal) -> list[tuple[QuadIdeal, int]]:
    """Prime factorization, primes sorted by (norm, triple)."""
    out = []
    for p, _ in factor(x.norm()).factors:
        for q, _, _ in primes_above(p, x.field):
            v = ideal_valuation(x, q)
            if v:
                out.append((q, v))
    out.sort(key=lambda t: (t[0].norm(), t[0].a, t[0].b, t[0].c))
    rebuilt = ideal_from_int(x.field, 1)
    for q, v in out:
        for _ in range(v):
            rebuilt = ideal_mul(rebuilt, q)
    assert rebuilt == x, "ideal factorization failed to rebuild"
    return out


def ideal_divisors(x: QuadIdeal) -> list[QuadIdeal]:
    """All ideal divisors, sorted by (norm, triple)."""
    divs = [ideal_from_int(x.field, 1)]
    for q, v in ideal_factor(x):
        divs = [ideal_mul(d, _ideal_pow(q, k)) for d in divs for k in range(v + 1)]
    return sorted(divs, key=lambda i: (i.norm(), i.a, i.b, i.c))


def _ideal_pow(q: QuadIdeal, k: int) -> QuadIdeal:
    out = ideal_from_int(q.field, 1)
    for _ in range(k):
        out = ideal_mul(out, q)
    return out


def ideals_of_norm_up_to(field: QuadField, bound: int) -> list[QuadIdeal]:
    """All nonzero integral ideals of norm <= bound, sorted by (norm, triple)."""
    out = []
    for a in range(1, bound + 1):
        t, n = field.trace_w, field.norm_w
        for b in range(a):
            if (b * b + t * b + n) % a == 0:
                cmax = isqrt(bound // a)
                for c in range(1, cmax + 1):
                    out.append(QuadIdeal(field, a, b, c))
    return sorted(out, key=lambda i: (i.norm(), i.a, i.b, i.c))


# ---------------------------------------------------------------------------
# Class groups from reduced forms


def reduced_forms(disc: int) -> list[tuple[int, int, int]]:
    """Reduced primitive binary quadratic forms (A,B,C) of the given
    negative fundamental discriminant."""
    forms = []
    amax = isqrt(-disc // 3)
    for A in range(1, amax + 1):
        for B in range(-A + 1, A + 1):
            num = B * B - disc
            if num % (4 * A):
                continue
            C = num // (4 * A)
            if C < A:
                continue
            if B < 0 and (abs(B) == A or A == C):
                continue
            if gcd(gcd(A, B), C) != 1:
                continue
            forms.append((A, B, C))
    return sorted(forms)


def form_to_ideal(field: QuadField, form: tuple[int, int, int]) -> QuadIdeal:
    """The ideal Z*A + Z*((-B + sqrt(disc))/2) attached to a reduced form."""
    A, B, _ = form
    if field.d % 4 == 1:
        # sqrt(d) = 2w - 1, and B is odd
        b = (-(B + 1) // 2) % A
    else:
        # sqrt(d) = w, and B is even
        b = (-B // 2) % A
    ideal = QuadIdeal(field, A, b, 1)
    assert ideal.norm() == A
    return ideal


@dataclass(frozen=True)
class ClassGroup:
    field: QuadField
    reps: tuple[QuadIdeal, ...]
    table: tuple[tuple[int, ...], ...]

    @property
    def order(self) -> int:
        return len(self.reps)

    def class_of(self, ideal: QuadIdeal) -> int:
        for k, rep in enumerate(self.reps):
            if is_principal(ideal_mul(ideal, rep.conj())) is not None:
                return k
        raise InputError("ideal matched no class (corrupt class group)")


@lru_cache(maxsize=None)
def class_group(field: QuadField) -> ClassGroup:
    """The ideal class group, realized on the ideals of the reduced forms of
    the field discriminant, with composition computed by ideal
    multiplication plus principality reduction."""
    forms = reduced_forms(field.disc)
    reps = [form_to_ideal(field, f) for f in forms]
    one = ideal_from_int(field, 1)
    idx0 = next(k for k, r in enumerate(reps) if is_principal(r) is not None)
    # put the principal class first for a deterministic identity slot
    reps[0], reps[idx0] = reps[idx0], reps[0]
    table = []
    for i, ri in enumerate(reps):
        row = []
        for j, rj in enumerate(reps):
            prod = ideal_mul(ri, rj)
            k = next(
                k for k, rk in enumerate(reps) if is_principal(ideal_mul(prod, rk.conj())) is not None
            )
            row.append(k)
        table.append(tuple(row))
    cg = ClassGroup(field, tuple(reps), tuple(table))
    _check_abelian_group(cg.table)
    assert one == one
    return cg


def _check_abelian_group(table: tuple[tuple[int, ...], ...]):
    n = len(table)
    for i in range(n):
        if table[0][i] != i or table[i][0] != i:
            raise InputError("identity fails in group table")
        if sorted(table[i]) != list(range(n)):
            raise InputError("row is not a permutation; inverses fail")
        for j in range(n):
            if table[i][j] != table[j][i]:
                raise InputError("group table is not abelian")


# ---------------------------------------------------------------------------
# Residue unit groups


@dataclass(frozen=True)
class ResidueUnitGroup:
    """(O/f)* with explicit element list and multiplication mod f."""

    modulus: QuadIdeal
    elements: tuple[QuadInt, ...]

    def index_of(self, x: QuadInt) -> int:
        r = self.modulus.reduce(x)
        for k, e in enumerate(self.elements):
            if e == r:
                return k
        raise InputError("element is not a unit residue")

    def mul(self, i: int, j: int) -> int:
        return self.index_of(self.elements[i] * self.elements[j])

    @property
    def order(self) -> int:
        return len(self.elements)


def residue_units(modulus: QuadIdeal, bound: int = 10**6) -> ResidueUnitGroup:
    """All residues mod f coprime to f, by exhaustive enumeration."""
    if modulus.norm() > bound:
        raise BoundExceededError(f"norm {modulus.norm()} exceeds residue bound {bound}")
    field = modulus.field
    one = ideal_from_int(field, 1)
    elems = []
    for r in modulus.residues():
        if r.is_zero():
            continue
        if ideal_gcd(principal_ideal(r), modulus) == one:
            elems.append(r)
    if not elems:
        # f = (1): the group is trivial with representative 0 == 1
        elems = [modulus.reduce(field.one())]
    return ResidueUnitGroup(modulus, tuple(elems))
