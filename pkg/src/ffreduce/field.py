"""Arithmetic in GF(q), q = p**m, backed by lookup tables.

Elements are plain ints in ``[0, q)``.  For extension fields the base-p
digits of an element are the coefficients of its polynomial
representative, constant term in the least-significant digit.
"""

from __future__ import annotations

from functools import lru_cache

MAX_ORDER = 1 << 16
# full q x q add/mul tables are built up to this order; beyond it mul goes
# through the log/exp tables
FULL_TABLE_ORDER = 256


class FieldError(ValueError):
    """Invalid field parameters or a field-domain error such as 1/0."""


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p < 4:
        return True
    if p % 2 == 0:
        return False
    d = 3
    while d * d <= p:
        if p % d == 0:
            return False
        d += 2
    return True


# -- polynomials over GF(p) as coefficient lists, constant term first -------

def _digits(value: int, p: int, m: int) -> list[int]:
    out = []
    for _ in range(m):
        value, d = divmod(value, p)
        out.append(d)
    return out


def _from_digits(digits, p: int) -> int:
    value = 0
    for d in reversed(digits):
        value = value * p + d
    return value


def _poly_rem(a: list[int], b: list[int], p: int) -> list[int]:
    """Remainder of a modulo monic b over GF(p)."""
    a = list(a)
    db = len(b) - 1
    for shift in range(len(a) - 1 - db, -1, -1):
        c = a[shift + db] % p
        if c:
            for i, bc in enumerate(b):
                a[shift + i] = (a[shift + i] - c * bc) % p
    return [x % p for x in a[:db]] if db else []


def _monic_polys(p: int, degree: int):
    """Monic polynomials of the given degree in increasing base-p order."""
    for low in range(p ** degree):
        yield _digits(low, p, degree) + [1]


def is_irreducible(poly: list[int], p: int) -> bool:
    """Trial division by every monic polynomial of degree <= deg/2."""
    deg = len(poly) - 1
    if deg < 1:
        return False
    for d in range(1, deg // 2 + 1):
        for f in _monic_polys(p, d):
            if not any(_poly_rem(poly, f, p)):
                return False
    return True


def smallest_irreducible(p: int, m: int) -> list[int]:
    """Lexicographically smallest monic irreducible of degree m over GF(p).

    Candidates are ordered by their base-p integer encoding, which is the
    lexicographic order on coefficients read from the leading term down.
    """
    for poly in _monic_polys(p, m):
        if is_irreducible(poly, p):
            return poly
    raise FieldError(f"no irreducible polynomial of degree {m} over GF({p})")


class FieldSpec:
    """The finite field GF(p**m).

    Immutable after construction.  Use :func:`field_new` (cached) rather
    than instantiating directly.
    """

    __slots__ = ("p", "m", "q", "modulus", "exp", "log", "inv_table",
                 "neg_table", "add_table", "mul_table", "generator")

    def __init__(self, p: int, m: int = 1):
        if not is_prime(p):
            raise FieldError(f"characteristic {p} is not prime")
        if m < 1:
            raise FieldError(f"extension degree must be >= 1, got {m}")
        q = p ** m
        if q > MAX_ORDER:
            raise FieldError(f"field order {p}^{m} = {q} exceeds {MAX_ORDER}")
        self.p, self.m, self.q = p, m, q
        self.modulus = smallest_irreducible(p, m)

        self.neg_table = [self._neg_slow(a) for a in range(q)]
        self._build_log_tables()
        self.inv_table = [0] * q
        for a in range(1, q):
            self.inv_table[a] = self.exp[(q - 1 - self.log[a]) % (q - 1)]

        if q <= FULL_TABLE_ORDER:
            self.add_table = [[self._add_slow(a, b) for b in range(q)]
                              for a in range(q)]
            self.mul_table = [[self._mul_log(a, b) for b in range(q)]
                              for a in range(q)]
        else:
            self.add_table = None
            self.mul_table = None

    # -- table construction --------------------------------------------------

    def _add_slow(self, a: int, b: int) -> int:
        if self.m == 1:
            return (a + b) % self.p
        if self.p == 2:
            return a ^ b
        da, db = _digits(a, self.p, self.m), _digits(b, self.p, self.m)
        return _from_digits([(x + y) % self.p for x, y in zip(da, db)], self.p)

    def _neg_slow(self, a: int) -> int:
        if self.m == 1:
            return (-a) % self.p
        return _from_digits([(-d) % self.p for d in _digits(a, self.p, self.m)],
                            self.p)

    def _polymul(self, a: int, b: int) -> int:
        p, m = self.p, self.m
        if m == 1:
            return a * b % p
        da, db = _digits(a, p, m), _digits(b, p, m)
        prod = [0] * (2 * m - 1)
        for i, x in enumerate(da):
            if x:
                for j, y in enumerate(db):
                    prod[i + j] += x * y
        return _from_digits(_poly_rem(prod, self.modulus, p), p)

    def _build_log_tables(self):
        q = self.q
        if q == 2:
            self.generator = 1
            self.exp = [1, 1]
            self.log = [0, 0]
            return
        # try x (or 2 for prime fields) first; fall back to a search
        candidates = [self.p if self.m > 1 else 2]
        candidates += [g for g in range(2, q) if g != candidates[0]]
        for g in candidates:
            exp = [1]
            cur = g
            while cur != 1:
                exp.append(cur)
                cur = self._polymul(cur, g)
            if len(exp) == q - 1:
                break
        else:  # pragma: no cover - every finite field has a primitive element
            raise FieldError("no primitive element found")
        self.generator = g
        self.exp = exp + exp
        self.log = [0] * q
        for k, v in enumerate(exp):
            self.log[v] = k

    def _mul_log(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        return self.exp[self.log[a] + self.log[b]]

    # -- arithmetic ------------------------------------------------------------

    def add(self, a: int, b: int) -> int:
        if self.add_table is not None:
            return self.add_table[a][b]
        return self._add_slow(a, b)

    def neg(self, a: int) -> int:
        return self.neg_table[a]

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg_table[b])

    def mul(self, a: int, b: int) -> int:
        if self.mul_table is not None:
            return self.mul_table[a][b]
        return self._mul_log(a, b)

    def inv(self, a: int) -> int:
        if a == 0:
            raise FieldError("inverse of zero")
        return self.inv_table[a]

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def pow(self, a: int, k: int) -> int:
        if a == 0:
            return 0 if k > 0 else 1
        return self.exp[(self.log[a] * k) % (self.q - 1)]

    def elements(self) -> range:
        return range(self.q)

    def nonzero(self) -> range:
        return range(1, self.q)

    def check(self, a: int) -> int:
        if not 0 <= a < self.q:
            raise FieldError(f"{a} is not an element of GF({self.q})")
        return a

    # -- row-vector helpers used by the matrix layer ------------------------

    def row_add_scaled(self, dst, src, lam: int) -> list[int]:
        """``dst + lam * src`` elementwise."""
        if self.m == 1:
            p = self.p
            return [(d + lam * s) % p for d, s in zip(dst, src)]
        if self.add_table is not None:
            at, mt = self.add_table, self.mul_table[lam]
            return [at[d][mt[s]] for d, s in zip(dst, src)]
        return [self.add(d, self.mul(lam, s)) for d, s in zip(dst, src)]

    def row_scale(self, row, lam: int) -> list[int]:
        if self.m == 1:
            p = self.p
            return [lam * x % p for x in row]
        if self.mul_table is not None:
            mt = self.mul_table[lam]
            return [mt[x] for x in row]
        return [self.mul(lam, x) for x in row]

    # -- identity --------------------------------------------------------------

    def __eq__(self, other):
        return (isinstance(other, FieldSpec)
                and (self.p, self.m) == (other.p, other.m))

    def __hash__(self):
        return hash((self.p, self.m))

    def __repr__(self):
        return f"GF({self.p}^{self.m})" if self.m > 1 else f"GF({self.p})"


@lru_cache(maxsize=None)
def field_new(p: int, m: int = 1) -> FieldSpec:
    """Build (or fetch the cached) GF(p**m)."""
    return FieldSpec(p, m)


def field_from_order(q: int) -> FieldSpec:
    """GF(q) for a prime power q."""
    if q < 2:
        raise FieldError(f"{q} is not a prime power")
    p = next(d for d in range(2, q + 1) if q % d == 0)
    m, rest = 0, q
    while rest % p == 0:
        rest //= p
        m += 1
    if rest != 1:
        raise FieldError(f"{q} is not a prime power")
    return field_new(p, m)
