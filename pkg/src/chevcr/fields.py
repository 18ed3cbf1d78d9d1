"""Exact arithmetic in F_q and in the rational function field F_q(t).

Elements of F_q are small integers 0..q-1 (base-p digit vectors of a
polynomial in a primitive element ``g``).  Elements of F_q(t) are reduced
fractions of dense polynomials over F_q with a monic denominator.
"""

from __future__ import annotations

import itertools
from functools import lru_cache

ALLOWED_PRIMES = (2, 3, 5)


class FieldError(ValueError):
    pass


# ---------------------------------------------------------------------------
# F_q

def _digits(n, p, m):
    return [(n // p**i) % p for i in range(m)]


def _from_digits(ds, p):
    return sum(d * p**i for i, d in enumerate(ds))


def _poly_mulmod_p(a, b, modulus, p):
    """Multiply coefficient lists a, b over F_p modulo a monic polynomial."""
    m = len(modulus) - 1
    out = [0] * (2 * m)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = (out[i + j] + x * y) % p
    for d in range(len(out) - 1, m - 1, -1):
        c = out[d]
        if c:
            for i in range(m + 1):
                out[d - m + i] = (out[d - m + i] - c * modulus[i]) % p
    return out[:m]


def _is_primitive(modulus, p):
    m = len(modulus) - 1
    q = p**m
    x = [0] * m
    if m == 1:
        # F_p itself: search a generator of the cyclic group directly.
        return True
    x[1] = 1
    cur = [1] + [0] * (m - 1)
    for k in range(1, q - 1):
        cur = _poly_mulmod_p(cur, x, modulus, p)
        if cur == [1] + [0] * (m - 1):
            return False
    cur = _poly_mulmod_p(cur, x, modulus, p)
    return cur == [1] + [0] * (m - 1)


class GF:
    """The finite field F_q, q = p^m, with lookup tables.

    Element ``k`` is the polynomial in the primitive element ``g`` whose
    coefficients are the base-p digits of ``k``.
    """

    def __init__(self, q):
        p, m = _prime_power(q)
        self.p, self.m, self.q = p, m, q
        if m == 1:
            self.modulus = (0, 1)
            gen = next(a for a in range(1, p) if len({pow(a, k, p) for k in range(p - 1)}) == p - 1) if p > 2 else 1
            self.gen = gen
            self.add_t = [[(a + b) % p for b in range(p)] for a in range(p)]
            self.mul_t = [[(a * b) % p for b in range(p)] for a in range(p)]
        else:
            for tail in itertools.product(range(p), repeat=m):
                modulus = list(tail) + [1]
                if modulus[0] == 0:
                    continue
                if _is_primitive(modulus, p):
                    break
            self.modulus = tuple(modulus)
            self.gen = p  # digits (0, 1, 0, ...): the class of x
            digits = [_digits(n, p, m) for n in range(q)]
            self.add_t = [[_from_digits([(x + y) % p for x, y in zip(digits[a], digits[b])], p)
                           for b in range(q)] for a in range(q)]
            self.mul_t = [[_from_digits(_poly_mulmod_p(digits[a], digits[b], modulus, p), p)
                           for b in range(q)] for a in range(q)]
        self.neg_t = [next(b for b in range(q) if self.add_t[a][b] == 0) for a in range(q)]
        self.inv_t = [None] + [next(b for b in range(1, q) if self.mul_t[a][b] == 1) for a in range(1, q)]
        # discrete log w.r.t. gen, for printing
        self.log_t = {}
        cur = 1
        for k in range(q - 1):
            self.log_t[cur] = k
            cur = self.mul_t[cur][self.gen]

    def __repr__(self):
        return f"GF({self.q})"

    def __eq__(self, other):
        return isinstance(other, GF) and other.q == self.q

    def __hash__(self):
        return hash(("GF", self.q))

    def add(self, a, b):
        return self.add_t[a][b]

    def sub(self, a, b):
        return self.add_t[a][self.neg_t[b]]

    def mul(self, a, b):
        return self.mul_t[a][b]

    def neg(self, a):
        return self.neg_t[a]

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of zero in " + repr(self))
        return self.inv_t[a]

    def pow(self, a, n):
        if n < 0:
            a, n = self.inv(a), -n
        r = 1
        while n:
            if n & 1:
                r = self.mul_t[r][a]
            a = self.mul_t[a][a]
            n >>= 1
        return r

    def from_int(self, n):
        return n % self.p if self.m > 1 else n % self.p

    def power_of_gen(self, k):
        return self.pow(self.gen, k)

    def sqrt(self, a):
        """Square root in characteristic 2 (Frobenius is bijective on F_q)."""
        if self.p != 2:
            raise FieldError("sqrt only implemented in characteristic 2")
        return self.pow(a, self.q // 2)

    def cube_root_of_unity(self):
        """An element b != 1 with b^3 = 1, or None when 3 does not divide q-1."""
        if (self.q - 1) % 3:
            return None
        return self.power_of_gen((self.q - 1) // 3)

    def elem_str(self, a):
        if self.m == 1:
            return str(a)
        if a == 0:
            return "0"
        k = self.log_t[a]
        if k == 0:
            return "1"
        return "g" if k == 1 else f"g^{k}"


def _prime_power(q):
    for p in ALLOWED_PRIMES:
        m, r = 0, q
        while r % p == 0:
            r //= p
            m += 1
        if r == 1 and m >= 1:
            if m > 4:
                raise FieldError(f"q = {q}: extension degree above 4 is not supported")
            return p, m
    raise FieldError(f"q = {q} is not a power of 2, 3 or 5")


@lru_cache(maxsize=None)
def gf(q):
    return GF(q)


# ---------------------------------------------------------------------------
# dense polynomials over F_q: tuples of coefficients, lowest degree first

def ptrim(a):
    a = list(a)
    while a and a[-1] == 0:
        a.pop()
    return tuple(a)


def padd(F, a, b):
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, c in enumerate(b):
        out[i] = F.add_t[out[i]][c]
    return ptrim(out)


def pneg(F, a):
    return tuple(F.neg_t[c] for c in a)


def psub(F, a, b):
    return padd(F, a, pneg(F, b))


def pmul(F, a, b):
    if not a or not b:
        return ()
    out = [0] * (len(a) + len(b) - 1)
    mul, add = F.mul_t, F.add_t
    for i, x in enumerate(a):
        if x:
            row = mul[x]
            for j, y in enumerate(b):
                if y:
                    out[i + j] = add[out[i + j]][row[y]]
    return ptrim(out)


def pscale(F, a, c):
    if c == 0:
        return ()
    return tuple(F.mul_t[c][x] for x in a)


def pdivmod(F, a, b):
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    a = list(a)
    db = len(b) - 1
    inv_lead = F.inv(b[-1])
    quot = [0] * max(len(a) - db, 0)
    for d in range(len(a) - 1, db - 1, -1):
        c = a[d]
        if c:
            f = F.mul_t[c][inv_lead]
            quot[d - db] = f
            for i, y in enumerate(b):
                a[d - db + i] = F.sub(a[d - db + i], F.mul_t[f][y])
    return ptrim(quot), ptrim(a[:db])


def pmonic(F, a):
    if not a:
        return a, 0
    lead = a[-1]
    return pscale(F, a, F.inv(lead)), lead


def pgcd(F, a, b):
    while b:
        a, b = b, pdivmod(F, a, b)[1]
    return pmonic(F, a)[0]


def pstr(F, a, var="t"):
    if not a:
        return "0"
    terms = []
    for d in range(len(a) - 1, -1, -1):
        c = a[d]
        if not c:
            continue
        cs = F.elem_str(c)
        if d == 0:
            terms.append(cs)
            continue
        mono = var if d == 1 else f"{var}^{d}"
        terms.append(mono if cs == "1" else f"{cs}*{mono}")
    return "+".join(terms).replace("+-", "-")


# ---------------------------------------------------------------------------
# F_q(t)

class RationalFunctionField:
    """K = F_q(t).  With ``rational=False`` only constants are allowed."""

    def __init__(self, q, rational=True):
        self.F = gf(q)
        self.p = self.F.p
        self.q = q
        self.rational = rational

    def __repr__(self):
        return f"F{self.q}(t)" if self.rational else f"F{self.q}"

    def __eq__(self, other):
        return isinstance(other, RationalFunctionField) and (self.q, self.rational) == (other.q, other.rational)

    def __hash__(self):
        return hash((self.q, self.rational))

    @property
    def characteristic(self):
        return self.p

    def zero(self):
        return FieldElem(self, (), (1,))

    def one(self):
        return FieldElem(self, (1,), (1,))

    def const(self, c):
        return FieldElem(self, ptrim((c,)), (1,))

    def t(self):
        if not self.rational:
            raise FieldError(f"{self!r} has no indeterminate t")
        return FieldElem(self, (0, 1), (1,))

    def gen(self):
        """The primitive element g of F_q."""
        return self.const(self.F.gen)

    def cube_root_of_unity(self):
        b = self.F.cube_root_of_unity()
        if b is None:
            raise FieldError(f"no element of order 3 in F_{self.q}")
        return self.const(b)

    def __call__(self, x):
        if isinstance(x, FieldElem):
            if x.field != self:
                raise FieldError(f"element of {x.field!r} used in {self!r}")
            return x
        if isinstance(x, int):
            return self.const(x % self.p)
        raise TypeError(f"cannot coerce {x!r} into {self!r}")

    def from_polys(self, num, den=(1,)):
        return FieldElem.make(self, ptrim(num), ptrim(den))


class FieldElem:
    """A reduced fraction num/den of polynomials over F_q, den monic."""

    __slots__ = ("field", "num", "den", "_hash")

    def __init__(self, field, num, den):
        self.field = field
        self.num = num
        self.den = den
        self._hash = None

    @classmethod
    def make(cls, field, num, den):
        F = field.F
        if not den:
            raise ZeroDivisionError("zero denominator")
        if not num:
            return cls(field, (), (1,))
        if len(den) > 1:
            g = pgcd(F, num, den)
            if len(g) > 1:
                num = pdivmod(F, num, g)[0]
                den = pdivmod(F, den, g)[0]
        lead = den[-1]
        if lead != 1:
            il = F.inv(lead)
            num, den = pscale(F, num, il), pscale(F, den, il)
        return cls(field, num, den)

    # -- coercion
    def _coerce(self, other):
        if isinstance(other, FieldElem):
            if other.field is not self.field and other.field != self.field:
                raise FieldError(f"mixing {self.field!r} and {other.field!r}")
            return other
        if isinstance(other, int):
            return self.field.const(other % self.field.p)
        return None

    # -- arithmetic
    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        F = self.field.F
        if self.den == o.den:
            return FieldElem.make(self.field, padd(F, self.num, o.num), self.den)
        num = padd(F, pmul(F, self.num, o.den), pmul(F, o.num, self.den))
        return FieldElem.make(self.field, num, pmul(F, self.den, o.den))

    __radd__ = __add__

    def __neg__(self):
        return FieldElem(self.field, pneg(self.field.F, self.num), self.den)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        F = self.field.F
        if not self.num or not o.num:
            return self.field.zero()
        if self.den == (1,) and o.den == (1,):
            return FieldElem(self.field, pmul(F, self.num, o.num), (1,))
        return FieldElem.make(self.field, pmul(F, self.num, o.num), pmul(F, self.den, o.den))

    __rmul__ = __mul__

    def inv(self):
        if not self.num:
            raise ZeroDivisionError("inverse of zero")
        return FieldElem.make(self.field, self.den, self.num)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inv()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o * self.inv()

    def __pow__(self, n):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return self.inv() ** (-n)
        result = self.field.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    # -- predicates
    def is_zero(self):
        return not self.num

    def __bool__(self):
        return bool(self.num)

    def is_one(self):
        return self.num == (1,) and self.den == (1,)

    def is_constant(self):
        return len(self.num) <= 1 and self.den == (1,)

    def __eq__(self, other):
        o = self._coerce(other) if not isinstance(other, FieldElem) else other
        if not isinstance(o, FieldElem):
            return NotImplemented
        return self.field == o.field and self.num == o.num and self.den == o.den

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.field.q, self.num, self.den))
        return self._hash

    def __str__(self):
        F = self.field.F
        n = pstr(F, self.num)
        if self.den == (1,):
            return n
        d = pstr(F, self.den)
        if sum(1 for c in self.num if c) > 1:
            n = f"({n})"
        if sum(1 for c in self.den if c) > 1 or len(self.den) > 1 and self.den[-1] != 1:
            d = f"({d})"
        return f"{n}/{d}"

    def __repr__(self):
        return f"FieldElem({self})"

    def degree_pair(self):
        return len(self.num) - 1, len(self.den) - 1


# ---------------------------------------------------------------------------
# the nonperfect subfield k = F_q(t^e) and square roots

def _in_subring(poly, e):
    return all(c == 0 for d, c in enumerate(poly) if d % e)


def is_subfield_point(x, e):
    """True iff x lies in F_q(t^e).

    Valid because the reduced form of f(t^e)/g(t^e) keeps only exponents
    divisible by e (a Bezout identity in F_q[s] survives s -> t^e).
    """
    return _in_subring(x.num, e) and _in_subring(x.den, e)


def is_k_point(x):
    """Membership in k = F_q(t^p) inside K = F_q(t); for p = 2 this is F_q(t^2)."""
    return is_subfield_point(x, x.field.p)


def sqrt_char2(x):
    """The unique y in K with y^2 = x, or None if x is not a square in K."""
    K = x.field
    if K.p != 2:
        raise FieldError("sqrt_char2 requires characteristic 2")
    if not is_k_point(x):
        return None
    F = K.F

    def root(poly):
        return ptrim([F.sqrt(c) for c in poly[::2]])

    return FieldElem.make(K, root(x.num), root(x.den))
