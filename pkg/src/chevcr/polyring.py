"""Multivariate polynomials over a field K = F_q(t) in named formal unknowns.

Root-element parameters are either FieldElem or MPoly; both support the
ring operations used by collection, so the word machinery never needs to
know which one it holds.
"""

from __future__ import annotations

from .fields import FieldElem, FieldError


def _mono_mul(a, b):
    if not a:
        return b
    if not b:
        return a
    d = dict(a)
    for v, e in b:
        d[v] = d.get(v, 0) + e
    return tuple(sorted(d.items()))


def _var_key(name):
    # x2 < x10 < y
    head = name.rstrip("0123456789")
    tail = name[len(head):]
    return (head, int(tail) if tail else -1)


def _mono_str(m):
    parts = []
    for v, e in sorted(m, key=lambda ve: _var_key(ve[0])):
        parts.append(v if e == 1 else f"{v}^{e}")
    return "*".join(parts)


class MPoly:
    __slots__ = ("field", "terms")

    def __init__(self, field, terms=None):
        self.field = field
        self.terms = {m: c for m, c in (terms or {}).items() if not c.is_zero()}

    @classmethod
    def var(cls, field, name):
        return cls(field, {((name, 1),): field.one()})

    @classmethod
    def const(cls, field, c):
        c = field(c)
        return cls(field, {(): c})

    def _coerce(self, other):
        if isinstance(other, MPoly):
            if other.field != self.field:
                raise FieldError("mixing polynomial rings over different fields")
            return other
        if isinstance(other, (FieldElem, int)):
            return MPoly.const(self.field, other)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        terms = dict(self.terms)
        for m, c in o.terms.items():
            terms[m] = terms[m] + c if m in terms else c
        return MPoly(self.field, terms)

    __radd__ = __add__

    def __neg__(self):
        return MPoly(self.field, {m: -c for m, c in self.terms.items()})

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
        terms = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in o.terms.items():
                m = _mono_mul(m1, m2)
                c = c1 * c2
                terms[m] = terms[m] + c if m in terms else c
        return MPoly(self.field, terms)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (FieldElem, int)):
            return self * self.field(other).inv()
        if isinstance(other, MPoly) and other.is_constant():
            return self * other.constant_value().inv()
        return NotImplemented

    def __pow__(self, n):
        if not isinstance(n, int) or n < 0:
            return NotImplemented
        result = MPoly.const(self.field, 1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def inv(self):
        if self.is_constant() and not self.is_zero():
            return MPoly.const(self.field, self.constant_value().inv())
        raise ZeroDivisionError("only nonzero constant polynomials are invertible")

    def is_zero(self):
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def is_constant(self):
        return all(m == () for m in self.terms)

    def constant_value(self):
        return self.terms.get((), self.field.zero())

    def variables(self):
        return sorted({v for m in self.terms for v, _ in m}, key=_var_key)

    def degree_in(self, name):
        return max((dict(m).get(name, 0) for m in self.terms), default=0)

    def coeff_in(self, name, e):
        """Coefficient of name^e, as a polynomial in the other unknowns."""
        out = {}
        for m, c in self.terms.items():
            d = dict(m)
            if d.get(name, 0) == e:
                d.pop(name, None)
                out[tuple(sorted(d.items()))] = c
        return MPoly(self.field, out)

    def subs(self, values):
        """Substitute unknowns by FieldElem or MPoly values."""
        result = MPoly(self.field)
        for m, c in self.terms.items():
            term = MPoly.const(self.field, c)
            for v, e in m:
                if v in values:
                    term = term * (values[v] ** e)
                else:
                    term = term * MPoly(self.field, {((v, e),): self.field.one()})
            result = result + term
        return result

    def evaluate(self, values):
        r = self.subs(values)
        if not r.is_constant():
            raise ValueError(f"unknowns {r.variables()} left unassigned")
        return r.constant_value()

    def rename(self, mapping):
        terms = {}
        for m, c in self.terms.items():
            d = {}
            for v, e in m:
                w = mapping.get(v, v)
                d[w] = d.get(w, 0) + e
            key = tuple(sorted(d.items()))
            terms[key] = terms[key] + c if key in terms else c
        return MPoly(self.field, terms)

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self.terms == o.terms

    def __hash__(self):
        if self.is_constant():
            return hash(self.constant_value())
        return hash(frozenset(self.terms.items()))

    def _sorted_terms(self):
        def key(item):
            m, _ = item
            deg = sum(e for _, e in m)
            return (-deg, [(_var_key(v), -e) for v, e in sorted(m, key=lambda ve: _var_key(ve[0]))])
        return sorted(self.terms.items(), key=key)

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for m, c in self._sorted_terms():
            cs = str(c)
            if not m:
                parts.append(cs)
                continue
            ms = _mono_str(m)
            if c.is_one():
                parts.append(ms)
            else:
                if not c.is_constant() or "+" in cs or "-" in cs.lstrip("-"):
                    cs = f"({cs})"
                parts.append(f"{cs}*{ms}")
        return "+".join(parts)

    def __repr__(self):
        return f"MPoly({self})"


def as_poly(field, x):
    if isinstance(x, MPoly):
        return x
    return MPoly.const(field, x)


def simplify(x):
    """Collapse constant polynomials back to FieldElem."""
    if isinstance(x, MPoly) and x.is_constant():
        return x.constant_value()
    return x


def is_zero(x):
    return x.is_zero()
