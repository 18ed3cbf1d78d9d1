"""Words in root elements, coroot-torus elements and Weyl representatives.

A :class:`ChevalleyGroup` bundles a root system, its structure constants,
the adjoint representation and a coefficient field K = F_q(t).  Words are
free products of factors; equality of group elements is only decided after
:func:`collect` (or through the adjoint representation, :func:`ad_matrix`).
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass

from .fields import FieldElem, RationalFunctionField
from .lie import AdjointRep, _sp_mul, adjoint_rep, compute_structure_constants
from .polyring import MPoly, simplify
from .rootsys import build_root_system


class CollectionError(ValueError):
    """Raised when a word leaves the collectible (nilpotent or graded) fragment."""


MAX_COLLECTION_STEPS = 200_000


# ---------------------------------------------------------------------------
# factors

@dataclass(frozen=True)
class RootElem:
    root: int
    value: object

    def inverse(self):
        return RootElem(self.root, -self.value)


@dataclass(frozen=True)
class TorusElem:
    """prod_i alpha_i^vee(values[i]) over the simple coroots."""
    values: tuple

    def inverse(self):
        return TorusElem(tuple(v.inv() for v in self.values))

    def __mul__(self, other):
        return TorusElem(tuple(a * b for a, b in zip(self.values, other.values)))

    def is_identity(self):
        return all(v.is_one() for v in self.values)


@dataclass(frozen=True)
class WeylRep:
    """n_xi = e_xi(1) e_-xi(-1) e_xi(1); its inverse is n_-xi."""
    root: int

    def inverse(self):
        return WeylRep(-self.root)


def _value_str(v):
    s = str(v)
    return s


class GroupWord:
    __slots__ = ("group", "factors")

    def __init__(self, group, factors=()):
        self.group = group
        self.factors = tuple(f for f in factors if not (isinstance(f, RootElem) and f.value.is_zero()))

    def __mul__(self, other):
        if not isinstance(other, GroupWord):
            return NotImplemented
        if other.group is not self.group:
            raise ValueError("words from different groups")
        return GroupWord(self.group, self.factors + other.factors)

    def inverse(self):
        return GroupWord(self.group, tuple(f.inverse() for f in reversed(self.factors)))

    def __len__(self):
        return len(self.factors)

    def __iter__(self):
        return iter(self.factors)

    def root_factors(self):
        return [f for f in self.factors if isinstance(f, RootElem)]

    def roots(self):
        return [f.root for f in self.factors if isinstance(f, RootElem)]

    def is_empty(self):
        return not self.factors

    def __str__(self):
        if not self.factors:
            return "1"
        parts = []
        for f in self.factors:
            if isinstance(f, RootElem):
                parts.append(f"e({f.root}, {_value_str(f.value)})")
            elif isinstance(f, WeylRep):
                parts.append(f"n({f.root})")
            else:
                parts.append("torus(" + ", ".join(f"{i + 1}={v}" for i, v in enumerate(f.values) if not v.is_one()) + ")")
        return " * ".join(parts)

    def __repr__(self):
        return f"GroupWord({self})"

    def to_json(self):
        out = []
        for f in self.factors:
            if isinstance(f, RootElem):
                out.append({"kind": "root", "root": f.root, "value": str(f.value)})
            elif isinstance(f, WeylRep):
                out.append({"kind": "weyl", "root": f.root})
            else:
                out.append({"kind": "torus", "values": [str(v) for v in f.values]})
        return {"type": self.group.rs.type_label, "q": self.group.field.q, "factors": out}

    def dumps(self):
        return json.dumps(self.to_json(), sort_keys=True)


def word_from_json(group, data):
    from .dsl import parse_scalar

    if isinstance(data, str):
        data = json.loads(data)
    factors = []
    for f in data["factors"]:
        if f["kind"] == "root":
            factors.append(RootElem(f["root"], group.scalar(parse_scalar(f["value"], group.field))))
        elif f["kind"] == "weyl":
            factors.append(WeylRep(f["root"]))
        else:
            factors.append(TorusElem(tuple(parse_scalar(v, group.field) for v in f["values"])))
    return GroupWord(group, factors)


# ---------------------------------------------------------------------------
# the group context

class ChevalleyGroup:
    """A split Chevalley group of the given type over K = F_q(t)."""

    def __init__(self, type_label="F4", q=4, rational=True):
        if isinstance(type_label, str):
            self.rs = build_root_system(type_label)
            self.table = compute_structure_constants(self.rs)
            self.rep: AdjointRep = adjoint_rep(self.rs.type_label)
        else:
            # a prebuilt RootSystem, e.g. with a nonstandard enumeration
            self.rs = type_label
            self.table = compute_structure_constants(self.rs)
            self.rep = AdjointRep(self.table)
        self.field = RationalFunctionField(q, rational)
        self._eta = {}

    def __repr__(self):
        return f"ChevalleyGroup({self.rs.type_label}, {self.field!r})"

    @property
    def p(self):
        return self.field.p

    def scalar(self, x):
        if isinstance(x, MPoly):
            return simplify(x)
        return self.field(x)

    def var(self, name):
        return MPoly.var(self.field, name)

    def t(self):
        return self.field.t()

    # -- constructors
    def word(self, *factors):
        return GroupWord(self, factors)

    def e(self, root, value):
        idx = self.rs.root(root).index
        return GroupWord(self, (RootElem(idx, self.scalar(value)),))

    def n(self, root):
        return GroupWord(self, (WeylRep(self.rs.root(root).index),))

    def torus(self, values):
        """prod alpha_i^vee(values[i]); ``values`` is a sequence or {i (1-based): value}."""
        one = self.field.one()
        if isinstance(values, dict):
            vals = [one] * self.rs.rank
            for i, v in values.items():
                vals[i - 1] = self.field(v)
        else:
            vals = [self.field(v) for v in values]
        if any(v.is_zero() for v in vals):
            raise ValueError("torus values must be nonzero")
        return TorusElem(tuple(vals))

    def coroot_elem(self, root, value):
        """xi^vee(value) as a torus element."""
        cor = self.rs.coroot_coeffs(root)
        v = self.field(value)
        return self.torus([v ** c for c in cor])

    def cochar_elem(self, coeffs, value):
        """lambda(value) for lambda = sum c_i alpha_i^vee."""
        v = self.field(value)
        return self.torus([v ** c for c in coeffs])

    def torus_word(self, torus):
        return GroupWord(self, (torus,))

    def identity(self):
        return GroupWord(self, ())

    def root_character(self, root, torus):
        """zeta(h) = prod_i t_i^{<zeta, alpha_i^vee>}."""
        z = self.rs.root(root)
        out = self.field.one()
        for i, v in enumerate(torus.values):
            k = self.rs.pairing(z, self.rs.simple[i])
            if k:
                out = out * v ** k
        return out

    def expand_weyl(self, root):
        r = self.rs.root(root).index
        one = self.field.one()
        return [RootElem(r, one), RootElem(-r, -one), RootElem(r, one)]

    def weyl_sign(self, xi, zeta):
        """eta with n_xi e_zeta(x) n_xi^-1 = e_{s_xi zeta}(eta x), read off Ad(n_xi) over Z."""
        x, z = self.rs.root(xi).index, self.rs.root(zeta).index
        if x not in self._eta:
            self._eta[x] = _weyl_signs(self.rep, x)
        return self._eta[x][z]


def _weyl_signs(rep, x):
    M = None
    for idx, val in ((x, 1), (-x, -1), (x, 1)):
        E = _exp_int(rep, idx, val)
        M = E if M is None else _sp_mul(M, E)
    rs = rep.rs
    out = {}
    for z in rs.roots:
        col = rep.root_pos[z.index]
        target = rep.root_pos[rs.reflect(x, z.index).index]
        entries = {i: row[col] for i, row in M.items() if col in row}
        if set(entries) != {target} or entries[target] not in (1, -1):
            raise ArithmeticError("Ad(n) is not a signed permutation on root vectors")
        out[z.index] = entries[target]
    return out


def _exp_int(rep, idx, val):
    M = {i: {i: 1} for i in range(rep.dim)}
    for k, D in rep.divided_powers(idx):
        c = val ** k
        for i, row in D.items():
            tgt = M.setdefault(i, {})
            for j, v in row.items():
                tgt[j] = tgt.get(j, 0) + c * v
    return M


# ---------------------------------------------------------------------------
# collection

@dataclass
class CollectedWord:
    """Canonical form: optional leading torus element, then sorted root factors."""
    group: ChevalleyGroup
    torus: TorusElem | None
    factors: tuple

    def __eq__(self, other):
        if not isinstance(other, CollectedWord):
            return NotImplemented
        t1 = self.torus if self.torus is not None and not self.torus.is_identity() else None
        t2 = other.torus if other.torus is not None and not other.torus.is_identity() else None
        return t1 == t2 and self.factors == other.factors

    def as_word(self):
        fs = ((self.torus,) if self.torus is not None and not self.torus.is_identity() else ()) + self.factors
        return GroupWord(self.group, fs)

    def as_dict(self):
        return {f.root: f.value for f in self.factors}

    def roots(self):
        return [f.root for f in self.factors]

    def __str__(self):
        return str(self.as_word())


def position_key(rs):
    N = rs.N
    return lambda idx: idx if idx > 0 else N - idx


def graded_key(group, cochar):
    """Order U^- part, then L part, then U^+ part; enumeration order inside each."""
    from .parabolic import weight

    pos = position_key(group.rs)

    def key(idx):
        w = weight(group.rs, cochar, idx)
        return ((w > 0) - (w < 0), pos(idx))

    return key


def _normalize_value(group, v):
    v = simplify(v)
    if isinstance(v, int):
        v = group.field(v)
    return v


def collect(w, S=None, cochar=None, key=None, rng=None):
    """Collect ``w`` into canonical form.

    ``S`` optionally declares the closed root set the computation must stay in.
    With ``cochar`` the word is sorted as (weight < 0 | weight 0 | weight > 0),
    each block in enumeration order.  ``rng`` picks a random out-of-order
    adjacent pair at each step instead of the leftmost one.
    """
    G = w.group
    rs, table = G.rs, G.table
    if key is None:
        key = graded_key(G, cochar) if cochar is not None else position_key(rs)
    allowed = None if S is None else {rs.root(r).index for r in S}

    torus = None
    items = []
    for f in w.factors:
        if isinstance(f, WeylRep):
            raise CollectionError("Weyl representatives cannot be collected; conjugate by them instead")
        if isinstance(f, TorusElem):
            # e_z(x) s = s e_z(z(s)^-1 x): move s to the front
            inv = f.inverse()
            items = [[r, v * G.root_character(r, inv)] for r, v in items]
            torus = f if torus is None else torus * f
        else:
            if allowed is not None and f.root not in allowed:
                raise CollectionError(f"root {f.root} is outside the declared set")
            items.append([f.root, f.value])

    steps = 0
    i = 0
    while True:
        steps += 1
        if steps > MAX_COLLECTION_STEPS:
            raise CollectionError("indeterminate: collection did not terminate")
        # drop zeros, merge equal neighbours
        changed = True
        while changed:
            changed = False
            items = [it for it in items if not it[1].is_zero()]
            for j in range(len(items) - 1):
                if items[j][0] == items[j + 1][0]:
                    items[j][1] = items[j][1] + items[j + 1][1]
                    del items[j + 1]
                    changed = True
                    break
        bad = [j for j in range(len(items) - 1) if key(items[j][0]) > key(items[j + 1][0])]
        if not bad:
            break
        j = rng.choice(bad) if rng is not None else bad[0]
        s, u = items[j]
        r, t = items[j + 1]
        if s == -r:
            raise CollectionError(f"indeterminate: factors on roots {s} and {r} collide")
        # e_s(u) e_r(t) = e_r(t) e_s(u) [e_s(u), e_r(t)]
        tail = []
        for a, b, root, c in table.commutator_coefficients(r, s):
            if allowed is not None and root not in allowed:
                raise CollectionError(f"root {root} produced by collection is outside the declared set")
            val = ((-t) ** a) * (u ** b) * c
            tail.append([root, val])
        items[j:j + 2] = [[r, t], [s, u]] + tail

    factors = tuple(RootElem(r, _normalize_value(G, v)) for r, v in items)
    if torus is not None and torus.is_identity():
        torus = None
    return CollectedWord(G, torus, factors)


def words_equal(w1, w2, **kw):
    return collect(w1, **kw) == collect(w2, **kw)


# ---------------------------------------------------------------------------
# commutators and conjugation

def commutator_expansion(alpha, x, beta, y, group):
    """[e_beta(y), e_alpha(x)] = prod e_{i alpha + j beta}(C_{ij,alpha,beta} (-x)^i y^j)."""
    rs = group.rs
    a, b = rs.root(alpha).index, rs.root(beta).index
    if a == b or a == -b:
        raise ValueError("commutator_expansion needs alpha != +-beta")
    x, y = group.scalar(x), group.scalar(y)
    fs = []
    for i, j, root, c in group.table.commutator_coefficients(a, b):
        fs.append(RootElem(root, _normalize_value(group, ((-x) ** i) * (y ** j) * c)))
    return GroupWord(group, fs)


def conj_by_weyl(xi, w, inverse=False):
    """n_xi w n_xi^-1 (or n_xi^-1 w n_xi with ``inverse``)."""
    G = w.group
    rs = G.rs
    x = rs.root(xi).index
    if inverse:
        x = -x
    out = []
    for f in w.factors:
        if isinstance(f, RootElem):
            eta = G.weyl_sign(x, f.root)
            out.append(RootElem(rs.reflect(x, f.root).index, f.value * eta if eta == -1 else f.value))
        elif isinstance(f, TorusElem):
            out.append(_reflect_torus(G, x, f))
        else:
            # n_x n_y n_x^-1 = product of conjugated root elements of n_y
            for g in G.expand_weyl(f.root):
                eta = G.weyl_sign(x, g.root)
                out.append(RootElem(rs.reflect(x, g.root).index, g.value * eta if eta == -1 else g.value))
    return GroupWord(G, out)


def _reflect_torus(G, x, h):
    """n_x h n_x^-1: alpha_i^vee -> alpha_i^vee - <x, alpha_i^vee> x^vee."""
    rs = G.rs
    cor = rs.coroot_coeffs(x)
    vals = list(h.values)
    new = [G.field.one()] * rs.rank
    for i in range(rs.rank):
        k = rs.pairing(rs[x], rs.simple[i])
        for j in range(rs.rank):
            e = (i == j) - k * cor[j]
            if e:
                new[j] = new[j] * vals[i] ** e
    return TorusElem(tuple(new))


def reflect_torus(xi, h, group):
    return _reflect_torus(group, group.rs.root(xi).index, h)


def conj_by_torus(s, w):
    """s w s^-1: e_z(x) -> e_z(z(s) x)."""
    G = w.group
    out = []
    for f in w.factors:
        if isinstance(f, RootElem):
            out.append(RootElem(f.root, f.value * G.root_character(f.root, s)))
        elif isinstance(f, TorusElem):
            out.append(f)
        else:
            for g in G.expand_weyl(f.root):
                out.append(RootElem(g.root, g.value * G.root_character(g.root, s)))
    return GroupWord(G, out)


def conj_by_unipotent(u, w, cochar=None, S=None, rng=None):
    """u w u^-1, collected; ``u`` is a GroupWord or CollectedWord."""
    if isinstance(u, CollectedWord):
        u = u.as_word()
    return collect(u * w * u.inverse(), S=S, cochar=cochar, rng=rng)


def conjugate(g, w):
    """g w g^-1 as a word (no collection)."""
    return g * w * g.inverse()


# ---------------------------------------------------------------------------
# the adjoint representation of words (oracle)

def ad_matrix(w):
    """Ad(w) as a sparse matrix {row: {col: value}} over the parameter ring."""
    G = w.group
    rep = G.rep
    one = G.field.one()
    M = {i: {i: one} for i in range(rep.dim)}
    for f in w.factors:
        if isinstance(f, WeylRep):
            for g in G.expand_weyl(f.root):
                M = _right_mul_root(G, M, g.root, g.value)
        elif isinstance(f, TorusElem):
            M = _right_mul_torus(G, M, f)
        else:
            M = _right_mul_root(G, M, f.root, f.value)
    return M


def _right_mul_root(G, M, root, x):
    """M * exp(x ad e_root), with divided powers reduced mod p."""
    p = G.p
    out = {i: dict(row) for i, row in M.items()}
    for k, D in G.rep.divided_powers(root):
        xk = x ** k
        for i, row in M.items():
            acc = out[i]
            for j, a in row.items():
                drow = D.get(j)
                if not drow:
                    continue
                for col, d in drow.items():
                    d %= p
                    if not d:
                        continue
                    v = a * xk * d
                    acc[col] = acc[col] + v if col in acc else v
    for i in list(out):
        out[i] = {j: v for j, v in out[i].items() if not v.is_zero()}
    return out


def _right_mul_torus(G, M, h):
    rs, rep = G.rs, G.rep
    scale = {rep.root_pos[r.index]: G.root_character(r.index, h) for r in rs.roots}
    return {i: {j: (v * scale[j] if j in scale else v) for j, v in row.items()} for i, row in M.items()}


def matrices_equal(A, B):
    keys = set(A) | set(B)
    for i in keys:
        ra, rb = A.get(i, {}), B.get(i, {})
        for j in set(ra) | set(rb):
            a = ra.get(j)
            b = rb.get(j)
            if a is None:
                if not b.is_zero():
                    return False
            elif b is None:
                if not a.is_zero():
                    return False
            elif not (a - b).is_zero():
                return False
    return True


def ad_equal(w1, w2):
    return matrices_equal(ad_matrix(w1), ad_matrix(w2))


def is_identity_ad(w):
    G = w.group
    one = G.field.one()
    ident = {i: {i: one} for i in range(G.rep.dim)}
    return matrices_equal(ad_matrix(w), ident)


def random_word(group, roots, length, rng=None, values=None):
    """A random word on the given roots; values default to small elements of K."""
    rng = rng or random.Random()
    K = group.field
    t = K.t() if K.rational else K.one()
    pool = values or [K.one(), t, t + 1, t ** 2, K.gen() * t if K.q > 2 else t ** 3 + 1]
    roots = [group.rs.root(r).index for r in roots]
    return GroupWord(group, [RootElem(rng.choice(roots), rng.choice(pool)) for _ in range(length)])
