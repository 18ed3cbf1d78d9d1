"""Chevalley basis structure constants and the adjoint representation.

Sign convention: positive roots are ordered by their enumeration index; for
each non-simple positive root xi the extraspecial pair (a, b) has a the first
root (in that order) with xi - a a positive root, and N_{a,b} = +(p+1).  All
other constants follow from

    N_{s,r} = -N_{r,s},   N_{-r,-s} = -N_{r,s},
    N_{r,s}/(t,t) = N_{s,t}/(r,r) = N_{t,r}/(s,s)            (r+s+t = 0),
    N_{r,s}N_{t,u}/(r+s)^2 + N_{s,t}N_{r,u}/(s+t)^2
        + N_{t,r}N_{s,u}/(t+r)^2 = 0                          (r+s+t+u = 0).

The basis of the Lie algebra is e_r for r in ``rs.roots`` (positive roots
then negative roots, in index order) followed by h_1..h_n (simple coroots).
"""

from __future__ import annotations

import json
from fractions import Fraction
from functools import lru_cache
from math import factorial

from .rootsys import RootSystemError, build_root_system


class StructureConstants:
    """N_{r,s} and the commutator coefficients C_{ij,r,s} of a root system."""

    def __init__(self, rs):
        self.rs = rs
        self._N = {}
        self._extraspecial = {}
        pos = rs.positive
        for xi in pos:
            for a in pos:
                b = rs.add(xi, a, 1, -1)
                if b is not None and b.positive:
                    self._extraspecial[xi.index] = (a.index, b.index)
                    break
        for r in rs.roots:
            for s in rs.roots:
                if s.index != -r.index and rs.add(r, s) is not None:
                    self._N[(r.index, s.index)] = self._compute(r.index, s.index)
        self._C = {}

    # -- N
    def _norm(self, idx):
        return self.rs.norm(self.rs[idx])

    def _compute(self, r, s):
        key = (r, s)
        if key in self._N:
            return self._N[key]
        rs = self.rs
        R, S = rs[r], rs[s]
        if r < 0 and s < 0:
            val = -self._compute(-r, -s)
        elif r > 0 and s > 0:
            xi = rs.add(R, S)
            a, b = self._extraspecial[xi.index]
            p1 = rs.chain_length_below(rs[a], rs[b]) + 1
            if (r, s) == (a, b):
                val = p1
            elif (r, s) == (b, a):
                val = -p1
            else:
                total = Fraction(0)
                A, B = rs[a], rs[b]
                sa = rs.add(S, A, 1, -1)
                if sa is not None:
                    total += Fraction(self._compute(s, -a) * self._compute(r, -b), rs.norm(sa))
                ra = rs.add(R, A, 1, -1)
                if ra is not None:
                    total += Fraction(self._compute(-a, r) * self._compute(s, -b), rs.norm(ra))
                v = rs.norm(xi) * total / p1
                if v.denominator != 1:
                    raise ArithmeticError(f"non-integral structure constant N_{r},{s}")
                val = int(v)
        else:
            t = -rs.add(R, S).index
            if (s > 0) == (t > 0):
                v = Fraction(self._compute(s, t)) * self._norm(t) / self._norm(r)
            else:
                v = Fraction(self._compute(t, r)) * self._norm(t) / self._norm(s)
            if v.denominator != 1:
                raise ArithmeticError(f"non-integral structure constant N_{r},{s}")
            val = int(v)
        self._N[key] = val
        return val

    def N(self, r, s):
        """N_{r,s}, or None when r+s is not a root."""
        r = self.rs.root(r).index
        s = self.rs.root(s).index
        return self._N.get((r, s))

    def extraspecial_pairs(self):
        return dict(self._extraspecial)

    # -- commutator coefficients
    def _M(self, r, s, i):
        """M_{r,s,i} = N_{r,s} N_{r,r+s} ... N_{r,(i-1)r+s} / i!."""
        rs = self.rs
        R = rs[r]
        prod = 1
        cur = rs[s]
        for _ in range(i):
            n = self._N.get((r, cur.index))
            if n is None:
                return 0
            prod *= n
            cur = rs.add(R, cur)
        v = Fraction(prod, factorial(i))
        if v.denominator != 1:
            raise ArithmeticError("non-integral M coefficient")
        return int(v)

    def commutator_coefficients(self, r, s):
        """[(i, j, root_index, C_{ij,r,s})] for the roots i*r + j*s, ordered by i+j.

        The Chevalley commutator formula reads
        [x_s(u), x_r(t)] = prod x_{ir+js}(C_{ij,r,s} (-t)^i u^j)
        with [a, b] = a^-1 b^-1 a b.
        """
        rs = self.rs
        R, S = rs.root(r), rs.root(s)
        key = (R.index, S.index)
        if key in self._C:
            return self._C[key]
        if R.index == S.index or R.index == -S.index:
            raise RootSystemError("commutator coefficients need r != +-s")
        out = []
        for total in range(2, 6):
            for i in range(1, total):
                j = total - i
                root = rs.add(R, S, i, j)
                if root is None:
                    continue
                if j == 1:
                    c = self._M(R.index, S.index, i)
                elif i == 1:
                    c = (-1) ** j * self._M(S.index, R.index, j)
                elif (i, j) == (3, 2):
                    c = Fraction(self._M(rs.add(R, S).index, R.index, 2), 3)
                elif (i, j) == (2, 3):
                    c = -Fraction(2 * self._M(rs.add(R, S).index, S.index, 2), 3)
                else:
                    raise ArithmeticError(f"unexpected root {i}r+{j}s")
                if Fraction(c).denominator != 1:
                    raise ArithmeticError("non-integral commutator coefficient")
                out.append((i, j, root.index, int(c)))
        self._C[key] = out
        return out

    def to_json(self):
        return {
            "type": self.rs.type_label,
            "N": [{"r": r, "s": s, "N": n} for (r, s), n in sorted(self._N.items())],
            "C": [{"r": r.index, "s": s.index, "i": i, "j": j, "root": k, "C": c}
                  for r in self.rs.roots for s in self.rs.roots
                  if s.index not in (r.index, -r.index)
                  for (i, j, k, c) in self.commutator_coefficients(r, s)],
        }

    def dumps(self):
        return json.dumps(self.to_json(), sort_keys=True)


@lru_cache(maxsize=None)
def _cached_constants(label):
    return StructureConstants(build_root_system(label))


def compute_structure_constants(rs):
    if isinstance(rs, str):
        rs = build_root_system(rs)
    if "+" not in rs.type_label and rs is build_root_system(rs.type_label):
        return _cached_constants(rs.type_label)
    return StructureConstants(rs)


# ---------------------------------------------------------------------------
# the integral adjoint representation

def _sp_mul(A, B):
    """Product of sparse matrices stored as {row: {col: value}}."""
    out = {}
    for i, row in A.items():
        acc = {}
        for j, a in row.items():
            brow = B.get(j)
            if not brow:
                continue
            for k, b in brow.items():
                v = a * b
                if k in acc:
                    acc[k] = acc[k] + v
                else:
                    acc[k] = v
        acc = {k: v for k, v in acc.items() if v}
        if acc:
            out[i] = acc
    return out


class AdjointRep:
    """The adjoint representation of the Chevalley Z-form, as sparse integer matrices."""

    def __init__(self, table):
        self.table = table
        rs = self.rs = table.rs
        self.root_pos = {r.index: k for k, r in enumerate(rs.roots)}
        self.dim = len(rs.roots) + rs.rank
        self.h_pos = [len(rs.roots) + i for i in range(rs.rank)]
        self._ad = {}
        self._powers = {}

    def basis_label(self, k):
        if k >= len(self.rs.roots):
            return f"h{k - len(self.rs.roots) + 1}"
        return f"e{self.rs.roots[k].index}"

    def bracket_basis(self, x, y):
        """[b_x, b_y] as a dict position -> integer coefficient."""
        rs, n_roots = self.rs, len(self.rs.roots)
        if x >= n_roots and y >= n_roots:
            return {}
        if x >= n_roots:
            s = rs.roots[y]
            c = rs._simple_pair[rs.simple[x - n_roots].index]
            v = sum(a * b for a, b in zip(s.coeffs, c))
            return {y: v} if v else {}
        if y >= n_roots:
            return {k: -v for k, v in self.bracket_basis(y, x).items()}
        r, s = rs.roots[x], rs.roots[y]
        if r.index == -s.index:
            cor = rs.coroot_coeffs(r)
            return {self.h_pos[i]: c for i, c in enumerate(cor) if c}
        n = self.table._N.get((r.index, s.index))
        if n is None:
            return {}
        return {self.root_pos[rs.add(r, s).index]: n}

    def ad(self, x):
        """ad(b_x) as {row: {col: int}}."""
        if x not in self._ad:
            M = {}
            for y in range(self.dim):
                for row, v in self.bracket_basis(x, y).items():
                    M.setdefault(row, {})[y] = v
            self._ad[x] = M
        return self._ad[x]

    def ad_root(self, r):
        return self.ad(self.root_pos[self.rs.root(r).index])

    def divided_powers(self, r):
        """[(k, (ad e_r)^k / k!)] for k >= 1 with nonzero matrix (integral)."""
        idx = self.rs.root(r).index
        if idx not in self._powers:
            A = self.ad_root(idx)
            out, P, k = [], A, 1
            while P:
                D = {}
                for i, row in P.items():
                    for j, v in row.items():
                        q, rem = divmod(v, factorial(k))
                        if rem:
                            raise ArithmeticError("divided power not integral")
                        D.setdefault(i, {})[j] = q
                out.append((k, D))
                P = _sp_mul(P, A)
                k += 1
            self._powers[idx] = out
        return self._powers[idx]


@lru_cache(maxsize=None)
def adjoint_rep(label):
    return AdjointRep(compute_structure_constants(label))


def jacobi_violations(rep, limit=None):
    """All basis triples violating the Jacobi identity (empty on a correct table)."""
    bad = []

    def br(vec, y):
        out = {}
        for x, a in vec.items():
            for k, b in rep.bracket_basis(x, y).items():
                out[k] = out.get(k, 0) + a * b
        return {k: v for k, v in out.items() if v}

    for x in range(rep.dim):
        for y in range(x + 1, rep.dim):
            xy = rep.bracket_basis(x, y)
            for z in range(y + 1, rep.dim):
                total = {}
                for vec in (br(xy, z), br(rep.bracket_basis(y, z), x), br(rep.bracket_basis(z, x), y)):
                    for k, v in vec.items():
                        total[k] = total.get(k, 0) + v
                if any(total.values()):
                    bad.append((x, y, z))
                    if limit and len(bad) >= limit:
                        return bad
    return bad


# ---------------------------------------------------------------------------
# Lie algebra elements and fixed spaces

class LieElement:
    """A vector over the Chevalley basis (e_r for r in rs.roots, then h_1..h_n)."""

    __slots__ = ("rep", "coeffs")

    def __init__(self, rep, coeffs):
        if len(coeffs) != rep.dim:
            raise ValueError(f"expected {rep.dim} coefficients, got {len(coeffs)}")
        self.rep = rep
        self.coeffs = tuple(coeffs)

    @classmethod
    def from_roots(cls, rep, field, values):
        """sum of values[r] e_r; ``values`` maps root indices to scalars."""
        c = [field.zero()] * rep.dim
        for r, v in values.items():
            c[rep.root_pos[rep.rs.root(r).index]] = field(v)
        return cls(rep, c)

    def support(self):
        return [self.rep.basis_label(i) for i, c in enumerate(self.coeffs) if not c.is_zero()]

    def is_zero(self):
        return all(c.is_zero() for c in self.coeffs)

    def __add__(self, other):
        return LieElement(self.rep, [a + b for a, b in zip(self.coeffs, other.coeffs)])

    def scale(self, c):
        return LieElement(self.rep, [a * c for a in self.coeffs])

    def __eq__(self, other):
        return isinstance(other, LieElement) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __str__(self):
        parts = []
        for i, c in enumerate(self.coeffs):
            if c.is_zero():
                continue
            lab = self.rep.basis_label(i)
            parts.append(lab if c.is_one() else f"({c})*{lab}")
        return " + ".join(parts) if parts else "0"

    __repr__ = __str__


class LieCentralizerError(ValueError):
    pass


def apply_matrix(M, vec):
    """M v for a sparse matrix {row: {col: value}} and a dense coefficient list."""
    zero = vec[0] * 0 if vec else None
    out = [zero] * len(vec)
    for i, row in M.items():
        acc = None
        for j, a in row.items():
            if vec[j].is_zero():
                continue
            term = a * vec[j]
            acc = term if acc is None else acc + term
        if acc is not None:
            out[i] = acc
    return out


def _specializations(word, names, values):
    """All words obtained by assigning each formal parameter a value from ``values``."""
    from itertools import product

    from .polyring import MPoly, simplify
    from .words import GroupWord, RootElem

    for combo in product(values, repeat=len(names)):
        assign = dict(zip(names, combo))
        fs = []
        for f in word.factors:
            if isinstance(f, RootElem) and isinstance(f.value, MPoly):
                fs.append(RootElem(f.root, simplify(f.value.subs(assign))))
            else:
                fs.append(f)
        yield GroupWord(word.group, fs)


def _word_params(word):
    from .polyring import MPoly
    from .words import RootElem

    names = set()
    for f in word.factors:
        if isinstance(f, RootElem) and isinstance(f.value, MPoly):
            names.update(f.value.variables())
    return sorted(names)


def lie_centralizer(gens, subspace_roots, sample_values=None, max_rounds=3):
    """Basis of {v in span(e_r : r in subspace_roots) : Ad(g) v = v for all generators}.

    Generators are words whose parameters may be formal unknowns.  The fixed
    space is computed over K with each unknown specialized over a small set
    of values, then re-checked symbolically; if the symbolic check fails the
    sample set is enlarged.
    """
    from .linalg import nullspace
    from .words import ad_matrix

    if not gens:
        raise LieCentralizerError("need at least one generator")
    G = gens[0].group
    rep, K = G.rep, G.field
    roots = sorted({G.rs.root(r).index for r in subspace_roots}, key=lambda i: rep.root_pos[i])
    cols = [rep.root_pos[r] for r in roots]
    colset = set(cols)
    t = K.t() if K.rational else K.gen()
    pool = list(sample_values) if sample_values else [K.one(), t, t + 1]
    extra = [t ** 2, t ** 3 + 1, t ** 2 + t + 1, t ** 5 + t]

    for _ in range(max_rounds):
        rows = []
        for g in gens:
            names = _word_params(g)
            for spec in _specializations(g, names, pool):
                M = ad_matrix(spec)
                for i, row in M.items():
                    for j in cols:
                        if j in row and i not in colset and not row[j].is_zero():
                            raise LieCentralizerError(
                                f"subspace is not Ad-stable: {rep.basis_label(j)} maps onto {rep.basis_label(i)}")
                for i in cols:
                    row = M.get(i, {})
                    r = [row.get(j, K.zero()) - (K.one() if i == j else K.zero()) for j in cols]
                    if any(not x.is_zero() for x in r):
                        rows.append(r)
        basis = nullspace(rows, len(cols), K)
        full = []
        for v in basis:
            c = [K.zero()] * rep.dim
            for j, x in zip(cols, v):
                c[j] = x
            full.append(LieElement(rep, c))
        if all(is_fixed(g, v) for g in gens for v in full):
            return full
        pool = pool + [extra.pop(0)] if extra else pool
    raise LieCentralizerError("sampled fixed space failed the symbolic check")


def is_fixed(word, v):
    """Ad(word) v == v, with the word's parameters kept symbolic."""
    from .words import ad_matrix

    img = apply_matrix(ad_matrix(word), list(v.coeffs))
    return all((a - b).is_zero() for a, b in zip(img, v.coeffs))


def in_span(basis, v):
    """Whether v lies in the span of ``basis`` (LieElements over K)."""
    from .linalg import rank

    if v.is_zero():
        return True
    rows = [list(b.coeffs) for b in basis]
    return rank(rows + [list(v.coeffs)]) == rank(rows) if rows else False
