"""Root systems from Cartan data, with the fixed F4 labelling used throughout.

Conventions
-----------
``cartan[i][j] = <alpha_i, alpha_j^vee> = 2(alpha_i, alpha_j)/(alpha_j, alpha_j)``.
Short roots have squared length 1 and long roots 2 (3 for G2); simply laced
systems have every root of squared length 2 and count as long.

Positive roots are numbered 1..N and the negative of root i is numbered -i.
F4 follows the hardcoded table below (simple roots alpha, beta long and
gamma, delta short, diagram alpha - beta => gamma - delta); every other type
is ordered by height, then lexicographically on coefficients.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache


class RootSystemError(ValueError):
    pass


F4_TABLE = {
    1: (1, 0, 0, 0), 2: (0, 1, 0, 0), 3: (0, 0, 1, 0), 4: (1, 1, 0, 0),
    5: (0, 1, 1, 0), 6: (1, 1, 1, 0), 7: (0, 1, 2, 0), 8: (1, 1, 2, 0),
    9: (1, 2, 2, 0), 10: (0, 1, 2, 2), 11: (1, 1, 2, 2), 12: (1, 2, 2, 2),
    13: (1, 2, 3, 2), 14: (1, 2, 4, 2), 15: (1, 3, 4, 2), 16: (2, 3, 4, 2),
    17: (0, 0, 0, 1), 18: (0, 0, 1, 1), 19: (0, 1, 1, 1), 20: (1, 1, 1, 1),
    21: (0, 1, 2, 1), 22: (1, 1, 2, 1), 23: (1, 2, 2, 1), 24: (1, 2, 3, 1),
}

F4_CARTAN = ((2, -1, 0, 0), (-1, 2, -2, 0), (0, -1, 2, -1), (0, 0, -1, 2))

ROOT_COUNTS = {"E6": 72, "E7": 126, "E8": 240, "F4": 48, "G2": 12}


@dataclass(frozen=True)
class Root:
    coeffs: tuple
    index: int
    long: bool
    system: str = ""

    def __neg__(self):
        return Root(tuple(-c for c in self.coeffs), -self.index, self.long, self.system)

    @property
    def positive(self):
        return self.index > 0

    @property
    def height(self):
        return sum(self.coeffs)

    def __str__(self):
        return str(self.index)

    def __repr__(self):
        return f"Root({self.index}: {''.join(str(c) for c in self.coeffs) if self.positive else '-' + ''.join(str(-c) for c in self.coeffs)})"


def cartan_matrix(label):
    """Standard Cartan matrix for a type label such as 'F4', 'B_3' or 'G2'."""
    m = re.fullmatch(r"\s*([A-Ga-g])_?(\d+)\s*", str(label))
    if not m:
        raise RootSystemError(f"unrecognised Cartan type {label!r}")
    kind, n = m.group(1).upper(), int(m.group(2))
    if n < 1 or n > 8:
        raise RootSystemError(f"rank {n} outside 1..8")
    A = [[0] * n for _ in range(n)]
    for i in range(n):
        A[i][i] = 2
    def link(i, j, a_ij=-1, a_ji=-1):
        A[i][j], A[j][i] = a_ij, a_ji
    if kind == "A":
        for i in range(n - 1):
            link(i, i + 1)
    elif kind in "BC":
        if n < 2:
            raise RootSystemError(f"{kind}{n} needs rank >= 2")
        for i in range(n - 2):
            link(i, i + 1)
        # B: last simple root short; C: last simple root long
        if kind == "B":
            link(n - 2, n - 1, -2, -1)
        else:
            link(n - 2, n - 1, -1, -2)
    elif kind == "D":
        if n < 4:
            raise RootSystemError("D_n needs rank >= 4")
        for i in range(n - 2):
            link(i, i + 1)
        link(n - 3, n - 1)
    elif kind == "E":
        if n not in (6, 7, 8):
            raise RootSystemError(f"E{n} is not a finite type")
        # Bourbaki: 1-3-4-5-6(-7-8), 2 attached to 4
        chain = [0, 2, 3] + list(range(4, n))
        for a, b in zip(chain, chain[1:]):
            link(a, b)
        link(1, 3)
    elif kind == "F":
        if n != 4:
            raise RootSystemError("F_n exists only for n = 4")
        return [list(r) for r in F4_CARTAN]
    elif kind == "G":
        if n != 2:
            raise RootSystemError("G_n exists only for n = 2")
        # alpha_1 short, alpha_2 long
        link(0, 1, -1, -3)
    else:
        raise RootSystemError(f"unrecognised Cartan type {label!r}")
    return A


def _squared_lengths(A):
    """Relative squared lengths d_i with d_i A_ij = d_j A_ji, scaled as documented."""
    n = len(A)
    d = [None] * n
    for start in range(n):
        if d[start] is not None:
            continue
        d[start] = Fraction(1)
        stack = [start]
        while stack:
            i = stack.pop()
            for j in range(n):
                if j != i and A[i][j]:
                    # (a_i,a_j) = A_ij d_j / 2 = A_ji d_i / 2
                    val = d[i] * Fraction(A[j][i], A[i][j])
                    if d[j] is None:
                        d[j] = val
                        stack.append(j)
                    elif d[j] != val:
                        raise RootSystemError("Cartan matrix is not symmetrizable")
    # components are scaled independently
    comps = _components(A)
    out = [None] * n
    for comp in comps:
        lo = min(d[i] for i in comp)
        ratios = {d[i] / lo for i in comp}
        for i in comp:
            r = d[i] / lo
            if len(ratios) == 1:
                out[i] = Fraction(2)
            else:
                out[i] = r
    return out


def _components(A):
    n = len(A)
    seen, comps = set(), []
    for s in range(n):
        if s in seen:
            continue
        comp, stack = [], [s]
        seen.add(s)
        while stack:
            i = stack.pop()
            comp.append(i)
            for j in range(n):
                if j not in seen and A[i][j]:
                    seen.add(j)
                    stack.append(j)
        comps.append(sorted(comp))
    return comps


def _validate_cartan(A):
    n = len(A)
    if n == 0 or any(len(row) != n for row in A):
        raise RootSystemError("Cartan matrix must be square and nonempty")
    for i in range(n):
        if A[i][i] != 2:
            raise RootSystemError(f"diagonal entry ({i},{i}) is {A[i][i]}, expected 2")
        for j in range(n):
            if i != j:
                if A[i][j] > 0:
                    raise RootSystemError(f"off-diagonal entry ({i},{j}) is positive")
                if (A[i][j] == 0) != (A[j][i] == 0):
                    raise RootSystemError(f"entries ({i},{j}) and ({j},{i}) must vanish together")
    d = _squared_lengths(A)
    B = [[Fraction(A[i][j]) * d[j] / 2 for j in range(n)] for i in range(n)]
    # positive definiteness via leading principal minors (exact)
    for k in range(1, n + 1):
        if _det([row[:k] for row in B[:k]]) <= 0:
            raise RootSystemError("Cartan matrix is not of finite type (form not positive definite)")
    return d, B


def _det(M):
    M = [list(r) for r in M]
    n = len(M)
    det = Fraction(1)
    for c in range(n):
        piv = next((r for r in range(c, n) if M[r][c] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != c:
            M[c], M[piv] = M[piv], M[c]
            det = -det
        det *= M[c][c]
        for r in range(c + 1, n):
            f = M[r][c] / M[c][c]
            if f:
                for k in range(c, n):
                    M[r][k] -= f * M[c][k]
    return det


def _close_positive(A):
    """Positive roots (coefficient tuples) by closing simple roots under reflections."""
    n = len(A)
    simple = [tuple(int(i == j) for j in range(n)) for i in range(n)]
    found = set(simple)
    frontier = list(simple)
    while frontier:
        new = []
        for r in frontier:
            for i in range(n):
                # <r, alpha_i^vee> = sum_j r_j A[j][i]
                p = sum(r[j] * A[j][i] for j in range(n))
                s = tuple(r[k] - p * (k == i) for k in range(n))
                if all(c >= 0 for c in s) and any(s) and s not in found:
                    found.add(s)
                    new.append(s)
        frontier = new
        if len(found) > 200:
            raise RootSystemError("root closure does not terminate: not of finite type")
    return found


class RootSystem:
    """An enumerated crystallographic root system; immutable after construction."""

    def __init__(self, cartan, type_label=None, order=None):
        A = [list(map(int, row)) for row in cartan]
        self._sqlen, self._gram = _validate_cartan(A)
        self.cartan = tuple(tuple(r) for r in A)
        self.rank = len(A)
        if type_label is None:
            type_label = identify_type(A)
        self.type_label = _normalize_label(type_label)
        positive = _close_positive(A)
        if order is not None:
            ordered = [tuple(c) for c in order]
            if set(ordered) != positive or len(ordered) != len(positive):
                raise RootSystemError("explicit ordering is not a permutation of the positive roots")
        elif self.type_label == "F4" and self.cartan == F4_CARTAN:
            if set(F4_TABLE.values()) != positive:
                raise RootSystemError("F4 table does not match the generated root system")
            ordered = [F4_TABLE[i] for i in range(1, 25)]
        else:
            ordered = sorted(positive, key=lambda c: (sum(c), c))
        self.positive = []
        for i, c in enumerate(ordered, start=1):
            self.positive.append(Root(c, i, self._is_long(c), self.type_label))
        self.negative = [-r for r in self.positive]
        self.roots = self.positive + self.negative
        self._by_coeffs = {r.coeffs: r for r in self.roots}
        self._by_index = {r.index: r for r in self.roots}
        self.simple = self.positive_simple()
        self.N = len(self.positive)
        self._coroot = {r.index: self._compute_coroot(r) for r in self.roots}
        # <alpha_i, xi^vee> for each simple i, per root xi
        self._simple_pair = {
            r.index: tuple(sum(A[i][j] * c for j, c in enumerate(self._coroot[r.index])) for i in range(self.rank))
            for r in self.roots
        }
        self._pair = {}

    def positive_simple(self):
        out = []
        for i in range(self.rank):
            c = tuple(int(i == j) for j in range(self.rank))
            out.append(self._by_coeffs[c])
        return out

    # -- inner products
    def inner(self, a, b):
        a = a.coeffs if isinstance(a, Root) else a
        b = b.coeffs if isinstance(b, Root) else b
        return sum(a[i] * b[j] * self._gram[i][j] for i in range(self.rank) for j in range(self.rank) if a[i] and b[j])

    def norm(self, a):
        return self.inner(a, a)

    def _is_long(self, c):
        n = self.norm(c)
        return n == max(self._sqlen)

    def _compute_coroot(self, x):
        nx = self.norm(x)
        out = []
        for i, c in enumerate(x.coeffs):
            v = Fraction(c) * self._sqlen[i] / nx
            if v.denominator != 1:
                raise RootSystemError("non-integral coroot")
            out.append(int(v))
        return tuple(out)

    def _pairing_idx(self, zi, xi):
        key = (zi, xi)
        v = self._pair.get(key)
        if v is None:
            z = self._by_index[zi].coeffs
            sp = self._simple_pair[xi]
            v = self._pair[key] = sum(a * b for a, b in zip(z, sp))
        return v

    def pairing_coeffs(self, coeffs, xi):
        """<v, xi^vee> for an arbitrary integer vector v on the simple roots."""
        sp = self._simple_pair[self.root(xi).index]
        return sum(a * b for a, b in zip(coeffs, sp))

    # -- lookup
    def __getitem__(self, key):
        return self.root(key)

    def root(self, key):
        if isinstance(key, Root):
            if key.system and key.system != self.type_label:
                raise RootSystemError(f"root from {key.system} used in {self.type_label}")
            r = self._by_coeffs.get(key.coeffs)
            if r is None or r.index != key.index:
                raise RootSystemError(f"{key!r} is not a root of {self.type_label}")
            return r
        if isinstance(key, int):
            if key not in self._by_index:
                raise RootSystemError(f"no root with index {key} in {self.type_label}")
            return self._by_index[key]
        key = tuple(key)
        if key not in self._by_coeffs:
            raise RootSystemError(f"{key} is not a root of {self.type_label}")
        return self._by_coeffs[key]

    def find(self, coeffs):
        """Root with these coefficients, or None."""
        return self._by_coeffs.get(tuple(coeffs))

    def is_root(self, coeffs):
        return tuple(coeffs) in self._by_coeffs

    def add(self, a, b, i=1, j=1):
        """The root i*a + j*b, or None."""
        return self._by_coeffs.get(tuple(i * x + j * y for x, y in zip(a.coeffs, b.coeffs)))

    def __iter__(self):
        return iter(self.roots)

    def __len__(self):
        return len(self.roots)

    def __repr__(self):
        return f"RootSystem({self.type_label})"

    # -- the operations
    def pairing(self, zeta, xi):
        """<zeta, xi^vee>."""
        z, x = self.root(zeta), self.root(xi)
        return self._pairing_idx(z.index, x.index)

    def reflect(self, xi, zeta):
        """s_xi . zeta = zeta - <zeta, xi^vee> xi."""
        x, z = self.root(xi), self.root(zeta)
        n = self._pairing_idx(z.index, x.index)
        return self._by_coeffs[tuple(a - n * b for a, b in zip(z.coeffs, x.coeffs))]

    def coroot_coeffs(self, xi):
        """xi^vee in the basis of simple coroots."""
        return self._coroot[self.root(xi).index]

    def chain_length_below(self, alpha, beta):
        """Largest p with beta - p*alpha a root."""
        p = 0
        while self.add(beta, alpha, 1, -(p + 1)) is not None:
            p += 1
        return p

    def subsystem_type(self, subset):
        return subsystem_type(self, subset)

    def to_json(self):
        return {
            "type": self.type_label,
            "cartan": [list(r) for r in self.cartan],
            "roots": [{"index": r.index, "coeffs": list(r.coeffs), "length": "long" if r.long else "short"}
                      for r in self.roots],
        }

    def dumps(self):
        return json.dumps(self.to_json(), sort_keys=True)


def _normalize_label(label):
    if "+" in label:
        return label
    m = re.fullmatch(r"\s*([A-Ga-g])_?(\d+)\s*", label)
    if not m:
        raise RootSystemError(f"unrecognised Cartan type {label!r}")
    return f"{m.group(1).upper()}{int(m.group(2))}"


@lru_cache(maxsize=None)
def _build_cached(label):
    return RootSystem(cartan_matrix(label), label)


def build_root_system(spec):
    """Root system from a type label ('F4', 'B_3', ...) or an explicit Cartan matrix."""
    if isinstance(spec, str):
        return _build_cached(_normalize_label(spec))
    A = [list(r) for r in spec]
    return RootSystem(A)


def identify_type(A):
    """Cartan type label of a (possibly reducible) finite-type Cartan matrix."""
    A = [list(r) for r in A]
    _validate_cartan(A)
    labels = []
    for comp in _components(A):
        sub = [[A[i][j] for j in comp] for i in comp]
        labels.append(_irreducible_label(sub))
    return "+".join(sorted(labels, key=lambda s: (s[0], int(s[1:]))))


def _irreducible_label(A):
    n = len(A)
    d = _squared_lengths(A)
    positive = _close_positive(A)
    nroots = 2 * len(positive)
    if len(set(d)) == 1:
        if nroots == n * (n + 1):
            return f"A{n}"
        if n >= 4 and nroots == 2 * n * (n - 1):
            return f"D{n}"
        for lab, cnt in ROOT_COUNTS.items():
            if lab[0] == "E" and int(lab[1]) == n and cnt == nroots:
                return lab
        raise RootSystemError("unidentified simply-laced type")
    if n == 2 and nroots == 12:
        return "G2"
    if n == 4 and nroots == 48:
        return "F4"
    if nroots == 2 * n * n:
        if n == 2:
            return "B2"
        # count short roots: B_n has 2n of them, C_n has 2n(n-1)
        gram = [[Fraction(A[i][j]) * d[j] / 2 for j in range(n)] for i in range(n)]
        lo = min(d)
        short = sum(1 for c in positive
                    if sum(c[i] * c[j] * gram[i][j] for i in range(n) for j in range(n)) == lo)
        return f"B{n}" if 2 * short == 2 * n else f"C{n}"
    raise RootSystemError("unidentified root system")


def simple_subsystem(rs, subset):
    """A base of the root subsystem ``subset`` (closed under negation and reflections)."""
    roots = [rs.root(r) for r in subset]
    coeff_set = {r.coeffs for r in roots}
    for r in roots:
        if tuple(-c for c in r.coeffs) not in coeff_set:
            raise RootSystemError(f"subset not closed under negation (missing -{r.index})")
        for s in roots:
            if rs.reflect(r, s).coeffs not in coeff_set:
                raise RootSystemError(f"subset not closed under reflection s_{r.index}")
    # positive part w.r.t. the ambient order; simple = not a sum of two positive members
    pos = [r for r in roots if r.positive]
    pos_set = {r.coeffs for r in pos}
    base = []
    for r in pos:
        decomposable = any(
            tuple(a - b for a, b in zip(r.coeffs, s.coeffs)) in pos_set for s in pos if s != r
        )
        if not decomposable:
            base.append(r)
    return base


def subsystem_type(rs, subset):
    """Cartan type of the root subsystem spanned by ``subset``."""
    base = simple_subsystem(rs, subset)
    A = [[rs.pairing(a, b) for b in base] for a in base]
    return identify_type(A)


def diagonal_subgroup_type(rs, blocks):
    """Type of a group generated by 'diagonal' root groups.

    Each block is a list of mutually orthogonal, non-adjacent roots; the block
    contributes the simple root given by restricting any member to the torus
    spanned by the coroot sums of all blocks, with coroot the sum of the
    members' coroots.  This is how e.g. <e2(x), e-2(x), e1(x)e3(x), e-1(x)e-3(x)>
    is recognised as type G2.
    """
    blocks = [[rs.root(r) for r in b] for b in blocks]
    for b in blocks:
        for x in b:
            for y in b:
                if x != y and (rs.pairing(x, y) != 0 or rs.add(x, y) is not None or rs.add(x, y, 1, -1) is not None):
                    raise RootSystemError(f"roots {x.index}, {y.index} of a block are not orthogonal/strongly orthogonal")
    A = []
    for bi in blocks:
        rows = {tuple(sum(rs.pairing(x, y) for y in bj) for bj in blocks) for x in bi}
        if len(rows) != 1:
            raise RootSystemError("block members restrict to different characters")
        A.append(list(rows.pop()))
    return identify_type(A)
