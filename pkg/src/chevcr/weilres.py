"""R_{k'/k}(G_m) inside GL_{p^s} as explicit multiplication matrices.

Coordinates: k = F_p(u) with u -> t^(p^s) inside K = F_p(t), and
k' = k[theta]/(theta^(p^s) - u) with theta -> t.  An element of k' is a
coefficient vector (c_0, ..., c_{n-1}) over the k-basis 1, theta, ...,
theta^(n-1); its matrix acts on column vectors in that basis.
"""

from __future__ import annotations

from .fields import RationalFunctionField, is_subfield_point, sqrt_char2


class WeilError(ValueError):
    pass


class WeilRestriction:
    def __init__(self, p=2, s=1):
        if p ** s > 8:
            raise WeilError(f"p^s = {p ** s} exceeds 8")
        self.p, self.s = p, s
        self.n = p ** s
        self.K = RationalFunctionField(p)
        self.u = self.K.t() ** self.n

    def is_k(self, x):
        return is_subfield_point(x, self.n)

    def element(self, coeffs):
        cs = [self.K(c) for c in coeffs]
        if len(cs) != self.n:
            raise WeilError(f"expected {self.n} coordinates, got {len(cs)}")
        for c in cs:
            if not self.is_k(c):
                raise WeilError(f"coordinate {c} is not in k = F_{self.p}(t^{self.n})")
        return cs

    def theta(self):
        return self.basis(1)

    def basis(self, j):
        return [self.K.one() if i == j else self.K.zero() for i in range(self.n)]

    def weil_matrix(self, c):
        """Matrix of multiplication by c on the k-basis 1, theta, ..., theta^(n-1)."""
        c = self.element(c)
        n = self.n
        M = [[self.K.zero()] * n for _ in range(n)]
        for j in range(n):
            for i, ci in enumerate(c):
                d = i + j
                if d >= n:
                    M[d - n][j] = M[d - n][j] + ci * self.u
                else:
                    M[d][j] = M[d][j] + ci
        return M

    def multiply(self, c1, c2):
        """Product in k' (for homomorphism checks)."""
        c1, c2 = self.element(c1), self.element(c2)
        out = [self.K.zero()] * self.n
        for i, a in enumerate(c1):
            for j, b in enumerate(c2):
                d = i + j
                if d >= self.n:
                    out[d - self.n] = out[d - self.n] + a * b * self.u
                else:
                    out[d] = out[d] + a * b
        return out

    def add(self, c1, c2):
        return [a + b for a, b in zip(self.element(c1), self.element(c2))]

    def orbit_span_full(self, v):
        """Whether {weil_matrix(c) v} spans k^n (always true for v != 0)."""
        v = [self.K(x) for x in v]
        if len(v) != self.n:
            raise WeilError("wrong vector length")
        if all(x.is_zero() for x in v):
            raise WeilError("orbit_span_full needs a nonzero vector")
        for x in v:
            if not self.is_k(x):
                raise WeilError(f"{x} is not in k")
        images = [mat_vec(self.weil_matrix(self.basis(j)), v) for j in range(self.n)]
        return rank(images) == self.n

    def common_eigenvector(self, mode="K"):
        """A common eigenvector of all weil_matrix(c) over K (mode 'K') or over k ('k').

        Only p^s = 2 is supported.  Every weil_matrix(c) is a polynomial in
        weil_matrix(theta), so it suffices to find an eigenvector of the latter
        whose eigenvalue lies in the requested field.
        """
        if (self.p, self.s) != (2, 1):
            raise WeilError("common_eigenvector is implemented for p = 2, s = 1 only")
        if mode not in ("K", "k"):
            raise WeilError("mode must be 'K' or 'k'")
        M = self.weil_matrix(self.theta())
        trace = M[0][0] + M[1][1]
        det = M[0][0] * M[1][1] - M[0][1] * M[1][0]
        if not trace.is_zero():
            raise WeilError("unexpected nonzero trace")
        # x^2 - trace x + det = x^2 + det in characteristic 2
        lam = sqrt_char2(det)
        if lam is None or (mode == "k" and not self.is_k(lam)):
            return None
        # (M - lam I) v = 0 with v = (x, 1)
        a, b = M[0][0] - lam, M[0][1]
        if a.is_zero():
            raise WeilError("degenerate eigenvector equation")
        return [-b / a, self.K.one()]


def mat_vec(M, v):
    return [sum((row[j] * v[j] for j in range(len(v))), v[0].field.zero()) for row in M]


def mat_mul(A, B):
    n, m, r = len(A), len(B), len(B[0])
    zero = A[0][0].field.zero()
    return [[sum((A[i][k] * B[k][j] for k in range(m)), zero) for j in range(r)] for i in range(n)]


def mat_add(A, B):
    return [[a + b for a, b in zip(ra, rb)] for ra, rb in zip(A, B)]


def determinant(M):
    from .linalg import det

    return det(M)


def rank(rows):
    from .linalg import rank as _rank

    return _rank(rows)


def demo(p=2, s=1):
    """The data printed by ``chevcr weilres --demo``."""
    W = WeilRestriction(p, s)
    t = W.K.t()
    out = {
        "p": p, "s": s, "n": W.n,
        "u": str(W.u),
        "theta_matrix": [[str(x) for x in row] for row in W.weil_matrix(W.theta())],
        "det_theta": str(determinant(W.weil_matrix(W.theta()))),
        "orbit_span_full_e1": W.orbit_span_full(W.basis(0)),
    }
    if (p, s) == (2, 1):
        vK = W.common_eigenvector("K")
        vk = W.common_eigenvector("k")
        out["common_eigenvector_K"] = [str(x) for x in vK] if vK else None
        out["common_eigenvector_k"] = [str(x) for x in vk] if vk else None
        out["eigenvalue_theta"] = str(t)
    return out
