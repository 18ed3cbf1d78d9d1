"""Cocharacters, the root grading they induce, and P/L/U membership."""

from __future__ import annotations

from dataclasses import dataclass

from .words import CollectionError, GroupWord, RootElem, TorusElem, collect


@dataclass(frozen=True)
class Cocharacter:
    """lambda = sum_i coeffs[i] alpha_i^vee."""
    coeffs: tuple

    def __post_init__(self):
        object.__setattr__(self, "coeffs", tuple(int(c) for c in self.coeffs))

    def __str__(self):
        return "cochar(" + ",".join(str(c) for c in self.coeffs) + ")"


def as_cochar(lam):
    return lam if isinstance(lam, Cocharacter) else Cocharacter(tuple(lam))


def coroot_cochar(rs, root):
    """The cocharacter xi^vee of a root."""
    return Cocharacter(rs.coroot_coeffs(root))


def weight(rs, lam, zeta):
    """<zeta, lambda>: lambda(a) e_zeta(x) lambda(a)^-1 = e_zeta(a^n x)."""
    lam = as_cochar(lam)
    if len(lam.coeffs) != rs.rank:
        raise ValueError(f"cocharacter has {len(lam.coeffs)} entries, rank is {rs.rank}")
    z = rs.root(zeta)
    return sum(c * rs.pairing(z, s) for c, s in zip(lam.coeffs, rs.simple) if c)


def classify(rs, lam):
    """Root indices of P_lambda (weight >= 0), L_lambda (= 0) and R_u(P_lambda) (> 0)."""
    P, L, U = [], [], []
    for r in rs.roots:
        w = weight(rs, lam, r)
        if w >= 0:
            P.append(r.index)
        if w == 0:
            L.append(r.index)
        if w > 0:
            U.append(r.index)
    key = lambda i: (abs(i), i < 0)
    return {"P": sorted(P, key=key), "L": sorted(L, key=key), "U": sorted(U, key=key)}


def take_limit(lam, w):
    """lim_{a->0} lambda(a) w lambda(a)^-1 as a word, or None when there is no limit.

    Torus components are lambda-fixed.  Root factors are first collected in
    the tri-graded order; any surviving factor of negative weight means no
    limit, positive-weight factors tend to 1.
    """
    lam = as_cochar(lam)
    G = w.group
    cw = collect(w, cochar=lam)
    kept = []
    for f in cw.factors:
        n = weight(G.rs, lam, f.root)
        if n < 0:
            return None
        if n == 0:
            kept.append(f)
    head = (cw.torus,) if cw.torus is not None else ()
    return GroupWord(G, head + tuple(kept))


def take_limit_tuple(lam, ws):
    out = []
    for w in ws:
        lim = take_limit(lam, w)
        if lim is None:
            return None
        out.append(lim)
    return tuple(out)


def tri_graded_parts(w, lam):
    """(U^- part, L part, U^+ part) of the collected form of ``w``."""
    lam = as_cochar(lam)
    G = w.group
    cw = collect(w, cochar=lam)
    parts = ([], [], [])
    for f in cw.factors:
        n = weight(G.rs, lam, f.root)
        parts[(n > 0) - (n < 0) + 1].append(f)
    return cw.torus, tuple(tuple(p) for p in parts)


def in_parabolic(w, lam):
    """True iff ``w`` lies in P_lambda, decided on the U^- . L . U^+ normal form.

    Raises CollectionError ("indeterminate") when the word cannot be brought
    into that form by collection.
    """
    _, (neg, _, _) = tri_graded_parts(w, lam)
    return not neg


def sigma_cochar_classes(rs, lam, perm):
    """Image of the classification under a root permutation {index: index}."""
    c = classify(rs, lam)
    return {k: sorted((perm[i] for i in v), key=lambda i: (abs(i), i < 0)) for k, v in c.items()}
