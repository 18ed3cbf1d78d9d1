"""The F4 counterexample engine.

Builds the subgroups M and H of F4 over K = F_4(t) (k = F_4(t^2), a = t^2),
derives torus-centralizer constraints, sets up and solves the rational
conjugacy equations, checks centralizers, runs the two-branch Bruhat
argument for the unique parabolic, applies the special isogeny sigma, and
aggregates everything into a pass/fail corpus.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field as dc_field

from . import fields as _fields
from .fields import is_k_point
from .lie import LieElement, in_span, lie_centralizer
from .parabolic import Cocharacter, as_cochar, classify, in_parabolic, take_limit, take_limit_tuple, weight
from .polyring import MPoly, simplify
from .rootsys import F4_TABLE, RootSystemError, subsystem_type
from .words import (
    ChevalleyGroup, CollectionError, GroupWord, RootElem, TorusElem, WeylRep,
    ad_equal, collect, conj_by_unipotent, conj_by_weyl, is_identity_ad,
)


class UnsupportedSystem(ValueError):
    """The equations leave the triangular fragment handled by the solver."""

    def __init__(self, message, equations):
        super().__init__(message)
        self.equations = equations


LAMBDA = Cocharacter((2, 4, 3, 2))
THETA = 13


# ---------------------------------------------------------------------------
# subgroups given by generator families

@dataclass
class SubgroupSpec:
    """Generator families; RootElem values may involve formal unknowns."""
    name: str
    families: list

    def conjugate(self, g, name=None):
        """g . spec: every family conjugated by g (uncollected words)."""
        return SubgroupSpec(name or f"{self.name}^g", [g * f * g.inverse() for f in self.families])

    def extend(self, families, name=None):
        return SubgroupSpec(name or self.name, list(self.families) + list(families))

    def __str__(self):
        return f"{self.name} = <" + ", ".join(str(f) for f in self.families) + ">"


def m_spec(G):
    """M = <e2(x1), e-2(x2), e1(x3)e3(x3), e-1(x4)e-3(x4)>, of type G2."""
    x1, x2, x3, x4 = (G.var(f"x{i}") for i in range(1, 5))
    return SubgroupSpec("M", [
        G.e(2, x1),
        G.e(-2, x2),
        G.e(1, x3) * G.e(3, x3),
        G.e(-1, x4) * G.e(-3, x4),
    ])


def sqrt_a(G):
    return G.t()


def a_value(G):
    return G.t() ** 2


def v_first(G, s=None):
    """v(sqrt a) = e20(sqrt a) e21(sqrt a)."""
    s = sqrt_a(G) if s is None else s
    return G.e(20, s) * G.e(21, s)


def v_second(G, s=None):
    """v(sqrt a) = e-20(sqrt a) e-21(sqrt a)."""
    s = sqrt_a(G) if s is None else s
    return G.e(-20, s) * G.e(-21, s)


def h_first_spec(G):
    """H = v(sqrt a) . M, written out with the collected generator families."""
    x1, x2, x3, x4 = (G.var(f"x{i}") for i in range(1, 5))
    a = a_value(G)
    return SubgroupSpec("H", [
        G.e(2, x1),
        G.e(-2, x2),
        G.e(1, x3) * G.e(3, x3) * G.e(14, a * x3),
        G.e(-1, x4) * G.e(-3, x4) * G.e(12, a * x4),
    ])


def h_second_spec(G):
    """H = <v(sqrt a) . M, e18(x)> with v(sqrt a) = e-20(sqrt a) e-21(sqrt a)."""
    x1, x2, x3, x4, x = (G.var(n) for n in ("x1", "x2", "x3", "x4", "x"))
    a = a_value(G)
    return SubgroupSpec("H'", [
        G.e(2, x1),
        G.e(-2, x2),
        G.e(1, x3) * G.e(3, x3) * G.e(-12, a * x3),
        G.e(-1, x4) * G.e(-3, x4) * G.e(-14, a * x4),
        G.e(18, x),
    ])


def h_second_conjugated_spec(G):
    """v(sqrt a)^-1 . H' = <M, e18(x) e-5(sqrt a x)>."""
    x = G.var("x")
    return m_spec(G).extend([G.e(18, x) * G.e(-5, sqrt_a(G) * x)], name="v^-1.H'")


def m_u13_spec(G):
    """<M, U13>."""
    return m_spec(G).extend([G.e(13, G.var("y"))], name="<M,U13>")


def word_is_k_rational(w):
    """All parameter coefficients of ``w`` lie in k."""
    for f in w.factors:
        if not isinstance(f, RootElem):
            continue
        coeffs = f.value.terms.values() if isinstance(f.value, MPoly) else [f.value]
        if not all(is_k_point(c) for c in coeffs):
            return False
    return True


def families_agree(f1, f2, cochar=None):
    """Equality of two family words, decided by collection with an adjoint fallback."""
    try:
        return collect(f1, cochar=cochar) == collect(f2, cochar=cochar)
    except CollectionError:
        return ad_equal(f1, f2)


# ---------------------------------------------------------------------------
# torus constraints

def torus_centralizer_constraint(s, roots, group):
    """Roots zeta in ``roots`` with zeta(s) != 1: their coordinates of u must vanish."""
    if s is None or s.is_identity():
        return set()
    return {group.rs.root(r).index for r in roots if not group.root_character(r, s).is_one()}


def pairing_mod3_constraint(group, coroot, roots):
    """The same set for s = coroot^vee(b) with b of order 3: <zeta, coroot^vee> != 0 mod 3."""
    return {group.rs.root(r).index for r in roots if group.rs.pairing(r, coroot) % 3}


# ---------------------------------------------------------------------------
# the conjugacy equations and their triangular solution

@dataclass
class Assignment:
    var: str
    value: object          # FieldElem, or MPoly in free unknowns for dependent ones
    kind: str              # "forced" (unique over K), "dependent", "free"
    equation: str


@dataclass
class ObstructionSystem:
    unknowns: list
    equations: list
    assignments: list = dc_field(default_factory=list)
    solution_K: dict | None = None
    solvable_K: bool | None = None
    solvable_k: bool | None = None
    justification_K: str = ""
    justification_k: str = ""
    conjugator: GroupWord | None = None
    collected: list = dc_field(default_factory=list)

    def equation_strings(self):
        return [f"{e} = 0" for e in self.equations]

    def to_json(self):
        return {
            "unknowns": list(self.unknowns),
            "equations": self.equation_strings(),
            "assignments": [{"var": a.var, "value": str(a.value), "kind": a.kind, "from": a.equation}
                            for a in self.assignments],
            "solution_K": None if self.solution_K is None else {k: str(v) for k, v in self.solution_K.items()},
            "solvable_K": self.solvable_K,
            "solvable_k": self.solvable_k,
            "justification_K": self.justification_K,
            "justification_k": self.justification_k,
        }


def _sqrt(x):
    # looked up at call time so the negative control can stub it
    return _fields.sqrt_char2(x)


def _pretty_equation(eq):
    """Render c*x + c0 or c*x^2 + c0 as an equation 'x = ...'."""
    return f"{eq} = 0"


def solve_triangular(equations, unknowns, K):
    """Solve a system in the triangular fragment.

    Returns (assignments, status, message): status is "ok", or "inconsistent"
    when the equations have no solution over K.  Raises UnsupportedSystem
    outside the fragment.
    """
    eqs = [[e, True] for e in equations]   # (polynomial, untouched by dependent substitution)
    assignments = []
    assigned = {}
    remaining = set(unknowns)
    while True:
        live = []
        for e, pure in eqs:
            e = e if isinstance(e, MPoly) else MPoly.const(K, e)
            if e.is_zero():
                continue
            if e.is_constant():
                return assignments, "inconsistent", f"{e} = 0 is contradictory"
            live.append([e, pure])
        eqs = live
        if not eqs:
            break
        progress = False
        for idx, (e, pure) in enumerate(eqs):
            vs = e.variables()
            if len(vs) != 1:
                continue
            x = vs[0]
            d = e.degree_in(x)
            c = [e.coeff_in(x, i).constant_value() for i in range(d + 1)]
            if d == 1:
                val = -c[0] / c[1]
            elif d == 2 and c[1].is_zero() and K.p == 2:
                r = _sqrt(c[0] / c[2])
                if r is None:
                    return assignments, "inconsistent", f"{x}^2 = {c[0] / c[2]} has no root in K"
                val = r
            else:
                continue
            kind = "forced" if pure else "conditional"
            assignments.append(Assignment(x, val, kind, _pretty_equation(e)))
            assigned[x] = val
            remaining.discard(x)
            eqs = [[f.subs({x: val}), p] for f, p in eqs]
            progress = True
            break
        if progress:
            continue
        # an unknown occurring linearly with a constant coefficient
        for idx, (e, pure) in enumerate(eqs):
            for x in e.variables():
                if e.degree_in(x) != 1:
                    continue
                c1 = e.coeff_in(x, 1)
                if not c1.is_constant():
                    continue
                expr = -e.coeff_in(x, 0) / c1.constant_value()
                assignments.append(Assignment(x, expr, "dependent", _pretty_equation(e)))
                assigned[x] = expr
                remaining.discard(x)
                eqs = [[f.subs({x: expr}), p and f.degree_in(x) == 0] for f, p in eqs]
                progress = True
                break
            if progress:
                break
        if not progress:
            raise UnsupportedSystem("unsupported system: no triangular step applies",
                                    [f"{e} = 0" for e, _ in eqs])
    for x in sorted(remaining, key=_unknown_key):
        assignments.append(Assignment(x, K.zero(), "free", ""))
    return assignments, "ok", ""


def _unknown_key(name):
    head = name.rstrip("0123456789")
    tail = name[len(head):]
    return (head, int(tail) if tail else -1)


def _back_substitute(assignments, K):
    values = {}
    for a in reversed(assignments):
        v = a.value
        if isinstance(v, MPoly):
            v = v.subs(values)
            if not v.is_constant():
                raise ValueError(f"unresolved unknowns {v.variables()} in {a.var}")
            v = v.constant_value()
        values[a.var] = v
    return values


def _as_dict(cw):
    return {f.root: f.value for f in cw.factors}


def _equations_between(lhs, rhs, K):
    """Coordinatewise equations lhs = rhs for two collected words."""
    if lhs.torus != rhs.torus and not (
            (lhs.torus is None or lhs.torus.is_identity()) and (rhs.torus is None or rhs.torus.is_identity())):
        raise UnsupportedSystem("torus parts differ", [f"{lhs.torus} != {rhs.torus}"])
    L, R = _as_dict(lhs), _as_dict(rhs)
    out = []
    for r in sorted(set(L) | set(R), key=lambda i: (abs(i), i < 0)):
        d = L.get(r, K.zero()) - R.get(r, K.zero())
        d = d if isinstance(d, MPoly) else MPoly.const(K, d)
        if not d.is_zero():
            out.append(d)
    return out


def build_conjugator(group, roots, exponents=None, names=None):
    """u = prod e_r(x_r^f) in index order, with unknown names x<r> by default."""
    exponents = exponents or {}
    names = names or {}
    factors, unknowns = [], []
    for r in sorted(roots, key=lambda i: (abs(i), i < 0)):
        name = names.get(r, f"x{r}")
        unknowns.append(name)
        factors.append(RootElem(r, group.var(name) ** exponents.get(r, 1)))
    return GroupWord(group, factors), unknowns


def conjugacy_obstruction(v, v_prime, lam, constraints=(), *, conjugator=None, unknowns=None,
                          check_limit=True):
    """Equations for u . v' = v with u in R_u(P_lambda), and their verdicts over K and k.

    ``constraints`` are roots whose coordinate of u vanishes.  A custom
    ``conjugator`` (with its list of unknown names) replaces the default
    u = prod_{zeta in U - constraints} e_zeta(x_zeta).
    """
    lam = as_cochar(lam)
    v, v_prime = tuple(v), tuple(v_prime)
    if not v:
        raise ValueError("empty tuple")
    G = v[0].group
    K = G.field
    if check_limit:
        lim = take_limit_tuple(lam, v)
        if lim is None:
            raise ValueError("the limit of v along lambda does not exist")
        for a, b in zip(lim, v_prime):
            if collect(a, cochar=lam) != collect(b, cochar=lam):
                raise ValueError(f"v' is not the limit of v: {b} vs {a}")
    if conjugator is None:
        U = classify(G.rs, lam)["U"]
        cons = {G.rs.root(r).index for r in constraints}
        conjugator, unknowns = build_conjugator(G, [r for r in U if r not in cons])
    unknowns = list(unknowns or [])
    equations, collected = [], []
    for vj, wj in zip(v, v_prime):
        lhs = conj_by_unipotent(conjugator, wj, cochar=lam)
        rhs = collect(vj, cochar=lam)
        collected.append(lhs)
        equations.extend(_equations_between(lhs, rhs, K))
    sysm = ObstructionSystem(unknowns, equations, conjugator=conjugator, collected=collected)
    assignments, status, msg = solve_triangular(equations, unknowns, K)
    sysm.assignments = assignments
    if status == "inconsistent":
        sysm.solvable_K = False
        sysm.solvable_k = False
        sysm.justification_K = msg
        sysm.justification_k = "no solution over K, hence none over k"
        return sysm
    sol = _back_substitute(assignments, K)
    for e in equations:
        if not simplify(e.subs(sol)).is_zero():
            raise ArithmeticError(f"solution fails equation {e} = 0")
    sysm.solution_K = sol
    sysm.solvable_K = True
    nontrivial = {x: val for x, val in sol.items() if not val.is_zero()}
    sysm.justification_K = "explicit solution " + (
        ", ".join(f"{x} = {val}" for x, val in sorted(nontrivial.items(), key=lambda kv: _unknown_key(kv[0])))
        or "u = 1")
    bad = [a for a in assignments if a.kind == "forced" and not is_k_point(a.value)]
    if bad:
        a = bad[0]
        sysm.solvable_k = False
        sysm.justification_k = f"{a.equation} forces {a.var} = {a.value}, which is not in k"
    elif all(is_k_point(x) for x in sol.values()):
        sysm.solvable_k = True
        sysm.justification_k = "the solution over K has all coordinates in k"
    else:
        sysm.solvable_k = None
        sysm.justification_k = "undetermined: the K-solution is not in k but no coordinate is forced"
    return sysm


def first_obstruction(G=None, a=None):
    """The tuple (beta^vee(b), e1(1)e3(1)e14(a)) against its limit along 13^vee."""
    G = G or f4_group()
    a = a_value(G) if a is None else G.scalar(a)
    b = G.field.cube_root_of_unity()
    h = G.torus_word(G.coroot_elem(2, b))
    v = (h, G.e(1, 1) * G.e(3, 1) * G.e(14, a))
    v_prime = (h, G.e(1, 1) * G.e(3, 1))
    cons = torus_centralizer_constraint(h.factors[0], classify(G.rs, LAMBDA)["U"], G)
    return conjugacy_obstruction(v, v_prime, LAMBDA, cons)


# ---------------------------------------------------------------------------
# centralizers

def centralizer_check(candidate, spec):
    """True iff ``candidate`` commutes with every family of ``spec`` identically in the unknowns.

    Decided in the adjoint representation; this is exact for F4, whose
    center is trivial so Ad is injective on points.
    """
    for fam in spec.families:
        if not ad_equal(candidate * fam, fam * candidate):
            return False
    return True


def commutes_by_collection(candidate, family, cochar=None):
    """The same test through collection (None when collection is unavailable)."""
    try:
        return collect(candidate * family, cochar=cochar) == collect(family * candidate, cochar=cochar)
    except CollectionError:
        return None


# ---------------------------------------------------------------------------
# the unique-parabolic argument

def _negative_constant_factor(w, lam):
    """A factor of negative weight with nonzero constant value, proving w not in P_lambda."""
    G = w.group
    cw = collect(w, cochar=lam)
    for f in cw.factors:
        if weight(G.rs, lam, f.root) < 0:
            val = simplify(f.value)
            if not isinstance(val, MPoly) and not val.is_zero():
                return f
    return None


def unique_parabolic_check(spec, lam, probes, theta=THETA, core=None):
    """Two-branch Bruhat analysis for the parabolics P_mu, mu = g . lambda, g in G_theta.

    Assumption (not checked): the identity component of the centralizer of
    ``core`` is the rank-one group G_theta on the roots +-theta.  Checked:
    G_theta-generators centralize the core, the subgroup lies in P_lambda, case 1
    (g = lambda(t) e_theta(x)) leaves P_lambda fixed, and case 2
    (g = e_theta(x1) n_theta lambda(t) e_theta(x2)) is refuted by some probe
    p in the subgroup with g^-1 . p not in P_lambda for every x1.
    """
    lam = as_cochar(lam)
    G = spec.families[0].group if spec.families else None
    report = {"spec": spec.name, "lambda": str(lam), "theta": theta}
    if all(c == 0 for c in lam.coeffs):
        report.update(vacuous=True, proper=False, conclusive=True, unique_parabolic=None,
                      note="lambda = 0 gives P_lambda = G, which is not proper")
        return report
    report["vacuous"] = False
    report["proper"] = True
    rs = G.rs
    y = G.var("y_theta")
    core = core or spec
    report["assumption"] = f"C_G({core.name})^0 = G_{theta} (rank-one group on +-{theta}); taken as given"
    report["G_theta_centralizes_core"] = (centralizer_check(G.e(theta, y), core)
                                        and centralizer_check(G.e(-theta, y), core))
    contained = []
    for fam in spec.families:
        try:
            contained.append(in_parabolic(fam, lam))
        except CollectionError:
            contained.append(False)
    report["spec_in_P_lambda"] = all(contained)
    # case 1: lambda(t) and e_theta(x) lie in P_lambda, so g P_lambda g^-1 = P_lambda
    w = weight(rs, lam, theta)
    case1 = w >= 0
    report["case1"] = {
        "form": f"g = lambda(t) e_{theta}(x1)",
        "weight_theta": w,
        "status": "P_mu = P_lambda" if case1 else "inconclusive",
    }
    # case 2: P_mu = e_theta(x1) n_theta P_lambda n_theta^-1 e_theta(-x1)
    x1 = G.var("x_bruhat")
    refuted = None
    tried = []
    for probe in probes:
        moved = G.e(theta, -x1) * probe * G.e(theta, x1)
        image = conj_by_weyl(theta, moved, inverse=True)
        try:
            wit = _negative_constant_factor(image, lam)
            image_str = str(collect(image, cochar=lam))
        except CollectionError as exc:
            wit, image_str = None, f"indeterminate ({exc})"
        plain = conj_by_weyl(theta, probe, inverse=True)
        entry = {"probe": str(probe), "n_theta^-1 . probe": str(plain),
                 "with e_theta(x1)": image_str,
                 "witness": None if wit is None else f"e({wit.root}, {wit.value})"}
        tried.append(entry)
        if wit is not None and refuted is None:
            refuted = entry
    report["case2"] = {
        "form": f"g = e_{theta}(x1) n_{theta} lambda(t) e_{theta}(x2)",
        "probes": tried,
        "status": "refuted" if refuted else "inconclusive",
    }
    ok = case1 and refuted is not None and report["spec_in_P_lambda"] and report["G_theta_centralizes_core"]
    report["conclusive"] = bool(ok)
    report["unique_parabolic"] = "P_lambda" if ok else None
    return report


# ---------------------------------------------------------------------------
# the special isogeny of F4 in characteristic 2

_SIGMA_SIMPLE = (3, 2, 1, 0)   # alpha^vee -> delta, beta^vee -> gamma, ...


def _check_sigma_group(G):
    if G.rs.type_label != "F4" or G.rs.cartan != tuple(tuple(r) for r in F4_CARTAN_ROWS):
        raise RootSystemError("the special isogeny is defined for F4 only")
    if G.p != 2:
        raise RootSystemError("the special isogeny needs characteristic 2")


F4_CARTAN_ROWS = ((2, -1, 0, 0), (-1, 2, -2, 0), (0, -1, 2, -1), (0, 0, -1, 2))


def sigma_root_map(rs):
    """Root permutation of the special isogeny: rho -> image of rho^vee under the diagram reversal.

    Validated to be a bijection exchanging long and short roots and
    reversing the simple roots.
    """
    out = {}
    for r in rs.roots:
        cor = rs.coroot_coeffs(r)
        img = [0] * rs.rank
        for i, c in enumerate(cor):
            img[_SIGMA_SIMPLE[i]] += c
        found = rs.find(tuple(img))
        if found is None:
            raise RootSystemError(f"sigma({r.index}) is not a root")
        out[r.index] = found.index
    if sorted(out.values()) != sorted(out):
        raise RootSystemError("sigma is not a bijection")
    for r in rs.roots:
        if rs[out[r.index]].long == r.long:
            raise RootSystemError("sigma must exchange long and short roots")
    for i, s in enumerate(rs.simple):
        if out[s.index] != rs.simple[_SIGMA_SIMPLE[i]].index:
            raise RootSystemError("sigma must reverse the Dynkin diagram")
    return out


def sigma_exponent(rs, root):
    """f(zeta) = 2 for short zeta, 1 for long zeta."""
    return 1 if rs.root(root).long else 2


def sigma_isogeny(w):
    """Apply sigma factorwise: e_zeta(x) -> e_sigma(zeta)(x^f(zeta))."""
    G = w.group
    _check_sigma_group(G)
    rs = G.rs
    perm = sigma_root_map(rs)
    out = []
    for f in w.factors:
        if isinstance(f, RootElem):
            out.append(RootElem(perm[f.root], f.value ** sigma_exponent(rs, f.root)))
        elif isinstance(f, WeylRep):
            out.append(WeylRep(perm[f.root]))
        else:
            out.append(sigma_torus(G, f))
    return GroupWord(G, out)


def sigma_torus(G, h):
    """sigma(alpha_i^vee(c)) = (sigma alpha_i)^vee(c^f(alpha_i))."""
    rs = G.rs
    vals = [G.field.one()] * rs.rank
    for i, c in enumerate(h.values):
        j = _SIGMA_SIMPLE[i]
        vals[j] = vals[j] * c ** sigma_exponent(rs, rs.simple[i])
    return TorusElem(tuple(vals))


def sigma_cochar(rs, lam):
    """sigma_*(sum c_i alpha_i^vee) = sum c_i f(alpha_i) (sigma alpha_i)^vee."""
    lam = as_cochar(lam)
    out = [0] * rs.rank
    for i, c in enumerate(lam.coeffs):
        out[_SIGMA_SIMPLE[i]] += c * sigma_exponent(rs, rs.simple[i])
    return Cocharacter(tuple(out))


def sigma_obstruction(G=None, squared=True):
    """The first obstruction transported by sigma.

    With ``squared`` the conjugator is sigma(u): the unknown for root i sits
    at sigma(i) raised to f(i).  Without it the unknowns at sigma(i) are
    unrestricted elements of k.
    """
    G = G or f4_group()
    _check_sigma_group(G)
    rs = G.rs
    perm = sigma_root_map(rs)
    a = a_value(G)
    b = G.field.cube_root_of_unity()
    h = G.torus_word(G.coroot_elem(2, b))
    v = (h, G.e(1, 1) * G.e(3, 1) * G.e(14, a))
    U = classify(rs, LAMBDA)["U"]
    cons = torus_centralizer_constraint(h.factors[0], U, G)
    survivors = [r for r in U if r not in cons]
    sv = tuple(sigma_isogeny(w) for w in v)
    slam = sigma_cochar(rs, LAMBDA)
    sv_prime = take_limit_tuple(slam, sv)
    if sv_prime is None:
        raise ValueError("sigma-image tuple has no limit")
    names = {perm[r]: f"x{perm[r]}" for r in survivors}
    exps = {perm[r]: sigma_exponent(rs, r) for r in survivors} if squared else {}
    u, unknowns = build_conjugator(G, [perm[r] for r in survivors], exps, names)
    sysm = conjugacy_obstruction(sv, sv_prime, slam, conjugator=u, unknowns=unknowns)
    return sysm, {"sigma_lambda": str(slam), "v": [str(w) for w in sv], "v_prime": [str(w) for w in sv_prime],
                  "conjugator": str(u), "constraints_sigma": sorted(perm[r] for r in cons)}


# ---------------------------------------------------------------------------
# the corpus

def f4_group(q=4, rs=None):
    return ChevalleyGroup(rs if rs is not None else "F4", q)


@dataclass
class ScenarioResult:
    scenario: str
    claim: str
    paper_ref: str
    status: str          # "pass" or "fail"
    witness: str

    def to_json(self):
        return {"scenario": self.scenario, "claim": self.claim, "paper_ref": self.paper_ref,
                "status": self.status, "witness": self.witness}


def _check(results, scenario, claim, ref, cond, witness):
    results.append(ScenarioResult(scenario, claim, ref, "pass" if cond else "fail", witness))


def _scenario(results, scenario, claim, ref, fn):
    try:
        cond, witness = fn()
    except Exception as exc:  # a scenario error is a failure, reported with its cause
        cond, witness = False, f"error: {type(exc).__name__}: {exc}"
    _check(results, scenario, claim, ref, cond, witness)


def run_corpus(group=None, sqrt=None):
    """Run every scenario; ``group`` and ``sqrt`` exist for negative controls."""
    G = group or f4_group()
    results = []
    saved = _fields.sqrt_char2
    if sqrt is not None:
        _fields.sqrt_char2 = sqrt
    try:
        _run_all(G, results)
    finally:
        _fields.sqrt_char2 = saved
    return results


def _run_all(G, R):
    rs = G.rs
    x = G.var("x")
    y = G.var("y")
    M = m_spec(G)

    def table_pin():
        bad = [i for i in range(1, 25) if rs[i].coeffs != F4_TABLE[i]]
        c = classify(rs, LAMBDA)
        L_ok = c["L"] == sorted([i for j in range(1, 10) for i in (j, -j)], key=lambda i: (abs(i), i < 0))
        U_ok = c["U"] == list(range(10, 25))
        typ = subsystem_type(rs, c["L"])
        cor = rs.coroot_coeffs(13)
        ok = not bad and L_ok and U_ok and typ == "B3" and tuple(cor) == LAMBDA.coeffs
        return ok, f"mismatched roots {bad}; L = +-1..+-9: {L_ok}; U = 10..24: {U_ok}; type(L) = {typ}; 13^vee = {cor}"

    _scenario(R, "f4-table", "positive roots, classification of 13^vee and Levi type B3",
              "F4 root table and the parabolic of lambda = 13^vee", table_pin)

    def m_type():
        from .rootsys import diagonal_subgroup_type
        typ = diagonal_subgroup_type(rs, [[2], [1, 3]])
        return typ == "G2", f"type of M = {typ}"

    _scenario(R, "m-type", "M is of type G2", "definition of M", m_type)

    b = G.field.cube_root_of_unity()
    hb = G.coroot_elem(2, b)
    U = classify(rs, LAMBDA)["U"]

    def constraint():
        cons = torus_centralizer_constraint(hb, U, G)
        mod3 = pairing_mod3_constraint(G, 2, U)
        want = {11, 12, 14, 15, 18, 19, 22, 23}
        return cons == want and mod3 == want, f"vanishing set {sorted(cons)}, survivors {sorted(set(U) - cons)}"

    _scenario(R, "torus-constraint", "u commuting with beta^vee(b) kills x_i for i in {11,12,14,15,18,19,22,23}",
              "first rationality proof, torus step", constraint)

    def conjugation_identity():
        cons = torus_centralizer_constraint(hb, U, G)
        u, _ = build_conjugator(G, [r for r in U if r not in cons])
        w = G.e(1, 1) * G.e(3, 1)
        got = conj_by_unipotent(u, w, cochar=LAMBDA)
        x10, x17, x20, x21 = (G.var(f"x{i}") for i in (10, 17, 20, 21))
        want = collect(G.e(1, 1) * G.e(3, 1) * G.e(11, x10) * G.e(14, x21 ** 2) * G.e(18, x17)
                       * G.e(22, x20 + x21), cochar=LAMBDA)
        oracle = ad_equal(u * w * u.inverse(), want.as_word())
        return got == want and oracle, f"u.(e1(1)e3(1)) = {got}; adjoint oracle agrees: {oracle}"

    _scenario(R, "conjugation-identity", "u.(e1(1)e3(1)) = e1(1)e3(1)e11(x10)e14(x21^2)e18(x17)e22(x20+x21)",
              "the key conjugation identity in characteristic 2", conjugation_identity)

    def limit_v():
        lim = take_limit(LAMBDA, G.e(1, 1) * G.e(3, 1) * G.e(14, a_value(G)))
        want = G.e(1, 1) * G.e(3, 1)
        return lim is not None and collect(lim) == collect(want), f"limit = {lim}"

    _scenario(R, "limit", "lim lambda(a).(e1(1)e3(1)e14(a)) = e1(1)e3(1)", "the tuple v'", limit_v)

    def obstruction():
        s = first_obstruction(G)
        eqs = {str(e) for e in s.equations}
        want = {"x10", "x21^2+t^2", "x17", "x20+x21"}
        ok = eqs == want and s.solvable_K is True and s.solvable_k is False and s.solution_K.get("x21") == G.t()
        return ok, (f"equations {sorted(eqs)}; over K: {s.solvable_K} ({s.justification_K}); "
                    f"over k: {s.solvable_k} ({s.justification_k})")

    _scenario(R, "rational-obstruction", "H = v(sqrt a).M is not G-cr over k: a = x21^2 has no solution in k",
              "first main result, rational conjugacy step", obstruction)

    def control():
        s = first_obstruction(G, a=G.t() ** 4)
        return s.solvable_K is True and s.solvable_k is True, f"a = t^4: over k {s.solvable_k} ({s.justification_k})"

    _scenario(R, "obstruction-control", "with a = t^4 a square in k the obstruction disappears",
              "control for the rational conjugacy step", control)

    def h_generators():
        v = v_first(G)
        H = h_first_spec(G)
        conj = M.conjugate(v)
        ok = all(families_agree(f1, f2) for f1, f2 in zip(conj.families, H.families))
        k_def = all(word_is_k_rational(fam) for fam in H.families)
        return ok and k_def, f"v(sqrt a).M = {H}; k-rational: {k_def}"

    _scenario(R, "h-generators", "v(sqrt a).M has the stated generators, all k-rational",
              "definition of H", h_generators)

    def separability():
        sub = list(range(10, 25))
        basis = lie_centralizer(M.families, sub)
        K = G.field
        e2021 = LieElement.from_roots(G.rep, K, {20: 1, 21: 1})
        e20 = LieElement.from_roots(G.rep, K, {20: 1})
        in_fix = in_span(basis, e2021)
        not20 = not in_span(basis, e20)
        curve = centralizer_check(G.e(20, x) * G.e(21, x), M)
        return in_fix and not20 and not curve, (
            f"fixed space basis {basis}; e20+e21 fixed: {in_fix}; e20 fixed: {not not20}; "
            f"e20(x)e21(x) centralizes M: {curve}")

    _scenario(R, "nonseparability", "e20+e21 is M-fixed in Lie(R_u(P_lambda)) but e20(x)e21(x) does not centralize M",
              "remark on nonseparable action", separability)

    def g13():
        c1 = centralizer_check(G.e(13, y), M)
        c2 = centralizer_check(G.e(-13, y), M)
        return c1 and c2, f"e13(y) centralizes M: {c1}; e-13(y) centralizes M: {c2}"

    _scenario(R, "g13-centralizes-m", "G13 <= C_G(M)^0", "second main result, centralizer of M", g13)

    H2 = h_second_spec(G)

    def h2_generators():
        v = v_second(G)
        conj = M.conjugate(v)
        ok = all(families_agree(f1, f2, cochar=LAMBDA) for f1, f2 in zip(conj.families, H2.families[:4]))
        back = H2.conjugate(v.inverse())
        want = h_second_conjugated_spec(G)
        ok2 = all(families_agree(f1, f2, cochar=LAMBDA) for f1, f2 in zip(back.families, want.families))
        inP = all(in_parabolic(f, LAMBDA) for f in back.families)
        v_out = not in_parabolic(v, LAMBDA)
        v_not_k = not all(is_k_point(f.value) for f in v.factors)
        return ok and ok2 and inP and v_out and v_not_k, (
            f"v.M families agree: {ok}; v^-1.H' = {want}: {ok2}; v^-1.H' <= P_lambda: {inP}; "
            f"v not in P_lambda: {v_out}; v not a k-point: {v_not_k}")

    _scenario(R, "h2-structure", "v(sqrt a)^-1.H' = <M, e18(x)e-5(sqrt a x)> <= P_lambda, v(sqrt a) outside P_lambda",
              "second main result, shape of H'", h2_generators)

    def h2_centralizer():
        bad = centralizer_check(G.e(-13, y), H2)
        cv = v_second(G)
        good = centralizer_check(cv * G.e(13, y) * cv.inverse(), H2)
        return (not bad) and good, f"e-13(y) centralizes H': {bad}; v.e13(y) centralizes H': {good}"

    _scenario(R, "h2-centralizer", "U-13 is not centralised by U18, while v(sqrt a).U13 centralizes H'",
              "second main result, centralizer of H'", h2_centralizer)

    def bruhat():
        probe = G.e(18, 1) * G.e(-5, sqrt_a(G))
        image = conj_by_weyl(13, probe, inverse=True)
        want = G.e(-23, 1) * G.e(-5, sqrt_a(G))
        same = collect(image, cochar=LAMBDA) == collect(want, cochar=LAMBDA)
        outside = not in_parabolic(image, LAMBDA)
        rep = unique_parabolic_check(h_second_conjugated_spec(G), LAMBDA, [probe], core=M)
        ok = same and outside and rep["case2"]["status"] == "refuted" and rep["unique_parabolic"] == "P_lambda"
        return ok, f"n13^-1.(e18(1)e-5(sqrt a)) = {image}; outside P_lambda: {outside}; case 2: {rep['case2']['status']}"

    _scenario(R, "unique-parabolic", "v(sqrt a).P_lambda is the unique proper parabolic containing H'",
              "second main result, Bruhat case analysis", bruhat)

    def not_irreducible():
        spec = m_u13_spec(G)
        rep = unique_parabolic_check(spec, LAMBDA, [G.e(13, 1)], core=M)
        w = weight(rs, LAMBDA, -13)
        out = not in_parabolic(G.e(-13, 1), LAMBDA)
        ok = rep["unique_parabolic"] == "P_lambda" and w == -2 and out
        return ok, f"unique parabolic of <M,U13>: {rep['unique_parabolic']}; weight(-13) = {w}; U-13 outside: {out}"

    _scenario(R, "m-centralizer-irreducible", "no proper parabolic contains <M, U13, U-13>",
              "M . C_G(M) is G-irreducible", not_irreducible)

    def sigma_k_point():
        out = []
        for v in (v_first(G), v_second(G)):
            s = sigma_isogeny(v)
            out.append((str(s), all(is_k_point(f.value) for f in s.factors)))
        return all(o for _, o in out), "; ".join(f"{s}: k-point {o}" for s, o in out)

    _scenario(R, "sigma-k-point", "sigma(v(sqrt a)) is a k-point", "remark on the special isogeny", sigma_k_point)

    def sigma_obstruct():
        s, meta = sigma_obstruction(G, squared=True)
        free, meta2 = sigma_obstruction(G, squared=False)
        ok = s.solvable_K is True and s.solvable_k is False
        return ok, (f"sigma(u) conjugator {meta['conjugator']}: equations {s.equation_strings()}; over k: "
                    f"{s.solvable_k} ({s.justification_k}). Unrestricted conjugator over k: {free.solvable_k} "
                    f"({free.justification_k})")

    _scenario(R, "sigma-obstruction", "with all parameters squared the sigma-twisted system has no k-solution",
              "remark on the special isogeny, twisted equation", sigma_obstruct)

    def weil():
        from .weilres import WeilRestriction
        W = WeilRestriction(2, 1)
        vK = W.common_eigenvector("K")
        vk = W.common_eigenvector("k")
        span = W.orbit_span_full(W.basis(0)) and W.orbit_span_full([1, 1])
        ok = vK is not None and vK[0] == W.K.t() and vK[1].is_one() and vk is None and span
        return ok, f"eigenvector over K: {[str(c) for c in vK] if vK else None}; over k: {vk}; orbit spans: {span}"

    _scenario(R, "weil-restriction", "R_{k'/k}(G_m) is irreducible over k but triangularizable over K",
              "Weil restriction example", weil)


def corpus_ok(results):
    return all(r.status == "pass" for r in results)


def report_text(results):
    width = max(len(r.scenario) for r in results)
    lines = []
    for r in results:
        lines.append(f"{r.status.upper():4}  {r.scenario:<{width}}  {r.claim}")
        lines.append(f"{'':4}  {'':<{width}}  witness: {r.witness}")
    lines.append(f"{sum(r.status == 'pass' for r in results)}/{len(results)} scenarios pass")
    return "\n".join(lines)


def report_json(results):
    return json.dumps([r.to_json() for r in results], sort_keys=True, indent=2)


def corpus_words(G=None):
    """Named words occurring in the scenarios (with formal unknowns where the scenarios use them)."""
    G = G or f4_group()
    t = G.t()
    a = a_value(G)
    cons = torus_centralizer_constraint(G.coroot_elem(2, G.field.cube_root_of_unity()),
                                        classify(G.rs, LAMBDA)["U"], G)
    u, _ = build_conjugator(G, [r for r in classify(G.rs, LAMBDA)["U"] if r not in cons])
    x10, x17, x20, x21 = (G.var(f"x{i}") for i in (10, 17, 20, 21))
    out = {
        "e1e3": G.e(1, 1) * G.e(3, 1),
        "e1e3e14a": G.e(1, 1) * G.e(3, 1) * G.e(14, a),
        "u.e1e3": u * G.e(1, 1) * G.e(3, 1) * u.inverse(),
        "eq-rhs": G.e(1, 1) * G.e(3, 1) * G.e(11, x10) * G.e(14, x21 ** 2) * G.e(18, x17) * G.e(22, x20 + x21),
        "v": v_first(G),
        "v-inverse": v_first(G).inverse(),
        "v'": v_second(G),
        "probe": G.e(18, 1) * G.e(-5, t),
        "probe-image": G.e(-23, 1) * G.e(-5, t),
        "e20e21-curve": G.e(20, G.var("x")) * G.e(21, G.var("x")),
        "e21e20-curve": G.e(21, G.var("x")) * G.e(20, G.var("x")),
        "e13": G.e(13, G.var("y")),
    }
    for i, f in enumerate(h_first_spec(G).families):
        out[f"H-family-{i + 1}"] = f
    for i, f in enumerate(m_spec(G).conjugate(v_first(G)).families):
        out[f"v.M-family-{i + 1}"] = f
    for i, f in enumerate(h_second_spec(G).families):
        out[f"H'-family-{i + 1}"] = f
    for i, f in enumerate(m_spec(G).conjugate(v_second(G)).families):
        out[f"v'.M-family-{i + 1}"] = f
    return out
