import random

import pytest

from chevcr import crcheck
from chevcr.crcheck import (
    LAMBDA, UnsupportedSystem, build_conjugator, centralizer_check, conjugacy_obstruction,
    corpus_ok, corpus_words, f4_group, first_obstruction, h_first_spec, h_second_conjugated_spec,
    h_second_spec, m_spec, m_u13_spec, report_json, run_corpus, sigma_cochar, sigma_exponent,
    sigma_isogeny, sigma_obstruction, sigma_root_map, solve_triangular, torus_centralizer_constraint,
    unique_parabolic_check, v_first, v_second,
)
from chevcr.fields import is_k_point
from chevcr.parabolic import classify
from chevcr.rootsys import F4_TABLE, RootSystem, RootSystemError, cartan_matrix
from chevcr.words import ChevalleyGroup, CollectionError, ad_equal, collect, random_word

U = list(range(10, 25))


def test_torus_constraint(G):
    b = G.field.cube_root_of_unity()
    h = G.coroot_elem(2, b)
    cons = torus_centralizer_constraint(h, U, G)
    assert cons == {11, 12, 14, 15, 18, 19, 22, 23}
    assert set(U) - cons == {10, 13, 16, 17, 20, 21, 24}
    assert torus_centralizer_constraint(G.torus([1, 1, 1, 1]), U, G) == set()


def test_constraint_matches_pairing_mod_3(G):
    b = G.field.cube_root_of_unity()
    h = G.coroot_elem(2, b)
    for r in U:
        assert (r in torus_centralizer_constraint(h, U, G)) == (G.rs.pairing(r, 2) % 3 != 0)


def test_first_obstruction(G):
    s = first_obstruction(G)
    assert sorted(str(e) for e in s.equations) == ["x10", "x17", "x20+x21", "x21^2+t^2"]
    assert s.solvable_K is True
    assert s.solution_K["x21"] == G.t()
    assert s.solvable_k is False
    assert "x21" in s.justification_k


def test_control_with_square_a(G):
    s = first_obstruction(G, a=G.t() ** 4)
    assert s.solvable_K is True and s.solvable_k is True
    assert s.solution_K["x21"] == G.t() ** 2


def test_trivial_tuple_is_solvable(G):
    w = G.e(1, 1) * G.e(3, 1)
    s = conjugacy_obstruction((w,), (w,), LAMBDA)
    assert s.solvable_K and s.solvable_k
    assert all(v.is_zero() for v in s.solution_K.values())


def test_v_prime_must_be_the_limit(G):
    with pytest.raises(ValueError):
        conjugacy_obstruction((G.e(1, 1),), (G.e(3, 1),), LAMBDA)


def test_renaming_unknowns_gives_the_same_verdict(G):
    b = G.field.cube_root_of_unity()
    h = G.torus_word(G.coroot_elem(2, b))
    v = (h, G.e(1, 1) * G.e(3, 1) * G.e(14, G.t() ** 2))
    vp = (h, G.e(1, 1) * G.e(3, 1))
    roots = [10, 13, 16, 17, 20, 21, 24]
    u, names = build_conjugator(G, roots, names={r: f"z{r}" for r in roots})
    s = conjugacy_obstruction(v, vp, LAMBDA, conjugator=u, unknowns=names)
    assert (s.solvable_K, s.solvable_k) == (True, False)
    assert s.solution_K["z21"] == G.t()


def test_solver_fragment(K):
    from chevcr.polyring import MPoly

    x, y = MPoly.var(K, "x"), MPoly.var(K, "y")
    t = K.t()
    asg, status, _ = solve_triangular([x * x + t ** 2, x + y], ["x", "y"], K)
    assert status == "ok"
    assert {a.var: a.value for a in asg} == {"x": t, "y": t}
    _, status, msg = solve_triangular([x * x + t], ["x"], K)
    assert status == "inconsistent" and "no root" in msg
    _, status, _ = solve_triangular([MPoly.const(K, 1)], [], K)
    assert status == "inconsistent"
    with pytest.raises(UnsupportedSystem) as exc:
        solve_triangular([x * x * y + t, x * y * y + 1], ["x", "y"], K)
    assert exc.value.equations


def test_centralizers(G):
    y, x = G.var("y"), G.var("x")
    M = m_spec(G)
    assert centralizer_check(G.e(13, y), M)
    assert centralizer_check(G.e(-13, y), M)
    assert centralizer_check(G.identity(), M)
    assert not centralizer_check(G.e(20, x) * G.e(21, x), M)
    assert not centralizer_check(G.e(-13, y), h_second_spec(G))


def test_h_generators_match_conjugation(G):
    conj = m_spec(G).conjugate(v_first(G))
    for f1, f2 in zip(conj.families, h_first_spec(G).families):
        assert collect(f1) == collect(f2)
    conj = m_spec(G).conjugate(v_second(G))
    for f1, f2 in zip(conj.families, h_second_spec(G).families):
        assert collect(f1, cochar=LAMBDA) == collect(f2, cochar=LAMBDA)


def test_v_inverse_of_second_subgroup(G):
    v = v_second(G)
    x = G.var("x")
    got = collect(v.inverse() * G.e(18, x) * v, cochar=LAMBDA)
    want = collect(G.e(18, x) * G.e(-5, G.t() * x), cochar=LAMBDA)
    assert got == want


def test_unique_parabolic_second_subgroup(G):
    probe = G.e(18, 1) * G.e(-5, G.t())
    rep = unique_parabolic_check(h_second_conjugated_spec(G), LAMBDA, [probe], core=m_spec(G))
    assert rep["case1"]["status"] == "P_mu = P_lambda"
    assert rep["case2"]["status"] == "refuted"
    assert rep["case2"]["probes"][0]["n_theta^-1 . probe"] == "e(-23, 1) * e(-5, t)"
    assert rep["unique_parabolic"] == "P_lambda"


def test_unique_parabolic_inconclusive_probe(G):
    # e2(1) is fixed by n13, so it cannot refute case 2
    rep = unique_parabolic_check(h_second_conjugated_spec(G), LAMBDA, [G.e(2, 1)], core=m_spec(G))
    assert rep["case2"]["status"] == "inconclusive"
    assert rep["unique_parabolic"] is None


def test_unique_parabolic_m_u13(G):
    rep = unique_parabolic_check(m_u13_spec(G), LAMBDA, [G.e(13, 1)], core=m_spec(G))
    assert rep["unique_parabolic"] == "P_lambda"


def test_unique_parabolic_vacuous(G):
    rep = unique_parabolic_check(m_spec(G), (0, 0, 0, 0), [])
    assert rep["vacuous"] and not rep["proper"]


def test_sigma_root_map(G):
    perm = sigma_root_map(G.rs)
    assert perm[13] == 16 and perm[16] == 13
    assert perm[14] == 23 and perm[21] == 9
    assert [perm[i] for i in (1, 2, 3, 17)] == [17, 3, 2, 1]
    assert all(perm[perm[r]] == r for r in perm)
    assert sigma_cochar(G.rs, LAMBDA).coeffs == (4, 6, 4, 2)
    assert sigma_cochar(G.rs, LAMBDA).coeffs == tuple(2 * c for c in G.rs.coroot_coeffs(16))


def test_sigma_of_v_is_k_point(G):
    for v in (v_first(G), v_second(G)):
        s = sigma_isogeny(v)
        assert all(is_k_point(f.value) for f in s.factors)
        assert [f.value for f in s.factors] == [G.t() ** 2] * 2


def test_sigma_twice_is_frobenius(G):
    t = G.t()
    w = G.e(1, t) * G.e(20, t + 1) * G.e(-13, G.field.gen())
    ww = sigma_isogeny(sigma_isogeny(w))
    assert [f.root for f in ww.factors] == [1, 20, -13]
    assert [f.value for f in ww.factors] == [f.value ** 2 for f in w.factors]


def test_sigma_of_zero_is_identity(G):
    assert sigma_isogeny(G.e(5, 0)).is_empty()


def test_sigma_rejects_other_groups():
    with pytest.raises(RootSystemError):
        sigma_isogeny(ChevalleyGroup("B3", 2).e(1, 1))
    with pytest.raises(RootSystemError):
        sigma_isogeny(ChevalleyGroup("F4", 3).e(1, 1))


def test_sigma_multiplicative_on_positive_words(G):
    rng = random.Random(5)
    for _ in range(500):
        w1 = random_word(G, range(1, 25), 3, rng)
        w2 = random_word(G, range(1, 25), 3, rng)
        lhs = collect(sigma_isogeny(collect(w1 * w2).as_word()))
        assert lhs == collect(sigma_isogeny(w1) * sigma_isogeny(w2))


def test_sigma_preserves_relations_on_the_full_group(G):
    # relations involving negative roots, Weyl elements and the torus
    t = G.t()
    rng = random.Random(9)
    roots = [r.index for r in G.rs.roots]
    for _ in range(25):
        r, s = rng.sample(roots, 2)
        if r == -s:
            continue
        w = G.e(r, t) * G.n(s) * G.torus_word(G.torus([t, 1, t + 1, G.field.gen()]))
        w2 = collect_free_rewrite(G, w)
        assert ad_equal(w, w2)
        assert ad_equal(sigma_isogeny(w), sigma_isogeny(w2))


def collect_free_rewrite(G, w):
    """Rewrite n_s via its defining product so the two words differ syntactically."""
    from chevcr.words import GroupWord, WeylRep

    out = []
    for f in w.factors:
        if isinstance(f, WeylRep):
            out.extend(G.expand_weyl(f.root))
        else:
            out.append(f)
    return GroupWord(G, out)


def test_sigma_obstruction_variants(G):
    s, meta = sigma_obstruction(G, squared=True)
    eqs = sorted(str(e) for e in s.equations)
    assert eqs == ["x1^2", "x6", "x9^2+t^2", "x9^2+x11^2"]
    assert (s.solvable_K, s.solvable_k) == (True, False)
    free, _ = sigma_obstruction(G, squared=False)
    assert free.solvable_k is True
    assert meta["constraints_sigma"] == sorted(sigma_root_map(G.rs)[r] for r in (11, 12, 14, 15, 18, 19, 22, 23))


def test_sigma_exponent(G):
    assert sigma_exponent(G.rs, 13) == 2 and sigma_exponent(G.rs, 14) == 1


def test_corpus_passes():
    results = run_corpus()
    assert corpus_ok(results), [r.to_json() for r in results if r.status != "pass"]
    assert report_json(results) == report_json(run_corpus())


def test_corpus_fails_on_permuted_table():
    order = [F4_TABLE[i] for i in range(1, 25)]
    order[19], order[21] = order[21], order[19]
    G = f4_group(rs=RootSystem(cartan_matrix("F4"), "F4", order=order))
    results = run_corpus(G)
    failed = {r.scenario for r in results if r.status == "fail"}
    assert "f4-table" in failed and "conjugation-identity" in failed


def test_corpus_fails_without_square_roots():
    results = run_corpus(sqrt=lambda x: None)
    bad = {r.scenario: r for r in results if r.status == "fail"}
    assert "rational-obstruction" in bad
    assert "no root in K" in bad["rational-obstruction"].witness
    assert crcheck._fields.sqrt_char2(f4_group().t() ** 2) is not None


def test_collection_agrees_with_adjoint_on_corpus(G):
    words = corpus_words(G)
    names = sorted(words)
    for name in names:
        for key in (None, LAMBDA):
            try:
                cw = collect(words[name], cochar=key)
            except CollectionError:
                continue
            assert ad_equal(words[name], cw.as_word()), name
    for i, a in enumerate(names):
        for b in names[i + 1:]:
            for key in (None, LAMBDA):
                try:
                    same = collect(words[a], cochar=key) == collect(words[b], cochar=key)
                except CollectionError:
                    continue
                assert same == ad_equal(words[a], words[b]), (a, b)
                break
