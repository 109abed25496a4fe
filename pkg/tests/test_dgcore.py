import pytest

from koszulkit.algebra import (
    elt_bidegree,
    elt_d,
    elt_mul,
    make_algebra,
    monomial_bidegree,
    monomials_by_internal,
)
from koszulkit.bigraded import Window
from koszulkit.dgmodule import (
    DgMap,
    SemifreeDgModule,
    cohomology,
    cone,
    cone_semifree_to_finite,
    deserialize_module,
    expansion_dims,
    free_module,
    identity_map,
    is_quasi_iso,
    semifree_resolution,
    serialize_module,
    trivial_module,
    zero_map,
)
from koszulkit.samples import random_module, stream


def koszul_complex_f1(p=5):
    """Two-term Koszul complex over k[x]: resolves the trivial module."""
    S = make_algebra("S", 1, 1, p)
    return SemifreeDgModule(S, [(0, 0), (1, -2)], {1: {0: {((1,), 0): 1}}})


# -- algebras ---------------------------------------------------------------

def test_make_algebra_rejects_bad_input():
    with pytest.raises(ValueError):
        make_algebra("T", 1, 2, 5)  # f > e
    with pytest.raises(ValueError):
        make_algebra("S", 1, 1, 9)  # not prime
    with pytest.raises(ValueError):
        make_algebra("X", 1, 1, 5)


def test_exterior_rank_one():
    T = make_algebra("T", 1, 1, 5)
    theta = {((), 1): 1}
    assert elt_mul(T, theta, theta) == {}
    assert elt_bidegree(T, theta) == (-1, 2)


def test_sym_generator_bidegree():
    S = make_algebra("S", 1, 1, 5)
    assert elt_bidegree(S, {((1,), 0): 1}) == (2, -2)
    R = make_algebra("R", 1, 1, 5)
    assert elt_bidegree(R, {((1,), 0): 1}) == (0, -2)


def test_q_with_e_equals_f_has_zero_differential():
    Q = make_algebra("Q", 1, 1, 5)
    assert not Q.has_differential
    assert elt_d(Q, {((), 1): 1}) == {}


def test_q_differential_squares_to_zero():
    Q = make_algebra("Q", 3, 1, 5)
    mon = {((0, 0), 0b110): 1}  # eta_2 eta_3, both hit by d
    once = elt_d(Q, mon)
    assert once
    assert elt_d(Q, once) == {}


def test_exterior_sign_antisymmetry():
    T = make_algebra("T", 2, 2, 5)
    t1, t2 = {((), 1): 1}, {((), 2): 1}
    ab = elt_mul(T, t1, t2)
    ba = elt_mul(T, t2, t1)
    assert ab == {((), 3): 1}
    assert ba == {((), 3): 4}  # = -1 mod 5


def test_monomial_enumeration_matches_bidegrees():
    for kind, e, f in (("S", 2, 2), ("T", 3, 3), ("Q", 3, 1), ("P", 3, 1)):
        alg = make_algebra(kind, e, f, 5)
        for bd, mons in monomials_by_internal(alg, -8, 8).items():
            assert len(set(mons)) == len(mons)
            for mon in mons:
                assert monomial_bidegree(alg, mon) == bd


# -- semifree modules -------------------------------------------------------

def test_free_module_validates():
    T = make_algebra("T", 1, 1, 5)
    assert free_module(T, [(0, 0)]).validate() == []


def test_wrong_entry_bidegree_reported():
    S = make_algebra("S", 1, 1, 5)
    bad = SemifreeDgModule(S, [(0, 0), (0, 0)], {1: {0: {((1,), 0): 1}}})
    issues = bad.validate()
    assert issues and "(1,0)" in issues[0].replace(" ", "")


def test_koszul_complex_validates_and_resolves():
    K = koszul_complex_f1()
    assert K.validate() == []
    assert cohomology(K, Window(-2, 4, -8, 2)).to_triples() == [[0, 0, 1]]


def test_d_squared_violation_detected():
    Q = make_algebra("Q", 2, 1, 5)
    # d(gen) = eta_2 gen has the right bidegree, but d(eta_2) = z != 0
    bad = SemifreeDgModule(Q, [(0, 0), (-2, 2)], {1: {0: {((0,), 2): 1}}})
    issues = bad.validate()
    assert issues and "d^2" in issues[0]


def test_cohomology_of_free_T_module():
    T = make_algebra("T", 1, 1, 5)
    table = cohomology(free_module(T, [(0, 0)]), Window(-2, 2, -4, 4))
    assert table.to_triples() == [[-1, 2, 1], [0, 0, 1]]


def test_cone_of_identity_acyclic():
    K = koszul_complex_f1()
    c = cone(identity_map(K))
    assert c.validate() == []
    assert not cohomology(c, Window(-3, 5, -8, 4))


def test_cone_of_zero_is_direct_sum_of_tables():
    T = make_algebra("T", 2, 2, 5)
    M = free_module(T, [(0, 0)])
    N = free_module(T, [(1, -2)])
    c = cone(zero_map(M, N))
    W = Window(-4, 4, -6, 6)
    lhs = expansion_dims(c, W)
    rhs = expansion_dims(N, W) + expansion_dims(M.shift(1, 0), W)
    assert lhs == rhs


def test_cone_rejects_non_chain_map():
    S = make_algebra("S", 1, 1, 5)
    K = koszul_complex_f1()
    # x * id is homogeneous of wrong bidegree as a degree-(0,0) map
    bad = DgMap(K, K, {0: {0: {((1,), 0): 1}}})
    with pytest.raises(ValueError):
        cone(bad)


def test_shift_respects_cohomology():
    K = koszul_complex_f1()
    W = Window(-4, 6, -10, 6)
    base = cohomology(K, W)
    for a, b in [(1, 0), (0, 2), (-1, 2), (2, -2)]:
        shifted = K.shift(a, b)
        assert shifted.validate() == []
        assert cohomology(shifted, W) == base.shift(a, b).restrict(W)


def test_is_quasi_iso_identity_and_zero():
    K = koszul_complex_f1()
    W = Window(-1, 2, -4, 2)
    assert is_quasi_iso(identity_map(K), W)
    assert not is_quasi_iso(zero_map(K, K), W)


def test_euler_characteristic_invariance_random():
    # chi per internal degree agrees for quasi-isomorphic modules
    T = make_algebra("T", 2, 2, 5)
    for trial in range(5):
        rng = stream(3, trial)
        M = random_module(T, rng, max_gens=3)
        c = cone(identity_map(M), check=False)
        W = Window.hull(M.gens).enlarge(1, 2)
        hm = cohomology(M, W)
        hc = cohomology(M.direct_sum(c), W)  # quasi-isomorphic to M
        for j in W.internal_degrees():
            chi_m = sum((-1) ** i * hm[(i, j)] for i in range(W.i0, W.i1 + 1))
            chi_c = sum((-1) ** i * hc[(i, j)] for i in range(W.i0, W.i1 + 1))
            assert chi_m == chi_c


def test_cone_long_exact_sequence_bound():
    # dim H(cone) <= dim H(N) + dim H(M[1]) at every bidegree
    S = make_algebra("S", 2, 2, 5)
    from koszulkit.samples import random_chain_map

    for trial in range(6):
        rng = stream(4, trial)
        M = random_module(S, rng, max_gens=2)
        N = random_module(S, rng, max_gens=2)
        phi = random_chain_map(S, M, N, rng)
        c = cone(phi, check=False)
        W = Window.hull(M.gens + N.gens).enlarge(1, 2)
        hc, hn, hm = cohomology(c, W), cohomology(N, W), cohomology(M.shift(1, 0), W)
        for bd in hc:
            assert hc[bd] <= hn[bd] + hm[bd]


def test_validate_dual_over_every_algebra():
    for kind, e, f in (("S", 2, 2), ("T", 3, 3), ("Q", 3, 1)):
        alg = make_algebra(kind, e, f, 3)
        for trial in range(4):
            M = random_module(alg, stream(5, (kind, trial)), max_gens=3)
            D = M.dualize()
            assert D.validate() == []
            assert D.dualize() == M


# -- resolutions -------------------------------------------------------------

def test_resolution_of_semifree_is_identity():
    T = make_algebra("T", 1, 1, 5)
    M = free_module(T, [(0, 0)])
    P, psi = semifree_resolution(M, depth=2)
    assert P is M
    assert psi.matrix == identity_map(M).matrix


def test_resolution_of_trivial_module():
    T = make_algebra("T", 1, 1, 5)
    P, psi = semifree_resolution(trivial_module(T), depth=3)
    assert sorted(P.gens) == [(-6, 6), (-4, 4), (-2, 2), (0, 0)]
    assert P.validate() == []
    assert psi.validate() == []
    c = cone_semifree_to_finite(psi, -2, 6)
    assert not c.cohomology(Window(-10, 4, -2, 6))


def test_resolution_window_guarantee():
    T = make_algebra("T", 2, 2, 5)
    k = trivial_module(T, (0, 0))
    depth = 2
    P, psi = semifree_resolution(k, depth=depth)
    assert psi.validate() == []
    jmax = 2 * depth
    c = cone_semifree_to_finite(psi, -2, jmax + 2)
    assert not c.cohomology(Window(-12, 4, -2, jmax))


# -- serialization ------------------------------------------------------------

def test_serialize_round_trip_and_determinism():
    K = koszul_complex_f1()
    text = serialize_module(K)
    assert deserialize_module(text) == K
    assert serialize_module(deserialize_module(text)) == text


def test_deserialize_rejects_invalid():
    Q = make_algebra("Q", 2, 1, 5)
    bad = SemifreeDgModule(Q, [(0, 0), (1, -2)], {1: {0: {((0,), 2): 1}}})
    text = serialize_module(bad)
    with pytest.raises(ValueError):
        deserialize_module(text)
