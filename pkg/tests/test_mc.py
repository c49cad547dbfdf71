import pytest
from hypothesis import given
from hypothesis import strategies as st

from koszulkit import (GF, QQ, AlgebraMap, LeftModule, MCElement, Matrix, check_axioms,
                       endo_convolution, enumerate_mc, ground_algebra, is_mc, mc_pushforward,
                       mc_residual, small_example_algebra, tensor_cdga, truncated_polynomial,
                       twist_algebra, twist_left_module)
from koszulkit.graded import GradedSpace
from koszulkit.randoms import make_rng, random_augmented_algebra, random_curved_algebra

F3 = GF(3)


def test_zero_is_mc_when_uncurved():
    assert is_mc(small_example_algebra(QQ), (0, 0)).ok


def test_multiples_of_generator_are_mc():
    A = small_example_algebra(F3)
    assert is_mc(A, (0, 2)).ok


def test_zero_is_not_mc_when_curved():
    rng = make_rng(11)
    A = next(B for B in (random_curved_algebra(F3, rng) for _ in range(200)) if B.is_curved())
    cert = is_mc(A, tuple(0 for _ in range(A.dim)))
    assert not cert.ok
    assert mc_residual(A, tuple(0 for _ in range(A.dim))) == A.curvature


def test_is_mc_rejects_wrong_degree():
    with pytest.raises(ValueError):
        is_mc(small_example_algebra(F3), (1, 0))


def test_mc_element_verifies_on_construction():
    A = truncated_polynomial(F3, 3, 1, "x")
    MCElement(A, (0, 0, 0))
    with pytest.raises(ValueError):
        MCElement(A, (0, 1, 0))


def test_enumerate_small_example():
    A = small_example_algebra(F3)
    assert [m.coords for m in enumerate_mc(A)] == [(0, 0), (0, 1), (0, 2)]


@pytest.mark.parametrize("p", [2, 3, 5, 7])
def test_enumerate_small_example_has_p_points(p):
    assert len(enumerate_mc(small_example_algebra(GF(p)))) == p


def test_enumerate_ground_field():
    assert [m.coords for m in enumerate_mc(ground_algebra(F3))] == [(0,)]


def test_enumerate_convolution_with_a_line():
    F5 = GF(5)
    line = GradedSpace(F5, (("v", 0),))
    assert len(enumerate_mc(endo_convolution(line, small_example_algebra(F5)))) == 5


def test_enumerate_refuses_q_and_large_spaces():
    with pytest.raises(ValueError):
        enumerate_mc(small_example_algebra(QQ))
    with pytest.raises(ValueError):
        enumerate_mc(small_example_algebra(F3), bound=0)


def test_enumerate_matches_brute_force_and_is_job_independent():
    from koszulkit.mc import degree_one_candidates
    rng = make_rng(2)
    for _ in range(15):
        A = random_curved_algebra(F3, rng)
        brute = [v for v in degree_one_candidates(A) if is_mc(A, v).ok]
        fast = [m.coords for m in enumerate_mc(A, block=2)]
        assert fast == brute
    A = endo_convolution(GradedSpace(F3, (("u", 0), ("w", 1))), small_example_algebra(F3))
    assert enumerate_mc(A, jobs=2, block=7) == enumerate_mc(A)


def test_automorphism_permutes_mc_set():
    A = small_example_algebra(F3)
    phi = AlgebraMap(A, A, Matrix.from_rows(F3, [[1, 0], [0, 2]]))
    assert phi.check().ok
    mcs = enumerate_mc(A)
    images = {phi(m.coords) for m in mcs}
    assert images == {m.coords for m in mcs}


def test_twist_by_zero_is_identity():
    A = small_example_algebra(F3)
    assert twist_algebra(A, (0, 0)) == A


def test_twist_by_mc_kills_curvature():
    rng = make_rng(4)
    seen = 0
    for _ in range(40):
        A = random_curved_algebra(F3, rng)
        for m in enumerate_mc(A):
            T = twist_algebra(A, m.coords)
            assert all(c == 0 for c in T.curvature) and check_axioms(T).ok
            seen += 1
    assert seen


def _degree_one(F, A, rng):
    v = [F.zero] * A.dim
    for i in A.degree_part(1):
        v[i] = F(rng.randrange(F.p))
    return tuple(v)


@given(st.integers(0, 10_000))
def test_twist_always_certified_and_composes(seed):
    rng = make_rng(seed)
    A = random_curved_algebra(F3, rng, dim=3)
    b, c = _degree_one(F3, A, rng), _degree_one(F3, A, rng)
    Ab = twist_algebra(A, b)
    assert check_axioms(Ab).ok
    bc = tuple(F3.add(x, y) for x, y in zip(b, c))
    assert twist_algebra(Ab, c) == twist_algebra(A, bc)


def test_twist_left_module_examples():
    A = small_example_algebra(F3)
    M = LeftModule.regular(A)
    assert twist_left_module(M, (0, 0)).diff == M.diff
    T = twist_left_module(M, MCElement(A, (0, 2)))
    # new differential is left multiplication by 2x: 1 ↦ 2x, x ↦ 0
    assert T.diff == Matrix.from_columns(F3, [(0, 2), (0, 0)], 2)
    assert T.check().ok


@given(st.integers(0, 10_000))
def test_twisted_left_module_squares_to_zero(seed):
    # the regular module is a curved module only when h = 0
    rng = make_rng(seed)
    A = random_augmented_algebra(F3, rng)
    M = LeftModule.regular(A)
    assert M.check().ok
    for m in enumerate_mc(A):
        T = twist_left_module(M, m)
        assert (T.diff @ T.diff).is_zero()


def test_twist_left_module_rejects_non_module():
    A = small_example_algebra(F3)
    M = LeftModule.regular(A)
    bad = LeftModule(A, M.space, M.action, Matrix.identity(F3, 2))
    with pytest.raises(ValueError):
        twist_left_module(bad, (0, 0))


def test_pushforward_examples():
    A = small_example_algebra(F3)
    B3 = truncated_polynomial(F3, 3, 0, "t")
    B2 = truncated_polynomial(F3, 2, 0, "t")
    AB = tensor_cdga(A, B3)
    x = MCElement(AB, AB.vector({"x⊗t": 1}))
    assert mc_pushforward(x, A, AlgebraMap.identity(B3)) == x
    quot = AlgebraMap(B3, B2, Matrix.from_rows(F3, [[1, 0, 0], [0, 1, 0]]))
    y = mc_pushforward(x, A, quot)
    assert y.coords == tensor_cdga(A, B2).vector({"x⊗t": 1})
    aug = AlgebraMap(B3, ground_algebra(F3), Matrix.from_rows(F3, [[1, 0, 0]]))
    z = mc_pushforward(x, A, aug)
    assert is_mc(z.host, z.coords).ok and z.coords == (0, 0)


def test_regular_module_over_curved_algebra():
    # twisting an uncurved algebra by b leaves -b as a Maurer-Cartan element
    rng = make_rng(19)
    curved = 0
    named = [(truncated_polynomial(F3, 3, 1, "b"), (0, 1, 0))]
    for _ in range(40):
        A0 = random_augmented_algebra(F3, rng)
        named.append((A0, _degree_one(F3, A0, rng)))
    for A0, b in named:
        A = twist_algebra(A0, b)
        curved += A.is_curved()
        M = LeftModule.regular(A, tuple(F3.neg(c) for c in b))
        assert M.check().ok
        for x in enumerate_mc(A):
            T = twist_left_module(M, x)
            assert (T.diff @ T.diff).is_zero()
    assert curved
