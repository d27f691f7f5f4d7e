from fractions import Fraction
from math import factorial

import pytest
from hypothesis import given, strategies as st

from eorbit.errors import GroupTooLarge, IndexOutOfRange
from eorbit.rootsystem import build, scalar_product
from eorbit.weylgroup import (
    ChamberConfig, affine_reduce, fundamental_vertices, generate, in_even_dominant,
    in_even_fundamental_domain, in_fundamental_domain, is_dominant, preserves_form,
    reduce_to_dominant, reduce_to_even_dominant, even_dominant_rep, reflection_matrix,
    root_reflection, split_reflection,
)

from oracles import group as oracle_group

F = Fraction

ORDERS = {
    "A1": 2, "A2": 6, "A3": 24, "A4": 120, "B3": 48, "B4": 384, "C3": 48, "C4": 384,
    "D4": 192, "D5": 1920, "G2": 12, "F4": 1152,
}


@pytest.mark.parametrize("name", sorted(ORDERS))
def test_group_order(name):
    g = generate(build(name))
    assert len(g) == ORDERS[name]
    assert 2 * len(g.even) == len(g)


def test_classical_order_formulas():
    for n in range(2, 6):
        assert len(generate(build(f"A{n}"))) == factorial(n + 1)
    for n in (3, 4):
        assert len(generate(build(f"B{n}"))) == 2 ** n * factorial(n)
        assert len(generate(build(f"D{n + 1}"))) == 2 ** n * factorial(n + 1)


@pytest.mark.parametrize("name", ["A3", "B3", "C3", "G2", "D4"])
def test_matches_independent_closure(name):
    s = build(name)
    ours = {(g.matrix, g.det) for g in generate(s).elements}
    theirs = {(m, 1 if p == 0 else -1) for m, p in oracle_group(s.cartan)}
    assert ours == theirs


@pytest.mark.parametrize("name", ["A3", "B3", "C3", "G2", "F4"])
def test_every_element_preserves_form(name):
    s = build(name)
    assert all(preserves_form(s, g) for g in generate(s).elements)


@pytest.mark.parametrize("name", ["A2", "C3", "G2"])
def test_words_reproduce_matrices(name):
    s = build(name)
    for g in generate(s).elements:
        h = None
        for i in g.word:
            r = reflection_matrix(s, i)
            h = r if h is None else h @ r
        if h is None:
            assert g.word == ()
        else:
            assert h.matrix == g.matrix and h.det == g.det


def test_simple_reflection_rule():
    s = build("G2")
    r1 = reflection_matrix(s, 1)
    r2 = reflection_matrix(s, 2)
    assert r1.apply((1, 0)) == (-1, 3)
    assert r2.apply((0, 1)) == (1, -1)
    assert r1.det == -1


def test_reflection_index_checked():
    with pytest.raises(IndexOutOfRange):
        reflection_matrix(build("A2"), 3)


def test_group_caps():
    with pytest.raises(GroupTooLarge):
        generate(build("B4"), max_elements=100)
    with pytest.raises(GroupTooLarge):
        generate(build("A4"), max_rank=3)


@pytest.mark.parametrize("name", ["A3", "B3", "C3", "G2", "D4"])
def test_root_reflections(name):
    s = build(name)
    for alpha in s.positive_roots:
        r = root_reflection(s, alpha)
        a = s.root_omega(alpha)
        assert r.apply(a) == tuple(-c for c in a)
        assert preserves_form(s, r)
        # the word expresses the same element
        h = None
        for i in r.word:
            step = reflection_matrix(s, i)
            h = step if h is None else h @ step
        assert h.matrix == r.matrix


def _point(n, lo=-6, hi=6):
    return st.lists(st.fractions(min_value=lo, max_value=hi, max_denominator=5), min_size=n, max_size=n).map(tuple)


@pytest.mark.parametrize("name", ["A3", "B3", "C3", "G2"])
@given(data=st.data())
def test_reduce_to_dominant(name, data):
    s = build(name)
    x = data.draw(_point(s.rank))
    y, w = reduce_to_dominant(s, x)
    assert is_dominant(y)
    assert w.apply(x) == y
    # the dominant point is unique in the W orbit
    for g in generate(s).elements:
        z = g.apply(x)
        if is_dominant(z):
            assert z == y


@pytest.mark.parametrize("name", ["A2", "A3", "B3", "C3", "G2"])
@given(data=st.data())
def test_even_reduction_path_independent(name, data):
    # every point of the even orbit reduces to the same representative
    s = build(name)
    x = data.draw(_point(s.rank))
    y, w = reduce_to_even_dominant(s, x)
    assert w.det == 1 and w.apply(x) == y
    assert in_even_dominant(s, y)
    assert even_dominant_rep(s, x) == y
    for g in generate(s).even:
        assert even_dominant_rep(s, g.apply(x)) == y


def test_boundary_point_lands_in_dominant_copy():
    s = build("A2")
    for x in [(0, 2), (2, 0), (0, 0)]:
        for g in generate(s).elements:
            assert is_dominant(even_dominant_rep(s, g.apply(x)))


def test_split_root_choice_changes_chamber_not_orbit():
    s = build("B3")
    x = (1, 2, 3)
    odd = reflection_matrix(s, 2).apply(x)
    a = even_dominant_rep(s, odd)
    cfgs = [ChamberConfig(split_root=k) for k in range(len(s.positive_roots))]
    reps = {even_dominant_rep(s, odd, c) for c in cfgs}
    assert a in reps and len(reps) > 1
    evens = {g.apply(odd) for g in generate(s).even}
    assert reps <= evens


def _translate(s, x, coroot):
    # adding an element of the coroot lattice written in coroot coordinates
    from eorbit.rootsystem import basis_convert
    t = basis_convert(s, coroot, "coroot", "omega")
    return tuple(a + b for a, b in zip(x, t))


@pytest.mark.parametrize("name", ["A2", "B3", "C2", "G2"])
@given(data=st.data())
def test_affine_reduce_invariant_under_coroot_shift(name, data):
    s = build(name)
    x = data.draw(_point(s.rank, -2, 2))
    shift = data.draw(st.lists(st.integers(-3, 3), min_size=s.rank, max_size=s.rank))
    y = affine_reduce(s, x)
    assert in_fundamental_domain(s, y)
    assert affine_reduce(s, _translate(s, x, shift)) == y
    ye = affine_reduce(s, x, even=True)
    assert in_even_fundamental_domain(s, ye)
    assert affine_reduce(s, _translate(s, x, shift), even=True) == ye


@pytest.mark.parametrize("name", ["A2", "C2", "G2"])
@given(data=st.data())
def test_affine_reduce_float_matches_exact(name, data):
    s = build(name)
    x = data.draw(_point(s.rank, -2, 2))
    exact = affine_reduce(s, x)
    approx = affine_reduce(s, tuple(float(c) for c in x))
    assert approx == pytest.approx(tuple(float(c) for c in exact), abs=1e-9)


@pytest.mark.parametrize("name", ["A2", "B3", "G2", "F4"])
def test_fundamental_vertices(name):
    s = build(name)
    for v in fundamental_vertices(s):
        assert in_fundamental_domain(s, v)
    assert fundamental_vertices(s)[0] == tuple(F(0) for _ in range(s.rank))


def test_split_reflection_defaults_to_first_simple_root():
    s = build("C2")
    assert split_reflection(s).matrix == reflection_matrix(s, 1).matrix


def test_preserves_form_detects_non_isometry():
    from eorbit.weylgroup import GroupElement
    s = build("A2")
    assert not preserves_form(s, GroupElement(((2, 0), (0, 1)), 2))


def test_reflection_reverses_norm_sign_of_root():
    s = build("G2")
    a = s.root_omega((1, 1))
    r = root_reflection(s, (1, 1))
    assert scalar_product(s, r.apply(a), a) == -scalar_product(s, a, a)
