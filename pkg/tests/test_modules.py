import pytest
from hypothesis import given, settings, strategies as st

from rootstack import rings as R
from rootstack import modules as M
from rootstack.linalg import FGAbelianGroup

Z = FGAbelianGroup(1)
L = R.LineR()
W = M.DegreeWindow(-3, 6)


def x(power=1, coeff=1):
    return R.var(L, "x", power, coeff)


def line_modules():
    # O(k)/(c x^e) with small k, c, e; c == 0 means no relation
    return st.tuples(st.integers(-2, 2), st.integers(0, 3), st.integers(1, 3)).map(
        lambda t: M.cyclic(L, (t[0],), [x(t[2], t[1])] if t[1] else [], f"m{t}")
    )


def test_window_parse():
    w = M.DegreeWindow.parse("-2..5")
    assert (w.lo, w.hi) == (-2, 5) and str(w) == "-2..5"
    assert M.DegreeWindow.default(3) == M.DegreeWindow(-6, 12)
    with pytest.raises(ValueError):
        M.DegreeWindow.parse("5..-2")


def test_cyclic_quotient_table():
    q = M.cyclic(L, (0,), [x()], "O/x")
    assert M.nonzero_entries(q.table(W)) == {(0,): Z}
    q2 = M.cyclic(L, (0,), [x(2, 3)])
    assert M.nonzero_entries(q2.table(W)) == {(0,): Z, (1,): Z, **{(d,): FGAbelianGroup(0, (3,)) for d in range(2, 7)}}


def test_twist_and_shift():
    q = M.cyclic(L, (0,), [x()])
    assert M.nonzero_entries(M.twist(q, 2).table(W)) == {(2,): Z}
    assert M.nonzero_entries(M.shift(q, (2,)).table(W)) == {(-2,): Z}


def test_hyper_structure_table():
    h = R.Hyper(2)
    t = M.nonzero_entries(M.structure(h).table(M.DegreeWindow(-1, 3)))
    assert t == {(0, 0): Z, **{(n, k): Z for n in range(1, 4) for k in range(2)}}


def test_point_modules():
    p = R.PointG()
    a = M.abelian(p, (1,), 4)
    assert M.nonzero_entries(a.table(W)) == {(1,): FGAbelianGroup(0, (4,))}
    assert M.nonzero_entries(M.line(2, p).table(W)) == {(2,): Z}
    assert M.nonzero_entries(M.line(0.5, p).table(W)) == {}


def test_map_cokernel():
    o = M.structure(L)
    f = M.ModuleMap.from_images(M.twist(o, 1), o, [{0: x()}])
    ok, cert = M.is_injective(f, W)
    assert ok and cert.ok
    assert M.map_cokernel_group(f, (0,)) == Z
    assert M.map_cokernel_group(f, (1,)).is_zero()
    q = M.quotient_by_image(f)
    assert M.nonzero_entries(q.table(W)) == {(0,): Z}


def test_ill_defined_map():
    q = M.cyclic(L, (0,), [x()])
    o = M.structure(L)
    with pytest.raises(M.IllDefinedMap):
        M.ModuleMap.from_images(q, o, [{0: R.const(L, 1)}])


def test_hom_group():
    q = M.cyclic(L, (0,), [x()])
    o = M.structure(L)
    assert M.hom_group(q, o)[0].is_zero()
    assert M.hom_group(o, q)[0] == Z
    assert M.hom_group(o, M.twist(o, 1))[0].is_zero()
    assert M.hom_group(M.twist(o, 1), o)[0] == Z


@settings(max_examples=60, deadline=None)
@given(line_modules(), line_modules())
def test_direct_sum_tables_add(a, b):
    s = M.direct_sum([a, b])
    assert M.tables_equal(s.table(W), M.sum_tables(a.table(W), b.table(W)))


@settings(max_examples=60, deadline=None)
@given(line_modules(), st.integers(-2, 2))
def test_twist_moves_table(a, k):
    t = M.twist(a, k).table(M.DegreeWindow(-6, 9))
    for d in range(-3, 6):
        assert t[(d + k,)] == a.degree_piece((d,))


@settings(max_examples=40, deadline=None)
@given(line_modules())
def test_tensor_with_structure_and_json(a):
    o = M.structure(L)
    assert M.tables_equal(M.tensor(a, o).table(W), a.table(W))
    back = M.module_from_json(M.module_to_json(a))
    assert M.tables_equal(back.table(W), a.table(W))


def test_dumps_is_canonical():
    assert M.dumps({"b": 1, "a": [1, 2]}) == M.dumps({"a": [1, 2], "b": 1})
