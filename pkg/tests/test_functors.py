import pytest
from hypothesis import given, settings, strategies as st

from rootstack import rings as R
from rootstack import modules as M
from rootstack import homology as H
from rootstack import functors as F
from rootstack.linalg import FGAbelianGroup
from rootstack.tau import point_module

Z = FGAbelianGroup(1)
P = R.PointG()
L = R.LineR()
W = M.DegreeWindow(-4, 8)


def xq(k=0, e=1, c=1):
    return M.cyclic(L, (k,), [R.var(L, "x", e, c)])


def line_objects():
    return st.one_of(
        st.integers(-2, 2).map(lambda k: M.twist(M.structure(L), k)),
        st.tuples(st.integers(-1, 1), st.integers(1, 2), st.integers(1, 3)).map(lambda t: xq(*t)),
    )


def test_bt_on_points():
    a = M.direct_sum([M.line(1, P), M.abelian(P, (2,), 3)])
    pulled = F.bt_pullback(a, 2)
    assert M.nonzero_entries(pulled.table(W)) == {(2,): Z, (4,): FGAbelianGroup(0, (3,))}
    assert M.tables_equal(F.bt_pushforward(pulled, 2).table(W), a.table(W))
    assert M.nonzero_entries(F.bt_pushforward(M.line(3, P), 2).table(W)) == {}


@pytest.mark.parametrize("l", [2, 3])
def test_theta_push_pull(l):
    for m in (M.structure(L), xq(0, 2, 3), M.twist(M.structure(L), -1)):
        back = F.theta_pushforward(F.theta_pullback(m, l), l)
        assert M.tables_equal(back.table(W), m.table(W))


def test_theta_push_structure():
    # degree d of the output reads degree d*l of the input
    t = F.theta_pushforward(M.twist(M.structure(L), 1), 2)
    assert M.nonzero_entries(t.table(M.DegreeWindow(-2, 2))) == {(1,): Z, (2,): Z}


def test_wedge_right_point():
    a = F.wedge_right(1, M.line(0, P), 2)
    assert a.ring == L
    assert M.nonzero_entries(a.table(W)) == {(1,): Z}


def test_wedge_left_adjoint_index():
    # the right adjoint of wR_0 is wL_{-1}[-1] and the unit recovers Z in degree 0
    c = F.wedge_left(-1, F.wedge_right(0, M.line(0, P), 2), 2).shifted(-1)
    assert H.nonzero(c.homology_table(W)) == {(0, (0,)): Z}


def test_li_restrict():
    t = H.nonzero(F.i_restrict_derived(xq()).homology_table(W))
    assert t == {(0, (0,)): Z, (-1, (1,)): Z}


def test_alpha2_point():
    assert M.nonzero_entries(F.alpha2_pushforward(point_module(2, 1, 1)).table(W)) == {(1,): Z}
    assert M.nonzero_entries(F.alpha2_pushforward(point_module(2, 1, 0)).table(W)) == {}


def test_pipeline_parse():
    pipe = F.parse_pipeline("wedgeR(i=1,l=2) | wedgeL(i=0,l=2)")
    assert [p.name for p in pipe] == ["wedgeR", "wedgeL"]
    out = F.apply_pipeline(F.parse_pipeline("wedgeR(i=0,l=2)"), M.line(0, P))
    assert M.nonzero_entries(out.table(W)) == {(0,): Z}
    with pytest.raises(ValueError):
        F.parse_pipeline("frobnicate(i=1)")
    with pytest.raises(ValueError):
        F.parse_pipeline("wedgeR(i=1)")


def test_ring_checks():
    with pytest.raises(ValueError):
        F.theta_pullback(M.line(0, P), 2)


@settings(max_examples=30, deadline=None)
@given(st.sampled_from([2, 3]), st.data(), line_objects())
def test_fm_two_routes_agree(l, data, m):
    a = data.draw(st.integers(-1, 2))
    b = data.draw(st.integers(0, l - 1))
    k = point_module(l, a, b)
    direct = F.fm_transform(k, m)
    via_tor, cert = F.fm_transform_by_tor(k, m, W)
    assert cert.complete
    assert H.homology_tables_equal(direct.homology_table(W, range(-2, 2)), via_tor.homology_table(W, range(-2, 2)))


@settings(max_examples=30, deadline=None)
@given(st.sampled_from([2, 3]), st.data(), line_objects())
def test_fm_point_kernel(l, data, m):
    # fm(Z<a,b>) = wR_b wL_{a-b}, an independent route through Li^* and Bt
    a = data.draw(st.integers(-1, 2))
    b = data.draw(st.integers(0, l - 1))
    lhs = F.fm_transform(point_module(l, a, b), m)
    rhs = F.wedge_right_complex(b, F.wedge_left(a - b, m, l), l)
    assert H.homology_tables_equal(lhs.homology_table(W, range(-2, 2)), rhs.homology_table(W, range(-2, 2)))
