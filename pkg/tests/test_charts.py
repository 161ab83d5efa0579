import pytest
from hypothesis import given, settings, strategies as st

from rootstack import charts as C
from rootstack import modules as M
from rootstack.linalg import FGAbelianGroup


def divisors(N):
    return [d for d in range(2, N + 1) if N % d == 0]


@st.composite
def chart_cases(draw):
    l = draw(st.sampled_from([2, 3]))
    N = draw(st.sampled_from([4, 5, 6]))
    p = draw(st.sampled_from(divisors(N)))
    t = draw(st.sampled_from(divisors(N)))
    a = draw(st.integers(0, l - 1))
    b = draw(st.integers(0, l - 1))
    i = draw(st.integers(0, 3))
    return l, N, p, t, a, b, i


def point(i, order, ctx):
    return C.chart_wedge_right(i, C.abelian_group(torsion=(order,)), ctx)


def test_ext_example():
    ctx = C.ChartContext(2, 5)
    a = point(0, 5, ctx)
    g, flag = C.chart_ext(a, a, 0, 6, ctx)
    assert g == FGAbelianGroup(0, (5,)) and flag.conclusive


def test_divisor_ext_cyclic():
    assert C.divisor_ext_cyclic(4, 2, [2], 0) == FGAbelianGroup(0, (2,))
    assert C.divisor_ext_cyclic(4, 2, [2], 3) == FGAbelianGroup(0, (2,))
    # Z/4 is self-injective
    assert C.divisor_ext_cyclic(4, 2, [4], 1).is_zero()
    assert C.divisor_ext_cyclic(6, 2, [3], 0).is_zero()
    with pytest.raises(ValueError):
        C.divisor_ext_cyclic(6, 4, [2], 0)


@settings(max_examples=40, deadline=None)
@given(chart_cases())
def test_chart_ext_change_of_rings(case):
    # u is regular on the chart ring and kills both modules, so
    # Ext^i(wR_a A, wR_b B) = Ext^i_{Z/N}(A, B) if b = a, Ext^{i-1}_{Z/N}(A, B) if b = a + 1, else 0
    l, N, p, t, a, b, i = case
    ctx = C.ChartContext(l, N)
    g, flag = C.chart_ext(point(a, p, ctx), point(b, t, ctx), i, 6, ctx)
    assert flag.conclusive
    if b == a:
        want = C.divisor_ext_cyclic(N, p, [t], i)
    elif b == (a + 1) % l and i >= 1:
        want = C.divisor_ext_cyclic(N, p, [t], i - 1)
    else:
        want = FGAbelianGroup()
    assert g == want


def test_periodicity_flag():
    ctx = C.ChartContext(2, 4)
    _, flag = C.resolution_with_flag(point(0, 2, ctx), 6)
    assert not flag.finite and flag.periodic and flag.conclusive
    _, flag = C.resolution_with_flag(point(0, 4, ctx), 6)
    assert flag.finite
    with pytest.raises(ValueError):
        C.resolution_with_flag(point(0, 4, ctx), 1)


@pytest.mark.parametrize("l,N", [(2, 5), (3, 4)])
def test_theta_push_pull(l, N):
    ctx = C.ChartContext(l, N)
    a = C.abelian_group(1, (3,))
    back = C.chart_theta_pushforward(C.chart_theta_pullback(a, ctx), ctx)
    assert back.ring == a.ring
    assert back.degree_piece(()) == a.degree_piece(()) == FGAbelianGroup(1, (3,))


def test_context_validation():
    with pytest.raises(ValueError):
        C.ChartContext(1, 5)
    with pytest.raises(ValueError):
        C.ChartContext(2, 1)
