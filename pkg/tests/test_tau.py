import pytest
from hypothesis import given, settings, strategies as st

from rootstack import homology as H
from rootstack import modules as M
from rootstack import tau as T
from rootstack.linalg import FGAbelianGroup

Z = FGAbelianGroup(1)


def window(l):
    return M.DegreeWindow(-1, 3 * l)


def index_triples(max_l=4):
    return st.integers(2, max_l).flatmap(
        lambda l: st.integers(0, l - 1).flatmap(lambda n: st.integers(n, l - 1).map(lambda m: (l, n, m)))
    )


def test_tau_201_table():
    t = T.tau(2, 0, 1).table(M.DegreeWindow(-1, 3))
    want = {(0, 0): Z, (1, 0): Z, (1, 1): Z, (2, 0): Z, (2, 1): Z, (3, 0): Z, (3, 1): Z}
    assert M.nonzero_entries(t) == want


def test_delta_matrix():
    # degree (1, 1): source basis {y}, target spanned by t x, and y maps to t x
    f = T.delta_map(2, 0)
    assert f.source.degree_piece((1, 1)) == Z and f.target.degree_piece((1, 1)) == Z
    assert M.map_kernel_group(f, (1, 1)).is_zero() and M.map_cokernel_group(f, (1, 1)).is_zero()


@pytest.mark.parametrize("l", [2, 3, 4])
def test_delta_bijective_only_at_top(l):
    w = window(l)
    for n in range(l):
        f = T.delta_map(l, n)
        assert T.injective(f, w)[0]
        onto = all(M.map_cokernel_group(f, d).is_zero() for d in w.degrees(f.ring))
        assert onto == (n == l - 1)


@settings(max_examples=40, deadline=None)
@given(index_triples())
def test_rank_oracle(lnm):
    l, n, m = lnm
    t = T.tau(l, n, m).table(window(l))
    for d, g in t.items():
        assert g == FGAbelianGroup(T.tau_rank_oracle(l, n, m, *d))


@pytest.mark.parametrize("l", [2, 3])
def test_boundaries(l):
    w = window(l)
    for n in range(l):
        assert M.tables_equal(T.tau(l, n, n).table(w), T.linet_module(l, n).table(w))
        assert M.tables_equal(T.tau(l, n, l - 1).table(w), T.ideal_power_module(l, n).table(w))


@pytest.mark.parametrize("l", [2, 3, 4])
def test_row_and_column_cokernels(l):
    w = window(l)
    for n in range(l):
        for m in range(n + 1, l):
            row = T.tau_inclusion_row(l, n, m)
            col = T.tau_inclusion_col(l, n, m)
            assert T.injective(row, w)[0] and T.injective(col, w)[0]
            assert T.matches_points(row, T.row_cokernel_points(l, n, m), w)
            assert T.matches_points(col, T.col_cokernel_points(l, n, m), w)


def rank_gap_ok(big, small, points, l, w):
    for d in w.degrees(big.ring):
        gap = big.degree_piece(d).free_rank - small.degree_piece(d).free_rank
        if gap != sum(1 for a, b in points if (a, b % l) == d):
            return False
    return True


def test_literal_row_cokernel_is_inconsistent():
    # an injection tau(0,0) -> tau(0,1) with cokernel Z<1,0> + Z<1,1> would make ranks add up
    l, w = 2, window(2)
    assert not rank_gap_ok(T.tau(l, 0, 1).module, T.tau(l, 0, 0).module, [(1, 0), (1, 1)], l, w)


def test_cone_of_row_inclusion():
    f = T.tau_inclusion_row(2, 0, 1)
    c = H.cone(H.module_chain_map(f))
    assert H.nonzero(c.homology_table(window(2))) == {(0, (0, 1)): Z}


def test_index_errors():
    with pytest.raises(T.TauIndexError):
        T.tau(2, 1, 0)
    with pytest.raises(T.TauIndexError):
        T.tau_inclusion_row(3, 1, 1)
    with pytest.raises(ValueError):
        T.tau(1, 0, 0)
