from itertools import combinations
from math import gcd

import pytest
from hypothesis import given, settings, strategies as st

from rootstack.linalg import (
    FGAbelianGroup,
    IntMatrix,
    cokernel,
    in_span,
    invariant_factors,
    kernel_basis,
    lattice_basis,
    rank,
    smith_normal_form,
    solve,
    subquotient,
)


@st.composite
def sparse_matrices(draw, max_dim=12, max_entry=30):
    rows = draw(st.integers(0, max_dim))
    cols = draw(st.integers(0, max_dim))
    cells = [(i, j) for i in range(rows) for j in range(cols)]
    if not cells:
        return IntMatrix.from_dict(rows, cols, {})
    chosen = draw(st.lists(st.sampled_from(cells), max_size=min(len(cells), 3 * max(rows, cols)), unique=True))
    vals = draw(st.lists(st.integers(-max_entry, max_entry).filter(bool), min_size=len(chosen), max_size=len(chosen)))
    return IntMatrix.from_dict(rows, cols, dict(zip(chosen, vals)))


def dense_matrices(max_dim=4, max_entry=9):
    return st.integers(1, max_dim).flatmap(
        lambda r: st.integers(1, max_dim).flatmap(
            lambda c: st.lists(
                st.lists(st.integers(-max_entry, max_entry), min_size=c, max_size=c), min_size=r, max_size=r
            ).map(lambda a: IntMatrix.from_dense(a, c))
        )
    )


def brute_det(a):
    if not a:
        return 1
    return sum((-1) ** j * a[0][j] * brute_det([row[:j] + row[j + 1:] for row in a[1:]]) for j in range(len(a)))


def determinantal_divisors(m: IntMatrix) -> list[int]:
    a = m.to_dense()
    out = []
    for k in range(1, min(m.rows, m.cols) + 1):
        g = 0
        for rs in combinations(range(m.rows), k):
            for cs in combinations(range(m.cols), k):
                g = gcd(g, brute_det([[a[i][j] for j in cs] for i in rs]))
        if g == 0:
            break
        out.append(g)
    return out


@settings(max_examples=1200, deadline=None)
@given(sparse_matrices())
def test_snf_certificate(m):
    u, d, v = smith_normal_form(m)
    assert u @ m @ v == d
    assert abs(u.determinant()) == 1
    assert abs(v.determinant()) == 1
    assert d.is_diagonal()
    diag = d.diagonal()
    nz = [x for x in diag if x]
    assert all(x > 0 for x in nz)
    # nonzero entries come first and form a divisibility chain
    assert diag[: len(nz)] == nz
    assert all(b % a == 0 for a, b in zip(nz, nz[1:]))


@settings(max_examples=300, deadline=None)
@given(dense_matrices())
def test_invariant_factors_match_minors(m):
    dk = determinantal_divisors(m)
    expected = [dk[0]] + [b // a for a, b in zip(dk, dk[1:])] if dk else []
    assert invariant_factors(m) == expected
    assert rank(m) == len(dk)


@settings(max_examples=300, deadline=None)
@given(dense_matrices())
def test_kernel_basis_is_saturated(m):
    k = kernel_basis(m)
    assert k.rows == m.cols and k.cols == m.cols - rank(m)
    assert (m @ k).as_dict() == {}
    # a primitive kernel lattice has trivial cokernel torsion
    if k.cols:
        assert cokernel(k).torsion == ()


@settings(max_examples=300, deadline=None)
@given(dense_matrices(), st.lists(st.integers(-5, 5), min_size=4, max_size=4))
def test_solve_roundtrip(m, x):
    x = x[: m.cols]
    b = m.apply(x)
    y = solve(m, b)
    assert y is not None and m.apply(y) == b


def test_cokernel_examples():
    assert cokernel(IntMatrix.from_dense([[2, 0], [0, 3]])) == FGAbelianGroup(0, (6,))
    assert cokernel(IntMatrix.from_dense([[2, 0], [0, 4]])) == FGAbelianGroup(0, (2, 4))
    assert cokernel(IntMatrix.zeros(2, 0)) == FGAbelianGroup(2)
    assert str(cokernel(IntMatrix.from_dense([[0, 0], [0, 6], [0, 0]]))) == "Z^2 + Z/6"


def test_kernel_example():
    k = kernel_basis(IntMatrix.from_dense([[2, 4]]))
    col = [k[0, 0], k[1, 0]]
    assert k.cols == 1 and col in ([2, -1], [-2, 1])


def test_solve_examples():
    m = IntMatrix.from_dense([[1, 0], [0, 2]])
    assert solve(m, [5, 6]) == [5, 3]
    assert solve(m, [5, 7]) is None


def test_group_normalization():
    g = FGAbelianGroup.from_diagonal([6, 4, 0, 1])
    assert g == FGAbelianGroup(1, (2, 12))
    assert g.order is None
    assert FGAbelianGroup.from_diagonal([2, 3]).order == 6
    assert FGAbelianGroup.from_json(g.to_json()) == g
    with pytest.raises(ValueError):
        FGAbelianGroup(0, (4, 6))
    with pytest.raises(ValueError):
        FGAbelianGroup(0, (1,))


def test_lattice_helpers():
    basis = lattice_basis([[2, 0], [0, 2], [2, 2]], 2)
    assert len(basis) == 2
    assert in_span([4, 2], basis, 2) and not in_span([1, 0], basis, 2)
    assert subquotient([[1, 0], [0, 1]], [[2, 0], [0, 3]], 2) == FGAbelianGroup(0, (6,))


def test_shape_errors():
    with pytest.raises(ValueError):
        IntMatrix.from_dense([[1, 2]]) @ IntMatrix.from_dense([[1, 2]])
