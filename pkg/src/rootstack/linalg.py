"""Exact integer linear algebra.

Smith normal form with transformation matrices, integer kernels, lattice
solving, and finitely generated abelian groups in invariant-factor form.
Everything works over Python's arbitrary-precision ``int``.

Matrices are stored sparsely (:class:`IntMatrix`) but all reductions run on
dense row lists; presentations met in practice are small enough that the
densified working copy is cheap.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import gcd
from typing import Iterable, Sequence

Dense = list[list[int]]

# Below this size reductions always run on a dense copy.
DENSE_THRESHOLD = 64


@dataclass(frozen=True)
class IntMatrix:
    """Sparse integer matrix keyed by ``(row, col)``; zero entries are never stored."""

    rows: int
    cols: int
    entries: tuple[tuple[tuple[int, int], int], ...] = ()

    def __post_init__(self):
        seen = set()
        for (i, j), v in self.entries:
            if not (0 <= i < self.rows and 0 <= j < self.cols):
                raise ValueError(f"entry ({i}, {j}) outside {self.rows}x{self.cols}")
            if v == 0:
                raise ValueError("zero entries must not be stored")
            if (i, j) in seen:
                raise ValueError(f"duplicate coordinate ({i}, {j})")
            seen.add((i, j))

    @classmethod
    def from_dict(cls, rows: int, cols: int, d: dict[tuple[int, int], int]) -> "IntMatrix":
        return cls(rows, cols, tuple(sorted((k, int(v)) for k, v in d.items() if v)))

    @classmethod
    def from_dense(cls, a: Sequence[Sequence[int]], cols: int | None = None) -> "IntMatrix":
        rows = len(a)
        if cols is None:
            cols = len(a[0]) if rows else 0
        d = {(i, j): v for i, row in enumerate(a) for j, v in enumerate(row) if v}
        return cls.from_dict(rows, cols, d)

    @classmethod
    def identity(cls, n: int) -> "IntMatrix":
        return cls.from_dict(n, n, {(i, i): 1 for i in range(n)})

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "IntMatrix":
        return cls(rows, cols)

    def to_dense(self) -> Dense:
        a = [[0] * self.cols for _ in range(self.rows)]
        for (i, j), v in self.entries:
            a[i][j] = v
        return a

    def as_dict(self) -> dict[tuple[int, int], int]:
        return dict(self.entries)

    def __getitem__(self, ij: tuple[int, int]) -> int:
        return self.as_dict().get(ij, 0)

    @property
    def shape(self) -> tuple[int, int]:
        return (self.rows, self.cols)

    def transpose(self) -> "IntMatrix":
        return IntMatrix.from_dict(self.cols, self.rows, {(j, i): v for (i, j), v in self.entries})

    def __matmul__(self, other: "IntMatrix") -> "IntMatrix":
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        by_row: dict[int, list[tuple[int, int]]] = {}
        for (k, j), v in other.entries:
            by_row.setdefault(k, []).append((j, v))
        out: dict[tuple[int, int], int] = {}
        for (i, k), a in self.entries:
            for j, b in by_row.get(k, ()):
                out[(i, j)] = out.get((i, j), 0) + a * b
        return IntMatrix.from_dict(self.rows, other.cols, out)

    def __neg__(self) -> "IntMatrix":
        return IntMatrix(self.rows, self.cols, tuple((k, -v) for k, v in self.entries))

    def apply(self, vec: Sequence[int]) -> list[int]:
        out = [0] * self.rows
        for (i, j), v in self.entries:
            out[i] += v * vec[j]
        return out

    def is_diagonal(self) -> bool:
        return all(i == j for (i, j), _ in self.entries)

    def diagonal(self) -> list[int]:
        d = self.as_dict()
        return [d.get((i, i), 0) for i in range(min(self.rows, self.cols))]

    def determinant(self) -> int:
        if self.rows != self.cols:
            raise ValueError("determinant of a non-square matrix")
        return _bareiss_det(self.to_dense())


def _bareiss_det(a: Dense) -> int:
    n = len(a)
    if n == 0:
        return 1
    a = [row[:] for row in a]
    sign, prev = 1, 1
    for k in range(n - 1):
        if a[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if a[i][k]), None)
            if swap is None:
                return 0
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


@dataclass(frozen=True, order=True)
class FGAbelianGroup:
    """``Z^free_rank ⊕ Z/d1 ⊕ Z/d2 ⊕ ...`` with ``d1 | d2 | ...`` and every ``d >= 2``."""

    free_rank: int = 0
    torsion: tuple[int, ...] = ()

    def __post_init__(self):
        if self.free_rank < 0:
            raise ValueError("negative free rank")
        for d in self.torsion:
            if d < 2:
                raise ValueError(f"invariant factor {d} < 2")
        for a, b in zip(self.torsion, self.torsion[1:]):
            if b % a:
                raise ValueError(f"divisibility chain broken: {a} does not divide {b}")

    @classmethod
    def from_diagonal(cls, diag: Iterable[int], extra_free: int = 0) -> "FGAbelianGroup":
        """Group ``⊕ Z/d`` for arbitrary nonnegative ``d`` (0 gives ``Z``), renormalized."""
        diag = [abs(int(d)) for d in diag]
        free = extra_free + sum(1 for d in diag if d == 0)
        tors = [d for d in diag if d > 1]
        if len(tors) > 1 or any(b % a for a, b in zip(tors, tors[1:])):
            n = len(tors)
            m = [[tors[i] if i == j else 0 for j in range(n)] for i in range(n)]
            tors = [d for d in _snf_diagonal(m) if d > 1]
        return cls(free, tuple(tors))

    @classmethod
    def zero(cls) -> "FGAbelianGroup":
        return cls()

    def is_zero(self) -> bool:
        return self.free_rank == 0 and not self.torsion

    def __bool__(self) -> bool:
        return not self.is_zero()

    def __add__(self, other: "FGAbelianGroup") -> "FGAbelianGroup":
        return FGAbelianGroup.from_diagonal(self.torsion + other.torsion, self.free_rank + other.free_rank)

    @property
    def order(self) -> int | None:
        """Cardinality, or ``None`` when infinite."""
        if self.free_rank:
            return None
        out = 1
        for d in self.torsion:
            out *= d
        return out

    def to_json(self) -> dict:
        return {"free_rank": self.free_rank, "torsion": list(self.torsion)}

    @classmethod
    def from_json(cls, d: dict) -> "FGAbelianGroup":
        return cls(d["free_rank"], tuple(d["torsion"]))

    def __str__(self) -> str:
        parts = []
        if self.free_rank == 1:
            parts.append("Z")
        elif self.free_rank:
            parts.append(f"Z^{self.free_rank}")
        parts.extend(f"Z/{d}" for d in self.torsion)
        return " + ".join(parts) if parts else "0"


# -- Smith normal form -------------------------------------------------------


@dataclass
class _SNF:
    """Working state: ``u @ a0 @ v == a`` and ``uinv @ u == 1`` throughout."""

    a: Dense
    u: Dense
    uinv: Dense
    v: Dense
    rank: int = 0
    diag: list[int] = field(default_factory=list)


def _eye(n: int) -> Dense:
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def _snf_full(a0: Dense, rows: int, cols: int, track: bool = True) -> _SNF:
    a = [row[:] for row in a0]
    st = _SNF(a, _eye(rows) if track else [], _eye(rows) if track else [], _eye(cols) if track else [])
    u, uinv, v = st.u, st.uinv, st.v

    def row_swap(i, j):
        a[i], a[j] = a[j], a[i]
        if track:
            u[i], u[j] = u[j], u[i]
            for row in uinv:
                row[i], row[j] = row[j], row[i]

    def col_swap(i, j):
        for row in a:
            row[i], row[j] = row[j], row[i]
        if track:
            for row in v:
                row[i], row[j] = row[j], row[i]

    def row_add(dst, src, q):
        # row dst += q * row src
        ra, rs = a[dst], a[src]
        for k in range(cols):
            if rs[k]:
                ra[k] += q * rs[k]
        if track:
            ud, us = u[dst], u[src]
            for k in range(rows):
                if us[k]:
                    ud[k] += q * us[k]
            for row in uinv:
                if row[dst]:
                    row[src] -= q * row[dst]

    def col_add(dst, src, q):
        # col dst += q * col src
        for row in a:
            if row[src]:
                row[dst] += q * row[src]
        if track:
            for row in v:
                if row[src]:
                    row[dst] += q * row[src]

    def row_neg(i):
        a[i] = [-x for x in a[i]]
        if track:
            u[i] = [-x for x in u[i]]
            for row in uinv:
                row[i] = -row[i]

    t = 0
    while t < min(rows, cols):
        # minimal |entry| pivot, ties broken by lowest (row, col)
        best = None
        for i in range(t, rows):
            row = a[i]
            for j in range(t, cols):
                x = row[j]
                if x and (best is None or abs(x) < best[0]):
                    best = (abs(x), i, j)
                    if best[0] == 1:
                        break
            if best is not None and best[0] == 1:
                break
        if best is None:
            break
        _, pi, pj = best
        if pi != t:
            row_swap(pi, t)
        if pj != t:
            col_swap(pj, t)
        while True:
            p = a[t][t]
            dirty = False
            for i in range(t + 1, rows):
                if a[i][t]:
                    q = a[i][t] // p
                    row_add(i, t, -q)
                    if a[i][t]:
                        dirty = True
            for j in range(t + 1, cols):
                if a[t][j]:
                    q = a[t][j] // p
                    col_add(j, t, -q)
                    if a[t][j]:
                        dirty = True
            if dirty:
                # bring the smallest leftover in row/col t to the pivot
                cands = [(abs(a[i][t]), i, t) for i in range(t + 1, rows) if a[i][t]]
                cands += [(abs(a[t][j]), t, j) for j in range(t + 1, cols) if a[t][j]]
                _, ci, cj = min(cands)
                if ci != t:
                    row_swap(ci, t)
                if cj != t:
                    col_swap(cj, t)
                continue
            # divisibility of the remaining block
            bad = None
            for i in range(t + 1, rows):
                for j in range(t + 1, cols):
                    if a[i][j] % p:
                        bad = i
                        break
                if bad is not None:
                    break
            if bad is None:
                break
            row_add(t, bad, 1)
        if a[t][t] < 0:
            row_neg(t)
        st.diag.append(a[t][t])
        t += 1
    st.rank = t
    return st


def _snf_diagonal(a: Dense) -> list[int]:
    rows = len(a)
    cols = len(a[0]) if rows else 0
    return _snf_full(a, rows, cols, track=False).diag


def smith_normal_form(m: IntMatrix) -> tuple[IntMatrix, IntMatrix, IntMatrix]:
    """Return ``(u, d, v)`` with ``u @ m @ v == d``, ``u, v`` unimodular, ``d`` a divisibility-chain diagonal."""
    st = _snf_full(m.to_dense(), m.rows, m.cols)
    return IntMatrix.from_dense(st.u, m.rows), IntMatrix.from_dense(st.a, m.cols), IntMatrix.from_dense(st.v, m.cols)


def invariant_factors(m: IntMatrix) -> list[int]:
    return _snf_diagonal(m.to_dense())


def rank(m: IntMatrix) -> int:
    return len(invariant_factors(m))


def cokernel(m: IntMatrix) -> FGAbelianGroup:
    """``Z^rows / (column span of m)`` in invariant-factor form."""
    diag = invariant_factors(m)
    return FGAbelianGroup.from_diagonal(diag, m.rows - len(diag))


def kernel_basis(m: IntMatrix) -> IntMatrix:
    """Columns form a basis of ``{v in Z^cols : m v = 0}``."""
    st = _snf_full(m.to_dense(), m.rows, m.cols)
    basis = [[st.v[i][j] for i in range(m.cols)] for j in range(st.rank, m.cols)]
    return _from_columns(basis, m.cols)


def solve(m: IntMatrix, b: Sequence[int]) -> list[int] | None:
    """Some integer ``x`` with ``m x == b``, or ``None`` when ``b`` is not in the column lattice."""
    return solve_dense(m.to_dense(), m.rows, m.cols, list(b))


def _from_columns(cols_: list[list[int]], n: int) -> IntMatrix:
    return IntMatrix.from_dict(n, len(cols_), {(i, j): c[i] for j, c in enumerate(cols_) for i in range(n) if c[i]})


# -- dense lattice helpers used by the module layer ---------------------------
#
# A lattice in Z^n is passed around as a list of generating column vectors.


def solve_dense(a: Dense, rows: int, cols: int, b: list[int]) -> list[int] | None:
    if rows == 0:
        return [0] * cols
    st = _snf_full(a, rows, cols)
    ub = [sum(st.u[i][k] * b[k] for k in range(rows) if b[k]) for i in range(rows)]
    y = [0] * cols
    for i in range(rows):
        if i < st.rank:
            q, r = divmod(ub[i], st.diag[i])
            if r:
                return None
            y[i] = q
        elif ub[i]:
            return None
    return [sum(st.v[i][k] * y[k] for k in range(cols) if y[k]) for i in range(cols)]


def _columns_to_dense(gens: Sequence[Sequence[int]], n: int) -> Dense:
    return [[g[i] for g in gens] for i in range(n)]


def lattice_basis(gens: Sequence[Sequence[int]], n: int) -> list[list[int]]:
    """A basis of the span of ``gens`` in ``Z^n``."""
    gens = [g for g in gens if any(g)]
    if not gens or n == 0:
        return []
    st = _snf_full(_columns_to_dense(gens, n), n, len(gens))
    # span = uinv @ d
    return [[st.uinv[i][k] * st.diag[k] for i in range(n)] for k in range(st.rank)]


def lattice_kernel(a: Dense, rows: int, cols: int) -> list[list[int]]:
    """Basis columns of the integer kernel of a dense ``rows x cols`` matrix."""
    if cols == 0:
        return []
    if rows == 0:
        return [[1 if i == j else 0 for i in range(cols)] for j in range(cols)]
    st = _snf_full(a, rows, cols)
    return [[st.v[i][j] for i in range(cols)] for j in range(st.rank, cols)]


def preimage(f: Dense, n_src: int, n_tgt: int, rel: Sequence[Sequence[int]]) -> list[list[int]]:
    """Basis of ``{v in Z^n_src : f v in span(rel)}``; ``f`` is ``n_tgt x n_src``."""
    rel = [r for r in rel if any(r)]
    if n_tgt == 0:
        return [[1 if i == j else 0 for i in range(n_src)] for j in range(n_src)]
    k = len(rel)
    big = [list(f[i]) + [-r[i] for r in rel] for i in range(n_tgt)]
    ker = lattice_kernel(big, n_tgt, n_src + k)
    return lattice_basis([v[:n_src] for v in ker], n_src)


def subquotient(big: Sequence[Sequence[int]], small: Sequence[Sequence[int]], n: int) -> FGAbelianGroup:
    """``span(big) / span(small)`` for lattices in ``Z^n`` with ``span(small) ⊆ span(big)``."""
    basis = lattice_basis(big, n)
    r = len(basis)
    if r == 0:
        return FGAbelianGroup()
    small = [s for s in small if any(s)]
    if not small:
        return FGAbelianGroup(r)
    b = _columns_to_dense(basis, n)
    coords = []
    for s in small:
        x = solve_dense(b, n, r, list(s))
        if x is None:
            raise ValueError("subquotient: small lattice is not contained in big lattice")
        coords.append(x)
    return cokernel(_from_columns(coords, r))


def quotient_generators(big: Sequence[Sequence[int]], small: Sequence[Sequence[int]], n: int) -> list[list[int]]:
    """Vectors of ``span(big)`` whose classes generate ``span(big)/span(small)``, one per nontrivial invariant factor."""
    basis = lattice_basis(big, n)
    r = len(basis)
    if r == 0:
        return []
    small = [s for s in small if any(s)]
    b = _columns_to_dense(basis, n)
    coords = []
    for s in small:
        x = solve_dense(b, n, r, list(s))
        if x is None:
            raise ValueError("quotient_generators: small lattice is not contained in big lattice")
        coords.append(x)
    if not coords:
        return [list(c) for c in basis]
    st = _snf_full(_columns_to_dense(coords, r), r, len(coords))
    # In the coordinates u^{-1}, the quotient is ⊕ Z/d_k; generators are columns of uinv.
    out = []
    for k in range(r):
        if k < st.rank and st.diag[k] == 1:
            continue
        c = [st.uinv[i][k] for i in range(r)]
        out.append([sum(basis[j][i] * c[j] for j in range(r)) for i in range(n)])
    return out


def in_span(v: Sequence[int], gens: Sequence[Sequence[int]], n: int) -> bool:
    if not any(v):
        return True
    gens = [g for g in gens if any(g)]
    if not gens:
        return False
    return solve_dense(_columns_to_dense(gens, n), n, len(gens), list(v)) is not None
