"""Root stack of ``Spec Z`` along the divisor ``(N)``: the chart ``Z[u]/(u^l - N)``.

Rings in play:

* ``BaseZ``: modules on ``X = Spec Z`` (plain f.g. abelian groups),
* ``DivZ(N)``: modules on the divisor ``D = Spec Z/N``,
* ``Chart(l, N)``: ``Z/l``-graded modules on the root stack,
* ``ChartDiv(l, N) = Chart/(u)``: modules on the root divisor.

``u`` is a non-zerodivisor of the chart ring, so ``Li^*`` along ``u = 0`` is the
two-term Koszul complex ``m(-1) --u--> m``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from . import rings
from .functors import _Restriction, _restricted_map, _restricted_module, _termwise
from .homology import GradedComplex, free_resolution, graded_ext, hom_complex_cohomology
from .linalg import FGAbelianGroup
from .modules import GradedModule, ModuleMap, shift, tables_equal, map_cokernel_group
from .rings import BaseZ, Chart, ChartDiv, DivZ, GradedRing


@dataclass(frozen=True)
class ChartContext:
    l: int
    N: int

    def __post_init__(self):
        if self.l < 2:
            raise ValueError(f"l must be >= 2, got {self.l}")
        if self.N < 2:
            raise ValueError(f"N must be >= 2, got {self.N}")

    @property
    def chart(self) -> GradedRing:
        return Chart(self.l, self.N)

    @property
    def divisor(self) -> GradedRing:
        return DivZ(self.N)

    @property
    def root_divisor(self) -> GradedRing:
        return ChartDiv(self.l, self.N)

    def __str__(self) -> str:
        return f"l={self.l},N={self.N}"


def abelian_group(free_rank: int = 0, torsion=(), name: str = "") -> GradedModule:
    """A f.g. abelian group as a ``BaseZ``-module."""
    z = BaseZ()
    gens = [()] * (free_rank + len(torsion))
    rels = [{free_rank + k: rings.const(z, t)} for k, t in enumerate(torsion)]
    return GradedModule.build(z, gens, rels, name)


def _require(m: GradedModule, *kinds: str) -> None:
    if m.ring.kind not in kinds:
        raise ValueError(f"expected a module over {'/'.join(kinds)}, got {m.ring}")


def _constants(r: GradedRing, p) -> dict:
    return rings.const(r, sum(c for mono, c in p.items() if not any(mono)))


def chart_theta_pullback(m: GradedModule, ctx: ChartContext) -> GradedModule:
    """``m (x)_Z Z[u]/(u^l - N)``, generated in degree 0."""
    _require(m, "BaseZ")
    c = ctx.chart
    rels = [{i: _constants(c, p) for i, p in col.items()} for _, col in m.relation_columns()]
    return GradedModule.build(c, [(0,)] * m.rank, rels, m.name and f"theta*{m.name}")


chart_theta_pullback.map_ = lambda f, s, t, ctx: ModuleMap.build(
    s, t, {k: _constants(ctx.chart, dict(p)) for k, p in f.entries}, None, check=False
)


def _degree_zero_restriction(m: GradedModule, out: GradedRing) -> _Restriction:
    l = m.ring.l
    slots = [(-e[0]) % l for e in m.generators]
    return _Restriction(m, out, slots, lambda i, j: (), lambda mono: (mono[0], ()))


def chart_theta_pushforward(m: GradedModule, ctx: ChartContext | None = None) -> GradedModule:
    """The degree-zero piece as an abelian group."""
    _require(m, "Chart")
    l = m.ring.l
    res = _degree_zero_restriction(m, BaseZ())
    return _restricted_module(res, lambda d, s: (d[0] + s) % l == 0, l, m.name and f"theta_*{m.name}")


chart_theta_pushforward.map_ = lambda f, s, t, *a: _restricted_map(f, s, t)
chart_theta_pushforward_complex = _termwise(chart_theta_pushforward)


def _as_divisor_module(a: GradedModule, ctx: ChartContext) -> GradedModule:
    if a.ring.kind == "DivZ":
        if a.ring.N != ctx.N:
            raise ValueError(f"module over {a.ring} does not live on N={ctx.N}")
        return a
    _require(a, "BaseZ")
    d = ctx.divisor
    rels = [{i: _constants(d, p) for i, p in col.items()} for _, col in a.relation_columns()]
    return GradedModule.build(d, a.generators, rels, a.name)


def divisor_module(torsion_orders, ctx: ChartContext, free_rank: int = 0) -> GradedModule:
    """``(Z/N)^free_rank + sum Z/t`` (each ``t`` dividing ``N``) as a ``DivZ(N)``-module."""
    d = ctx.divisor
    for t in torsion_orders:
        if ctx.N % t:
            raise ValueError(f"Z/{t} is not a Z/{ctx.N}-module")
    gens = [()] * (free_rank + len(torsion_orders))
    rels = [{free_rank + k: rings.const(d, t)} for k, t in enumerate(torsion_orders)]
    name = " + ".join([f"Z/{ctx.N}"] * free_rank + [f"Z/{t}" for t in torsion_orders])
    return GradedModule.build(d, gens, rels, name)


def chart_wedge_right(i: int, a: GradedModule, ctx: ChartContext) -> GradedModule:
    """``a`` placed in degree ``i mod l`` with ``u`` acting by zero."""
    a = _as_divisor_module(a, ctx)
    c = ctx.chart
    u = rings.var(c, "u")
    rels = [{k: rings.const(c, p.get((), 0)) for k, p in col.items()} for _, col in a.relation_columns()]
    rels += [{k: rings.const(c, ctx.N)} for k in range(a.rank)]
    rels += [{k: u} for k in range(a.rank)]
    return GradedModule.build(c, [(i,)] * a.rank, rels, a.name and f"wR{i}({a.name})")


def chart_twist(m: GradedModule, k: int) -> GradedModule:
    """``m (x) L^k`` for the tautological root line bundle (degree shift by ``k``)."""
    return shift(m, (-k,))


def chart_koszul(m: GradedModule) -> GradedComplex:
    """``Li^*`` along ``u = 0``: the complex ``m(-1) --u--> m`` in indices ``-1, 0``."""
    _require(m, "Chart")
    c = m.ring
    src = shift(m, (-1,))
    f = ModuleMap.build(src, m, {(k, k): rings.var(c, "u") for k in range(m.rank)}, None, check=False)
    return GradedComplex(c, {-1: src, 0: m}, {-1: f}, m.name and f"Li*{m.name}")


def _twist_complex(c: GradedComplex, k: int) -> GradedComplex:
    terms = {j: chart_twist(t, k) for j, t in c.terms.items()}
    diffs = {j: ModuleMap.build(terms[j], terms[j + 1], f.entry_dict(), None, check=False) for j, f in c.diffs.items()}
    return GradedComplex(c.ring, terms, diffs, c.name)


def chart_wedge_left(i: int, m: GradedModule, ctx: ChartContext) -> GradedComplex:
    """``Bt_* (Li^* m (x) L^i)``: a complex of abelian groups whose cohomology is killed by ``N``."""
    return chart_theta_pushforward_complex(_twist_complex(chart_koszul(m), i))


def divisor_koszul(m: GradedModule, ctx: ChartContext) -> GradedComplex:
    """``m --N--> m`` in indices ``-1, 0``: computes ``m (x)^L Z/N``."""
    _require(m, "BaseZ")
    z = m.ring
    src = GradedModule.build(z, m.generators, [el for _, el in m.relation_columns()], m.name)
    f = ModuleMap.build(src, m, {(k, k): rings.const(z, ctx.N) for k in range(m.rank)}, None, check=False)
    return GradedComplex(z, {-1: src, 0: m}, {-1: f}, m.name and f"Li*{m.name}")


def root_line(i: int, ctx: ChartContext) -> GradedModule:
    """``L^i`` on the root divisor: ``Z/N`` in degree ``i mod l`` over ``ChartDiv(l, N)``."""
    cd = ctx.root_divisor
    return GradedModule.build(cd, [(i,)], (), f"L^{i}")


def root_divisor_pushforward(m: GradedModule) -> GradedModule:
    """``Bt_*`` for the root divisor: the degree-zero part as a ``DivZ(N)``-module."""
    _require(m, "ChartDiv")
    d = DivZ(m.ring.N)
    keep = [k for k, e in enumerate(m.generators) if e[0] == 0]
    pos = {k: j for j, k in enumerate(keep)}
    rels = []
    for deg, col in m.relation_columns():
        if deg[0] == 0:
            rels.append({pos[k]: rings.const(d, p.get((), 0)) for k, p in col.items()})
    return GradedModule.build(d, [()] * len(keep), rels, m.name and f"Bt_*{m.name}")


def divisor_line(q, ctx: ChartContext) -> GradedModule:
    """``L_D^q`` on ``D``: ``Z/N`` for integral ``q``, zero otherwise."""
    q = Fraction(q)
    d = ctx.divisor
    if q.denominator != 1:
        return GradedModule.build(d, (), (), "0")
    return GradedModule.build(d, [()], (), f"L_D^{int(q)}")


# -- Ext with a bounded-depth periodicity flag ------------------------------------------------


@dataclass(frozen=True)
class PeriodicityFlag:
    depth: int
    finite: bool
    periodic: bool
    note: str

    @property
    def conclusive(self) -> bool:
        return self.finite or self.periodic

    def to_json(self) -> dict:
        return {"depth": self.depth, "finite": self.finite, "periodic": self.periodic, "note": self.note}


def _syzygy_table(res: GradedComplex, k: int) -> dict:
    """Table of ``coker(F_{k+1} -> F_k)`` (indices ``-k-1 -> -k``)."""
    f = res.diff(-k - 1)
    return {d: map_cokernel_group(f, d) for d in res.ring.grading.finite_part()}


def resolution_with_flag(m: GradedModule, depth: int):
    if depth < 2:
        raise ValueError("depth must be >= 2")
    res, cert = free_resolution(m, max_depth=depth + 1)
    if cert.finite:
        return res, PeriodicityFlag(depth, True, True, f"resolution stops after {cert.depth} steps")
    a, b = _syzygy_table(res, depth - 2), _syzygy_table(res, depth)
    ranks = [res.term(-depth + 2).rank, res.term(-depth).rank]
    periodic = tables_equal(a, b) and ranks[0] == ranks[1]
    note = f"syzygies at depths {depth - 2} and {depth} " + ("agree" if periodic else "differ")
    return res, PeriodicityFlag(depth, False, periodic, note)


def chart_ext(m: GradedModule, n, i: int, depth: int = 8, ctx: ChartContext | None = None):
    """``Ext^i`` over the chart ring from a depth-``depth`` resolution of ``m``; returns ``(group, flag)``."""
    _require(m, "Chart")
    if i > depth:
        raise ValueError(f"Ext^{i} needs depth >= {i}")
    res, flag = resolution_with_flag(m, depth)
    C = n if isinstance(n, GradedComplex) else GradedComplex.concentrated(n)
    g = hom_complex_cohomology(res, C, i, m.ring.grading.zero)
    return g, flag


def base_ext(m: GradedModule, n: GradedModule, i: int) -> FGAbelianGroup:
    """``Ext^i_Z(m, n)`` for f.g. abelian groups."""
    return graded_ext(m, n, i)


def divisor_ext_cyclic(N: int, p: int, torsion, i: int) -> FGAbelianGroup:
    """``Ext^i_{Z/N}(Z/p, B)`` for ``B = sum Z/t`` (every ``t`` dividing ``N``).

    ``Z/p`` has the 2-periodic resolution ``... --p--> Z/N --N/p--> Z/N --p--> Z/N``, so
    each summand contributes a cyclic group of order ``gcd(p, t)`` in degree 0 and
    ``gcd(p, t) gcd(N/p, t) / t`` in every positive degree.
    """
    if N % p:
        raise ValueError(f"{p} does not divide {N}")
    orders = []
    for t in torsion:
        if N % t:
            raise ValueError(f"Z/{t} is not a Z/{N}-module")
        a = gcd(p, t)
        orders.append(a if i == 0 else a * gcd(N // p, t) // t)
    return FGAbelianGroup.from_diagonal(orders)
