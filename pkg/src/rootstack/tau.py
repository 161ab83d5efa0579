"""Kernel modules on ``alpha_l = Spec Z[x, y]/(x^l - y^l)``.

``tau(l, n, m)`` is the pushout of ``Delta^m: (x, y)^m -> (x^m) Z[x, t]/(t^l - 1)``
along the inclusion ``(x, y)^m ⊆ (x, y)^n``::

    tau(l, n, m) = ((x^m) LineT + (x, y)^n) / {(Delta^m z, -z) : z in (x, y)^m}

so ``tau(l, n, n)`` is the diagonal ``(x^n) LineT`` and ``tau(l, n, l-1)`` is the
ideal ``(x, y)^n``.  As a ``Hyper(l)``-module ``(x^m) LineT`` has generators
``e_b = x^m t^b`` in degree ``(m, b)`` and ``y`` acts as ``t x``.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import rings
from .modules import (
    DegreeWindow,
    GradedModule,
    ModuleMap,
    direct_sum,
    is_injective,
    map_cokernel_group,
    quotient_by_image,
    tables_equal,
)
from .linalg import FGAbelianGroup
from .rings import Hyper


class TauIndexError(ValueError):
    pass


def _check_l(l: int) -> None:
    if l < 2:
        raise TauIndexError(f"l must be >= 2, got {l}")


def linet_module(l: int, n: int) -> GradedModule:
    """``(x^n) Z[x, t]/(t^l - 1)`` as a ``Hyper(l)``-module through ``x -> x, y -> t x``."""
    _check_l(l)
    if n < 0:
        raise TauIndexError(f"n must be >= 0, got {n}")
    h = Hyper(l)
    y, mx = rings.var(h, "y"), rings.var(h, "x", 1, -1)
    gens = [(n, b) for b in range(l)]
    rels = [{b: y, (b + 1) % l: mx} for b in range(l)]
    return GradedModule.build(h, gens, rels, f"(x^{n})LineT")


def ideal_power_module(l: int, n: int) -> GradedModule:
    """``(x, y)^n`` inside ``Hyper(l)``, generated by ``g_b = x^(n-b) y^b`` for ``0 <= b <= n``."""
    _check_l(l)
    if not 0 <= n <= l - 1:
        raise TauIndexError(f"need 0 <= n <= l-1, got n={n}, l={l}")
    h = Hyper(l)
    y, mx = rings.var(h, "y"), rings.var(h, "x", 1, -1)
    gens = [(n, b) for b in range(n + 1)]
    rels = [{b: y, b + 1: mx} for b in range(n)]
    # x^(l-n) * x^n = y^(l-n) * y^n; vanishes identically for n = 0
    rels.append({0: rings.var(h, "x", l - n), n: rings.var(h, "y", l - n, -1)} if n else {0: {}})
    return GradedModule.build(h, gens, rels, f"(x,y)^{n}")


def ideal_power_element(l: int, n: int, a: int, b: int) -> dict:
    """The monomial ``x^a y^b`` (``a + b >= n``, ``b < l``) as an element of ``ideal_power_module(l, n)``."""
    h = Hyper(l)
    if a + b < n:
        raise ValueError("monomial not in the ideal")
    if b <= n:
        return {b: rings.normalize(h, {(a + b - n, 0): 1})}
    return {n: rings.normalize(h, {(a, b - n): 1})}


def delta_map(l: int, n: int) -> ModuleMap:
    """``Delta^n: (x, y)^n -> (x^n) LineT``, ``x^(n-b) y^b -> x^n t^b``."""
    src = ideal_power_module(l, n)
    tgt = linet_module(l, n)
    h = src.ring
    return ModuleMap.build(src, tgt, {(b, b): h.one for b in range(n + 1)})


def ideal_inclusion(l: int, m: int, n: int) -> ModuleMap:
    """``(x, y)^m ⊆ (x, y)^n`` for ``n <= m``."""
    if n > m:
        raise TauIndexError(f"need n <= m, got n={n}, m={m}")
    src = ideal_power_module(l, m)
    tgt = ideal_power_module(l, n)
    images = [ideal_power_element(l, n, m - b, b) for b in range(m + 1)]
    return ModuleMap.from_images(src, tgt, images)


def linet_inclusion(l: int, m: int, k: int) -> ModuleMap:
    """``(x^m) LineT ⊆ (x^k) LineT`` for ``k <= m``."""
    src, tgt = linet_module(l, m), linet_module(l, k)
    h = src.ring
    return ModuleMap.build(src, tgt, {(b, b): rings.var(h, "x", m - k) for b in range(l)})


@dataclass(frozen=True, eq=False)
class TauKernel:
    l: int
    n: int
    m: int
    module: GradedModule
    diagonal: GradedModule
    ideal: GradedModule
    glue_source: GradedModule
    delta: ModuleMap
    inclusion: ModuleMap

    @property
    def name(self) -> str:
        return f"tau({self.n},{self.m})"

    def table(self, window: DegreeWindow):
        return self.module.table(window)


def check_indices(l: int, n: int, m: int) -> None:
    _check_l(l)
    if not 0 <= n <= m <= l - 1:
        raise TauIndexError(f"need 0 <= n <= m <= l-1, got n={n}, m={m}, l={l}")


def tau(l: int, n: int, m: int) -> TauKernel:
    check_indices(l, n, m)
    dm = delta_map(l, m)
    inc = ideal_inclusion(l, m, n)
    lt, idl = dm.target, inc.target
    total = direct_sum([lt, idl])
    h = total.ring
    # antidiagonal z -> (Delta^m z, -z)
    images = []
    for s in range(dm.source.rank):
        el = dict(dm.image_of_generator(s))
        for t, p in inc.image_of_generator(s).items():
            el[t + lt.rank] = rings.add(h, {}, p, -1)
        images.append(el)
    glue = ModuleMap.from_images(dm.source, total, images)
    mod = quotient_by_image(glue).renamed(f"tau({n},{m})")
    return TauKernel(l, n, m, mod, lt, idl, dm.source, dm, inc)


def _summand_map(src: TauKernel, tgt: TauKernel, lt_map: ModuleMap, ideal_map: ModuleMap) -> ModuleMap:
    off_s, off_t = src.diagonal.rank, tgt.diagonal.rank
    entries = {}
    for (t, s), p in lt_map.entries:
        entries[(t, s)] = dict(p)
    for (t, s), p in ideal_map.entries:
        entries[(t + off_t, s + off_s)] = dict(p)
    return ModuleMap.build(src.module, tgt.module, entries)


def tau_inclusion_row(l: int, n: int, m: int) -> ModuleMap:
    """The injection ``tau(n, m) -> tau(n, m-1)`` for ``n < m``; its cokernel is ``sum_{b=m}^{l-1} Z<m-1, b>``."""
    check_indices(l, n, m)
    if not n < m:
        raise TauIndexError(f"need n < m, got n={n}, m={m}")
    a, b = tau(l, n, m), tau(l, n, m - 1)
    ident = ModuleMap.identity(a.ideal)
    return _summand_map(a, b, linet_inclusion(l, m, m - 1), ModuleMap.build(a.ideal, b.ideal, ident.entry_dict(), check=False))


def tau_inclusion_col(l: int, n: int, m: int) -> ModuleMap:
    """The injection ``tau(n+1, m) -> tau(n, m)`` for ``n < m``; its cokernel is ``sum_{b=0}^{n} Z<n, b>``."""
    check_indices(l, n, m)
    if not n < m:
        raise TauIndexError(f"need n < m, got n={n}, m={m}")
    a, b = tau(l, n + 1, m), tau(l, n, m)
    lt_id = ModuleMap.build(a.diagonal, b.diagonal, ModuleMap.identity(a.diagonal).entry_dict(), check=False)
    return _summand_map(a, b, lt_id, ideal_inclusion(l, n + 1, n))


# -- point modules and table oracles ---------------------------------------------------------


def point_module(l: int, a: int, b: int) -> GradedModule:
    """``Z<a, b>``: the residue field of the cone point placed in degree ``(a, b)``."""
    h = Hyper(l)
    return GradedModule.build(h, [(a, b)], [{0: rings.var(h, "x")}, {0: rings.var(h, "y")}], f"Z<{a},{b % l}>")


def point_table(l: int, points, window: DegreeWindow) -> dict:
    out = {d: FGAbelianGroup() for d in window.degrees(Hyper(l))}
    for a, b in points:
        d = (a, b % l)
        if d in out:
            out[d] = out[d] + FGAbelianGroup(1)
    return out


def tau_rank_oracle(l: int, n: int, m: int, a: int, b: int) -> int:
    """Rank of ``tau(l, n, m)`` in degree ``(a, b)`` from the pushout description, independent of presentations."""
    b %= l
    if a >= m:
        return 1
    if a >= n:
        return 1 if b <= a else 0
    return 0


def row_cokernel_points(l: int, n: int, m: int) -> list[tuple[int, int]]:
    return [(m - 1, b) for b in range(m, l)]


def col_cokernel_points(l: int, n: int, m: int) -> list[tuple[int, int]]:
    return [(n, b) for b in range(n + 1)]


def cokernel_table(f: ModuleMap, window: DegreeWindow) -> dict:
    return {d: map_cokernel_group(f, d) for d in window.degrees(f.ring)}


def injective(f: ModuleMap, window: DegreeWindow):
    return is_injective(f, window)


def matches_points(f: ModuleMap, points, window: DegreeWindow) -> bool:
    return tables_equal(cokernel_table(f, window), point_table(f.ring.l, points, window))
