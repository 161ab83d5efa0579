"""Functor calculus on graded-module models.

Objects live over three rings:

* ``PointG``: graded abelian groups (sheaves on the classifying stack of ``G_m``),
* ``LineR``: graded ``Z[x]``-modules (sheaves on ``[A^1/G_m]``),
* ``Hyper(l)``: ``Z x Z/l``-graded modules over ``Z[x, y]/(x^l - y^l)``.

Twist convention: ``L^i`` is ``Z`` in degree ``i`` and ``M (x) L^i`` is
``shift(M, -i)``, so the divisor sheaf ``O(-D)`` is ``LineR(-1)``, generated in
degree 1.

Every pushforward here is exact and is computed underived; the derived
ingredients are ``Li^*`` and the Fourier-Mukai tensor product, both computed from
free resolutions over ``LineR``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Callable

from . import rings
from .homology import ChainMap, GradedComplex, derived_tensor, free_resolution, tensor_map
from .modules import (
    DegreeWindow,
    Element,
    GradedModule,
    ModuleMap,
    tensor,
    twist,
)
from .rings import Hyper, LineR, PointG, GradedRing


def _require(m: GradedModule, kind: str) -> None:
    if m.ring.kind != kind:
        raise ValueError(f"expected a {kind}-module, got one over {m.ring}")


def _remap_map(f: ModuleMap, source: GradedModule, target: GradedModule, poly_map: Callable | None = None) -> ModuleMap:
    """Same generator correspondence, ring elements transported by ``poly_map``."""
    entries = {k: (poly_map(dict(p)) if poly_map else dict(p)) for k, p in f.entries}
    return ModuleMap.build(source, target, entries, None, check=False)


def _termwise(functor):
    """Lift a module functor with a ``map_`` companion to complexes."""

    def on_complex(c: GradedComplex, *args):
        terms = {k: functor(m, *args) for k, m in c.terms.items()}
        ring = next(iter(terms.values())).ring if terms else None
        diffs = {k: functor.map_(f, terms[k], terms[k + 1], *args) for k, f in c.diffs.items()}
        return GradedComplex(ring or c.ring, terms, diffs, c.name)

    return on_complex


# -- B G_m: regrading ---------------------------------------------------------------


def bt_pullback(m: GradedModule, l: int) -> GradedModule:
    """Degree ``d`` piece becomes the degree ``d*l`` piece; other degrees are zero."""
    _require(m, "PointG")
    gens = [(e[0] * l,) for e in m.generators]
    return GradedModule.build(m.ring, gens, [el for _, el in m.relation_columns()], m.name and f"bt*{m.name}")


bt_pullback.map_ = lambda f, s, t, l: _remap_map(f, s, t)


def bt_pushforward(m: GradedModule, l: int) -> GradedModule:
    """Degree ``d`` piece of the output is the degree ``d*l`` piece of the input."""
    _require(m, "PointG")
    keep = [i for i, e in enumerate(m.generators) if e[0] % l == 0]
    new = {i: k for k, i in enumerate(keep)}
    rels = []
    for d, col in m.relation_columns():
        if d[0] % l == 0:
            rels.append({new[i]: p for i, p in col.items()})
    gens = [(m.generators[i][0] // l,) for i in keep]
    out = GradedModule.build(m.ring, gens, rels, m.name and f"bt_*{m.name}")
    out._cache["kept"] = keep
    return out


def _bt_push_map(f: ModuleMap, s: GradedModule, t: GradedModule, l: int) -> ModuleMap:
    ks, kt = s._cache["kept"], t._cache["kept"]
    pos = {i: k for k, i in enumerate(kt)}
    entries = {}
    for (tt, ss), p in f.entries:
        if ss in ks:
            entries[(pos[tt], ks.index(ss))] = dict(p)
    return ModuleMap.build(s, t, entries, None, check=False)


bt_pushforward.map_ = _bt_push_map


# -- theta^l on LineR ------------------------------------------------------------------


def _power_x(l: int):
    return lambda p: {(e[0] * l,): c for e, c in p.items()}


def theta_pullback(m: GradedModule, l: int) -> GradedModule:
    """Base change along ``x -> x^l``; generator degrees are multiplied by ``l``."""
    _require(m, "LineR")
    gens = [(e[0] * l,) for e in m.generators]
    px = _power_x(l)
    rels = [{i: px(p) for i, p in col.items()} for _, col in m.relation_columns()]
    return GradedModule.build(m.ring, gens, rels, m.name and f"theta*{m.name}")


theta_pullback.map_ = lambda f, s, t, l: _remap_map(f, s, t, _power_x(l))


class _Restriction:
    """Restriction of scalars to a subring over which each generator ``g_i`` splits as ``x^j g_i``.

    ``slots[i]`` is the unique exponent ``j < l`` kept for generator ``i``,
    and ``split(mono)`` writes a normal-form monomial as ``(j, new monomial)``.
    """

    def __init__(self, m: GradedModule, out_ring: GradedRing, slots, new_degree, split):
        self.m = m
        self.out_ring = out_ring
        self.slots = slots
        self.split = split
        self.keys = list(enumerate(slots))
        self.index = {k: n for n, k in enumerate(self.keys)}
        self.gens = [new_degree(i, j) for i, j in self.keys]

    def rewrite(self, el: Element) -> Element:
        out: Element = {}
        for i, p in el.items():
            for mono, c in p.items():
                j, nm = self.split(mono)
                if j != self.slots[i]:
                    raise AssertionError("element not of the kept degree class")
                k = self.index[(i, j)]
                out.setdefault(k, {})
                out[k][nm] = out[k].get(nm, 0) + c
        return {k: rings.normalize(self.out_ring, p) for k, p in out.items() if rings.normalize(self.out_ring, p)}


def _theta_restriction(m: GradedModule, l: int) -> _Restriction:
    r = m.ring
    slots = [(-e[0]) % l for e in m.generators]

    def split(mono):
        q, j = divmod(mono[0], l)
        return j, (q,)

    return _Restriction(m, r, slots, lambda i, j: ((m.generators[i][0] + j) // l,), split)


def _restricted_module(res: _Restriction, kept_class, l: int, name: str) -> GradedModule:
    rels = []
    for d, col in res.m.relation_columns():
        for s in range(l):
            if not kept_class(d, s):
                continue
            mult = {i: rings.multiply(res.m.ring, p, _xpow(res.m.ring, s)) for i, p in col.items()}
            el = res.rewrite(mult)
            if el:
                rels.append(el)
    out = GradedModule.build(res.out_ring, res.gens, rels, name)
    out._cache["restriction"] = res
    return out


def _xpow(r: GradedRing, s: int):
    return rings.var(r, r.variables[0], s)


def theta_pushforward(m: GradedModule, l: int) -> GradedModule:
    """Degree ``d`` piece of the output is the ``d*l`` piece of the input, with ``x`` acting as ``x^l``."""
    _require(m, "LineR")
    res = _theta_restriction(m, l)
    return _restricted_module(res, lambda d, s: (d[0] + s) % l == 0, l, m.name and f"theta_*{m.name}")


def _restricted_map(f: ModuleMap, s: GradedModule, t: GradedModule, *args) -> ModuleMap:
    rs, rt = s._cache["restriction"], t._cache["restriction"]
    r = f.ring
    images = []
    for i, j in rs.keys:
        img = f.apply({i: _xpow(r, j)})
        images.append(rt.rewrite(img))
    return ModuleMap.from_images(s, t, images, None, check=False)


theta_pushforward.map_ = _restricted_map


# -- the zero section i: BG_m -> Theta ------------------------------------------------


def i_pushforward(m: GradedModule) -> GradedModule:
    """Same graded pieces, ``x`` acting by zero."""
    _require(m, "PointG")
    r = LineR()
    x = rings.var(r, "x")
    rels = [{i: rings.const(r, p.get((), 0)) for i, p in col.items()} for _, col in m.relation_columns()]
    rels += [{i: x} for i in range(m.rank)]
    return GradedModule.build(r, m.generators, rels, m.name and f"i_*{m.name}")


def _i_push_map(f, s, t):
    r = LineR()
    return ModuleMap.build(s, t, {k: rings.const(r, dict(p).get((), 0)) for k, p in f.entries}, None, check=False)


i_pushforward.map_ = _i_push_map


def _constant_terms(f: ModuleMap, s: GradedModule, t: GradedModule) -> ModuleMap:
    r = PointG()
    entries = {}
    for k, p in f.entries:
        c = dict(p).get((0,), 0)
        if c:
            entries[k] = rings.const(r, c)
    return ModuleMap.build(s, t, entries, None, check=False)


def i_restrict_derived(m: GradedModule) -> GradedComplex:
    """``Li^* m`` as a complex of free graded abelian groups in indices ``-2..0``.

    ``H^0 = m / x m`` and ``H^{-1}`` is the ``x``-torsion of ``m`` moved up one degree.
    """
    _require(m, "LineR")
    res, cert = free_resolution(m, max_depth=3)
    if not cert.finite:
        raise AssertionError("resolutions over Z[x] terminate")
    pg = PointG()
    terms = {k: GradedModule.build(pg, t.generators, (), f"F{-k}|x=0") for k, t in res.terms.items()}
    diffs = {k: _constant_terms(f, terms[k], terms[k + 1]) for k, f in res.diffs.items()}
    return GradedComplex(pg, terms, diffs, m.name and f"Li*{m.name}")


def _twist_(m: GradedModule, i: int) -> GradedModule:
    return twist(m, i)


_twist_.map_ = lambda f, s, t, i: _remap_map(f, s, t)

twist_complex = _termwise(_twist_)
bt_pushforward_complex = _termwise(bt_pushforward)
theta_pushforward_complex = _termwise(theta_pushforward)
theta_pullback_complex = _termwise(theta_pullback)
i_pushforward_complex = _termwise(i_pushforward)


def wedge_right(i: int, a: GradedModule, l: int) -> GradedModule:
    """``i_* ((Bt^l)^* a (x) L^i)``."""
    return i_pushforward(twist(bt_pullback(a, l), i))


def _wedge_right_map(f, s, t, i, l):
    return _remap_map(f, s, t, lambda p: rings.const(LineR(), p.get((), 0)))


wedge_right.map_ = lambda f, s, t, i, l: _wedge_right_map(f, s, t, i, l)


def wedge_right_complex(i: int, c: GradedComplex, l: int) -> GradedComplex:
    terms = {k: wedge_right(i, m, l) for k, m in c.terms.items()}
    diffs = {k: _wedge_right_map(f, terms[k], terms[k + 1], i, l) for k, f in c.diffs.items()}
    return GradedComplex(LineR(), terms, diffs, c.name)


def wedge_left(i: int, m: GradedModule, l: int) -> GradedComplex:
    """``(Bt^l)_* (Li^* m (x) L^i)`` as a complex of graded abelian groups."""
    return bt_pushforward_complex(twist_complex(i_restrict_derived(m), i), l)


# -- the fibre product alpha_l = Spec Z[x, y]/(x^l - y^l) -----------------------------


def alpha1_pullback(m: GradedModule, l: int) -> GradedModule:
    """``m (x)_{Z[x]} Hyper(l)`` with ``x -> x``; a generator of degree ``d`` moves to ``(d, 0)``."""
    _require(m, "LineR")
    h = Hyper(l)
    lift = lambda p: rings.normalize(h, {(e[0], 0): c for e, c in p.items()})
    gens = [(e[0], 0) for e in m.generators]
    rels = [{i: lift(p) for i, p in col.items()} for _, col in m.relation_columns()]
    return GradedModule.build(h, gens, rels, m.name and f"a1*{m.name}")


def _alpha1_map(f, s, t, l):
    h = Hyper(l)
    return _remap_map(f, s, t, lambda p: rings.normalize(h, {(e[0], 0): c for e, c in p.items()}))


alpha1_pullback.map_ = _alpha1_map
alpha1_pullback_complex = _termwise(alpha1_pullback)


def _alpha2_restriction(m: GradedModule) -> _Restriction:
    l = m.ring.l
    slots = [(e[1] - e[0]) % l for e in m.generators]

    def split(mono):
        # x^a y^b with b < l equals x^j y^(b + l q) where a = l q + j
        q, j = divmod(mono[0], l)
        return j, (mono[1] + l * q,)

    return _Restriction(m, LineR(), slots, lambda i, j: (m.generators[i][0] + j,), split)


def alpha2_pushforward(m: GradedModule) -> GradedModule:
    """Degree ``a`` piece is the ``(a, a mod l)`` piece of ``m``; ``x`` of ``LineR`` acts as ``y``."""
    _require(m, "Hyper")
    l = m.ring.l
    res = _alpha2_restriction(m)
    return _restricted_module(res, lambda d, s: (d[0] + s - d[1]) % l == 0, l, m.name and f"a2_*{m.name}")


alpha2_pushforward.map_ = lambda f, s, t: _restricted_map(f, s, t)
alpha2_pushforward_complex = _termwise(alpha2_pushforward)


def fm_transform(k: GradedModule, m: GradedModule, window: DegreeWindow | None = None, max_depth: int | None = None) -> GradedComplex:
    """``alpha2_* (k (x)^L alpha1^* m)``.

    ``alpha1`` is flat, so ``alpha1^*`` of a finite ``LineR`` resolution of ``m`` is a
    free resolution of ``alpha1^* m`` and the derived tensor is computed termwise on it.
    """
    _require(k, "Hyper")
    _require(m, "LineR")
    l = k.ring.l
    res, cert = free_resolution(m, max_depth=3)
    pulled = alpha1_pullback_complex(res, l)
    t_terms = {j: _tensor_left(k, t) for j, t in pulled.terms.items()}
    t_diffs = {j: _tensor_left_map(k, f, t_terms[j], t_terms[j + 1]) for j, f in pulled.diffs.items()}
    return alpha2_pushforward_complex(GradedComplex(k.ring, t_terms, t_diffs, f"{k.name}*{m.name}"))


def _tensor_left(k: GradedModule, f: GradedModule) -> GradedModule:
    return tensor(f, k)


def _tensor_left_map(k, f, s, t):
    return tensor_map(f, k, s, t)


def fm_transform_map(f: ModuleMap, m: GradedModule):
    """The chain map ``fm(f.source, m) -> fm(f.target, m)`` induced by a kernel map ``f``."""
    l = f.ring.l
    res, _ = free_resolution(m, max_depth=3)
    pulled = alpha1_pullback_complex(res, l)

    def side(k):
        terms = {j: _tensor_left(k, t) for j, t in pulled.terms.items()}
        diffs = {j: _tensor_left_map(k, d, terms[j], terms[j + 1]) for j, d in pulled.diffs.items()}
        return GradedComplex(k.ring, terms, diffs)

    A, B = side(f.source), side(f.target)
    comps = {}
    for j, t in pulled.terms.items():
        comps[j] = _id_tensor_map(t, f, A.term(j), B.term(j))
    A2, B2 = alpha2_pushforward_complex(A), alpha2_pushforward_complex(B)
    comps2 = {j: _restricted_map(g, A2.term(j), B2.term(j)) for j, g in comps.items()}
    return ChainMap(A2, B2, comps2)


def _id_tensor_map(free_mod: GradedModule, f: ModuleMap, s: GradedModule, t: GradedModule) -> ModuleMap:
    """``id_F (x) f`` for ``tensor(F, source)`` to ``tensor(F, target)``."""
    ws, wt = f.source.rank, f.target.rank
    entries = {}
    for a in range(free_mod.rank):
        for (tt, ss), p in f.entries:
            entries[(a * wt + tt, a * ws + ss)] = dict(p)
    return ModuleMap.build(s, t, entries, None, check=False)


def fm_transform_by_tor(k: GradedModule, m: GradedModule, window: DegreeWindow, max_depth: int | None = None):
    """Same transform computed by resolving the kernel over ``Hyper(l)`` instead; an independent check."""
    c, cert = derived_tensor(k, alpha1_pullback(m, k.ring.l), window, max_depth)
    return alpha2_pushforward_complex(c), cert


# -- descriptors ------------------------------------------------------------------------

_DESCRIPTOR = re.compile(r"\s*([A-Za-z_][\w]*)\s*(?:\((.*)\))?\s*$")

_FUNCTORS = {
    "bt_pull": ("l",),
    "bt_push": ("l",),
    "theta_pull": ("l",),
    "theta_push": ("l",),
    "i_push": (),
    "i_restrict": (),
    "twist": ("i",),
    "wedgeR": ("i", "l"),
    "wedgeL": ("i", "l"),
    "alpha1_pull": ("l",),
    "alpha2_push": (),
}


@dataclass(frozen=True)
class FunctorDescriptor:
    name: str
    params: tuple[tuple[str, int], ...] = field(default=())

    def __post_init__(self):
        if self.name not in _FUNCTORS:
            raise ValueError(f"unknown functor {self.name!r}")
        want = set(_FUNCTORS[self.name])
        have = {k for k, _ in self.params}
        if want != have:
            raise ValueError(f"{self.name} takes parameters {sorted(want)}, got {sorted(have)}")
        p = dict(self.params)
        if "l" in p and p["l"] < 1:
            raise ValueError("l must be positive")

    @classmethod
    def parse(cls, text: str) -> "FunctorDescriptor":
        m = _DESCRIPTOR.match(text)
        if not m:
            raise ValueError(f"cannot parse functor {text!r}")
        params = []
        for part in (m.group(2) or "").split(","):
            if not part.strip():
                continue
            k, eq, v = part.partition("=")
            if not eq:
                raise ValueError(f"parameter {part!r} must look like key=value")
            params.append((k.strip(), int(v)))
        return cls(m.group(1), tuple(sorted(params)))

    def __str__(self) -> str:
        order = _FUNCTORS[self.name]
        p = dict(self.params)
        if not order:
            return self.name
        return f"{self.name}(" + ",".join(f"{k}={p[k]}" for k in order) + ")"

    def __call__(self, obj):
        p = dict(self.params)
        n = self.name
        if isinstance(obj, GradedComplex):
            if n == "wedgeR":
                return wedge_right_complex(p["i"], obj, p["l"])
            table = {
                "bt_push": lambda c: bt_pushforward_complex(c, p["l"]),
                "theta_pull": lambda c: theta_pullback_complex(c, p["l"]),
                "theta_push": lambda c: theta_pushforward_complex(c, p["l"]),
                "i_push": i_pushforward_complex,
                "twist": lambda c: twist_complex(c, p["i"]),
                "alpha1_pull": lambda c: alpha1_pullback_complex(c, p["l"]),
                "alpha2_push": alpha2_pushforward_complex,
            }
            if n in table:
                return table[n](obj)
            if len(obj.terms) == 1:
                (k, m), = obj.terms.items()
                return self(m).shifted(-k)
            raise NotImplementedError(f"{n} is only defined on modules and single-term complexes")
        return {
            "bt_pull": lambda m: bt_pullback(m, p.get("l", 1)),
            "bt_push": lambda m: bt_pushforward(m, p.get("l", 1)),
            "theta_pull": lambda m: theta_pullback(m, p.get("l", 1)),
            "theta_push": lambda m: theta_pushforward(m, p.get("l", 1)),
            "i_push": i_pushforward,
            "i_restrict": i_restrict_derived,
            "twist": lambda m: twist(m, p["i"]),
            "wedgeR": lambda m: wedge_right(p.get("i", 0), m, p.get("l", 1)),
            "wedgeL": lambda m: wedge_left(p.get("i", 0), m, p.get("l", 1)),
            "alpha1_pull": lambda m: alpha1_pullback(m, p.get("l", 1)),
            "alpha2_push": alpha2_pushforward,
        }[n](obj)


def parse_pipeline(text: str) -> list[FunctorDescriptor]:
    """``"wedgeR(i=1,l=2) | wedgeL(i=0,l=2)"``: descriptors applied left to right."""
    return [FunctorDescriptor.parse(part) for part in text.split("|") if part.strip()]


def apply_pipeline(pipeline: list[FunctorDescriptor], obj):
    for f in pipeline:
        obj = f(obj)
    return obj
