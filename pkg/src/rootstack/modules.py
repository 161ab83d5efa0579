"""Finitely presented graded modules over the ring family.

A module is a list of homogeneous generators and a list of homogeneous
relation columns.  Every homogeneous component is a finitely generated
abelian group, computed on demand as a cokernel ("degree piece").  Modules are
compared through degree-piece tables on a :class:`DegreeWindow`, never by
presentation.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from . import rings
from .linalg import (
    FGAbelianGroup,
    in_span,
    lattice_basis,
    preimage,
    quotient_generators,
    subquotient,
)
from .rings import Degree, GradedRing, Monomial, Poly

SCHEMA_VERSION = 1

# An element of a module: generator index -> ring element.
Element = dict[int, Poly]


class WindowInsufficient(ValueError):
    """A windowed computation cannot be certified on the requested window."""


class IllDefinedMap(ValueError):
    """A proposed module map does not send relations into relations."""


@dataclass(frozen=True)
class DegreeWindow:
    """Closed interval ``[lo, hi]`` on the free grading coordinate; modular coordinates are always enumerated."""

    lo: int
    hi: int

    def __post_init__(self):
        if self.lo > self.hi:
            raise ValueError(f"empty window [{self.lo}, {self.hi}]")

    @classmethod
    def default(cls, l: int) -> "DegreeWindow":
        return cls(-2 * l, 4 * l)

    @classmethod
    def parse(cls, text: str) -> "DegreeWindow":
        lo, _, hi = text.partition("..")
        if not _:
            raise ValueError(f"window must look like LO..HI, got {text!r}")
        return cls(int(lo), int(hi))

    def degrees(self, ring: GradedRing) -> list[Degree]:
        fin = ring.grading.finite_part()
        mod = ring.grading.moduli
        if not mod:
            return [()]
        if mod[0] != 0:
            return fin
        return [(a,) + f[1:] for a in range(self.lo, self.hi + 1) for f in fin]

    def contains(self, ring: GradedRing, d: Degree) -> bool:
        if ring.grading.moduli and ring.grading.moduli[0] == 0:
            return self.lo <= d[0] <= self.hi
        return True

    def __str__(self) -> str:
        return f"{self.lo}..{self.hi}"


@dataclass
class Piece:
    """Presentation of one homogeneous component: ``Z^len(basis) / span(relations)``."""

    basis: list[tuple[int, Monomial]]
    index: dict[tuple[int, Monomial], int]
    relations: list[list[int]]

    @property
    def n(self) -> int:
        return len(self.basis)

    def group(self) -> FGAbelianGroup:
        return subquotient([_unit(i, self.n) for i in range(self.n)], self.relations, self.n)


def _unit(i: int, n: int) -> list[int]:
    v = [0] * n
    v[i] = 1
    return v


def _freeze_col(col: Mapping[int, Poly]) -> tuple:
    return tuple(sorted((i, tuple(sorted(p.items()))) for i, p in col.items() if p))


@dataclass(frozen=True, eq=False)
class GradedModule:
    ring: GradedRing
    generators: tuple[Degree, ...]
    relations: tuple[tuple[Degree, tuple], ...] = ()
    name: str = field(default="", compare=False)
    _cache: dict = field(default_factory=dict, compare=False, repr=False)

    @classmethod
    def build(
        cls,
        ring: GradedRing,
        generators: Iterable[Sequence[int]],
        relations: Iterable[Mapping[int, Poly]] = (),
        name: str = "",
    ) -> "GradedModule":
        gens = tuple(ring.grading.reduce(g) for g in generators)
        rels = []
        for col in relations:
            col = {i: rings.normalize(ring, p) for i, p in col.items()}
            col = {i: p for i, p in col.items() if p}
            if not col:
                continue
            rels.append((_relation_degree(ring, gens, col), _freeze_col(col)))
        return cls(ring, gens, tuple(rels), name)

    # -- accessors -------------------------------------------------------------

    @property
    def rank(self) -> int:
        return len(self.generators)

    def relation_columns(self) -> list[tuple[Degree, Element]]:
        return [(d, {i: dict(p) for i, p in col}) for d, col in self.relations]

    def is_free(self) -> bool:
        return not self.relations and not self.ring.characteristic

    def renamed(self, name: str) -> "GradedModule":
        return GradedModule(self.ring, self.generators, self.relations, name)

    def __repr__(self) -> str:
        label = f" {self.name}" if self.name else ""
        return f"<GradedModule{label} over {self.ring}: {self.rank} gens, {len(self.relations)} rels>"

    # -- degree pieces -----------------------------------------------------------

    def piece(self, d: Degree) -> Piece:
        d = self.ring.grading.reduce(d)
        key = ("piece", d)
        hit = self._cache.get(key)
        if hit is not None:
            return hit
        r = self.ring
        g = r.grading
        basis = [(i, m) for i, e in enumerate(self.generators) for m in rings.monomial_basis(r, g.sub(d, e))]
        index = {b: k for k, b in enumerate(basis)}
        rels: list[list[int]] = []
        n = len(basis)
        if n:
            for delta, col in self.relations:
                for mono in rings.monomial_basis(r, g.sub(d, delta)):
                    v = [0] * n
                    for i, p in col:
                        for m, c in rings.multiply(r, dict(p), {mono: 1}).items():
                            v[index[(i, m)]] += c
                    if any(v):
                        rels.append(v)
            ch = r.characteristic
            if ch:
                rels.extend([ch if j == k else 0 for j in range(n)] for k in range(n))
        pc = Piece(basis, index, rels)
        self._cache[key] = pc
        return pc

    def degree_piece(self, d: Degree) -> FGAbelianGroup:
        d = self.ring.grading.reduce(d)
        key = ("group", d)
        hit = self._cache.get(key)
        if hit is None:
            hit = self.piece(d).group()
            self._cache[key] = hit
        return hit

    def element_vector(self, d: Degree, el: Mapping[int, Poly]) -> list[int]:
        pc = self.piece(d)
        v = [0] * pc.n
        for i, p in el.items():
            for m, c in rings.normalize(self.ring, p).items():
                v[pc.index[(i, m)]] += c
        return v

    def vector_element(self, d: Degree, v: Sequence[int]) -> Element:
        pc = self.piece(d)
        el: Element = {}
        for (i, m), c in zip(pc.basis, v):
            if c:
                el.setdefault(i, {})[m] = el.get(i, {}).get(m, 0) + c
        return {i: rings.normalize(self.ring, p) for i, p in el.items() if rings.normalize(self.ring, p)}

    def multiplication_matrix(self, d: Degree, p: Poly) -> list[list[int]]:
        """Dense matrix of ``v -> p*v`` from piece ``d`` to piece ``d + deg p`` on generator coordinates."""
        r = self.ring
        dp = rings.poly_degree(r, p)
        src = self.piece(d)
        if dp is None:
            raise ValueError("multiplication by zero has no degree; pass a nonzero element")
        tgt = self.piece(r.grading.add(d, dp))
        a = [[0] * src.n for _ in range(tgt.n)]
        for k, (i, m) in enumerate(src.basis):
            for mm, c in rings.multiply(r, {m: 1}, p).items():
                a[tgt.index[(i, mm)]][k] += c
        return a

    def table(self, window: DegreeWindow) -> dict[Degree, FGAbelianGroup]:
        return {d: self.degree_piece(d) for d in window.degrees(self.ring)}

    def max_generator_degree(self) -> int | None:
        if not self.generators or not self.ring.has_free_grading:
            return None
        return max(e[0] for e in self.generators)

    def min_generator_degree(self) -> int | None:
        if not self.generators or not self.ring.has_free_grading:
            return None
        return min(e[0] for e in self.generators)


def _relation_degree(ring: GradedRing, gens: tuple[Degree, ...], col: Mapping[int, Poly]) -> Degree:
    degs = set()
    for i, p in col.items():
        pd = rings.poly_degree(ring, p)
        degs.add(ring.grading.add(gens[i], pd))
    if len(degs) != 1:
        raise ValueError(f"inhomogeneous relation column {col} with degrees {degs}")
    return degs.pop()


# -- constructors ------------------------------------------------------------------


def free(ring: GradedRing, degrees: Iterable[Sequence[int]], name: str = "") -> GradedModule:
    return GradedModule.build(ring, degrees, (), name)


def zero(ring: GradedRing) -> GradedModule:
    return GradedModule.build(ring, (), (), "0")


def structure(ring: GradedRing) -> GradedModule:
    return free(ring, [ring.grading.zero], name=str(ring))


def cyclic(ring: GradedRing, degree: Sequence[int], relations: Iterable[Poly], name: str = "") -> GradedModule:
    """``R(-degree) / (relations)``: one generator in ``degree`` killed by the given ring elements."""
    return GradedModule.build(ring, [degree], [{0: p} for p in relations], name)


def line(q, ring: GradedRing | None = None) -> GradedModule:
    """The twist ``L^q``: rank one over ``Z`` in degree ``q``, and zero when ``q`` is not an integer."""
    ring = ring or rings.PointG()
    q = Fraction(q)
    if q.denominator != 1:
        return zero(ring)
    return free(ring, [(int(q),)], name=f"L^{int(q)}")


def abelian(ring: GradedRing, degree: Sequence[int], order: int, name: str = "") -> GradedModule:
    """``Z/order`` (``Z`` for order 0) in a single degree over a ring whose degree-0 part is ``Z``."""
    rels = [rings.const(ring, order)] if order else []
    return cyclic(ring, degree, rels, name or (f"Z/{order}" if order else "Z"))


# -- operations ------------------------------------------------------------------


def shift(m: GradedModule, a: Sequence[int]) -> GradedModule:
    """``shift(m, a)_d == m_{d+a}``."""
    g = m.ring.grading
    a = g.reduce(a)
    gens = tuple(g.sub(e, a) for e in m.generators)
    rels = tuple((g.sub(d, a), col) for d, col in m.relations)
    return GradedModule(m.ring, gens, rels, m.name and f"{m.name}<{g.format(a)}>")


def twist(m: GradedModule, k: int) -> GradedModule:
    """``m ⊗ L^k`` on the first grading coordinate."""
    a = [0] * m.ring.grading.rank
    a[0] = -k
    return shift(m, a)


def direct_sum(ms: Sequence[GradedModule], ring: GradedRing | None = None) -> GradedModule:
    if not ms:
        if ring is None:
            raise ValueError("direct_sum of an empty list needs a ring")
        return zero(ring)
    ring = ms[0].ring
    for m in ms:
        if m.ring != ring:
            raise ValueError(f"ring mismatch: {m.ring} vs {ring}")
    gens: list[Degree] = []
    rels = []
    for m in ms:
        off = len(gens)
        gens.extend(m.generators)
        for d, col in m.relations:
            rels.append((d, tuple((i + off, p) for i, p in col)))
    return GradedModule(ring, tuple(gens), tuple(rels), " + ".join(m.name or "?" for m in ms))


def block_offsets(ms: Sequence[GradedModule]) -> list[int]:
    out, k = [], 0
    for m in ms:
        out.append(k)
        k += m.rank
    return out


def tensor(m: GradedModule, n: GradedModule) -> GradedModule:
    if m.ring != n.ring:
        raise ValueError(f"ring mismatch: {m.ring} vs {n.ring}")
    r = m.ring
    g = r.grading
    idx = lambda i, j: i * n.rank + j
    gens = [g.add(a, b) for a in m.generators for b in n.generators]
    rels: list[Element] = []
    for _, col in m.relations:
        for j in range(n.rank):
            rels.append({idx(i, j): dict(p) for i, p in col})
    for i in range(m.rank):
        for _, col in n.relations:
            rels.append({idx(i, j): dict(p) for j, p in col})
    return GradedModule.build(r, gens, rels, f"{m.name or '?'} (x) {n.name or '?'}")


# -- maps --------------------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class ModuleMap:
    """Homogeneous map sending generator ``s`` of the source to ``sum_t entries[t, s] * gen_t``.

    It raises degrees by ``shift``: ``f(M_d) ⊆ N_{d + shift}``.
    """

    source: GradedModule
    target: GradedModule
    entries: tuple = ()
    shift: Degree = ()
    _cache: dict = field(default_factory=dict, compare=False, repr=False)

    @classmethod
    def build(
        cls,
        source: GradedModule,
        target: GradedModule,
        entries: Mapping[tuple[int, int], Poly],
        shift: Sequence[int] | None = None,
        check: bool = True,
    ) -> "ModuleMap":
        if source.ring != target.ring:
            raise ValueError(f"ring mismatch: {source.ring} vs {target.ring}")
        r = source.ring
        g = r.grading
        sh = g.reduce(shift) if shift is not None else g.zero
        clean = {}
        for (t, s), p in entries.items():
            p = rings.normalize(r, p)
            if not p:
                continue
            pd = rings.poly_degree(r, p)
            want = g.sub(g.add(source.generators[s], sh), target.generators[t])
            if pd != want:
                raise ValueError(f"entry ({t},{s}) has degree {pd}, expected {want}")
            clean[(t, s)] = tuple(sorted(p.items()))
        f = cls(source, target, tuple(sorted(clean.items())), sh)
        if check:
            f.check_well_defined()
        return f

    @classmethod
    def from_images(cls, source: GradedModule, target: GradedModule, images: Sequence[Element], shift=None, check=True) -> "ModuleMap":
        entries = {(t, s): p for s, el in enumerate(images) for t, p in el.items()}
        return cls.build(source, target, entries, shift, check)

    @classmethod
    def identity(cls, m: GradedModule) -> "ModuleMap":
        return cls.build(m, m, {(i, i): m.ring.one for i in range(m.rank)}, check=False)

    @classmethod
    def zero_map(cls, source: GradedModule, target: GradedModule, shift=None) -> "ModuleMap":
        return cls.build(source, target, {}, shift, check=False)

    @property
    def ring(self) -> GradedRing:
        return self.source.ring

    def entry_dict(self) -> dict[tuple[int, int], Poly]:
        return {k: dict(p) for k, p in self.entries}

    def image_of_generator(self, s: int) -> Element:
        return {t: dict(p) for (t, ss), p in self.entries if ss == s}

    def apply(self, el: Mapping[int, Poly]) -> Element:
        r = self.ring
        out: Element = {}
        for (t, s), p in self.entries:
            if s in el:
                out[t] = rings.add(r, out.get(t, {}), rings.multiply(r, el[s], dict(p)))
        return {t: p for t, p in out.items() if p}

    def matrix(self, d: Degree) -> list[list[int]]:
        """Dense matrix of the induced map on generator coordinates, piece ``d`` to piece ``d + shift``."""
        r = self.ring
        d = r.grading.reduce(d)
        key = ("mat", d)
        hit = self._cache.get(key)
        if hit is not None:
            return hit
        src = self.source.piece(d)
        tgt = self.target.piece(r.grading.add(d, self.shift))
        by_src: dict[int, list[tuple[int, Poly]]] = {}
        for (t, s), p in self.entries:
            by_src.setdefault(s, []).append((t, dict(p)))
        a = [[0] * src.n for _ in range(tgt.n)]
        for k, (s, m) in enumerate(src.basis):
            for t, p in by_src.get(s, ()):
                for mm, c in rings.multiply(r, {m: 1}, p).items():
                    a[tgt.index[(t, mm)]][k] += c
        self._cache[key] = a
        return a

    def check_well_defined(self) -> None:
        for d, col in self.source.relations:
            img: Element = {}
            r = self.ring
            for s, p in col:
                for t, q in self.image_of_generator(s).items():
                    img[t] = rings.add(r, img.get(t, {}), rings.multiply(r, dict(p), q))
            img = {t: q for t, q in img.items() if q}
            if not img:
                continue
            dd = r.grading.add(d, self.shift)
            v = self.target.element_vector(dd, img)
            if not in_span(v, self.target.piece(dd).relations, len(v)):
                raise IllDefinedMap(f"relation in degree {d} does not map into the relations of the target")

    def compose(self, other: "ModuleMap") -> "ModuleMap":
        """``self ∘ other``."""
        if other.target is not self.source and other.target.generators != self.source.generators:
            raise ValueError("composition mismatch")
        g = self.ring.grading
        images = [self.apply(other.image_of_generator(s)) for s in range(other.source.rank)]
        return ModuleMap.from_images(other.source, self.target, images, g.add(self.shift, other.shift), check=False)

    def scaled(self, c: int) -> "ModuleMap":
        return ModuleMap.build(self.source, self.target, {k: {m: c * v for m, v in dict(p).items()} for k, p in self.entries}, self.shift, check=False)

    def is_zero_on(self, window: DegreeWindow) -> bool:
        tg = self.target
        for d in window.degrees(self.ring):
            a = self.matrix(d)
            dd = self.ring.grading.add(d, self.shift)
            rel = tg.piece(dd).relations
            n = tg.piece(dd).n
            for k in range(self.source.piece(d).n):
                if not in_span([row[k] for row in a], rel, n):
                    return False
        return True


def block_map(
    sources: Sequence[GradedModule],
    targets: Sequence[GradedModule],
    blocks: Mapping[tuple[int, int], ModuleMap],
    source: GradedModule | None = None,
    target: GradedModule | None = None,
    check: bool = False,
) -> ModuleMap:
    """Map between direct sums from blocks ``(target index, source index) -> map``."""
    ring = (sources or targets)[0].ring
    source = source or direct_sum(sources, ring)
    target = target or direct_sum(targets, ring)
    so, to = block_offsets(sources), block_offsets(targets)
    entries: dict[tuple[int, int], Poly] = {}
    shift = None
    for (ti, si), f in blocks.items():
        shift = f.shift if shift is None else shift
        for (t, s), p in f.entries:
            entries[(t + to[ti], s + so[si])] = dict(p)
    return ModuleMap.build(source, target, entries, shift, check=check)


def quotient_by_image(f: ModuleMap) -> GradedModule:
    t = f.target
    rels = [el for _, el in t.relation_columns()]
    rels += [f.image_of_generator(s) for s in range(f.source.rank)]
    return GradedModule.build(t.ring, t.generators, rels, f"coker")


def map_kernel_group(f: ModuleMap, d: Degree) -> FGAbelianGroup:
    src = f.source.piece(d)
    dd = f.ring.grading.add(d, f.shift)
    tgt = f.target.piece(dd)
    k = preimage(f.matrix(d), src.n, tgt.n, tgt.relations)
    return subquotient(k, src.relations, src.n)


def map_cokernel_group(f: ModuleMap, d: Degree) -> FGAbelianGroup:
    """Cokernel of ``f`` landing in target degree ``d``."""
    dd = f.ring.grading.sub(d, f.shift)
    src = f.source.piece(dd)
    tgt = f.target.piece(d)
    a = f.matrix(dd)
    imgs = [[row[k] for row in a] for k in range(src.n)]
    return subquotient([_unit(i, tgt.n) for i in range(tgt.n)], tgt.relations + imgs, tgt.n)


@dataclass(frozen=True)
class Certificate:
    window: str
    ok: bool
    reason: str

    def to_json(self) -> dict:
        return {"window": self.window, "ok": self.ok, "reason": self.reason}


def is_injective(f: ModuleMap, window: DegreeWindow) -> tuple[bool, Certificate]:
    bad = [d for d in window.degrees(f.ring) if not map_kernel_group(f, d).is_zero()]
    r = f.ring
    # The kernel of a map out of a module generated in degrees <= G over a positively graded ring
    # is only detected up to the window; record whether the window covers the source's generators.
    covered = all(window.contains(r, e) for e in f.source.generators)
    reason = "kernel vanishes on every window degree" if not bad else f"kernel nonzero in degree {bad[0]}"
    if not covered:
        reason += "; window does not cover all source generators"
    return (not bad), Certificate(str(window), covered, reason)


def hom_group(
    m: GradedModule, n: GradedModule, shift: Sequence[int] | None = None, window: DegreeWindow | None = None
) -> tuple[FGAbelianGroup, Certificate]:
    """Homomorphisms ``m -> n`` raising degree by ``shift``."""
    if m.ring != n.ring:
        raise ValueError("ring mismatch")
    r = m.ring
    g = r.grading
    sh = g.reduce(shift) if shift is not None else g.zero
    if window is not None:
        outside = [d for d in m.generators + tuple(d for d, _ in m.relations) if not window.contains(r, d)]
        if outside:
            raise WindowInsufficient(f"degree {outside[0]} of the source lies outside window {window}")
    src_pieces = [n.piece(g.add(e, sh)) for e in m.generators]
    rel_cols = m.relation_columns()
    tgt_pieces = [n.piece(g.add(d, sh)) for d, _ in rel_cols]
    so = _offsets([p.n for p in src_pieces])
    to = _offsets([p.n for p in tgt_pieces])
    ns, nt = sum(p.n for p in src_pieces), sum(p.n for p in tgt_pieces)
    a = [[0] * ns for _ in range(nt)]
    for j, (d, col) in enumerate(rel_cols):
        for i, p in col.items():
            block = n.multiplication_matrix(g.add(m.generators[i], sh), p)
            for row_i, row in enumerate(block):
                for col_k, v in enumerate(row):
                    if v:
                        a[to[j] + row_i][so[i] + col_k] += v
    rel_t = [_embed(v, to[j], nt) for j, p in enumerate(tgt_pieces) for v in p.relations]
    rel_s = [_embed(v, so[i], ns) for i, p in enumerate(src_pieces) for v in p.relations]
    k = preimage(a, ns, nt, rel_t)
    grp = subquotient(k, rel_s, ns)
    reason = "finite linear condition on generator images"
    return grp, Certificate(str(window) if window else "-", True, reason)


def _offsets(sizes: Sequence[int]) -> list[int]:
    out, k = [], 0
    for s in sizes:
        out.append(k)
        k += s
    return out


def _embed(v: Sequence[int], off: int, n: int) -> list[int]:
    out = [0] * n
    out[off : off + len(v)] = v
    return out


# -- submodules by degreewise generation ---------------------------------------------


def degree_levels(ring: GradedRing, degrees: Iterable[Degree]) -> list[list[Degree]]:
    """Group degrees that can interact through degree-zero-in-the-free-coordinate monomials."""
    degrees = sorted(set(degrees))
    if not ring.has_free_grading:
        return [degrees] if degrees else []
    levels: dict[int, list[Degree]] = {}
    for d in degrees:
        levels.setdefault(d[0], []).append(d)
    return [levels[a] for a in sorted(levels)]


def greedy_generators(m: GradedModule, lattice, degrees: Iterable[Degree]) -> list[tuple[Degree, Element]]:
    """Homogeneous elements generating the submodule whose piece in degree ``d`` is ``lattice(d)``.

    ``lattice(d)`` returns generating vectors (generator coordinates of ``m.piece(d)``) and must be
    closed under multiplication by the ring.  Degrees are processed in increasing order, adding lifts
    of generators of ``lattice(d) / (span of earlier multiples)`` only where needed.
    """
    r = m.ring
    g = r.grading
    chosen: list[tuple[Degree, Element]] = []
    for level in degree_levels(r, degrees):
        changed = True
        while changed:
            changed = False
            for d in level:
                pc = m.piece(d)
                if pc.n == 0:
                    continue
                target = lattice(d)
                span = list(pc.relations)
                for e, el in chosen:
                    for mono in rings.monomial_basis(r, g.sub(d, e)):
                        span.append(m.element_vector(d, {i: rings.multiply(r, p, {mono: 1}) for i, p in el.items()}))
                new = quotient_generators(list(target) + list(pc.relations), span, pc.n)
                for v in new:
                    el = m.vector_element(d, v)
                    if el:
                        chosen.append((d, el))
                        changed = True
    return chosen


def submodule(m: GradedModule, elements: Sequence[tuple[Degree, Element]], syzygy_degrees: Iterable[Degree], name: str = "") -> tuple[GradedModule, ModuleMap]:
    """Presentation of the submodule generated by ``elements`` plus its inclusion into ``m``.

    Syzygies are searched in ``syzygy_degrees``; the caller is responsible for choosing a range that
    contains all of them (tests compare the result against independent oracles).
    """
    r = m.ring
    src = free(r, [d for d, _ in elements])
    inc = ModuleMap.from_images(src, m, [el for _, el in elements], check=False)

    def ker(d):
        pc = src.piece(d)
        tgt = m.piece(d)
        return preimage(inc.matrix(d), pc.n, tgt.n, tgt.relations)

    syz = greedy_generators(src, ker, syzygy_degrees)
    sub = GradedModule.build(r, src.generators, [el for _, el in syz], name)
    return sub, ModuleMap.from_images(sub, m, [el for _, el in elements], check=False)


# -- comparison and serialization ----------------------------------------------------

Table = dict[Degree, FGAbelianGroup]


def tables_equal(a: Table, b: Table) -> bool:
    keys = set(a) | set(b)
    return all(a.get(k, FGAbelianGroup()) == b.get(k, FGAbelianGroup()) for k in keys)


def table_diff(a: Table, b: Table) -> list[tuple[Degree, FGAbelianGroup, FGAbelianGroup]]:
    z = FGAbelianGroup()
    return [(k, a.get(k, z), b.get(k, z)) for k in sorted(set(a) | set(b)) if a.get(k, z) != b.get(k, z)]


def sum_tables(*tables: Table) -> Table:
    out: Table = {}
    for t in tables:
        for k, v in t.items():
            out[k] = out.get(k, FGAbelianGroup()) + v
    return out


def nonzero_entries(t: Table) -> Table:
    return {k: v for k, v in sorted(t.items()) if not v.is_zero()}


def module_to_json(m: GradedModule) -> dict:
    return {
        "schema": SCHEMA_VERSION,
        "ring": m.ring.to_json(),
        "name": m.name,
        "generators": [list(e) for e in m.generators],
        "relations": [
            {
                "degree": list(d),
                "entries": [{"gen": i, "terms": [{"mono": list(mo), "coeff": c} for mo, c in p]} for i, p in col],
            }
            for d, col in m.relations
        ],
    }


def module_from_json(doc: Mapping) -> GradedModule:
    if doc.get("schema") != SCHEMA_VERSION:
        raise ValueError(f"unsupported schema {doc.get('schema')!r}")
    ring = GradedRing.from_json(doc["ring"])
    rels = []
    for rel in doc["relations"]:
        rels.append({e["gen"]: {tuple(t["mono"]): t["coeff"] for t in e["terms"]} for e in rel["entries"]})
    return GradedModule.build(ring, doc["generators"], rels, doc.get("name", ""))


def table_to_json(t: Table, ring: GradedRing, window: DegreeWindow | None = None, nonzero_only: bool = True) -> dict:
    items = sorted(t.items())
    return {
        "schema": SCHEMA_VERSION,
        "ring": ring.to_json(),
        "window": str(window) if window else None,
        "entries": [
            {"degree": list(d), **grp.to_json()} for d, grp in items if not (nonzero_only and grp.is_zero())
        ],
    }


def table_from_json(doc: Mapping) -> Table:
    if doc.get("schema") != SCHEMA_VERSION:
        raise ValueError(f"unsupported schema {doc.get('schema')!r}")
    return {tuple(e["degree"]): FGAbelianGroup(e["free_rank"], tuple(e["torsion"])) for e in doc["entries"]}


def dumps(doc) -> str:
    return json.dumps(doc, indent=2, sort_keys=True)


def format_table(t: Table, ring: GradedRing) -> str:
    nz = nonzero_entries(t)
    if not nz:
        return "0"
    return ", ".join(f"{ring.grading.format(d)}: {g}" for d, g in nz.items())
