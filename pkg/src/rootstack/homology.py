"""Complexes of graded modules, free resolutions, Tor, Ext and cones.

Complexes are cohomological: the differential raises the index by one, and a free
resolution ``F_k -> ... -> F_0 -> M`` sits in indices ``-k .. 0`` so that
``Tor_i = H^{-i}``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping, Sequence

from . import rings
from .linalg import FGAbelianGroup, in_span, preimage, subquotient
from .modules import (
    DegreeWindow,
    GradedModule,
    ModuleMap,
    block_map,
    direct_sum,
    free,
    greedy_generators,
    tensor,
    zero,
)
from .rings import Degree, GradedRing


class NotAChainMap(ValueError):
    pass


class CertificateIncomplete(RuntimeError):
    pass


def _unit(i: int, n: int) -> list[int]:
    v = [0] * n
    v[i] = 1
    return v


def _maps_to_zero(f: ModuleMap) -> bool:
    """True when every source generator lands in the relation span of the target."""
    r = f.ring
    for s, e in enumerate(f.source.generators):
        img = f.image_of_generator(s)
        if not img:
            continue
        d = r.grading.add(e, f.shift)
        v = f.target.element_vector(d, img)
        if not in_span(v, f.target.piece(d).relations, len(v)):
            return False
    return True


@dataclass(frozen=True, eq=False)
class GradedComplex:
    ring: GradedRing
    terms: Mapping[int, GradedModule]
    diffs: Mapping[int, ModuleMap] = field(default_factory=dict)
    name: str = ""

    def __post_init__(self):
        for k, f in self.diffs.items():
            if f.source is not self.term(k) or f.target is not self.term(k + 1):
                raise ValueError(f"differential {k} does not connect terms {k} and {k + 1}")

    @classmethod
    def concentrated(cls, m: GradedModule, k: int = 0) -> "GradedComplex":
        return cls(m.ring, {k: m}, {}, m.name)

    @property
    def lo(self) -> int:
        return min(self.terms) if self.terms else 0

    @property
    def hi(self) -> int:
        return max(self.terms) if self.terms else 0

    def term(self, k: int) -> GradedModule:
        t = self.terms.get(k)
        if t is None:
            t = self._zero
        return t

    @property
    def _zero(self) -> GradedModule:
        z = self.__dict__.get("_z")
        if z is None:
            z = zero(self.ring)
            object.__setattr__(self, "_z", z)
        return z

    def diff(self, k: int) -> ModuleMap:
        f = self.diffs.get(k)
        if f is None:
            f = ModuleMap.zero_map(self.term(k), self.term(k + 1))
        return f

    def check_d2(self) -> bool:
        for k in range(self.lo, self.hi - 1):
            if not _maps_to_zero(self.diff(k + 1).compose(self.diff(k))):
                return False
        return True

    def homology(self, k: int, d: Degree) -> FGAbelianGroup:
        if k not in self.terms:
            return FGAbelianGroup()
        t = self.term(k)
        pc = t.piece(d)
        if pc.n == 0:
            return FGAbelianGroup()
        out = self.diff(k)
        tgt = out.target.piece(d)
        ker = preimage(out.matrix(d), pc.n, tgt.n, tgt.relations) if tgt.n else [_unit(i, pc.n) for i in range(pc.n)]
        inc = self.diff(k - 1)
        src = inc.source.piece(d)
        a = inc.matrix(d)
        imgs = [[row[j] for row in a] for j in range(src.n)]
        return subquotient(ker, pc.relations + imgs, pc.n)

    def homology_table(self, window: DegreeWindow, indices: Sequence[int] | None = None) -> dict[tuple[int, Degree], FGAbelianGroup]:
        ks = range(self.lo, self.hi + 1) if indices is None else indices
        return {(k, d): self.homology(k, d) for k in ks for d in window.degrees(self.ring)}

    def shifted(self, n: int) -> "GradedComplex":
        """``C[n]``: term ``k`` of the result is term ``k + n`` of ``C``, differentials negated for odd ``n``."""
        terms = {k - n: m for k, m in self.terms.items()}
        sign = -1 if n % 2 else 1
        diffs = {k - n: (f.scaled(sign) if sign < 0 else f) for k, f in self.diffs.items()}
        return GradedComplex(self.ring, terms, diffs, self.name and f"{self.name}[{n}]")

    def map_terms(self, fn) -> "GradedComplex":
        """Apply a functor on modules and maps termwise; ``fn(module_or_map, new_source, new_target)``."""
        terms = {k: fn(m, None, None) for k, m in self.terms.items()}
        ring = next(iter(terms.values())).ring if terms else self.ring
        diffs = {k: fn(f, terms[k], terms[k + 1]) for k, f in self.diffs.items() if k in terms and k + 1 in terms}
        return GradedComplex(ring, terms, diffs, self.name)


def homology_tables_equal(a: Mapping, b: Mapping) -> bool:
    z = FGAbelianGroup()
    return all(a.get(k, z) == b.get(k, z) for k in set(a) | set(b))


def nonzero(table: Mapping) -> dict:
    return {k: v for k, v in sorted(table.items()) if not v.is_zero()}


# -- chain maps and cones ----------------------------------------------------------


@dataclass(frozen=True, eq=False)
class ChainMap:
    source: GradedComplex
    target: GradedComplex
    components: Mapping[int, ModuleMap]

    def component(self, k: int) -> ModuleMap:
        f = self.components.get(k)
        if f is None:
            f = ModuleMap.zero_map(self.source.term(k), self.target.term(k))
        return f

    def check(self) -> None:
        lo = min(self.source.lo, self.target.lo) - 1
        hi = max(self.source.hi, self.target.hi)
        for k in range(lo, hi + 1):
            a = self.target.diff(k).compose(self.component(k))
            b = self.component(k + 1).compose(self.source.diff(k))
            diff = ModuleMap.build(
                a.source,
                a.target,
                _sub_entries(a, b),
                a.shift,
                check=False,
            )
            if not _maps_to_zero(diff):
                raise NotAChainMap(f"square at index {k} does not commute")


def _sub_entries(a: ModuleMap, b: ModuleMap) -> dict:
    r = a.ring
    out = a.entry_dict()
    for k, p in b.entry_dict().items():
        out[k] = rings.add(r, out.get(k, {}), p, -1)
    return out


def cone(f: ChainMap) -> GradedComplex:
    """``Cone^k = A^{k+1} + B^k`` with ``d(a, b) = (-d_A a, f a + d_B b)``."""
    f.check()
    A, B = f.source, f.target
    lo = min(A.lo - 1, B.lo)
    hi = max(A.hi - 1, B.hi)
    terms = {}
    for k in range(lo, hi + 1):
        terms[k] = direct_sum([A.term(k + 1), B.term(k)], A.ring)
    diffs = {}
    for k in range(lo, hi):
        blocks = {
            (0, 0): A.diff(k + 1).scaled(-1),
            (1, 0): f.component(k + 1),
            (1, 1): B.diff(k),
        }
        diffs[k] = block_map(
            [A.term(k + 1), B.term(k)],
            [A.term(k + 2), B.term(k + 1)],
            blocks,
            source=terms[k],
            target=terms[k + 1],
        )
    return GradedComplex(A.ring, terms, diffs, "cone")


def module_chain_map(f: ModuleMap, k: int = 0) -> ChainMap:
    """A module map viewed as a map of complexes concentrated in index ``k``."""
    return ChainMap(GradedComplex.concentrated(f.source, k), GradedComplex.concentrated(f.target, k), {k: f})


# -- free resolutions ----------------------------------------------------------------


@dataclass(frozen=True)
class ResolutionCertificate:
    depth: int
    min_generator_degree: int | None
    window: str
    complete: bool
    finite: bool
    note: str = ""

    def to_json(self) -> dict:
        return {
            "depth": self.depth,
            "min_generator_degree": self.min_generator_degree,
            "window": self.window,
            "complete": self.complete,
            "finite": self.finite,
            "note": self.note,
        }


def _kernel_degrees(f: ModuleMap) -> list[Degree]:
    """Degrees in which generators of ``ker f`` can be needed (``f`` between free modules)."""
    r = f.ring
    src = f.source
    if not src.generators:
        return []
    if not r.variables:
        return sorted(set(src.generators))
    if not r.has_free_grading:
        return r.grading.finite_part()
    # Above every generator degree of source and target, x acts bijectively on both free
    # modules, so the kernel is generated by its pieces up to that bound.
    slack = r.l - 1 if r.kind == "Hyper" else 0
    lo = min(e[0] for e in src.generators)
    top = max(e[0] for e in src.generators + f.target.generators) + slack
    fin = r.grading.finite_part()
    return [(a,) + c[1:] for a in range(lo, top + 1) for c in fin]


def _syzygies(f: ModuleMap) -> list[tuple[Degree, dict]]:
    src, tgt = f.source, f.target

    def ker(d):
        pc = src.piece(d)
        t = tgt.piece(d)
        if t.n == 0:
            return [_unit(i, pc.n) for i in range(pc.n)]
        return preimage(f.matrix(d), pc.n, t.n, t.relations)

    return greedy_generators(src, ker, _kernel_degrees(f))


def default_depth(window: DegreeWindow, l: int) -> int:
    return 2 * (window.hi - window.lo) // max(l, 1) + 4


def free_resolution(m: GradedModule, window: DegreeWindow | None = None, max_depth: int | None = None, relevant_hi: int | None = None):
    """Free resolution of ``m`` with exact terms up to ``max_depth``.

    Each term is the full syzygy module of the previous differential (no window
    truncation of generators).  The certificate is complete when the resolution
    stops, or when every generator at the cutoff term lies above ``relevant_hi``
    (default: the window's upper end), so deeper terms cannot reach the window.
    """
    r = m.ring
    if max_depth is None:
        max_depth = default_depth(window, r.l) if window else 8
    if max_depth < 1:
        raise ValueError("max_depth must be >= 1")
    if r.characteristic:
        raise ValueError(f"free resolutions over {r} are not supported")
    F0 = free(r, m.generators, "F0")
    terms = {0: F0}
    diffs = {}
    cols = m.relation_columns()
    F1 = free(r, [d for d, _ in cols], "F1")
    if F1.rank:
        terms[-1] = F1
        diffs[-1] = ModuleMap.from_images(F1, F0, [el for _, el in cols], check=False)
    k = 1
    finite = -1 not in diffs
    while not finite and k < max_depth:
        syz = _syzygies(diffs[-k])
        if not syz:
            finite = True
            break
        F = free(r, [d for d, _ in syz], f"F{k + 1}")
        terms[-k - 1] = F
        diffs[-k - 1] = ModuleMap.from_images(F, terms[-k], [el for _, el in syz], check=False)
        k += 1
    if not finite:
        finite = not _syzygies(diffs[-k])
    last = terms[min(terms)]
    if relevant_hi is None:
        relevant_hi = window.hi if window else None
    mg = last.min_generator_degree()
    if finite:
        complete, note = True, "resolution terminates"
    elif r.has_free_grading and relevant_hi is not None and mg is not None and mg > relevant_hi:
        complete, note = True, f"cutoff generators start in degree {mg} > {relevant_hi}"
    else:
        complete, note = False, f"cutoff term still has generators in degree {mg}"
    cert = ResolutionCertificate(-min(terms), mg, str(window) if window else "-", complete, finite, note)
    return GradedComplex(r, terms, diffs, f"res({m.name or '?'})"), cert


def resolution_to_depth(m: GradedModule, depth: int) -> tuple[GradedComplex, bool]:
    """Resolution with at least ``depth`` nonzero steps computed; returns it and whether it terminated."""
    c, cert = free_resolution(m, max_depth=depth + 1)
    return c, cert.finite


# -- tensor with a module --------------------------------------------------------------


def tensor_map(f: ModuleMap, n: GradedModule, source: GradedModule | None = None, target: GradedModule | None = None) -> ModuleMap:
    """``f (x) id_n`` with the generator ordering of :func:`modules.tensor`."""
    source = source or tensor(f.source, n)
    target = target or tensor(f.target, n)
    w = n.rank
    entries = {}
    for (t, s), p in f.entries:
        for j in range(w):
            entries[(t * w + j, s * w + j)] = dict(p)
    g = f.ring.grading
    return ModuleMap.build(source, target, entries, f.shift if f.shift else g.zero, check=False)


def tensor_complex(c: GradedComplex, n: GradedModule) -> GradedComplex:
    terms = {k: tensor(t, n) for k, t in c.terms.items()}
    diffs = {k: tensor_map(f, n, terms[k], terms[k + 1]) for k, f in c.diffs.items()}
    return GradedComplex(c.ring, terms, diffs, f"{c.name} (x) {n.name or '?'}")


def derived_tensor(k: GradedModule, m: GradedModule, window: DegreeWindow | None = None, max_depth: int | None = None, require_complete: bool = False):
    """``res(k) (x) m``; ``H^{-i}`` is ``Tor_i(k, m)``.  Returns ``(complex, certificate)``."""
    if k.ring != m.ring:
        raise ValueError("ring mismatch")
    low = m.min_generator_degree()
    hi = None
    if window is not None:
        hi = window.hi - (low if low is not None else 0)
    res, cert = free_resolution(k, window, max_depth, relevant_hi=hi)
    if require_complete and not cert.complete:
        raise CertificateIncomplete(cert.note)
    return tensor_complex(res, m), cert


# -- Hom complexes and Ext --------------------------------------------------------------


def _as_complex(x) -> GradedComplex:
    return x if isinstance(x, GradedComplex) else GradedComplex.concentrated(x)


class _Lattice:
    """Direct sum of module pieces as one coordinate space with its relation lattice."""

    def __init__(self, blocks: list[tuple[GradedModule, Degree]]):
        self.blocks = blocks
        self.pieces = [m.piece(d) for m, d in blocks]
        self.offsets = []
        k = 0
        for p in self.pieces:
            self.offsets.append(k)
            k += p.n
        self.n = k

    def relations(self) -> list[list[int]]:
        out = []
        for off, p in zip(self.offsets, self.pieces):
            for v in p.relations:
                w = [0] * self.n
                w[off : off + p.n] = v
                out.append(w)
        return out


def _hom_space(F: GradedComplex, C: GradedComplex, n: int, shift: Degree):
    """Coordinates of ``Hom^n(F, C) = prod_j Hom(F^j, C^{j+n})`` for free ``F``."""
    r = F.ring
    blocks, index = [], {}
    for j in sorted(F.terms):
        if j + n not in C.terms:
            continue
        for g, e in enumerate(F.term(j).generators):
            index[(j, g)] = len(blocks)
            blocks.append((C.term(j + n), r.grading.add(e, shift)))
    return _Lattice(blocks), index


def _hom_differential(F: GradedComplex, C: GradedComplex, n: int, shift: Degree):
    """``D(phi) = d_C phi + (-1)^(n+1) phi d_F`` from ``Hom^n`` to ``Hom^{n+1}``."""
    r = F.ring
    g_ = r.grading
    src, si = _hom_space(F, C, n, shift)
    tgt, ti = _hom_space(F, C, n + 1, shift)
    a = [[0] * src.n for _ in range(tgt.n)]
    sign = -1 if (n + 1) % 2 else 1
    for (j, g), b in si.items():
        off_s = src.offsets[b]
        e = F.term(j).generators[g]
        # d_C after phi
        key = (j, g)
        if key in ti:
            dc = C.diff(j + n)
            mat = dc.matrix(g_.add(e, shift))
            off_t = tgt.offsets[ti[key]]
            for row_i, row in enumerate(mat):
                for c, v in enumerate(row):
                    if v:
                        a[off_t + row_i][off_s + c] += v
        # phi after d_F: contributes to the component at generators h of F^{j-1}
        if (j - 1) in F.terms:
            df = F.diff(j - 1)
            for (gg, h), p in df.entries:
                if gg != g or (j - 1, h) not in ti:
                    continue
                mod = C.term(j + n)
                mat = mod.multiplication_matrix(g_.add(e, shift), dict(p))
                off_t = tgt.offsets[ti[(j - 1, h)]]
                for row_i, row in enumerate(mat):
                    for c, v in enumerate(row):
                        if v:
                            a[off_t + row_i][off_s + c] += sign * v
    return src, tgt, a


def hom_complex_cohomology(F: GradedComplex, C: GradedComplex, n: int, shift: Degree) -> FGAbelianGroup:
    src, tgt, a = _hom_differential(F, C, n, shift)
    if src.n == 0:
        return FGAbelianGroup()
    ker = preimage(a, src.n, tgt.n, tgt.relations()) if tgt.n else [_unit(i, src.n) for i in range(src.n)]
    prev, cur, b = _hom_differential(F, C, n - 1, shift)
    imgs = [[row[j] for row in b] for j in range(prev.n)]
    return subquotient(ker, src.relations() + imgs, src.n)


def graded_ext(m, n, i: int, shift: Sequence[int] | None = None, window: DegreeWindow | None = None, max_depth: int | None = None) -> FGAbelianGroup:
    """``Ext^i(m, n)`` in degree ``shift``; ``m`` a module, ``n`` a module or complex.

    Negative ``i`` is allowed when ``n`` is a complex (it is then a plain derived Hom).
    """
    if not isinstance(m, GradedModule):
        raise TypeError("the first argument must be a module")
    C = _as_complex(n)
    r = m.ring
    sh = r.grading.reduce(shift) if shift is not None else r.grading.zero
    need = i + 2 + (C.hi - C.lo)
    if max_depth is not None:
        need = max(need, max_depth)
    F, cert = free_resolution(m, window, max(need, 1))
    if not cert.finite and cert.depth < i + 1 + (C.hi - C.lo):
        raise CertificateIncomplete(f"resolution depth {cert.depth} too small for Ext^{i}")
    return hom_complex_cohomology(F, C, i, sh)


def ext_table(m, n, shift=None, indices: Sequence[int] = (0, 1, 2), window=None) -> dict[int, FGAbelianGroup]:
    return {i: graded_ext(m, n, i, shift, window) for i in indices}


# -- serialization -----------------------------------------------------------------------


def homology_table_to_json(t: Mapping, ring: GradedRing, window: DegreeWindow | None = None) -> dict:
    return {
        "schema": 1,
        "ring": ring.to_json(),
        "window": str(window) if window else None,
        "entries": [
            {"h": h, "degree": list(d), **g.to_json()} for (h, d), g in sorted(t.items()) if not g.is_zero()
        ],
    }


def format_homology(t: Mapping, ring: GradedRing) -> str:
    nz = nonzero(t)
    if not nz:
        return "0"
    return ", ".join(f"H^{h} {ring.grading.format(d)}: {g}" for (h, d), g in nz.items())
