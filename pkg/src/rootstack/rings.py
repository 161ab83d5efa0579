"""The closed family of graded rings the engine works over.

==========  ==============================  =====================  ==================
kind        ring                            grading group          generator degrees
==========  ==============================  =====================  ==================
BaseZ       Z                               trivial                -
PointG      Z                               Z                      -
LineR       Z[x]                            Z                      x: 1
LineT       Z[x,t]/(t^l - 1)                Z x Z/l                x: (1,0), t: (0,1)
Hyper       Z[x,y]/(x^l - y^l)              Z x Z/l                x: (1,0), y: (1,1)
Chart       Z[u]/(u^l - N)                  Z/l                    u: 1
ChartDiv    Z/N                             Z/l                    -
DivZ        Z/N                             trivial                -
==========  ==============================  =====================  ==================

Ring elements are plain dicts ``{exponent tuple: int}`` kept in normal form.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import cached_property

Monomial = tuple[int, ...]
Degree = tuple[int, ...]
Poly = dict[Monomial, int]

KINDS = ("BaseZ", "PointG", "LineR", "LineT", "Hyper", "Chart", "ChartDiv", "DivZ")
_NEEDS_L = {"LineT", "Hyper", "Chart", "ChartDiv"}
_NEEDS_N = {"Chart", "ChartDiv", "DivZ"}


@dataclass(frozen=True)
class GradingGroup:
    """Product of cyclic groups; a modulus of 0 means a free ``Z`` coordinate."""

    moduli: tuple[int, ...]

    def __post_init__(self):
        if any(m != 0 and m < 2 for m in self.moduli):
            raise ValueError(f"grading moduli must be 0 or >= 2, got {self.moduli}")

    @property
    def rank(self) -> int:
        return len(self.moduli)

    def reduce(self, coords) -> Degree:
        coords = tuple(int(c) for c in coords)
        if len(coords) != self.rank:
            raise ValueError(f"degree {coords} has wrong length for grading {self.moduli}")
        return tuple(c % m if m else c for c, m in zip(coords, self.moduli))

    def add(self, a: Degree, b: Degree) -> Degree:
        return self.reduce(x + y for x, y in zip(a, b))

    def sub(self, a: Degree, b: Degree) -> Degree:
        return self.reduce(x - y for x, y in zip(a, b))

    def neg(self, a: Degree) -> Degree:
        return self.reduce(-x for x in a)

    @property
    def zero(self) -> Degree:
        return (0,) * self.rank

    def finite_part(self) -> list[Degree]:
        """All values of the modular coordinates, with free coordinates set to 0."""
        out: list[Degree] = [()]
        for m in self.moduli:
            out = [d + (c,) for d in out for c in (range(m) if m else (0,))]
        return out

    def format(self, d: Degree) -> str:
        parts = [f"{c} mod {m}" if m else str(c) for c, m in zip(d, self.moduli)]
        if len(parts) == 1:
            return parts[0]
        return "(" + ", ".join(parts) + ")"


@dataclass(frozen=True)
class GradedRing:
    kind: str
    l: int = 0
    N: int = 0

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown ring kind {self.kind!r}")
        if self.kind in _NEEDS_L:
            if self.l < 2:
                raise ValueError(f"{self.kind} needs l >= 2, got {self.l}")
        elif self.l:
            raise ValueError(f"{self.kind} takes no l")
        if self.kind in _NEEDS_N:
            if self.N < 2:
                raise ValueError(f"{self.kind} needs N >= 2, got {self.N}")
        elif self.N:
            raise ValueError(f"{self.kind} takes no N")

    # -- descriptors ---------------------------------------------------------

    @cached_property
    def variables(self) -> tuple[str, ...]:
        return {
            "LineR": ("x",),
            "LineT": ("x", "t"),
            "Hyper": ("x", "y"),
            "Chart": ("u",),
        }.get(self.kind, ())

    @cached_property
    def grading(self) -> GradingGroup:
        return GradingGroup(
            {
                "BaseZ": (),
                "PointG": (0,),
                "LineR": (0,),
                "LineT": (0, self.l),
                "Hyper": (0, self.l),
                "Chart": (self.l,),
                "ChartDiv": (self.l,),
                "DivZ": (),
            }[self.kind]
        )

    @cached_property
    def variable_degrees(self) -> tuple[Degree, ...]:
        return {
            "LineR": ((1,),),
            "LineT": ((1, 0), (0, 1)),
            "Hyper": ((1, 0), (1, 1)),
            "Chart": ((1,),),
        }.get(self.kind, ())

    @property
    def characteristic(self) -> int:
        return self.N if self.kind in ("ChartDiv", "DivZ") else 0

    @property
    def has_free_grading(self) -> bool:
        """True when the first grading coordinate is a free ``Z`` with all variables in positive degree."""
        return self.kind in ("PointG", "LineR", "LineT", "Hyper")

    def deg(self, *coords) -> Degree:
        return self.grading.reduce(coords)

    @property
    def one(self) -> Poly:
        return {(0,) * len(self.variables): 1}

    def __str__(self) -> str:
        if self.kind in _NEEDS_L and self.kind in _NEEDS_N:
            return f"{self.kind}({self.l},{self.N})"
        if self.kind in _NEEDS_L:
            return f"{self.kind}({self.l})"
        if self.kind in _NEEDS_N:
            return f"{self.kind}({self.N})"
        return self.kind

    def to_json(self) -> dict:
        d = {"kind": self.kind}
        if self.l:
            d["l"] = self.l
        if self.N:
            d["N"] = self.N
        return d

    @classmethod
    def from_json(cls, d: dict) -> "GradedRing":
        return cls(d["kind"], d.get("l", 0), d.get("N", 0))

    @classmethod
    def parse(cls, text: str) -> "GradedRing":
        m = re.fullmatch(r"\s*(\w+)\s*(?:\(\s*([\d\s,]*)\))?\s*", text)
        if not m or m.group(1) not in KINDS:
            raise ValueError(f"cannot parse ring {text!r}")
        kind = m.group(1)
        args = [int(a) for a in (m.group(2) or "").split(",") if a.strip()]
        if kind in _NEEDS_L and kind in _NEEDS_N:
            return cls(kind, *args)
        if kind in _NEEDS_L:
            return cls(kind, l=args[0])
        if kind in _NEEDS_N:
            return cls(kind, N=args[0])
        return cls(kind)


def BaseZ() -> GradedRing:
    return GradedRing("BaseZ")


def PointG() -> GradedRing:
    return GradedRing("PointG")


def LineR() -> GradedRing:
    return GradedRing("LineR")


def LineT(l: int) -> GradedRing:
    return GradedRing("LineT", l=l)


def Hyper(l: int) -> GradedRing:
    return GradedRing("Hyper", l=l)


def Chart(l: int, N: int) -> GradedRing:
    return GradedRing("Chart", l=l, N=N)


def ChartDiv(l: int, N: int) -> GradedRing:
    return GradedRing("ChartDiv", l=l, N=N)


def DivZ(N: int) -> GradedRing:
    return GradedRing("DivZ", N=N)


# -- monomials -----------------------------------------------------------------


def _check_monomial(r: GradedRing, m: Monomial) -> None:
    if len(m) != len(r.variables) or any(e < 0 for e in m):
        raise ValueError(f"malformed monomial {m} for {r}")


def is_normal(r: GradedRing, m: Monomial) -> bool:
    if r.kind == "LineT":
        return m[1] < r.l
    if r.kind == "Hyper":
        return m[1] < r.l
    if r.kind == "Chart":
        return m[0] < r.l
    return True


def normal_form(r: GradedRing, m: Monomial) -> tuple[Monomial, int]:
    """Rewrite a monomial by the ring relations; returns ``(monomial, coefficient)``."""
    _check_monomial(r, m)
    l = r.l
    if r.kind == "LineT":
        return (m[0], m[1] % l), 1
    if r.kind == "Hyper":
        q, s = divmod(m[1], l)
        return (m[0] + l * q, s), 1
    if r.kind == "Chart":
        q, s = divmod(m[0], l)
        return (s,), r.N**q
    return m, 1


def degree_of(r: GradedRing, m: Monomial) -> Degree:
    _check_monomial(r, m)
    if not is_normal(r, m):
        raise ValueError(f"monomial {m} is not in normal form for {r}")
    coords = [0] * r.grading.rank
    for e, vd in zip(m, r.variable_degrees):
        for k, c in enumerate(vd):
            coords[k] += e * c
    return r.grading.reduce(coords)


def monomial_basis(r: GradedRing, d: Degree) -> list[Monomial]:
    """Normal-form monomials of degree ``d``; a Z-basis of the component except for ``Z/N`` rings."""
    d = r.grading.reduce(d)
    k = r.kind
    if k in ("BaseZ", "DivZ"):
        return [()]
    if k == "PointG":
        return [()] if d == (0,) else []
    if k == "ChartDiv":
        return [()] if d == (0,) else []
    if k == "LineR":
        return [(d[0],)] if d[0] >= 0 else []
    if k == "LineT":
        return [(d[0], d[1])] if d[0] >= 0 else []
    if k == "Hyper":
        a, b = d
        return [(a - b, b)] if 0 <= b <= a else []
    if k == "Chart":
        return [(d[0],)]
    raise AssertionError(k)


# -- ring elements ---------------------------------------------------------------


def normalize(r: GradedRing, p: Poly) -> Poly:
    out: Poly = {}
    for m, c in p.items():
        if not c:
            continue
        nm, k = normal_form(r, m)
        out[nm] = out.get(nm, 0) + c * k
    ch = r.characteristic
    if ch:
        out = {m: c % ch for m, c in out.items()}
    return {m: c for m, c in out.items() if c}


def monomial_times(a: Monomial, b: Monomial) -> Monomial:
    return tuple(x + y for x, y in zip(a, b))


def multiply(r: GradedRing, a: Poly, b: Poly) -> Poly:
    out: Poly = {}
    for ma, ca in a.items():
        for mb, cb in b.items():
            m = monomial_times(ma, mb)
            out[m] = out.get(m, 0) + ca * cb
    return normalize(r, out)


def add(r: GradedRing, a: Poly, b: Poly, scale: int = 1) -> Poly:
    out = dict(a)
    for m, c in b.items():
        out[m] = out.get(m, 0) + scale * c
    return normalize(r, out)


def poly_degree(r: GradedRing, p: Poly) -> Degree | None:
    """Common degree of a homogeneous element, ``None`` for zero; raises if inhomogeneous."""
    degs = {degree_of(r, m) for m in p}
    if not degs:
        return None
    if len(degs) > 1:
        raise ValueError(f"inhomogeneous element {p} in {r}")
    return degs.pop()


def format_monomial(r: GradedRing, m: Monomial) -> str:
    parts = []
    for v, e in zip(r.variables, m):
        if e == 1:
            parts.append(v)
        elif e > 1:
            parts.append(f"{v}^{e}")
    return "*".join(parts) if parts else "1"


def format_poly(r: GradedRing, p: Poly) -> str:
    if not p:
        return "0"
    terms = []
    for m in sorted(p, reverse=True):
        c = p[m]
        mono = format_monomial(r, m)
        if mono == "1":
            terms.append(str(c))
        elif c == 1:
            terms.append(mono)
        elif c == -1:
            terms.append("-" + mono)
        else:
            terms.append(f"{c}*{mono}")
    return " + ".join(terms).replace("+ -", "- ")


def var(r: GradedRing, name: str, power: int = 1, coeff: int = 1) -> Poly:
    """The element ``coeff * name^power``."""
    idx = r.variables.index(name)
    m = tuple(power if i == idx else 0 for i in range(len(r.variables)))
    return normalize(r, {m: coeff})


def const(r: GradedRing, c: int) -> Poly:
    return normalize(r, {(0,) * len(r.variables): c})
