"""Text descriptors for sample objects used in suite configs.

Grammar::

    object   := base ("|" functor)*
    base     := "O" ["(" int ")"] ["/x^" int | "/x"]     a LineR-module
              | "Z" ["/" int] "@" int                     a PointG-module

``O(k)`` is the structure module shifted so that its generator sits in degree
``-k``; ``O(-1)`` is therefore generated in degree 1.  Functors use the
descriptor syntax of :mod:`rootstack.functors`, and ``{l}`` is replaced by the
current value of ``l`` before parsing, e.g. ``"Z@0 | wedgeR(i=0,l={l})"``.
"""

from __future__ import annotations

import re

from . import rings
from .functors import apply_pipeline, parse_pipeline
from .modules import GradedModule, abelian, cyclic


_LINE = re.compile(r"O(?:\((-?\d+)\))?(?:/x(?:\^(\d+))?)?")
_POINT = re.compile(r"Z(?:/(\d+))?@(-?\d+)")


class DescriptorError(ValueError):
    pass


def parse_base(text: str) -> GradedModule:
    text = text.strip()
    m = _LINE.fullmatch(text)
    if m:
        k = int(m.group(1) or 0)
        r = rings.LineR()
        has_quot = "/x" in text
        e = int(m.group(2) or 1) if has_quot else 0
        rels = [rings.var(r, "x", e)] if has_quot else []
        return cyclic(r, (-k,), rels, text)
    m = _POINT.fullmatch(text)
    if m:
        order = int(m.group(1) or 0)
        if order == 1:
            raise DescriptorError("Z/1 is the zero group; leave it out")
        return abelian(rings.PointG(), (int(m.group(2)),), order, text)
    raise DescriptorError(f"cannot parse object {text!r}")


def parse_object(text: str, l: int | None = None) -> GradedModule:
    if l is not None:
        text = text.replace("{l}", str(l))
    if "{l}" in text:
        raise DescriptorError(f"{text!r} needs a value of l")
    base, *rest = text.split("|", 1)
    obj = parse_base(base)
    if rest:
        try:
            obj = apply_pipeline(parse_pipeline(rest[0]), obj)
        except ValueError as exc:
            raise DescriptorError(str(exc)) from exc
        if not isinstance(obj, GradedModule):
            raise DescriptorError(f"{text!r} does not describe a module")
    return obj.renamed(text.strip())
