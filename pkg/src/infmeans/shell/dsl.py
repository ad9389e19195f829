"""A small text language for canonical sets, with a printer that round-trips.

Grammar::

    set    := term ("|" term)*
    term   := "[" r "," r "]"                 closed interval
            | "{" [r ("," r)*] "}"            finite set ("{}" is empty)
            | "seq(" r ";" kind ";" coeffs [";" r] [";" int] ")"
            | "cantor(" r "," r ")"           offset + width * C
            | name "(" set ("," r)* ")"       set operation
            | "(" set ")"
    kind   := harm | geom | harmgeom
    r      := ["-"] int ["/" int]

Sequence forms: ``seq(l;harm;c[;start])``, ``seq(l;geom;c;q[;start])`` and
``seq(l;harmgeom;c,c2;q[;start])``.  Operations: ``shift(S,x)``, ``scale(S,a)``,
``affine(S,a,b)``, ``refl(S,s)``, ``cut_le(S,y)``, ``cut_ge(S,y)``,
``clip(S,lo,hi)`` and ``delball(S,x,r)``.
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import List

from infmeans.errors import DSLSyntaxError, InfMeansError, InvalidAtom
from infmeans.setcore.atoms import (
    GEOMETRIC,
    HARMGEOM,
    HARMONIC,
    CantorPiece,
    FinitePoints,
    Interval,
    Seq,
)
from infmeans.setcore.canonical import (
    Ball,
    CanonicalSet,
    affine_map,
    canonicalize,
    cut,
    reflect,
    slice_set,
    subtract_ball,
    union,
)

KIND_NAMES = {"harm": HARMONIC, "geom": GEOMETRIC, "harmgeom": HARMGEOM}
KIND_TAGS = {v: k for k, v in KIND_NAMES.items()}

_TOKEN = re.compile(r"\s*(?:(?P<num>\d+)|(?P<name>[A-Za-z_][A-Za-z_0-9]*)|(?P<sym>[\[\]{}(),;|/\-]))")

# name -> number of rational arguments after the set
_OPS = {
    "shift": 1, "scale": 1, "affine": 2, "refl": 1,
    "cut_le": 1, "cut_ge": 1, "clip": 2, "delball": 2,
}


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.toks = []
        pos = 0
        while pos < len(text):
            if text[pos:].strip() == "":
                break
            m = _TOKEN.match(text, pos)
            if not m:
                raise DSLSyntaxError(f"unexpected character {text[pos]!r}", pos)
            kind = m.lastgroup
            start = m.start(kind)
            self.toks.append((kind, m.group(kind), start))
            pos = m.end()
        self.i = 0

    # token helpers
    def _pos(self) -> int:
        return self.toks[self.i][2] if self.i < len(self.toks) else len(self.text)

    def _peek(self):
        return self.toks[self.i] if self.i < len(self.toks) else (None, None, len(self.text))

    def _fail(self, msg):
        raise DSLSyntaxError(msg, self._pos())

    def _expect(self, sym):
        kind, val, _ = self._peek()
        if kind != "sym" or val != sym:
            self._fail(f"expected {sym!r}, found {val!r}" if val else f"expected {sym!r} at end of input")
        self.i += 1

    def _accept(self, sym) -> bool:
        kind, val, _ = self._peek()
        if kind == "sym" and val == sym:
            self.i += 1
            return True
        return False

    def _int(self) -> int:
        kind, val, _ = self._peek()
        if kind != "num":
            self._fail(f"expected an integer, found {val!r}" if val else "expected an integer at end of input")
        self.i += 1
        return int(val)

    def rational(self) -> Fraction:
        neg = self._accept("-")
        num = self._int()
        den = 1
        if self._accept("/"):
            at = self._pos()
            den = self._int()
            if den == 0:
                raise DSLSyntaxError("zero denominator", at)
        v = Fraction(num, den)
        return -v if neg else v

    # grammar
    def parse(self) -> CanonicalSet:
        s = self.set_expr()
        if self.i != len(self.toks):
            self._fail(f"unexpected token {self._peek()[1]!r}")
        return s

    def set_expr(self) -> CanonicalSet:
        parts = [self.term()]
        while self._accept("|"):
            parts.append(self.term())
        return union(*parts)

    def _atom(self, make, at):
        try:
            return make()
        except InvalidAtom as exc:
            err = InvalidAtom(f"{exc} at position {at}")
            err.position = at
            raise err from None
        except DSLSyntaxError:
            raise
        except (InfMeansError, ValueError) as exc:
            raise DSLSyntaxError(str(exc), at) from None

    def term(self) -> CanonicalSet:
        kind, val, at = self._peek()
        if kind == "sym" and val == "[":
            self.i += 1
            lo = self.rational()
            self._expect(",")
            hi = self.rational()
            self._expect("]")
            if lo == hi:
                return canonicalize([FinitePoints.of(lo)])
            return canonicalize([self._atom(lambda: Interval(lo, hi), at)])
        if kind == "sym" and val == "{":
            self.i += 1
            pts: List[Fraction] = []
            if not self._accept("}"):
                pts.append(self.rational())
                while self._accept(","):
                    pts.append(self.rational())
                self._expect("}")
            return canonicalize([FinitePoints.of(*pts)] if pts else [])
        if kind == "sym" and val == "(":
            self.i += 1
            s = self.set_expr()
            self._expect(")")
            return s
        if kind != "name":
            self._fail(f"expected a set, found {val!r}" if val else "expected a set at end of input")
        self.i += 1
        self._expect("(")
        if val == "seq":
            return self._seq(at)
        if val == "cantor":
            off = self.rational()
            self._expect(",")
            w = self.rational()
            self._expect(")")
            return canonicalize([self._atom(lambda: CantorPiece(off, w), at)])
        if val not in _OPS:
            raise DSLSyntaxError(f"unknown function {val!r}", at)
        inner = self.set_expr()
        args = []
        for _ in range(_OPS[val]):
            self._expect(",")
            args.append(self.rational())
        self._expect(")")
        return self._atom(lambda: _apply_op(val, inner, args), at)

    def _seq(self, at) -> CanonicalSet:
        limit = self.rational()
        self._expect(";")
        kpos = self._pos()
        kind, name, _ = self._peek()
        if kind != "name" or name not in KIND_NAMES:
            raise DSLSyntaxError(f"unknown sequence kind {name!r}", kpos)
        self.i += 1
        skind = KIND_NAMES[name]
        self._expect(";")
        c = self.rational()
        c2 = Fraction(0)
        q = Fraction(0)
        if skind == HARMGEOM:
            self._expect(",")
            c2 = self.rational()
        if skind != HARMONIC:
            self._expect(";")
            q = self.rational()
        start = 1
        if self._accept(";"):
            start = self._int()
        self._expect(")")
        return canonicalize([self._atom(lambda: Seq(limit, skind, c, c2, q, start), at)])


def _apply_op(name: str, s: CanonicalSet, args) -> CanonicalSet:
    if name == "shift":
        return affine_map(s, 1, args[0])
    if name == "scale":
        return affine_map(s, args[0], 0)
    if name == "affine":
        return affine_map(s, args[0], args[1])
    if name == "refl":
        return reflect(s, args[0])
    if name == "cut_le":
        return slice_set(s, args[0], "le")
    if name == "cut_ge":
        return slice_set(s, args[0], "ge")
    if name == "clip":
        return cut(s, args[0], args[1])
    return subtract_ball(s, Ball(args[0], args[1]))


def parse_dsl(text: str) -> CanonicalSet:
    """Parse a set expression.

    Raises ``DSLSyntaxError`` for malformed text and ``InvalidAtom`` for a
    well-formed atom that breaks an atom invariant; both carry ``position``.
    """
    return _Parser(text).parse()


def format_rat(x: Fraction) -> str:
    return str(x)


def _format_atom(a) -> str:
    if isinstance(a, Interval):
        return f"[{a.lo},{a.hi}]"
    if isinstance(a, FinitePoints):
        return "{" + ",".join(str(p) for p in a.points) + "}"
    if isinstance(a, CantorPiece):
        return f"cantor({a.offset},{a.width})"
    tag = KIND_TAGS[a.kind]
    parts = [str(a.limit), tag]
    if a.kind == HARMGEOM:
        parts.append(f"{a.c},{a.c2}")
    else:
        parts.append(str(a.c))
    if a.kind != HARMONIC:
        parts.append(str(a.q))
    if a.start != 1:
        parts.append(str(a.start))
    return "seq(" + ";".join(parts) + ")"


def format_set(s: CanonicalSet) -> str:
    """Canonical text of the exact part; undecided Cantor residue is marked with ``~``."""
    if s.is_empty:
        return "{}"
    text = " | ".join(_format_atom(a) for a in s.atoms) or "{}"
    if s.residual:
        text += " ~ " + " | ".join(_format_atom(r) for r in s.residual)
    return text
