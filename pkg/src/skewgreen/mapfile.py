"""Map files: a two-line text format for skew products, parsed exactly.

    p: z^2 - 1
    q: z w^2 + 3/4 z^2 w + (1+2i)
    # comments after the two polynomial lines

Decimals become exact rationals (``0.25`` is 1/4); complex coefficients are
written ``(a+bi)`` with rational or decimal parts.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from decimal import Decimal
from fractions import Fraction
from typing import Dict, Tuple

from .algebra import Poly1, Poly2, QQi, SkewProduct, _simplify, normalize_monic

__all__ = ["ParseError", "MapFile", "parse_map", "format_map", "format_poly1",
           "format_poly2", "format_coeff", "parse_poly"]


class ParseError(ValueError):
    def __init__(self, line: int, column: int, expected: str):
        super().__init__(f"line {line}, column {column}: expected {expected}")
        self.line, self.column, self.expected = line, column, expected


_REAL = r"\d+(?:\.\d*)?(?:/\d+)?|\.\d+"
_TOKEN = re.compile(r"""
    (?P<ws>[ \t]+)
  | (?P<complex>\(\s*(?P<re>[+-]?(?:%s))\s*(?P<sg>[+-])\s*(?P<im>%s)\s*i\s*\))
  | (?P<num>%s)
  | (?P<var>[zw])(?:\s*\^\s*(?P<exp>\d+))?
  | (?P<sign>[+-])
  | (?P<star>\*)
""" % (_REAL, _REAL, _REAL), re.VERBOSE)


def _real(text: str) -> Fraction:
    if "/" in text:
        num, den = text.split("/")
        return Fraction(Decimal(num)) / int(den)
    return Fraction(Decimal(text))


class _Scanner:
    def __init__(self, text: str, line: int, col0: int):
        self.text, self.line, self.col0 = text, line, col0
        self.pos = 0
        self.toks = []
        while self.pos < len(text):
            m = _TOKEN.match(text, self.pos)
            if not m:
                raise ParseError(line, col0 + self.pos + 1, "a term, sign or coefficient")
            if m.lastgroup != "ws":
                self.toks.append((m, col0 + m.start() + 1))
            self.pos = m.end()
        self.toks.append((None, col0 + len(text) + 1))
        self.i = 0

    def peek(self):
        return self.toks[self.i]

    def kind(self):
        m = self.toks[self.i][0]
        if m is None:
            return "end"
        for k in ("complex", "num", "var", "sign", "star"):
            if m.group(k) is not None:
                return k
        return "?"

    def take(self):
        t = self.toks[self.i]
        self.i += 1
        return t


def _coeff_value(m) -> object:
    if m.group("complex") is not None:
        re_ = _real(m.group("re").lstrip("+-")) * (-1 if m.group("re").startswith("-") else 1)
        im = _real(m.group("im")) * (-1 if m.group("sg") == "-" else 1)
        return _simplify(QQi(re_, im))
    return _simplify(_real(m.group("num")))


def _parse_terms(sc: _Scanner, allowed: str) -> Dict[Tuple[int, ...], object]:
    out: Dict[Tuple[int, ...], object] = {}
    first = True
    while True:
        sign = 1
        if sc.kind() == "sign":
            sign = -1 if sc.take()[0].group("sign") == "-" else 1
        elif not first:
            if sc.kind() == "end":
                break
            raise ParseError(sc.line, sc.peek()[1], "'+' or '-'")
        first = False
        coeff = None
        if sc.kind() in ("num", "complex"):
            coeff = _coeff_value(sc.take()[0])
            if sc.kind() == "star":
                sc.take()
                if sc.kind() != "var":
                    raise ParseError(sc.line, sc.peek()[1], "a variable after '*'")
        exps = {v: 0 for v in allowed}
        seen = set()
        while sc.kind() == "var":
            m, col = sc.take()
            v = m.group("var")
            if v not in allowed:
                raise ParseError(sc.line, col, f"variable in {{{', '.join(allowed)}}}")
            if v in seen:
                raise ParseError(sc.line, col, f"at most one {v} factor per term")
            seen.add(v)
            exps[v] = int(m.group("exp")) if m.group("exp") else 1
            if sc.kind() == "star":
                sc.take()
                if sc.kind() != "var":
                    raise ParseError(sc.line, sc.peek()[1], "a variable after '*'")
        if coeff is None and not seen:
            raise ParseError(sc.line, sc.peek()[1], "a coefficient or variable")
        c = sign * (1 if coeff is None else coeff)
        key = tuple(exps[v] for v in allowed)
        out[key] = _simplify(out.get(key, 0) + c)
    return out


def parse_poly(text: str, variables: str, line: int = 1, col0: int = 0):
    """Parse one polynomial; ``col0`` is the number of characters preceding ``text`` on its line."""
    terms = _parse_terms(_Scanner(text, line, col0), variables)
    if variables == "z":
        return Poly1({k[0]: c for k, c in terms.items()})
    return Poly2(terms)


@dataclass(frozen=True)
class MapFile:
    source: str
    f: SkewProduct

    @property
    def normalization(self):
        """(monic conjugate, (s, t)) with the conjugacy (z, w) -> (s z, t w)."""
        return normalize_monic(self.f)


def parse_map(text: str) -> MapFile:
    lines = text.splitlines()
    body = [(i + 1, ln) for i, ln in enumerate(lines)
            if ln.strip() and not ln.lstrip().startswith("#")]
    if len(body) < 2:
        raise ParseError(len(lines) + 1, 1, "lines 'p: ...' and 'q: ...'")
    polys = []
    for (lineno, ln), (label, var) in zip(body[:2], (("p", "z"), ("q", "zw"))):
        m = re.match(r"\s*%s\s*:" % label, ln)
        if not m:
            raise ParseError(lineno, 1, f"'{label}:'")
        polys.append(parse_poly(ln[m.end():], var, lineno, m.end()))
    if len(body) > 2:
        lineno, _ = body[2]
        raise ParseError(lineno, 1, "end of file or '#' comment")
    return MapFile(text, SkewProduct(polys[0], polys[1]))


# ---------------------------------------------------------------- printing

def format_coeff(c) -> str:
    if isinstance(c, QQi):
        im = c.im
        sg = "-" if im < 0 else "+"
        return f"({format_coeff(c.re)}{sg}{format_coeff(abs(im))}i)"
    if isinstance(c, complex):
        sg = "-" if c.imag < 0 else "+"
        return f"({c.real!r}{sg}{abs(c.imag)!r}i)"
    if isinstance(c, Fraction):
        return f"{c.numerator}/{c.denominator}" if c.denominator != 1 else str(c.numerator)
    return repr(c) if isinstance(c, float) else str(c)


def _is_negative_real(c) -> bool:
    return isinstance(c, (int, Fraction, float)) and c < 0


def _monomial(exps: Tuple[int, ...], names: str) -> str:
    parts = []
    for e, v in zip(exps, names):
        if e == 1:
            parts.append(v)
        elif e > 1:
            parts.append(f"{v}^{e}")
    return " ".join(parts)


def _format(items, names: str) -> str:
    if not items:
        return "0"
    out = []
    for i, (exps, c) in enumerate(items):
        neg = _is_negative_real(c)
        mag = -c if neg else c
        mono = _monomial(exps, names)
        if mono and mag == 1 and not isinstance(mag, QQi):
            body = mono
        else:
            body = format_coeff(mag) + (f" {mono}" if mono else "")
        if i == 0:
            out.append(("-" if neg else "") + body)
        else:
            out.append(("- " if neg else "+ ") + body)
    return " ".join(out)


def format_poly1(p: Poly1) -> str:
    return _format([((k,), c) for k, c in sorted(p.terms.items(), reverse=True)], "z")


def format_poly2(q: Poly2) -> str:
    items = sorted(q.terms.items(), key=lambda kv: (-(kv[0][0] + kv[0][1]), -kv[0][1]))
    return _format(items, "zw")


def format_map(f: SkewProduct) -> str:
    return f"p: {format_poly1(f.p)}\nq: {format_poly2(f.q)}\n"
