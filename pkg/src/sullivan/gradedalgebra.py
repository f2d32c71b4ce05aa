"""Free graded-commutative algebras over the rationals.

A monomial is a tuple of ``(generator index, exponent)`` pairs with strictly
ascending indices and positive exponents; the empty tuple is 1.  Generators of
odd degree square to zero, generators of even degree commute freely, and
reordering odd generators costs the usual sign.

Polynomials are sparse ``{monomial: Fraction}`` mappings with no zero values.
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import InputError, ParseError

Mono = tuple[tuple[int, int], ...]
Poly = dict[Mono, Fraction]

ONE_MONO: Mono = ()

_NAME_RE = re.compile(r"[A-Za-z_][A-Za-z0-9_]*")
_TOKEN_RE = re.compile(r"\s*(?:(?P<num>\d+)|(?P<name>[A-Za-z_][A-Za-z0-9_]*)|(?P<op>[-+*/^]))")


class FreeGradedAlgebra:
    """Free graded-commutative algebra on named generators with given degrees."""

    def __init__(self, names: Sequence[str], degrees: Sequence[int]):
        if len(names) != len(degrees):
            raise InputError("generator names and degrees differ in length")
        if len(set(names)) != len(names):
            raise InputError("duplicate generator names")
        for name in names:
            if not _NAME_RE.fullmatch(name):
                raise InputError(f"generator name {name!r} is not an identifier")
        for name, deg in zip(names, degrees):
            if deg < 1:
                raise InputError(f"generator {name} has degree {deg}; degrees must be positive")
        self.names = tuple(names)
        self.degrees = tuple(degrees)
        self.index = {name: i for i, name in enumerate(names)}
        self._basis_cache: dict[tuple[int, int], list[Mono]] = {}

    # ---- degree bookkeeping -------------------------------------------------

    def is_odd(self, i: int) -> bool:
        return self.degrees[i] % 2 == 1

    def mono_degree(self, m: Mono) -> int:
        return sum(self.degrees[i] * e for i, e in m)

    def mono_wordlength(self, m: Mono) -> int:
        return sum(e for _, e in m)

    def mono_odd_length(self, m: Mono) -> int:
        return sum(e for i, e in m if self.is_odd(i))

    def poly_degree(self, p: Poly) -> int | None:
        """Degree of a homogeneous polynomial, None for 0, InputError if mixed."""
        degs = {self.mono_degree(m) for m in p}
        if not degs:
            return None
        if len(degs) > 1:
            raise InputError(f"polynomial is not homogeneous: degrees {sorted(degs)}")
        return degs.pop()

    # ---- products -----------------------------------------------------------

    def mono_mul(self, m1: Mono, m2: Mono) -> tuple[Mono, int] | None:
        """Product of two monomials: (canonical monomial, sign), or None if 0.

        The sign counts crossings of odd generators when the concatenation
        m1*m2 is sorted back into canonical order.
        """
        odd1 = [i for i, _ in m1 if self.is_odd(i)]
        flips = 0
        for i2, _ in m2:
            if self.is_odd(i2):
                if i2 in odd1:
                    return None
                flips += sum(1 for i1 in odd1 if i1 > i2)
        merged: dict[int, int] = dict(m1)
        for i, e in m2:
            merged[i] = merged.get(i, 0) + e
        mono = tuple(sorted(merged.items()))
        return mono, (-1) ** flips

    def poly_mul(self, p1: Poly, p2: Poly) -> Poly:
        out: Poly = {}
        for m1, c1 in p1.items():
            for m2, c2 in p2.items():
                res = self.mono_mul(m1, m2)
                if res is None:
                    continue
                mono, sign = res
                c = out.get(mono, Fraction(0)) + sign * c1 * c2
                if c:
                    out[mono] = c
                else:
                    out.pop(mono, None)
        return out

    # ---- basis enumeration --------------------------------------------------

    def basis(self, degree: int) -> list[Mono]:
        """All monomials of the given total degree, in a fixed deterministic order."""
        return self._basis_from(0, degree)

    def _basis_from(self, start: int, degree: int) -> list[Mono]:
        if degree == 0:
            return [ONE_MONO]
        if degree < 0 or start >= len(self.degrees):
            return []
        key = (start, degree)
        cached = self._basis_cache.get(key)
        if cached is not None:
            return cached
        out: list[Mono] = []
        d = self.degrees[start]
        max_e = 1 if self.is_odd(start) else degree // d
        for e in range(0, max_e + 1):
            rest = degree - e * d
            for tail in self._basis_from(start + 1, rest):
                out.append((((start, e),) + tail) if e else tail)
        self._basis_cache[key] = out
        return out

    # ---- formatting ---------------------------------------------------------

    def mono_str(self, m: Mono) -> str:
        if not m:
            return "1"
        parts = []
        for i, e in m:
            parts.append(self.names[i] if e == 1 else f"{self.names[i]}^{e}")
        return "*".join(parts)

    def poly_str(self, p: Poly) -> str:
        if not p:
            return "0"
        items = sorted(p.items(), key=lambda kv: (self.mono_degree(kv[0]), kv[0]))
        chunks = []
        for mono, coef in items:
            sign = "-" if coef < 0 else "+"
            mag = abs(coef)
            if mono == ONE_MONO:
                body = str(mag)
            elif mag == 1:
                body = self.mono_str(mono)
            else:
                body = f"{mag}*{self.mono_str(mono)}"
            chunks.append((sign, body))
        first_sign, first_body = chunks[0]
        text = ("-" if first_sign == "-" else "") + first_body
        for sign, body in chunks[1:]:
            text += f" {sign} {body}"
        return text


# ---- polynomial / vector conversion -----------------------------------------


def poly_to_vec(p: Poly, index_of: dict[Mono, int]) -> dict[int, Fraction]:
    try:
        return {index_of[m]: c for m, c in p.items()}
    except KeyError as exc:
        raise InputError(f"monomial outside the chosen basis: {exc.args[0]!r}") from exc


def vec_to_poly(v: dict[int, Fraction], basis: Sequence[Mono]) -> Poly:
    return {basis[i]: c for i, c in v.items()}


# ---- parsing -----------------------------------------------------------------


def _tokenize(text: str, line: int | None):
    pos = 0
    tokens: list[tuple[str, str, int]] = []
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            rest = text[pos:].lstrip()
            if not rest:
                break
            raise ParseError(f"unexpected character {rest[0]!r}", line=line, column=pos + 1)
        if m.lastgroup == "num":
            tokens.append(("num", m.group("num"), m.start("num") + 1))
        elif m.lastgroup == "name":
            tokens.append(("name", m.group("name"), m.start("name") + 1))
        else:
            tokens.append(("op", m.group("op"), m.start("op") + 1))
        pos = m.end()
    return tokens


def parse_polynomial(text: str, algebra: FreeGradedAlgebra, *, line: int | None = None) -> Poly:
    """Parse ``3/2*x^2*y - z`` style expressions into a sparse polynomial.

    Terms are separated by + or -; factors within a term are separated by *
    and are either a rational coefficient or ``generator[^exponent]``.
    """
    tokens = _tokenize(text, line)
    if not tokens:
        raise ParseError("empty polynomial", line=line)
    out: Poly = {}
    k = 0

    def peek():
        return tokens[k] if k < len(tokens) else (None, None, None)

    while k < len(tokens):
        sign = Fraction(1)
        kind, val, col = peek()
        while kind == "op" and val in "+-":
            if val == "-":
                sign = -sign
            k += 1
            kind, val, col = peek()
        coef = sign
        mono: Mono = ONE_MONO
        saw_factor = False
        while True:
            kind, val, col = peek()
            if kind == "num":
                k += 1
                num = int(val)
                nkind, nval, ncol = peek()
                if nkind == "op" and nval == "/":
                    k += 1
                    dkind, dval, dcol = peek()
                    if dkind != "num":
                        raise ParseError("expected denominator after '/'", line=line, column=ncol)
                    if int(dval) == 0:
                        raise ParseError("zero denominator", line=line, column=dcol)
                    k += 1
                    coef *= Fraction(num, int(dval))
                else:
                    coef *= num
            elif kind == "name":
                k += 1
                if val not in algebra.index:
                    raise ParseError(f"unknown generator {val!r}", line=line, column=col)
                idx = algebra.index[val]
                exp = 1
                nkind, nval, ncol = peek()
                if nkind == "op" and nval == "^":
                    k += 1
                    ekind, eval_, ecol = peek()
                    if ekind != "num":
                        raise ParseError("expected exponent after '^'", line=line, column=ncol)
                    exp = int(eval_)
                    if exp < 1:
                        raise ParseError("exponent must be >= 1", line=line, column=ecol)
                    k += 1
                res = algebra.mono_mul(mono, ((idx, exp),))
                if res is None:
                    coef = Fraction(0)
                else:
                    mono = res[0]
                    coef *= res[1]
            else:
                raise ParseError("expected a coefficient or generator", line=line,
                                 column=col if col is not None else len(text))
            saw_factor = True
            kind, val, col = peek()
            if kind == "op" and val == "*":
                k += 1
                continue
            break
        if not saw_factor:
            raise ParseError("empty term", line=line)
        if coef:
            c = out.get(mono, Fraction(0)) + coef
            if c:
                out[mono] = c
            else:
                out.pop(mono, None)
        kind, val, col = peek()
        if kind is not None and not (kind == "op" and val in "+-"):
            raise ParseError(f"unexpected token {val!r}", line=line, column=col)
    return out


def hilbert_counts(degrees: Iterable[int], top: int) -> list[int]:
    """Dimension of each graded piece of the free algebra, degrees 0..top.

    Computed from the generating function, independently of basis enumeration,
    so tests can cross-check ``basis``.
    """
    series = [0] * (top + 1)
    series[0] = 1
    for d in degrees:
        if d % 2 == 1:
            nxt = series[:]
            for n in range(top, d - 1, -1):
                nxt[n] += series[n - d]
            series = nxt
        else:
            for n in range(d, top + 1):
                series[n] += series[n - d]
    return series
