"""Sullivan models: free graded-commutative algebras with a decomposable
degree +1 differential, plus the standard ways of splitting that differential.

A derivation is stored by its values on generators and extended by the graded
Leibniz rule.  The splittings used downstream are the word-length pieces
(the lowest one detects how "quadratic" the model is) and the pure piece,
which keeps only the part of d(odd generator) landing in the even subalgebra.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

from .errors import InputError
from .gradedalgebra import FreeGradedAlgebra, Mono, Poly

ZERO = Fraction(0)


class Derivation:
    """Degree +1 derivation of a free graded-commutative algebra."""

    def __init__(self, algebra: FreeGradedAlgebra, values: Sequence[Poly]):
        if len(values) != len(algebra.names):
            raise InputError("derivation needs one value per generator")
        self.algebra = algebra
        self.values = tuple(dict(v) for v in values)
        self._mono_cache: dict[Mono, Poly] = {}

    def is_zero(self) -> bool:
        return all(not v for v in self.values)

    def key(self):
        """Hashable canonical form, for caching computations per derivation."""
        return tuple(tuple(sorted(v.items())) for v in self.values)

    def apply_mono(self, m: Mono) -> Poly:
        cached = self._mono_cache.get(m)
        if cached is not None:
            return dict(cached)
        alg = self.algebra
        out: Poly = {}
        prefix_degree = 0
        for j, (i, e) in enumerate(m):
            value = self.values[i]
            if value:
                sign = -1 if prefix_degree % 2 else 1
                # left part keeps one copy of generator i removed
                left: Poly = {m[:j] + (((i, e - 1),) if e > 1 else ()): Fraction(sign * e)}
                mid = alg.poly_mul(left, value)
                term = alg.poly_mul(mid, {m[j + 1:]: Fraction(1)})
                for mono, c in term.items():
                    s = out.get(mono, ZERO) + c
                    if s:
                        out[mono] = s
                    else:
                        out.pop(mono, None)
            prefix_degree += alg.degrees[i] * e
        self._mono_cache[m] = dict(out)
        return out

    def apply(self, p: Poly) -> Poly:
        out: Poly = {}
        for m, c in p.items():
            for mono, a in self.apply_mono(m).items():
                s = out.get(mono, ZERO) + c * a
                if s:
                    out[mono] = s
                else:
                    out.pop(mono, None)
        return out


def zero_derivation(algebra: FreeGradedAlgebra) -> Derivation:
    return Derivation(algebra, [{} for _ in algebra.names])


def wordlength_part(deriv: Derivation, k: int) -> Derivation:
    """The piece of the derivation whose generator values have word length k."""
    alg = deriv.algebra
    values = []
    for v in deriv.values:
        values.append({m: c for m, c in v.items() if alg.mono_wordlength(m) == k})
    return Derivation(alg, values)


def pure_part(deriv: Derivation) -> Derivation:
    """Keep d(odd generator) restricted to the even subalgebra; kill d(even)."""
    alg = deriv.algebra
    values = []
    for i, v in enumerate(deriv.values):
        if not alg.is_odd(i):
            values.append({})
            continue
        values.append({m: c for m, c in v.items()
                       if all(not alg.is_odd(j) for j, _ in m)})
    return Derivation(alg, values)


def is_pure(deriv: Derivation) -> bool:
    """True when the derivation kills even generators and sends odd ones
    into the even subalgebra, i.e. equals its own pure part."""
    return pure_part(deriv).values == deriv.values


class SullivanModel:
    """A named minimal Sullivan algebra with validated differential."""

    def __init__(self, name: str, algebra: FreeGradedAlgebra, differential: Derivation):
        self.name = name
        self.algebra = algebra
        self.differential = differential

    def validate(self) -> None:
        alg = self.algebra
        d = self.differential
        for i, deg in enumerate(alg.degrees):
            if deg < 2:
                raise InputError(
                    f"generator {alg.names[i]} has degree {deg}; "
                    "simply connected models need degrees >= 2")
        for i, v in enumerate(d.values):
            if not v:
                continue
            vdeg = alg.poly_degree(v)
            if vdeg != alg.degrees[i] + 1:
                raise InputError(
                    f"d({alg.names[i]}) has degree {vdeg}, expected {alg.degrees[i] + 1}")
            for m in v:
                if alg.mono_wordlength(m) < 2:
                    raise InputError(
                        f"d({alg.names[i]}) contains the linear term "
                        f"{alg.mono_str(m)}; the model must be minimal")
        for i in range(len(alg.names)):
            if d.apply(d.values[i]):
                raise InputError(
                    f"d*d is nonzero on generator {alg.names[i]}: "
                    f"{alg.poly_str(d.apply(d.values[i]))}")

    def formal_dimension(self) -> int:
        n = 0
        for i, deg in enumerate(self.algebra.degrees):
            n += deg if deg % 2 else -(deg - 1)
        return n

    def lowest_part_index(self) -> int | None:
        """Smallest word length appearing among generator images, None if d = 0."""
        alg = self.algebra
        best: int | None = None
        for v in self.differential.values:
            for m in v:
                w = alg.mono_wordlength(m)
                if best is None or w < best:
                    best = w
        return best

    def with_differential(self, deriv: Derivation, suffix: str) -> "SullivanModel":
        model = SullivanModel(f"{self.name}[{suffix}]", self.algebra, deriv)
        model.validate()
        return model
