"""Cohomology of a free graded-commutative algebra with a derivation
differential: dimensions, class representatives, word-length refinements,
and the Toomer invariant.

The Toomer invariant is computed two independent ways so they can
cross-check each other: by pushing a top-class representative into high
word length, and by testing injectivity into the word-length quotients.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Callable

from .differential import Derivation, SullivanModel
from .errors import InputError, InternalError
from .gradedalgebra import Mono, Poly, poly_to_vec, vec_to_poly
from .linalg import (
    Subspace,
    Vec,
    coset_representatives,
    image_subspace,
    kernel_from_columns,
    rank,
    solve_from_columns,
)


def delta_columns(deriv: Derivation, degree: int) -> tuple[list[Vec], list[Mono]]:
    """Matrix columns of the differential on the given degree, plus the
    source basis.  Column coordinates index the degree+1 basis."""
    alg = deriv.algebra
    source = alg.basis(degree)
    target_index = {m: i for i, m in enumerate(alg.basis(degree + 1))}
    cols = [poly_to_vec(deriv.apply_mono(m), target_index) for m in source]
    return cols, source


def cohomology_dimension(deriv: Derivation, degree: int) -> int:
    cols_n, source = delta_columns(deriv, degree)
    kernel_dim = len(source) - rank(cols_n)
    if degree == 0:
        return kernel_dim
    cols_prev, _ = delta_columns(deriv, degree - 1)
    return kernel_dim - rank(cols_prev)


def betti_numbers(model: SullivanModel, max_degree: int) -> list[int]:
    """Dimensions of the cohomology in degrees 0..max_degree."""
    deriv = model.differential
    ranks = [rank(delta_columns(deriv, n)[0]) for n in range(max_degree + 1)]
    sizes = [len(model.algebra.basis(n)) for n in range(max_degree + 1)]
    out = []
    for n in range(max_degree + 1):
        dim = sizes[n] - ranks[n] - (ranks[n - 1] if n > 0 else 0)
        out.append(dim)
    return out


def cohomology_class_representatives(deriv: Derivation, degree: int) -> list[Poly]:
    """Cocycle polynomials whose classes form a basis of the cohomology."""
    cols_n, source = delta_columns(deriv, degree)
    kernel = kernel_from_columns(cols_n)
    if degree == 0:
        boundaries = Subspace()
    else:
        prev_cols, prev_source = delta_columns(deriv, degree - 1)
        target_index = {m: i for i, m in enumerate(source)}
        boundaries = image_subspace(
            [poly_to_vec(deriv.apply_mono(m), target_index) for m in prev_source])
    reps = coset_representatives(kernel, boundaries)
    return [vec_to_poly(v, source) for v in reps]


def coboundary_preimage(deriv: Derivation, z: Poly) -> Poly | None:
    """Some u with d(u) = z, or None when z is not a coboundary."""
    if not z:
        return {}
    alg = deriv.algebra
    degree = alg.poly_degree(z)
    cols, source = delta_columns(deriv, degree - 1)
    target_index = {m: i for i, m in enumerate(alg.basis(degree))}
    x = solve_from_columns(cols, poly_to_vec(z, target_index))
    if x is None:
        return None
    return vec_to_poly(x, source)


def _truncate_below(alg, p: Poly, k: int) -> Poly:
    """Keep the monomials of word length strictly below k."""
    return {m: c for m, c in p.items() if alg.mono_wordlength(m) < k}


def class_wordlength_level(deriv: Derivation, z: Poly) -> int:
    """Largest k such that the class of z has a representative in word
    length >= k.  Requires z to be a cocycle representing a nonzero class."""
    alg = deriv.algebra
    if not z:
        raise InputError("zero polynomial has no word-length level")
    if deriv.apply(z):
        raise InputError("not a cocycle")
    degree = alg.poly_degree(z)
    if degree == 0:
        return 0
    max_k = degree // min(alg.degrees) + 1
    cols, _ = delta_columns(deriv, degree - 1)
    target_index = {m: i for i, m in enumerate(alg.basis(degree))}
    level = 1
    for k in range(2, max_k + 2):
        trimmed = [{i: c for i, c in col.items()
                    if alg.mono_wordlength(alg.basis(degree)[i]) < k}
                   for col in cols]
        goal = poly_to_vec({m: -c for m, c in _truncate_below(alg, z, k).items()},
                           target_index)
        if solve_from_columns(trimmed, goal) is None:
            return level
        level = k
    raise InputError("polynomial is a coboundary; its class has no level")


def bigraded_dimensions(
    deriv: Derivation,
    degree: int,
    weight: Callable[[Mono], int],
    shift: int,
) -> dict[int, int]:
    """Dimensions of cohomology in one degree, split by a monomial weight the
    differential shifts homogeneously (by ``shift``).  Raises InternalError
    if the differential fails to respect the weight."""
    alg = deriv.algebra
    source = alg.basis(degree)
    below = alg.basis(degree - 1) if degree > 0 else []
    above_index = {m: i for i, m in enumerate(alg.basis(degree + 1))}
    source_index = {m: i for i, m in enumerate(source)}

    def check_and_vec(m: Mono, index) -> Vec:
        image = deriv.apply_mono(m)
        w = weight(m)
        for mono in image:
            if weight(mono) != w + shift:
                raise InternalError(
                    f"differential moved weight {w} to {weight(mono)}, "
                    f"expected shift {shift}")
        return poly_to_vec(image, index)

    weights = sorted({weight(m) for m in source})
    out: dict[int, int] = {}
    for p in weights:
        sub = [m for m in source if weight(m) == p]
        cols = [check_and_vec(m, above_index) for m in sub]
        kernel_dim = len(sub) - rank(cols)
        prev = [m for m in below if weight(m) == p - shift]
        image_dim = rank([check_and_vec(m, source_index) for m in prev])
        dim = kernel_dim - image_dim
        if dim:
            out[p] = dim
    return out


def fundamental_class(model: SullivanModel) -> Poly:
    """Representative of the one-dimensional top cohomology."""
    top = model.formal_dimension()
    if top < 1:
        raise InputError(f"top degree {top} is not positive")
    reps = cohomology_class_representatives(model.differential, top)
    if len(reps) != 1:
        raise InputError(
            f"cohomology in top degree {top} has dimension {len(reps)}, not 1")
    return reps[0]


def toomer_invariant(model: SullivanModel) -> int:
    """Largest word-length filtration level reached by the top class."""
    return class_wordlength_level(model.differential, fundamental_class(model))


def toomer_by_injectivity(model: SullivanModel) -> int:
    """Smallest k with all of H(model) mapping injectively into the
    cohomology of the quotient by word length > k.  Independent of the
    representative-pushing route, for cross-checking."""
    alg = model.algebra
    deriv = model.differential
    top = model.formal_dimension()
    if top < 1:
        raise InputError(f"top degree {top} is not positive")
    max_k = top // min(alg.degrees) + 1

    def injective_at(k: int, m: int) -> bool:
        source = alg.basis(m)
        above_index = {mono: i for i, mono in enumerate(alg.basis(m + 1))}
        source_index = {mono: i for i, mono in enumerate(source)}
        prev = alg.basis(m - 1)
        offset = len(above_index)

        quotient_prev = [mono for mono in prev if alg.mono_wordlength(mono) <= k]
        quot_image = image_subspace(
            [poly_to_vec(_truncate_below(alg, deriv.apply_mono(mono), k + 1),
                         source_index)
             for mono in quotient_prev])
        cols = []
        for mono in source:
            col = poly_to_vec(deriv.apply_mono(mono), above_index)
            if alg.mono_wordlength(mono) <= k:
                resid = quot_image.reduce({source_index[mono]: Fraction(1)})
                for i, c in resid.items():
                    col[offset + i] = c
            cols.append(col)
        hidden = len(kernel_from_columns(cols))
        boundary_dim = rank([poly_to_vec(deriv.apply_mono(mono), source_index)
                             for mono in prev])
        return hidden == boundary_dim

    for k in range(1, max_k + 1):
        if all(injective_at(k, m) for m in range(1, top + 1)):
            return k
    raise InternalError("injectivity never reached within the word-length bound")
