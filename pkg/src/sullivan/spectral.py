"""Spectral sequences of bounded filtered cochain complexes.

Pages are computed directly from the subquotient description

    E_r^p = Z_r^p / (Z_{r-1}^{p+1} + F^p * d(F^{p-r+1}))
    Z_r^p = { z in F^p : dz in F^{p+r} }

with exact linear algebra, rather than by iterating homology page by page;
that keeps every cell independently checkable and lets boundary-of-window
effects be flagged per cell instead of poisoning the whole table.

Four filtrations are provided.  On the algebra itself: by word length
(whose first interesting page is governed by the lowest word-length piece
of the differential), and by degree plus odd word length, the regrading
under which the pure part of the differential is exactly the
level-preserving piece, so the first page is the bigraded cohomology of
the pure model.  On the Hom complex of the acyclic closure: by word length
of the values, and by even word length of the values.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .cohomology import delta_columns
from .differential import SullivanModel
from .errors import InputError, TruncationError
from .extdepth import AcyclicClosure, HomComplex, ext_summary
from .linalg import Vec, kernel_from_columns, rank

ZERO = Fraction(0)
ONE = Fraction(1)


@dataclass
class PageTable:
    """Dimensions of one page, as a sparse map (p, q) -> dim with p + q
    the total degree.  Cells whose computation touched a degree outside
    the trusted part of the window are listed in ``flagged``."""

    r: int
    dims: dict[tuple[int, int], int]
    flagged: set[tuple[int, int]] = field(default_factory=set)
    note: str | None = None

    def degree_sums(self, trusted_only: bool = True) -> dict[int, int]:
        """Total dimension per cohomological degree n = p + q."""
        out: dict[int, int] = {}
        for (p, q), dim in self.dims.items():
            if trusted_only and (p, q) in self.flagged:
                continue
            out[p + q] = out.get(p + q, 0) + dim
        return dict(sorted(out.items()))


class FilteredComplex:
    """A window of a cochain complex with a decreasing filtration.

    Basis data is supplied per degree: filtration levels parallel to the
    basis, and differential columns into the next degree's indexing.
    Columns must exist for every degree but the last one in the window.
    ``zero_below`` records that the complex genuinely vanishes below the
    window (true for the algebra filtrations, false for Hom complexes,
    which extend to negative degrees).
    """

    def __init__(self, name: str, lo: int, hi: int,
                 levels: dict[int, list[int]],
                 columns: dict[int, list[Vec]],
                 *, zero_below: bool = False, note: str | None = None):
        if hi <= lo:
            raise InputError("filtered complex window is empty")
        self.name = name
        self.lo = lo
        self.hi = hi
        self.levels = levels
        self.columns = columns
        self.zero_below = zero_below
        self.note = note
        for n in range(lo, hi + 1):
            if n not in levels:
                raise InputError(f"missing basis data in degree {n}")
            if n < hi and n not in columns:
                raise InputError(f"missing differential columns in degree {n}")
        all_levels = [v for n in range(lo, hi + 1) for v in levels[n]]
        self.min_level = min(all_levels, default=0)
        self.max_level = max(all_levels, default=0)
        self._check_filtration()
        self._z_cache: dict[tuple[int, int, int], list[Vec]] = {}
        self._cell_cache: dict[tuple[int, int, int], tuple[int, bool]] = {}

    def _check_filtration(self) -> None:
        for n in range(self.lo, self.hi):
            target = self.levels[n + 1]
            for j, col in enumerate(self.columns[n]):
                for i in col:
                    if target[i] < self.levels[n][j]:
                        raise InputError(
                            f"differential lowers the filtration level in "
                            f"degree {n} of {self.name}: level "
                            f"{self.levels[n][j]} maps onto level {target[i]}")

    def infinity_r(self) -> int:
        """A page index past which nothing changes."""
        return self.max_level - self.min_level + 2

    # ---- subspaces ----------------------------------------------------------

    def _z_spanning(self, n: int, p: int, r: int) -> list[Vec]:
        """Independent spanning set of { z in F^p C^n : dz in F^{p+r} },
        in the coordinates of C^n.  Degrees outside the window count as
        zero; the per-cell flags account for when that is not trustworthy."""
        if n < self.lo or n > self.hi:
            return []
        key = (n, p, r)
        cached = self._z_cache.get(key)
        if cached is not None:
            return cached
        sub = [j for j, lv in enumerate(self.levels[n]) if lv >= p]
        if not sub or n == self.hi:
            # no differential data: the whole filtration step
            out = [{j: ONE} for j in sub]
        else:
            cols = self.columns[n]
            target = self.levels[n + 1]
            threshold = p + r
            projected = [
                {i: c for i, c in cols[j].items() if target[i] < threshold}
                for j in sub]
            out = []
            for local in kernel_from_columns(projected):
                out.append({sub[j]: c for j, c in local.items()})
        self._z_cache[key] = out
        return out

    def _boundary_spanning(self, n: int, p: int, r: int) -> list[Vec]:
        """Spanning set of F^p C^n intersected with d(F^{p-r+1} C^{n-1})."""
        m = n - 1
        if m < self.lo or m > self.hi - 1:
            return []
        sources = self._z_spanning(m, p - r + 1, r - 1)
        cols = self.columns[m]
        out = []
        for src in sources:
            image: Vec = {}
            for j, c in src.items():
                for i, a in cols[j].items():
                    s = image.get(i, ZERO) + c * a
                    if s:
                        image[i] = s
                    else:
                        image.pop(i, None)
            if image:
                out.append(image)
        return out

    # ---- cells and pages -----------------------------------------------------

    def cell(self, n: int, p: int, r: int) -> tuple[int, bool]:
        """Dimension of E_r^{p, n-p} plus a flag for window leakage."""
        key = (n, p, r)
        cached = self._cell_cache.get(key)
        if cached is not None:
            return cached
        flagged = (n >= self.hi) or (n - 1 < self.lo and not self.zero_below)
        z = self._z_spanning(n, p, r)
        if not z:
            result = (0, flagged)
        else:
            inner = self._z_spanning(n, p + 1, r - 1)
            boundaries = self._boundary_spanning(n, p, r)
            result = (len(z) - rank(inner + boundaries), flagged)
        self._cell_cache[key] = result
        return result

    def page(self, r: int) -> PageTable:
        dims: dict[tuple[int, int], int] = {}
        flagged: set[tuple[int, int]] = set()
        for n in range(self.lo, self.hi):
            if not self.levels[n]:
                continue
            for p in range(self.min_level, max(self.levels[n]) + 1):
                dim, flag = self.cell(n, p, r)
                if dim:
                    dims[(p, n - p)] = dim
                    if flag:
                        flagged.add((p, n - p))
        return PageTable(r=r, dims=dims, flagged=flagged, note=self.note)


def pages(fc: FilteredComplex, r_max: int) -> list[PageTable]:
    """Pages E_0 .. E_{r_max}."""
    return [fc.page(r) for r in range(r_max + 1)]


def infinity_page(fc: FilteredComplex) -> PageTable:
    return fc.page(fc.infinity_r())


# ---- filtrations on the algebra ----------------------------------------------


def _algebra_filtration(model: SullivanModel, top: int, level_fn, name: str) -> FilteredComplex:
    alg = model.algebra
    levels = {n: [level_fn(m) for m in alg.basis(n)] for n in range(0, top + 2)}
    columns = {n: delta_columns(model.differential, n)[0] for n in range(0, top + 1)}
    return FilteredComplex(name, 0, top + 1, levels, columns, zero_below=True)


def default_top_degree(model: SullivanModel) -> int:
    return max(model.formal_dimension(), 0) + max(model.algebra.degrees)


def wordlength_filtration(model: SullivanModel, top: int | None = None) -> FilteredComplex:
    """Filtration by word length; the level-preserving part of a minimal
    differential is zero, so early pages repeat the algebra itself."""
    if top is None:
        top = default_top_degree(model)
    alg = model.algebra
    return _algebra_filtration(model, top, alg.mono_wordlength,
                               f"{model.name}:wordlength")


def odd_filtration(model: SullivanModel, top: int | None = None) -> FilteredComplex:
    """Filtration by degree plus odd word length.

    Under this level every non-pure term of the differential strictly
    raises the level (replacing an odd generator by a term with j odd
    factors shifts the level by j, and by at least two more when an even
    generator is replaced), while the pure part preserves it exactly.
    Filtering by even word length alone would not even be stable under
    differentials whose odd generators hit products of odd ones.
    """
    if top is None:
        top = default_top_degree(model)
    alg = model.algebra

    def level(m):
        return alg.mono_degree(m) + alg.mono_odd_length(m)

    return _algebra_filtration(model, top, level, f"{model.name}:odd")


# ---- filtrations on the Hom complex of the acyclic closure ---------------------


def _hom_filtration(model: SullivanModel, level_fn, name: str) -> FilteredComplex:
    summary = ext_summary(model)
    if not summary.stable:
        raise TruncationError(
            f"Ext truncation for {model.name} did not stabilize; "
            "no trustworthy page computation is possible")
    hom = HomComplex(AcyclicClosure(model), summary.truncation)
    alg = hom.alg
    lo, hi = summary.window
    lo -= 1
    hi += 1
    levels = {n: [level_fn(alg, m) for _, m in hom.basis(n)] for n in range(lo, hi + 1)}
    columns = {n: hom.matrix(n) for n in range(lo, hi)}
    note = f"truncation {summary.truncation}"
    if summary.filtered:
        note += "; persistence-filtered input"
    return FilteredComplex(name, lo, hi, levels, columns, note=note)


def ext_wordlength_filtration(model: SullivanModel) -> FilteredComplex:
    """Filtration of the Hom complex by word length of the values."""
    return _hom_filtration(
        model, lambda alg, m: alg.mono_wordlength(m),
        f"{model.name}:ext-wordlength")


def ext_odd_filtration(model: SullivanModel) -> FilteredComplex:
    """Filtration of the Hom complex by even word length of the values."""
    def level(alg, m):
        return alg.mono_wordlength(m) - alg.mono_odd_length(m)

    return _hom_filtration(model, level, f"{model.name}:ext-odd")


# ---- the four named spectral sequences -----------------------------------------


def _run(fc: FilteredComplex, r_max: int | None) -> list[PageTable]:
    if r_max is None:
        r_max = fc.infinity_r()
    return pages(fc, r_max)


def wordlength_ss(model: SullivanModel, top: int | None = None,
                  r_max: int | None = None) -> list[PageTable]:
    return _run(wordlength_filtration(model, top), r_max)


def odd_ss(model: SullivanModel, top: int | None = None,
           r_max: int | None = None) -> list[PageTable]:
    return _run(odd_filtration(model, top), r_max)


def ext_wordlength_ss(model: SullivanModel, r_max: int | None = None) -> list[PageTable]:
    return _run(ext_wordlength_filtration(model), r_max)


def ext_odd_ss(model: SullivanModel, r_max: int | None = None) -> list[PageTable]:
    return _run(ext_odd_filtration(model), r_max)
