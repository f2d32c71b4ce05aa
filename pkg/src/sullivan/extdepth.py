"""Ext over a minimal Sullivan algebra, computed from its acyclic closure,
and the depth-style invariant read off from the word-length filtration.

The acyclic closure tensors the algebra with divided powers on one
suspension per generator, where the suspension differential hits the
generator plus a correction solved degree by degree so the square is zero.
Every correction lies in (positive algebra part) * (positive suspension
part), which forces the differential to lower the suspension-word degree
strictly; truncating by that degree therefore yields honest finite
subcomplexes, and module maps from them into the algebra form the finite
cochain complexes computed here.

Ext classes are extracted with exact linear algebra.  Each class records two
word-length levels: the raw level (largest p such that some representative
takes all its values in word length >= p) and the effective level, which
evaluates the class at the unit of the closure first; when that evaluation
is a nonzero cohomology class, its own best word-length level is the
meaningful number, and the raw level is only used when the evaluation
vanishes.  Truncation effects are handled by recomputing at a larger cutoff
until the answers agree, and reported as unstable when they never do.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb

from .cohomology import class_wordlength_level, coboundary_preimage
from .differential import SullivanModel
from .errors import InternalError, TruncationError
from .gradedalgebra import Mono, Poly
from .linalg import (
    Vec,
    coset_representatives,
    image_subspace,
    kernel_from_columns,
    solve_from_columns,
)

GWord = tuple[tuple[int, int], ...]
ClosureElt = dict[tuple[Mono, GWord], Fraction]

EMPTY_WORD: GWord = ()
ZERO = Fraction(0)


def _elt_add_scaled(dst: ClosureElt, c: Fraction, src: ClosureElt) -> None:
    for key, a in src.items():
        s = dst.get(key, ZERO) + c * a
        if s:
            dst[key] = s
        else:
            dst.pop(key, None)


class AcyclicClosure:
    """The algebra tensored with divided powers on suspended generators,
    carrying the unique differential that kills every generator in homology."""

    def __init__(self, model: SullivanModel):
        self.model = model
        alg = model.algebra
        self.alg = alg
        n = len(alg.names)
        self.susp_degrees = tuple(d - 1 for d in alg.degrees)
        # suspensions flip parity: suspensions of odd generators take powers
        self.susp_odd = tuple(d % 2 == 0 for d in alg.degrees)
        self.d_susp: list[ClosureElt | None] = [None] * n
        self._d_word_cache: dict[GWord, ClosureElt] = {}
        self._build()

    # ---- suspension words ---------------------------------------------------

    def gw_degree(self, w: GWord) -> int:
        return sum(self.susp_degrees[i] * e for i, e in w)

    def gw_count(self, w: GWord) -> int:
        return sum(e for _, e in w)

    def gw_even_count(self, w: GWord) -> int:
        """Factors at suspensions of even degree (those carrying powers)."""
        return sum(e for i, e in w if not self.susp_odd[i])

    def gw_mul(self, w1: GWord, w2: GWord) -> tuple[GWord, Fraction] | None:
        odd1 = [i for i, _ in w1 if self.susp_odd[i]]
        flips = 0
        coef = Fraction(1)
        for i2, _ in w2:
            if self.susp_odd[i2]:
                if i2 in odd1:
                    return None
                flips += sum(1 for i1 in odd1 if i1 > i2)
        merged: dict[int, int] = dict(w1)
        for i, e in w2:
            if i in merged:
                # divided powers: gamma^p * gamma^q = C(p+q, p) gamma^(p+q)
                coef *= comb(merged[i] + e, e)
                merged[i] += e
            else:
                merged[i] = e
        if flips % 2:
            coef = -coef
        return tuple(sorted(merged.items())), coef

    def elt_mul(self, e1: ClosureElt, e2: ClosureElt) -> ClosureElt:
        out: ClosureElt = {}
        alg = self.alg
        for (m1, w1), c1 in e1.items():
            deg_w1 = self.gw_degree(w1)
            for (m2, w2), c2 in e2.items():
                mono_res = alg.mono_mul(m1, m2)
                if mono_res is None:
                    continue
                word_res = self.gw_mul(w1, w2)
                if word_res is None:
                    continue
                mono, s1 = mono_res
                word, cw = word_res
                sign = -1 if (deg_w1 * alg.mono_degree(m2)) % 2 else 1
                c = c1 * c2 * s1 * cw * sign
                key = (mono, word)
                s = out.get(key, ZERO) + c
                if s:
                    out[key] = s
                else:
                    out.pop(key, None)
        return out

    # ---- differential -------------------------------------------------------

    def d_word(self, w: GWord) -> ClosureElt:
        """Differential of 1 tensor w."""
        cached = self._d_word_cache.get(w)
        if cached is not None:
            return cached
        out: ClosureElt = {}
        prefix_degree = 0
        for j, (i, p) in enumerate(w):
            dsusp = self.d_susp[i]
            if dsusp is None:
                raise InternalError("suspension used before construction")
            factor = dsusp
            if p > 1:
                # divided-power chain rule: the power drops by one
                factor = self.elt_mul(dsusp, {((), ((i, p - 1),)): Fraction(1)})
            prefix: ClosureElt = {((), w[:j]): Fraction(-1 if prefix_degree % 2 else 1)}
            term = self.elt_mul(self.elt_mul(prefix, factor), {((), w[j + 1:]): Fraction(1)})
            _elt_add_scaled(out, Fraction(1), term)
            prefix_degree += self.susp_degrees[i] * p
        self._d_word_cache[w] = out
        return out

    def differential(self, elt: ClosureElt) -> ClosureElt:
        out: ClosureElt = {}
        d = self.model.differential
        for (m, w), c in elt.items():
            for mono, a in d.apply_mono(m).items():
                key = (mono, w)
                s = out.get(key, ZERO) + c * a
                if s:
                    out[key] = s
                else:
                    out.pop(key, None)
            sign = Fraction(-1 if self.alg.mono_degree(m) % 2 else 1)
            carrier = self.elt_mul({(m, ()): Fraction(1)}, self.d_word(w))
            _elt_add_scaled(out, sign * c, carrier)
        return out

    # ---- bases --------------------------------------------------------------

    def words_within_degree(self, cap: int, allowed: tuple[int, ...] | None = None) -> list[GWord]:
        """All suspension words of degree <= cap over the allowed suspensions."""
        indices = tuple(range(len(self.susp_degrees))) if allowed is None else allowed
        out: list[GWord] = []

        def rec(pos: int, budget: int, acc: GWord) -> None:
            if pos == len(indices):
                out.append(acc)
                return
            i = indices[pos]
            d = self.susp_degrees[i]
            max_e = min(1, budget // d) if self.susp_odd[i] else budget // d
            for e in range(0, max_e + 1):
                rec(pos + 1, budget - e * d, acc + (((i, e),) if e else ()))

        rec(0, cap, EMPTY_WORD)
        out.sort(key=lambda w: (self.gw_degree(w), w))
        return out

    def closure_basis(self, degree: int, allowed: tuple[int, ...] | None = None) -> list[tuple[Mono, GWord]]:
        """Basis pairs (monomial, word) of one total degree of the closure."""
        pairs: list[tuple[Mono, GWord]] = []
        for w in self.words_within_degree(degree, allowed):
            rest = degree - self.gw_degree(w)
            for m in self.alg.basis(rest):
                pairs.append((m, w))
        return pairs

    # ---- construction -------------------------------------------------------

    def _build(self) -> None:
        alg = self.alg
        model = self.model
        order = sorted(range(len(alg.names)), key=lambda i: (alg.degrees[i], i))
        processed: list[int] = []
        k = model.lowest_part_index()
        for i in order:
            gen_value: ClosureElt = {(((i, 1),), EMPTY_WORD): Fraction(1)}
            dv = model.differential.values[i]
            if not dv:
                self.d_susp[i] = gen_value
                processed.append(i)
                continue
            target: ClosureElt = {(m, EMPTY_WORD): -c for m, c in dv.items()}
            correction = self._solve_correction(i, target, tuple(processed), k)
            value = dict(gen_value)
            _elt_add_scaled(value, Fraction(1), correction)
            self.d_susp[i] = value
            check = self.differential(value)
            if check:
                raise InternalError(
                    f"suspension differential fails to square to zero at "
                    f"{alg.names[i]}")
            processed.append(i)

    def _solve_correction(self, i: int, target: ClosureElt,
                          processed: tuple[int, ...], k: int | None) -> ClosureElt:
        alg = self.alg
        degree = alg.degrees[i]
        image_basis = self.closure_basis(degree + 1, processed)
        image_index = {pair: j for j, pair in enumerate(image_basis)}
        stages = []
        if k is not None and k - 1 > 1:
            stages.append(k - 1)
        stages.append(1)
        for min_wl in stages:
            candidates = [
                (m, w)
                for (m, w) in self.closure_basis(degree, processed)
                if w and m and alg.mono_wordlength(m) >= min_wl]
            columns = []
            for pair in candidates:
                image = self.differential({pair: Fraction(1)})
                columns.append({image_index[key]: c for key, c in image.items()})
            goal = {image_index[key]: c for key, c in target.items()}
            combo = solve_from_columns(columns, goal)
            if combo is not None:
                out: ClosureElt = {}
                for j, c in combo.items():
                    _elt_add_scaled(out, c, {candidates[j]: Fraction(1)})
                return out
        raise InternalError(
            f"no correction found for suspension of {alg.names[i]}; "
            "the input differential cannot be extended acyclically")


@dataclass(frozen=True)
class ExtClass:
    degree: int
    raw_level: int
    effective_level: int
    ev_nonzero: bool

    def signature(self) -> tuple:
        return (self.degree, self.raw_level, self.effective_level, self.ev_nonzero)


@dataclass
class ExtSummary:
    classes: list[ExtClass]
    dimensions: dict[int, int]
    window: tuple[int, int]
    truncation: int
    stable: bool
    # True when truncation artifacts were removed by keeping only classes
    # whose signatures persist across consecutive cutoffs; this happens for
    # inputs with unbounded cohomology, where each cutoff also produces
    # boundary classes whose levels drift with the cutoff itself
    filtered: bool = False


class HomComplex:
    """Module maps from a truncated acyclic closure into the algebra,
    as a finite cochain complex in each total degree."""

    def __init__(self, closure: AcyclicClosure, cap: int):
        self.closure = closure
        self.alg = closure.alg
        self.cap = cap
        self.words: list[GWord] = closure.words_within_degree(cap)
        self.word_index = {w: i for i, w in enumerate(self.words)}
        self.word_degrees = [closure.gw_degree(w) for w in self.words]
        # arrows[target word index] = list of (source word index, algebra
        # factor, coefficient) across the closure differential
        self.arrows: dict[int, list[tuple[int, Mono, Fraction]]] = {}
        for wi, w in enumerate(self.words):
            for (mono, target), c in closure.d_word(w).items():
                ti = self.word_index.get(target)
                if ti is None:
                    raise InternalError("closure differential left the truncation")
                self.arrows.setdefault(ti, []).append((wi, mono, c))
        self._basis_cache: dict[int, list[tuple[int, Mono]]] = {}
        self._matrix_cache: dict[int, list[Vec]] = {}

    def basis(self, n: int) -> list[tuple[int, Mono]]:
        cached = self._basis_cache.get(n)
        if cached is None:
            cached = [
                (wi, m)
                for wi in range(len(self.words))
                for m in self.alg.basis(n + self.word_degrees[wi])]
            self._basis_cache[n] = cached
        return cached

    def index_map(self, n: int) -> dict[tuple[int, Mono], int]:
        return {pair: j for j, pair in enumerate(self.basis(n))}

    def matrix(self, n: int) -> list[Vec]:
        """Columns of the cochain differential from degree n to n + 1."""
        cached = self._matrix_cache.get(n)
        if cached is not None:
            return cached
        alg = self.alg
        d = self.closure.model.differential
        target = self.index_map(n + 1)
        sign_front = -1 if n % 2 else 1
        cols: list[Vec] = []
        for wi, m in self.basis(n):
            col: Vec = {}
            for mono, c in d.apply_mono(m).items():
                j = target[(wi, mono)]
                s = col.get(j, ZERO) + c
                if s:
                    col[j] = s
                else:
                    col.pop(j, None)
            for src, a, c in self.arrows.get(wi, ()):
                adeg = alg.mono_degree(a)
                outer = sign_front * (-1 if (adeg * n) % 2 else 1)
                for mono, c2 in alg.poly_mul({a: Fraction(1)}, {m: Fraction(1)}).items():
                    j = target[(src, mono)]
                    s = col.get(j, ZERO) - outer * c * c2
                    if s:
                        col[j] = s
                    else:
                        col.pop(j, None)
            cols.append(col)
        self._matrix_cache[n] = cols
        return cols

    def value_polys(self, vec: Vec, n: int) -> dict[int, Poly]:
        """Unpack a cochain vector into {word index: value polynomial}."""
        basis = self.basis(n)
        out: dict[int, Poly] = {}
        for j, c in vec.items():
            wi, m = basis[j]
            out.setdefault(wi, {})[m] = c
        return out


def _class_levels(hom: HomComplex, vec: Vec, n: int) -> ExtClass:
    """Raw and effective word-length levels of one cocycle class."""
    alg = hom.alg
    model = hom.closure.model
    values = hom.value_polys(vec, n)
    empty_wi = hom.word_index[EMPTY_WORD]

    basis_n = hom.basis(n)
    prev_cols = hom.matrix(n - 1)
    max_wl = max((alg.mono_wordlength(m) for _, m in basis_n), default=0)
    raw = 0
    for p in range(1, max_wl + 2):
        keep = [j for j, (_, m) in enumerate(basis_n) if alg.mono_wordlength(m) < p]
        keep_set = set(keep)
        trimmed = [{j: c for j, c in col.items() if j in keep_set} for col in prev_cols]
        goal = {j: -c for j, c in vec.items() if j in keep_set}
        if solve_from_columns(trimmed, goal) is None:
            break
        raw = p
    else:
        raise InternalError("class representative reduced to a coboundary")

    ev_value = values.get(empty_wi, {})
    ev_nonzero = bool(ev_value) and coboundary_preimage(model.differential, ev_value) is None
    if ev_nonzero:
        effective = class_wordlength_level(model.differential, ev_value)
    else:
        effective = raw
    return ExtClass(degree=n, raw_level=raw, effective_level=effective,
                    ev_nonzero=ev_nonzero)


def _summary_at(closure: AcyclicClosure, cap: int, lo: int, hi: int) -> ExtSummary:
    hom = HomComplex(closure, cap)
    dims: dict[int, int] = {}
    classes: list[ExtClass] = []
    for n in range(lo, hi + 1):
        cols = hom.matrix(n)
        kernel = kernel_from_columns(cols)
        prev = hom.matrix(n - 1)
        boundaries = image_subspace(prev)
        reps = coset_representatives(kernel, boundaries)
        if reps:
            dims[n] = len(reps)
            for vec in reps:
                classes.append(_class_levels(hom, vec, n))
    classes.sort(key=lambda c: c.signature())
    return ExtSummary(classes=classes, dimensions=dims, window=(lo, hi),
                      truncation=cap, stable=False)


def default_window(model: SullivanModel) -> tuple[int, int]:
    degs = model.algebra.degrees
    lo = -(max(degs) - 1) - 1
    hi = max(model.formal_dimension(), 0) + max(degs)
    return lo, hi


_summary_cache: dict[tuple, ExtSummary] = {}


def _multiset_intersection(left: list[tuple], right: list[tuple]) -> list[tuple]:
    counts: dict[tuple, int] = {}
    for sig in left:
        counts[sig] = counts.get(sig, 0) + 1
    out = []
    for sig in right:
        if counts.get(sig, 0) > 0:
            counts[sig] -= 1
            out.append(sig)
    out.sort()
    return out


def _filtered_summary(source: ExtSummary, keep: list[tuple]) -> ExtSummary:
    budget: dict[tuple, int] = {}
    for sig in keep:
        budget[sig] = budget.get(sig, 0) + 1
    classes = []
    for cls in source.classes:
        sig = cls.signature()
        if budget.get(sig, 0) > 0:
            budget[sig] -= 1
            classes.append(cls)
    dims: dict[int, int] = {}
    for cls in classes:
        dims[cls.degree] = dims.get(cls.degree, 0) + 1
    return ExtSummary(classes=classes, dimensions=dims, window=source.window,
                      truncation=source.truncation, stable=True, filtered=True)


def ext_summary(model: SullivanModel, *, window: tuple[int, int] | None = None,
                start: int | None = None, rounds: int = 3) -> ExtSummary:
    """Ext classes of the model in a degree window, with their levels.

    Recomputes at growing truncation until two consecutive runs agree on
    dimensions and class signatures.  When full agreement never happens
    (inputs with unbounded cohomology breed cutoff-boundary classes whose
    levels drift with the cutoff), the classes persisting across consecutive
    cutoffs are compared instead, and the summary is marked ``filtered``.
    ``stable`` records whether either criterion was met.
    """
    alg = model.algebra
    if window is None:
        window = default_window(model)
    cache_key = (alg.names, alg.degrees, model.differential.key(), window, start, rounds)
    hit = _summary_cache.get(cache_key)
    if hit is not None:
        return hit
    lo, hi = window
    step = max(alg.degrees) - 1
    cap = start if start is not None else max(alg.degrees) + 2
    previous = _summary_at(AcyclicClosure(model), cap, lo, hi)
    survivors: list[tuple] | None = None
    for _ in range(rounds):
        cap += step
        current = _summary_at(AcyclicClosure(model), cap, lo, hi)
        if (current.dimensions == previous.dimensions
                and [c.signature() for c in current.classes]
                == [c.signature() for c in previous.classes]):
            current.stable = True
            _summary_cache[cache_key] = current
            return current
        persistent = _multiset_intersection(
            [c.signature() for c in previous.classes],
            [c.signature() for c in current.classes])
        if survivors is not None and persistent and persistent == survivors:
            result = _filtered_summary(current, persistent)
            _summary_cache[cache_key] = result
            return result
        survivors = persistent
        previous = current
    _summary_cache[cache_key] = previous
    return previous


def gorenstein_report(model: SullivanModel) -> dict:
    """Ext dimension, class data, and whether the finite-window argument
    is backed by ellipticity.  Never raises on unstable truncations; the
    ``stable`` field carries that instead."""
    from .ellipticity import is_elliptic

    summary = ext_summary(model)
    report: dict = {
        "name": model.name,
        "stable": summary.stable,
        "filtered": summary.filtered,
        "truncation": summary.truncation,
        "window": summary.window,
        "ext_dimension": sum(summary.dimensions.values()),
        "classes": [c.signature() for c in summary.classes],
        "elliptic": is_elliptic(model),
    }
    # for non-elliptic inputs the degree window is a computation choice,
    # not a completeness guarantee
    report["window_argument_applies"] = report["elliptic"]
    if len(summary.classes) == 1:
        cls = summary.classes[0]
        report["degree"] = cls.degree
        report["raw_level"] = cls.raw_level
        report["effective_level"] = cls.effective_level
        report["ev_nonzero"] = cls.ev_nonzero
    return report


def depth(model: SullivanModel) -> int:
    """Effective word-length level of the Ext module of the model.

    Widens the degree window a few times if no classes are visible, and
    raises TruncationError when the computation never stabilizes.
    """
    alg = model.algebra
    lo, hi = default_window(model)
    for _ in range(4):
        summary = ext_summary(model, window=(lo, hi))
        if not summary.stable:
            raise TruncationError(
                f"Ext computation for {model.name} did not stabilize "
                f"(last truncation {summary.truncation})")
        if summary.classes:
            return min(c.effective_level for c in summary.classes)
        lo -= max(alg.degrees)
        hi += max(alg.degrees)
    raise TruncationError(
        f"no Ext classes found for {model.name} in degrees [{lo}, {hi}]")
