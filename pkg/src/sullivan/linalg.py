"""Exact sparse linear algebra over the rationals.

Vectors are sparse mappings ``{coordinate index: Fraction}`` with no zero
values stored.  Everything here is deterministic: pivots are always the
smallest coordinate index available, and insertion order is the caller's.
"""

from __future__ import annotations

from fractions import Fraction

Vec = dict[int, Fraction]

ZERO = Fraction(0)
ONE = Fraction(1)


def add_scaled(u: Vec, c: Fraction, v: Vec) -> Vec:
    """Return ``u + c*v`` as a new sparse vector."""
    if not c:
        return dict(u)
    out = dict(u)
    for j, a in v.items():
        s = out.get(j, ZERO) + c * a
        if s:
            out[j] = s
        else:
            out.pop(j, None)
    return out


def scale(v: Vec, c: Fraction) -> Vec:
    if not c:
        return {}
    return {j: c * a for j, a in v.items()}


def vec_eq(u: Vec, v: Vec) -> bool:
    return u == v


class Subspace:
    """Row-echelon basis of a subspace, keyed by pivot coordinate.

    ``insert`` returns True when the vector enlarged the span, so the same
    object doubles as an incremental rank computation and a membership test.
    """

    def __init__(self) -> None:
        self.rows: dict[int, Vec] = {}

    @property
    def dim(self) -> int:
        return len(self.rows)

    def copy(self) -> "Subspace":
        other = Subspace()
        other.rows = {p: dict(r) for p, r in self.rows.items()}
        return other

    def reduce(self, vec: Vec) -> Vec:
        """Eliminate every pivot coordinate from ``vec``; return the residual."""
        vec = dict(vec)
        while True:
            hits = [j for j in vec if j in self.rows]
            if not hits:
                return vec
            p = min(hits)
            c = vec[p]
            row = self.rows[p]
            for j, a in row.items():
                s = vec.get(j, ZERO) - c * a
                if s:
                    vec[j] = s
                else:
                    vec.pop(j, None)

    def contains(self, vec: Vec) -> bool:
        return not self.reduce(vec)

    def insert(self, vec: Vec) -> bool:
        r = self.reduce(vec)
        if not r:
            return False
        p = min(r)
        inv = ONE / r[p]
        self.rows[p] = {j: a * inv for j, a in r.items()}
        return True


def image_subspace(columns: list[Vec]) -> Subspace:
    sub = Subspace()
    for col in columns:
        sub.insert(col)
    return sub


def rank(columns: list[Vec]) -> int:
    return image_subspace(columns).dim


def _tracked_reduce(
    vec: Vec, combo: Vec, rows: dict[int, tuple[Vec, Vec]]
) -> tuple[Vec, Vec]:
    """Reduce ``vec`` against tracked rows, applying the same operations to
    ``combo``.  Preserves the invariant vec = (original) - sum(combo * columns)
    maintained by the callers."""
    vec = dict(vec)
    combo = dict(combo)
    while True:
        hits = [j for j in vec if j in rows]
        if not hits:
            return vec, combo
        p = min(hits)
        c = vec[p]
        row, rcombo = rows[p]
        for j, a in row.items():
            s = vec.get(j, ZERO) - c * a
            if s:
                vec[j] = s
            else:
                vec.pop(j, None)
        for j, a in rcombo.items():
            s = combo.get(j, ZERO) + c * a
            if s:
                combo[j] = s
            else:
                combo.pop(j, None)


def kernel_from_columns(columns: list[Vec]) -> list[Vec]:
    """Basis for the kernel of the map sending e_j to columns[j].

    Kernel vectors are expressed in the e_j coordinates.  Each basis vector
    has coefficient 1 on its own defining column, so the output is already
    independent and in echelon position with respect to column order.
    """
    rows: dict[int, tuple[Vec, Vec]] = {}
    kernel: list[Vec] = []
    for j, col in enumerate(columns):
        vec, combo = _tracked_reduce(dict(col), {}, rows)
        # combo now satisfies vec = col - sum(combo * earlier columns)
        if not vec:
            ker = dict(combo)
            ker[j] = -ONE
            kernel.append(scale(ker, -ONE))
            continue
        p = min(vec)
        inv = ONE / vec[p]
        rows[p] = ({k: a * inv for k, a in vec.items()},
                   {k: -a * inv for k, a in combo.items()} | {j: inv})
    return kernel


def solve_from_columns(columns: list[Vec], target: Vec) -> Vec | None:
    """Coefficients x with sum(x_j * columns[j]) == target, or None.

    The coefficient vector is sparse in the column indices.
    """
    rows: dict[int, tuple[Vec, Vec]] = {}
    for j, col in enumerate(columns):
        vec, combo = _tracked_reduce(dict(col), {}, rows)
        if not vec:
            continue
        p = min(vec)
        inv = ONE / vec[p]
        rows[p] = ({k: a * inv for k, a in vec.items()},
                   {k: -a * inv for k, a in combo.items()} | {j: inv})
    vec, combo = _tracked_reduce(dict(target), {}, rows)
    if vec:
        return None
    return combo


def coset_representatives(vectors: list[Vec], modulo: Subspace) -> list[Vec]:
    """Subset of ``vectors`` forming a basis of span(vectors) / modulo.

    The returned vectors are the original ones, not their reductions, so the
    caller keeps whatever structure they carried.
    """
    probe = modulo.copy()
    reps: list[Vec] = []
    for v in vectors:
        if probe.insert(v):
            reps.append(v)
    return reps
