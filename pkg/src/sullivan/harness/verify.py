"""Verification of the main integer identities on concrete models.

Each checker computes both sides of one asserted relation with the
library's independent routes and reports pass/fail per model, plus
"not-applicable" when a precondition rules the model out and
"inconclusive" when a truncation never stabilized.  Failures always
carry the mismatching numbers.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field

from ..cohomology import toomer_invariant
from ..differential import SullivanModel, pure_part, wordlength_part
from ..ellipticity import is_elliptic
from ..errors import InputError, TruncationError
from ..extdepth import depth
from .corpus import CORPUS_NAMES, corpus_model

PASS = "pass"
FAIL = "fail"
INCONCLUSIVE = "inconclusive"
NOT_APPLICABLE = "not-applicable"


@dataclass
class ModelResult:
    model: str
    status: str
    relation: str
    quantities: dict = field(default_factory=dict)
    detail: str = ""
    seconds: float = 0.0


@dataclass
class VerificationReport:
    theorem: str
    results: list[ModelResult] = field(default_factory=list)

    def overall(self) -> str:
        statuses = {r.status for r in self.results}
        if FAIL in statuses:
            return FAIL
        if INCONCLUSIVE in statuses:
            return INCONCLUSIVE
        return PASS

    def exit_code(self) -> int:
        return {PASS: 0, FAIL: 1, INCONCLUSIVE: 2}[self.overall()]


def lowest_piece_model(model: SullivanModel) -> tuple[SullivanModel, int | None]:
    """The model with only the lowest word-length piece of its
    differential.  A zero differential has no such piece; the model is
    returned unchanged with level None."""
    k = model.lowest_part_index()
    if k is None:
        return model, None
    return model.with_differential(
        wordlength_part(model.differential, k), f"d{k}"), k


def pure_model(model: SullivanModel) -> SullivanModel:
    return model.with_differential(pure_part(model.differential), "pure")


def _base_quantities(model: SullivanModel) -> dict:
    alg = model.algebra
    return {
        "k": model.lowest_part_index(),
        "dim_v_odd": sum(1 for d in alg.degrees if d % 2),
        "dim_v_even": sum(1 for d in alg.degrees if d % 2 == 0),
    }


def verify_theorem_1(model: SullivanModel) -> ModelResult:
    """The Toomer invariant equals the depth of the lowest-piece model
    exactly when that lowest-piece model is elliptic."""
    relation = "(toomer == depth of lowest piece) iff (lowest piece elliptic)"
    start = time.perf_counter()
    quantities = _base_quantities(model)
    if not is_elliptic(model):
        return ModelResult(model.name, NOT_APPLICABLE, relation, quantities,
                           detail="model is not elliptic",
                           seconds=time.perf_counter() - start)
    sub, k = lowest_piece_model(model)
    sub_elliptic = is_elliptic(sub)
    e0 = toomer_invariant(model)
    quantities.update(toomer=e0, lowest_piece_elliptic=sub_elliptic)
    try:
        depth_sub = depth(sub)
    except TruncationError as exc:
        return ModelResult(model.name, INCONCLUSIVE, relation, quantities,
                           detail=str(exc), seconds=time.perf_counter() - start)
    quantities["depth_lowest_piece"] = depth_sub
    equal = e0 == depth_sub
    status = PASS if equal == sub_elliptic else FAIL
    detail = ""
    if status == FAIL:
        detail = (f"toomer {e0} vs depth {depth_sub} with lowest piece "
                  f"elliptic = {sub_elliptic}")
    return ModelResult(model.name, status, relation, quantities, detail,
                       seconds=time.perf_counter() - start)


def verify_theorem_3(model: SullivanModel) -> ModelResult:
    """Depth is unchanged when the differential is replaced by its pure part."""
    relation = "depth(d) == depth(pure part)"
    start = time.perf_counter()
    quantities = _base_quantities(model)
    if not is_elliptic(model):
        return ModelResult(model.name, NOT_APPLICABLE, relation, quantities,
                           detail="model is not elliptic",
                           seconds=time.perf_counter() - start)
    try:
        depth_full = depth(model)
        depth_pure = depth(pure_model(model))
    except TruncationError as exc:
        return ModelResult(model.name, INCONCLUSIVE, relation, quantities,
                           detail=str(exc), seconds=time.perf_counter() - start)
    quantities.update(depth=depth_full, depth_pure=depth_pure)
    status = PASS if depth_full == depth_pure else FAIL
    detail = "" if status == PASS else f"depth {depth_full} vs pure depth {depth_pure}"
    return ModelResult(model.name, status, relation, quantities, detail,
                       seconds=time.perf_counter() - start)


def verify_corollary_4(model: SullivanModel) -> ModelResult:
    """For an elliptic lowest piece, the Toomer invariant of the model and
    of the lowest-piece model both equal dim V_odd + (k-2) dim V_even."""
    relation = "toomer(d) == toomer(lowest piece) == dim_odd + (k-2)*dim_even"
    start = time.perf_counter()
    quantities = _base_quantities(model)
    sub, k = lowest_piece_model(model)
    if k is None:
        return ModelResult(model.name, NOT_APPLICABLE, relation, quantities,
                           detail="differential is zero; no lowest piece",
                           seconds=time.perf_counter() - start)
    if not is_elliptic(sub):
        return ModelResult(model.name, NOT_APPLICABLE, relation, quantities,
                           detail="lowest piece is not elliptic",
                           seconds=time.perf_counter() - start)
    formula = quantities["dim_v_odd"] + (k - 2) * quantities["dim_v_even"]
    e0_full = toomer_invariant(model)
    e0_sub = toomer_invariant(sub)
    quantities.update(toomer=e0_full, toomer_lowest_piece=e0_sub, formula=formula)
    status = PASS if e0_full == e0_sub == formula else FAIL
    detail = "" if status == PASS else (
        f"toomer {e0_full}, lowest-piece toomer {e0_sub}, formula {formula}")
    return ModelResult(model.name, status, relation, quantities, detail,
                       seconds=time.perf_counter() - start)


_CHECKERS = {
    "1": verify_theorem_1,
    "3": verify_theorem_3,
    "4": verify_corollary_4,
}


def verify(theorem: str, models: list[SullivanModel]) -> VerificationReport:
    if theorem not in _CHECKERS:
        known = ", ".join(sorted(_CHECKERS))
        raise InputError(f"no checker for theorem {theorem!r}; known: {known}")
    checker = _CHECKERS[theorem]
    report = VerificationReport(theorem=theorem)
    for model in models:
        report.results.append(checker(model))
    return report


def verify_corpus(theorem: str) -> VerificationReport:
    return verify(theorem, [corpus_model(name) for name in CORPUS_NAMES])


def remark_5_rows(models: list[SullivanModel]) -> list[dict]:
    """Data for the open question: for models whose lowest piece is not
    elliptic, tabulate the depth of the pure part of that lowest piece
    against the formula value.  No assertion is made."""
    rows: list[dict] = []
    for model in models:
        sub, k = lowest_piece_model(model)
        if k is None or is_elliptic(sub):
            continue
        base = _base_quantities(model)
        formula = base["dim_v_odd"] + (k - 2) * base["dim_v_even"]
        row = {"model": model.name, "k": k, "formula": formula}
        try:
            row["depth_pure_lowest_piece"] = depth(pure_model(sub))
            row["agrees"] = row["depth_pure_lowest_piece"] == formula
            row["status"] = "ok"
        except TruncationError as exc:
            row["depth_pure_lowest_piece"] = None
            row["agrees"] = None
            row["status"] = f"inconclusive: {exc}"
        rows.append(row)
    return rows
