"""The bundled corpus: structure, validation, and golden expectations.

Every [expect] entry in every corpus file is checked against the value
the library computes.  `provenance` and `betti_through` are metadata
consumed by other keys, not claims of their own.
"""

from __future__ import annotations

import pytest

from sullivan.cohomology import betti_numbers, toomer_invariant
from sullivan.ellipticity import is_elliptic
from sullivan.errors import InputError
from sullivan.extdepth import depth, gorenstein_report
from sullivan.harness.corpus import CORPUS_NAMES, corpus, corpus_file, corpus_model


def test_the_corpus_is_big_enough_and_ordered():
    assert len(CORPUS_NAMES) >= 9
    files = corpus()
    assert [mf.name for mf in files] == list(CORPUS_NAMES)


def test_every_corpus_model_validates():
    for name in CORPUS_NAMES:
        model = corpus_model(name)
        assert model.name == name


def test_unknown_corpus_name_is_an_input_error():
    with pytest.raises(InputError):
        corpus_file("nosuchmodel")


def test_every_file_carries_the_golden_keys():
    needed = {"formal_dimension", "k", "betti_through", "betti", "elliptic",
              "depth", "ext_dimension", "ext_degree", "ev_nonzero"}
    for mf in corpus():
        missing = needed - set(mf.expect)
        assert not missing, f"{mf.name} lacks {sorted(missing)}"


def _computed(model, report, key, expect):
    if key == "formal_dimension":
        return model.formal_dimension()
    if key == "k":
        return model.lowest_part_index()
    if key == "betti":
        return betti_numbers(model, expect["betti_through"])
    if key == "elliptic":
        return is_elliptic(model)
    if key == "toomer":
        return toomer_invariant(model)
    if key == "depth":
        return depth(model)
    if key == "ext_dimension":
        return report["ext_dimension"]
    if key == "ext_degree":
        return report["degree"]
    if key == "ev_nonzero":
        return report["ev_nonzero"]
    raise AssertionError(f"unhandled expect key {key!r}")


@pytest.mark.parametrize("name", CORPUS_NAMES)
def test_golden_expectations_match_computation(name):
    mf = corpus_file(name)
    model = mf.to_model()
    report = gorenstein_report(model)
    for key, want in mf.expect.items():
        if key in ("provenance", "betti_through"):
            continue
        got = _computed(model, report, key, mf.expect)
        assert got == want, f"{name}: {key} computed {got} but file says {want}"


def test_toomer_is_recorded_exactly_when_defined():
    # the invariant needs a fundamental class, so it is absent exactly
    # for the non-elliptic corpus members
    for mf in corpus():
        assert ("toomer" in mf.expect) == mf.expect["elliptic"]
