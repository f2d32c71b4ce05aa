"""The shipped model corpus: small elliptic models whose invariants are
classical, plus the two calibration cases (a model whose quadratic piece
is not elliptic, and the Gorenstein-but-not-elliptic polynomial algebra).
Every file carries expected invariants for golden tests, tagged with the
provenance of those numbers ("classical" for textbook values, "derived"
for values frozen from this tool's own independent routes)."""

from __future__ import annotations

from importlib import resources

from ..differential import SullivanModel
from ..errors import InputError
from .modelio import ModelFile, parse_model_text

# fixed order: reports and tables stay byte-identical between runs
CORPUS_NAMES = (
    "s2", "s3", "s3s3",
    "cp2", "cp3", "cp4",
    "odd35", "eight", "kz2", "s2s3",
)


def _model_dir():
    return resources.files("sullivan.harness").joinpath("models")


def corpus_file(name: str) -> ModelFile:
    if name not in CORPUS_NAMES:
        raise InputError(
            f"unknown corpus model {name!r}; available: {', '.join(CORPUS_NAMES)}")
    text = _model_dir().joinpath(f"{name}.model").read_text(encoding="utf-8")
    return parse_model_text(text, fallback_name=name)


def corpus() -> list[ModelFile]:
    return [corpus_file(name) for name in CORPUS_NAMES]


def corpus_model(name: str) -> SullivanModel:
    return corpus_file(name).to_model()
