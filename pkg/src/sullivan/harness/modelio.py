"""Reading models from a flat sectioned text format.

A model file holds a `[model]` section naming the generators, a
`[differential]` section assigning polynomial values to some of them
(the rest get zero), and an optional `[expect]` section of invariants
used by golden tests.  The format is line-based and hand-writable:

    [model]
    name = cp2
    generators = [x:2, y:5]

    [differential]
    y = x^3

    [expect]
    toomer = 2

`#` starts a comment.  Expected values are typed: integers, `true`,
`false`, `none`, `[comma, separated, integers]`, anything else a string.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field

from ..differential import Derivation, SullivanModel
from ..errors import ParseError
from ..gradedalgebra import FreeGradedAlgebra, parse_polynomial

_NAME = re.compile(r"[A-Za-z_][A-Za-z_0-9]*\Z")


@dataclass
class ModelFile:
    name: str
    generators: list[tuple[str, int]]
    differential: dict[str, tuple[str, int]] = field(default_factory=dict)
    expect: dict[str, object] = field(default_factory=dict)

    def to_model(self) -> SullivanModel:
        algebra = FreeGradedAlgebra(
            tuple(n for n, _ in self.generators),
            tuple(d for _, d in self.generators))
        index = {n: i for i, (n, _) in enumerate(self.generators)}
        values = [dict() for _ in self.generators]
        for gen, (text, line) in self.differential.items():
            values[index[gen]] = parse_polynomial(text, algebra, line=line)
        model = SullivanModel(self.name, algebra, Derivation(algebra, values))
        model.validate()
        return model


def _parse_generators(text: str, line: int) -> list[tuple[str, int]]:
    stripped = text.strip()
    if not (stripped.startswith("[") and stripped.endswith("]")):
        raise ParseError("generators must look like [x:2, y:5]", line=line)
    inner = stripped[1:-1].strip()
    out: list[tuple[str, int]] = []
    if not inner:
        raise ParseError("a model needs at least one generator", line=line)
    for item in inner.split(","):
        part = item.strip()
        if ":" not in part:
            raise ParseError(f"generator entry {part!r} is missing ':degree'", line=line)
        name, _, deg = part.partition(":")
        name = name.strip()
        if not _NAME.match(name):
            raise ParseError(f"bad generator name {name!r}", line=line)
        try:
            degree = int(deg.strip())
        except ValueError:
            raise ParseError(f"bad degree {deg.strip()!r} for generator {name}",
                             line=line) from None
        out.append((name, degree))
    return out


def _parse_expect_value(text: str, line: int) -> object:
    stripped = text.strip()
    lowered = stripped.lower()
    if lowered == "true":
        return True
    if lowered == "false":
        return False
    if lowered == "none":
        return None
    if stripped.startswith("[") and stripped.endswith("]"):
        inner = stripped[1:-1].strip()
        if not inner:
            return []
        try:
            return [int(x.strip()) for x in inner.split(",")]
        except ValueError:
            raise ParseError(f"expected a list of integers, got {stripped!r}",
                             line=line) from None
    try:
        return int(stripped)
    except ValueError:
        return stripped


def parse_model_text(text: str, fallback_name: str = "unnamed") -> ModelFile:
    """Parse the sectioned format; raises ParseError with a line number
    on malformed input.  Differential polynomials are kept as text with
    their source line and parsed when the model is built."""
    name = fallback_name
    generators: list[tuple[str, int]] | None = None
    differential: dict[str, tuple[str, int]] = {}
    expect: dict[str, object] = {}
    section = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("[") and line.endswith("]"):
            section = line[1:-1].strip().lower()
            if section not in ("model", "differential", "expect"):
                raise ParseError(f"unknown section [{section}]", line=lineno)
            continue
        if section is None:
            raise ParseError("content before the first section header", line=lineno)
        if "=" not in line:
            raise ParseError("expected 'key = value'", line=lineno)
        key, _, value = line.partition("=")
        key = key.strip()
        if section == "model":
            if key == "name":
                name = value.strip()
            elif key == "generators":
                generators = _parse_generators(value, lineno)
            else:
                raise ParseError(f"unknown [model] key {key!r}", line=lineno)
        elif section == "differential":
            if generators is None:
                raise ParseError("differential section before generators", line=lineno)
            if key not in {n for n, _ in generators}:
                raise ParseError(f"differential assigned to unknown generator {key!r}",
                                 line=lineno)
            if key in differential:
                raise ParseError(f"generator {key!r} assigned twice", line=lineno)
            differential[key] = (value.strip(), lineno)
        else:
            expect[key] = _parse_expect_value(value, lineno)
    if generators is None:
        raise ParseError("missing [model] section with generators")
    return ModelFile(name=name, generators=generators,
                     differential=differential, expect=expect)


def parse_model(text: str) -> SullivanModel:
    """One-step convenience: text to validated model."""
    return parse_model_text(text).to_model()


def load_model_file(path: str) -> ModelFile:
    with open(path, encoding="utf-8") as handle:
        text = handle.read()
    stem = path.rsplit("/", 1)[-1].removesuffix(".model")
    return parse_model_text(text, fallback_name=stem)
