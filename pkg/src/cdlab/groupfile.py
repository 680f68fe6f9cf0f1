"""Group-description files: JSON with an explicit format version.

Four kinds of description are accepted::

    {"format_version": 1, "backend": "permutation", "degree": 4, "generators": [[1,2,3,0], ...]}
    {"format_version": 1, "backend": "matrix", "modulus": 3, "dim": 3, "generators": [[[...]]]}
    {"format_version": 1, "backend": "class2", "p": 2, "d": 2, "e": 1, "B": [...], "q": [...]}
    {"format_version": 1, "backend": "construction", "name": "bigex", "params": {"p": 5}}

Unknown keys are rejected.  ``dumps`` writes a canonical text (sorted keys,
two-space indent, trailing newline) so ``dumps(loads(text)) == text`` for any
canonical file.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .constructions import ConstructionSpec
from .errors import InconsistentData, InvalidPermutation, ParseError, SingularGenerator
from .groups import ELEMENT_CAP, Class2Data, FiniteGroup, from_class2_data, from_matrices_mod, from_permutations

FORMAT_VERSION = 1

_KEYS = {
    "permutation": {"degree", "generators"},
    "matrix": {"modulus", "dim", "generators"},
    "class2": {"p", "d", "e", "B", "q"},
    "construction": {"name", "params", "components"},
}
_REQUIRED = {
    "permutation": {"generators"},
    "matrix": {"modulus", "dim", "generators"},
    "class2": {"p", "d", "e", "B"},
    "construction": {"name"},
}


@dataclass
class GroupFile:
    backend: str
    fields: dict = field(default_factory=dict)
    format_version: int = FORMAT_VERSION

    def to_dict(self) -> dict:
        return {"format_version": self.format_version, "backend": self.backend, **self.fields}

    def construction(self) -> ConstructionSpec | None:
        if self.backend != "construction":
            return None
        return ConstructionSpec.from_dict(self.fields)

    def class2_data(self) -> Class2Data | None:
        if self.backend == "class2":
            f = self.fields
            return Class2Data(f["p"], f["d"], f["e"], np.array(f["B"]), None if "q" not in f else np.array(f["q"]))
        if self.backend == "construction":
            return self.construction().data()
        return None

    @property
    def order(self) -> int | None:
        """Group order when known without building the group."""
        if self.backend == "class2":
            return self.fields["p"] ** (self.fields["d"] + self.fields["e"])
        if self.backend == "construction":
            return self.construction().order
        return None

    def build(self, cap: int = ELEMENT_CAP) -> FiniteGroup:
        """Expand to a concrete group; malformed generators raise ParseError."""
        try:
            return self._build(cap)
        except (InvalidPermutation, SingularGenerator, InconsistentData) as exc:
            raise ParseError(f"invalid {self.backend} description: {exc}") from exc

    def _build(self, cap: int) -> FiniteGroup:
        f = self.fields
        if self.backend == "permutation":
            return from_permutations(f["generators"], f.get("degree"), cap)
        if self.backend == "matrix":
            return from_matrices_mod(f["modulus"], f["dim"], f["generators"], cap)
        if self.backend == "class2":
            return from_class2_data(self.class2_data(), cap)
        return self.construction().build(cap)

    @property
    def label(self) -> str:
        if self.backend == "construction":
            return self.construction().label
        return self.backend


def _check_int(value, what: str) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise ParseError(f"{what} must be an integer, got {value!r}")
    return value


def from_dict(obj) -> GroupFile:
    if not isinstance(obj, dict):
        raise ParseError("group file must hold a JSON object")
    version = obj.get("format_version")
    if version != FORMAT_VERSION:
        raise ParseError(f"unsupported format_version {version!r} (expected {FORMAT_VERSION})")
    backend = obj.get("backend")
    if backend not in _KEYS:
        raise ParseError(f"unknown backend {backend!r}; expected one of {sorted(_KEYS)}")
    fields = {k: v for k, v in obj.items() if k not in ("format_version", "backend")}
    unknown = set(fields) - _KEYS[backend]
    if unknown:
        raise ParseError(f"unknown fields for backend {backend!r}: {sorted(unknown)}")
    missing = _REQUIRED[backend] - set(fields)
    if missing:
        raise ParseError(f"missing fields for backend {backend!r}: {sorted(missing)}")
    for k in ("degree", "modulus", "dim", "p", "d", "e"):
        if k in fields:
            _check_int(fields[k], k)
    gf = GroupFile(backend, fields, version)
    try:
        if backend == "construction":
            gf.construction()
        elif backend == "class2":
            gf.class2_data()
    except ParseError:
        raise
    except Exception as exc:  # validation errors from the constructors
        raise ParseError(f"invalid {backend} description: {exc}") from exc
    return gf


def loads(text: str) -> GroupFile:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"not valid JSON: {exc}") from exc
    return from_dict(obj)


def load(path) -> GroupFile:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc}") from exc
    return loads(text)


def dumps(gf: GroupFile) -> str:
    return json.dumps(gf.to_dict(), sort_keys=True, indent=2) + "\n"


def dump(gf: GroupFile, path) -> None:
    Path(path).write_text(dumps(gf))


def from_spec(spec: ConstructionSpec) -> GroupFile:
    return GroupFile("construction", spec.to_dict())


def from_data(data: Class2Data) -> GroupFile:
    return GroupFile("class2", data.to_dict())
