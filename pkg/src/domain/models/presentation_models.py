"""
Presentation file schema.

A presentation file is JSON:

    {
      "name": "surface-2",
      "factors": [{"id": 0, "kind": "abelian", "name": "a1", "rank": 1}, ...],
      "relators": [{"syllables": [{"factor": 0, "element": [1]}, ...], "base": [...], "exponent": 1}]
    }

Finite factors give either "order" (cyclic) or a multiplication "table"; "base" and
"exponent" are optional and verified against the syllables when present.
"""
from pathlib import Path
from typing import Any, List, Optional, Union

import orjson
from pydantic import BaseModel, Field, ValidationError, model_validator

from src.domain import catalog
from src.domain.freeprod import (
    AbelianFactor,
    FactorGroup,
    FiniteFactor,
    FreeFactor,
    FreeProduct,
    Presentation,
    Relator,
    is_proper_power,
)
from src.utils.constants import FACTOR_ABELIAN, FACTOR_FINITE, FACTOR_FREE, FACTOR_KINDS
from src.utils.exceptions import InputError

BUILTIN_PREFIX = "builtin:"


class FactorSpec(BaseModel):
    id: int = Field(..., ge=0, description="Factor id, unique within the presentation")
    kind: str = Field(..., description=f"One of {', '.join(FACTOR_KINDS)}")
    name: Optional[str] = Field(None, description="Display name; defaults to g<id>")
    rank: Optional[int] = Field(None, ge=1, description="Rank of an abelian or free factor")
    order: Optional[int] = Field(None, ge=2, description="Order of a cyclic finite factor")
    table: Optional[List[List[int]]] = Field(None, description="Multiplication table of a finite factor")

    @model_validator(mode="after")
    def check_kind(self) -> "FactorSpec":
        if self.kind not in FACTOR_KINDS:
            raise ValueError(f"unknown factor kind {self.kind!r}")
        if self.kind == FACTOR_FINITE and (self.order is None) == (self.table is None):
            raise ValueError("a finite factor needs exactly one of 'order' or 'table'")
        if self.kind in (FACTOR_ABELIAN, FACTOR_FREE) and self.rank is None:
            raise ValueError(f"a {self.kind} factor needs 'rank'")
        return self

    def build(self) -> FactorGroup:
        name = self.name or f"g{self.id}"
        if self.kind == FACTOR_FINITE:
            if self.order is not None:
                return FiniteFactor.cyclic_group(self.id, name, self.order)
            return FiniteFactor(self.id, name, self.table)
        if self.kind == FACTOR_ABELIAN:
            return AbelianFactor(self.id, name, self.rank)
        return FreeFactor(self.id, name, self.rank)


class SyllableSpec(BaseModel):
    factor: int = Field(..., ge=0)
    element: Union[int, List[int]]


class RelatorSpec(BaseModel):
    syllables: List[SyllableSpec] = Field(..., min_length=1)
    base: Optional[List[SyllableSpec]] = None
    exponent: int = Field(1, ge=1)


class PresentationSpec(BaseModel):
    name: str = ""
    factors: List[FactorSpec] = Field(..., min_length=1)
    relators: List[RelatorSpec] = Field(..., min_length=1)

    @model_validator(mode="after")
    def check_ids(self) -> "PresentationSpec":
        ids = [f.id for f in self.factors]
        if len(set(ids)) != len(ids):
            raise ValueError("factor ids must be unique")
        return self

    def to_presentation(self) -> Presentation:
        """
        Build the presentation, verifying normal forms and any declared root.

        Raises:
            InputError: On unknown factors, bad elements or an inconsistent base/exponent
            NonNormalFormError: If a relator is not in normal form
        """
        factors = [f.build() for f in self.factors]
        fp = FreeProduct(factors)

        def word(syllables: List[SyllableSpec], label: str):
            raw = tuple(fp.syllable(s.factor, s.element) for s in syllables)
            return fp.require_normal_form(raw, label)

        relators = []
        for index, spec in enumerate(self.relators):
            full = word(spec.syllables, f"relator {index}")
            if spec.base is None:
                if spec.exponent != 1:
                    raise InputError("An exponent needs its base", {"relator": index})
                presentation = Presentation.from_words(factors, [full])
                relators.append(presentation.relators[0])
                continue
            base = word(spec.base, f"base of relator {index}")
            if base * spec.exponent != full or is_proper_power(base):
                raise InputError(
                    "Declared base and exponent do not match the relator",
                    {"relator": index, "exponent": spec.exponent},
                )
            relators.append(Relator(full, base, spec.exponent))
        return Presentation(factors, relators, self.name)


def builtin_presentation(name: str) -> Presentation:
    """
    Resolve a built-in presentation name: surface-<g>, dihedral-<2n>, fuchsian-<g>-<m1>-..., z3-z3-ab7, grid-z2.
    """
    parts = name.split("-")
    try:
        if parts[0] == "surface" and len(parts) == 2:
            return catalog.surface_presentation(int(parts[1]))
        if parts[0] == "dihedral" and len(parts) == 2 and int(parts[1]) % 2 == 0:
            return catalog.dihedral_presentation(int(parts[1]) // 2)
        if parts[0] == "fuchsian" and len(parts) >= 2:
            return catalog.fuchsian_presentation(int(parts[1]), [int(m) for m in parts[2:]])
    except ValueError:
        pass
    if name == "z3-z3-ab7":
        return catalog.finite_factor_presentation()
    if name == "grid-z2":
        return catalog.grid_factor_presentation()
    raise InputError(f"Unknown built-in presentation {name!r}", {"name": name})


def parse_presentation(payload: Any) -> Presentation:
    try:
        spec = PresentationSpec.model_validate(payload)
    except ValidationError as e:
        raise InputError("Presentation file does not match the schema",
                         {"errors": [err["msg"] for err in e.errors()]}) from None
    return spec.to_presentation()


def load_presentation(source: str) -> Presentation:
    """
    Load a presentation from a JSON file path or a "builtin:<name>" reference.

    Raises:
        InputError: If the file is missing, not JSON, or fails the schema
    """
    if source.startswith(BUILTIN_PREFIX):
        return builtin_presentation(source[len(BUILTIN_PREFIX):])
    path = Path(source)
    if not path.is_file():
        raise InputError(f"Presentation file not found: {source}", {"path": source})
    try:
        payload = orjson.loads(path.read_bytes())
    except orjson.JSONDecodeError as e:
        raise InputError(f"Presentation file is not valid JSON: {e}", {"path": source}) from None
    return parse_presentation(payload)
