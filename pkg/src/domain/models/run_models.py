from pathlib import Path
from typing import Any, Dict, List, Optional

import orjson
from pydantic import BaseModel, Field, ValidationError, field_validator, model_validator

from src.config import (
    DEFAULT_CORE_RADIUS,
    DEFAULT_FACTOR_WINDOW,
    DEFAULT_FIBRE_RADIUS,
    DEFAULT_MAX_AREA,
    DEFAULT_MAX_CLIQUE,
    DEFAULT_MAX_K,
    DEFAULT_RADIUS,
    DEFAULT_SEED,
)
from src.utils.constants import EXPORT_FORMATS
from src.utils.exceptions import InputError


class RunConfig(BaseModel):
    presentation: str = Field(..., description="Presentation file path or builtin:<name>")
    radius: int = Field(DEFAULT_RADIUS, ge=0, description="Radius of the X ball")
    fibre_radius: int = Field(DEFAULT_FIBRE_RADIUS, ge=0, description="Radius of every fibre ball")
    core_radius: int = Field(DEFAULT_CORE_RADIUS, ge=0, description="Base radius of the verified core")
    factor_window: int = Field(DEFAULT_FACTOR_WINDOW, ge=0)
    max_area: int = Field(DEFAULT_MAX_AREA, gt=0, description="Dehn and diagram search bound")
    max_k: int = Field(DEFAULT_MAX_K, ge=0, description="Largest subdivision tried when balancing")
    max_clique: int = Field(DEFAULT_MAX_CLIQUE, gt=0)
    out_dir: str = Field("out", description="Directory receiving exported files")
    formats: List[str] = Field(default_factory=lambda: ["json"])
    seed: int = DEFAULT_SEED

    @field_validator("formats")
    @classmethod
    def check_formats(cls, value: List[str]) -> List[str]:
        unknown = [f for f in value if f not in EXPORT_FORMATS]
        if unknown:
            raise ValueError(f"unknown export formats {unknown}; choose from {list(EXPORT_FORMATS)}")
        return sorted(set(value), key=EXPORT_FORMATS.index)

    @field_validator("max_k")
    @classmethod
    def check_even(cls, value: int) -> int:
        if value % 2:
            raise ValueError("max_k must be even")
        return value

    @model_validator(mode="after")
    def check_radii(self) -> "RunConfig":
        if self.core_radius > self.radius:
            raise ValueError("core_radius cannot exceed radius")
        return self

    @classmethod
    def build(cls, config_path: Optional[str] = None, **overrides: Any) -> "RunConfig":
        """
        Merge a JSON config file with explicit overrides (None values are ignored).

        Raises:
            InputError: On an unreadable file or invalid values
        """
        values: Dict[str, Any] = {}
        if config_path:
            path = Path(config_path)
            if not path.is_file():
                raise InputError(f"Config file not found: {config_path}", {"path": config_path})
            try:
                values.update(orjson.loads(path.read_bytes()))
            except orjson.JSONDecodeError as e:
                raise InputError(f"Config file is not valid JSON: {e}", {"path": config_path}) from None
        values.update({k: v for k, v in overrides.items() if v is not None})
        try:
            return cls.model_validate(values)
        except ValidationError as e:
            raise InputError("Invalid run configuration", {"errors": [err["msg"] for err in e.errors()]}) from None

    def header(self) -> Dict[str, Any]:
        """Deterministic run header recorded in every report."""
        return self.model_dump(exclude={"out_dir", "formats"})


class InvariantResult(BaseModel):
    name: str
    status: str = Field(..., description="pass, fail or skipped")
    detail: str = ""


class VerifyReport(BaseModel):
    header: Dict[str, Any]
    fingerprint: str
    results: List[InvariantResult] = Field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(r.status != "fail" for r in self.results)

    def record(self, name: str, ok: Optional[bool], detail: str = "") -> None:
        status = "skipped" if ok is None else ("pass" if ok else "fail")
        self.results.append(InvariantResult(name=name, status=status, detail=detail))


class CheckReport(BaseModel):
    name: str
    fingerprint: str
    passed: bool
    lam: str
    max_piece_length: int
    max_ratio: str
    piece_count: int
    violation: Optional[str] = None


class BuildReport(BaseModel):
    header: Dict[str, Any]
    x_vertices: int
    x_edges: int
    x_polygons: int
    closed_polygons: int
    unconfirmed_cosets: bool
    eg_vertices: int
    eg_edges: int
    longest_attaching_path: int
    balance_k: int
    files: List[str] = Field(default_factory=list)


class WallsReport(BaseModel):
    header: Dict[str, Any]
    inventory: Dict[str, Dict[str, int]]
    core_vertices: int
    separating: int
    not_separating: int


class DualReport(BaseModel):
    header: Dict[str, Any]
    wallspace_vertices: int
    walls: int
    dual_vertices: int
    dual_edges: int
    dimension: int
    max_crossing_family: int
    median: bool
    flag_links: bool
    distances: bool
