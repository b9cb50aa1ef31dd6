from typing import Any, List, Tuple

from src.infrastructure.cubes.cube_interface import CubeModel
from src.utils.constants import GEOMETRY_POINT


class PointModel(CubeModel):
    """A single vertex; finite factors act trivially on it."""

    geometry = GEOMETRY_POINT

    def directions(self) -> List[Any]:
        return []

    def cubes_at(self, v: Any, dim: int) -> List[Tuple[Any, ...]]:
        return []

    def act(self, g: Any, v: Any) -> Any:
        return self.basepoint

    def distance(self, u: Any, v: Any) -> int:
        return 0
