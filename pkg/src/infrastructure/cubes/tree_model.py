from typing import List

from src.infrastructure.cubes.cube_interface import CubeModel
from src.utils.constants import GEOMETRY_TREE


class TreeModel(CubeModel):
    """Cayley tree of a free factor: the 2d-regular tree, a one-dimensional cube complex."""

    geometry = GEOMETRY_TREE

    def directions(self) -> List[tuple]:
        return [(letter,) for letter in self.factor.generators()]

    def cubes_at(self, v, dim: int):
        return []
