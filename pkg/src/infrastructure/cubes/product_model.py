import itertools
from typing import List, Tuple

from src.infrastructure.cubes.cube_interface import CubeModel
from src.utils.constants import GEOMETRY_GRID, GEOMETRY_LINE


class ProductOfLinesModel(CubeModel):
    """
    Standard cubulation of R^d for the free abelian factor Z^d.
    Directions are axis-major with the positive step before the negative one.
    """

    def __init__(self, factor):
        super().__init__(factor)
        self.rank = factor.rank
        self.geometry = GEOMETRY_LINE if self.rank == 1 else GEOMETRY_GRID

    def unit(self, axis: int, sign: int = 1) -> Tuple[int, ...]:
        return tuple(sign if i == axis else 0 for i in range(self.rank))

    def directions(self) -> List[Tuple[int, ...]]:
        return [self.unit(axis, sign) for axis in range(self.rank) for sign in (1, -1)]

    def cubes_at(self, v, dim: int):
        cubes = []
        for axes in itertools.combinations(range(self.rank), dim):
            corners = []
            for bits in itertools.product((0, 1), repeat=dim):
                corner = list(v)
                for axis, bit in zip(axes, bits):
                    corner[axis] += bit
                corners.append(tuple(corner))
            cubes.append(tuple(corners))
        return cubes

    @property
    def max_dimension(self) -> int:
        return self.rank
