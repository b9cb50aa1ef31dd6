from abc import ABC, abstractmethod
from typing import Any, List, Tuple

from src.domain.freeprod import FactorGroup


class CubeModel(ABC):
    """
    Abstract Base Class for the CAT(0) cube complexes on which a factor group acts.
    Vertices are factor elements, the factor acts by left multiplication and
    edges join v to v*s for s in `directions()`.
    """

    geometry: str = ""

    def __init__(self, factor: FactorGroup):
        self.factor = factor

    @property
    def factor_id(self) -> int:
        return self.factor.factor_id

    @property
    def basepoint(self) -> Any:
        return self.factor.identity

    @abstractmethod
    def directions(self) -> List[Any]:
        """
        Edge directions at every vertex, in the fixed order used for tie-breaking.

        Returns:
            Factor elements s such that v -- v*s is an edge for every vertex v.
        """
        pass

    @abstractmethod
    def cubes_at(self, v: Any, dim: int) -> List[Tuple[Any, ...]]:
        """
        Cubes of dimension `dim` >= 2 whose minimal corner is v.

        Returns:
            Vertex tuples listed in binary order of the spanning directions.
        """
        pass

    def act(self, g: Any, v: Any) -> Any:
        return self.factor.multiply(g, v)

    def neighbours(self, v: Any) -> List[Any]:
        return [self.factor.multiply(v, s) for s in self.directions()]

    def distance(self, u: Any, v: Any) -> int:
        return self.factor.norm(self.factor.multiply(self.factor.inverse(u), v))

    @property
    def max_dimension(self) -> int:
        return 1 if self.directions() else 0
