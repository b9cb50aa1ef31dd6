from typing import Dict, Optional

from src.domain.freeprod import FactorGroup, Presentation
from src.infrastructure.cubes.cube_interface import CubeModel
from src.infrastructure.cubes.point_model import PointModel
from src.infrastructure.cubes.product_model import ProductOfLinesModel
from src.infrastructure.cubes.tree_model import TreeModel
from src.utils.constants import (
    FACTOR_ABELIAN,
    FACTOR_FINITE,
    FACTOR_FREE,
    GEOMETRY_GRID,
    GEOMETRY_LINE,
    GEOMETRY_POINT,
    GEOMETRY_TREE,
)
from src.utils.exceptions import InputError

# The model registry maps each factor kind to the cube complex it acts on.
# New geometries can be added here behind the CubeModel interface.
CUBE_MODEL_REGISTRY = {
    FACTOR_FINITE: PointModel,
    FACTOR_ABELIAN: ProductOfLinesModel,
    FACTOR_FREE: TreeModel,
}

MODEL_DESCRIPTIONS = {
    GEOMETRY_POINT: "Single vertex; finite factors act trivially, fibres collapse to points.",
    GEOMETRY_LINE: "Subdivided real line for Z; hyperplanes are edge midpoints.",
    GEOMETRY_GRID: "Standard cubulation of R^d for Z^d; hyperplanes are coordinate slabs.",
    GEOMETRY_TREE: "Cayley tree of a free group; every edge is its own hyperplane.",
}


def model_for_factor(factor: FactorGroup) -> CubeModel:
    try:
        model_class = CUBE_MODEL_REGISTRY[factor.kind]
    except KeyError:
        raise InputError(f"No cube model registered for factor kind {factor.kind!r}",
                         {"factor": factor.factor_id}) from None
    return model_class(factor)


def build_models(presentation: Presentation,
                 overrides: Optional[Dict[int, CubeModel]] = None) -> Dict[int, CubeModel]:
    """
    Choose a cube model for every factor of a presentation.

    Args:
        presentation: The presentation whose factors need models
        overrides: Optional user-supplied models keyed by factor id

    Returns:
        Mapping factor id -> CubeModel
    """
    models = {f.factor_id: model_for_factor(f) for f in presentation.factors}
    for factor_id, model in (overrides or {}).items():
        if factor_id not in models:
            raise InputError(f"Model override for unknown factor {factor_id}", {"factor": factor_id})
        models[factor_id] = model
    return models
