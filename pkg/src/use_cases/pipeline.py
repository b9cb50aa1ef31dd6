"""
Shared construction pipeline: presentation -> X ball -> blow-up -> balanced ball -> walls -> dual.

Each stage is computed on first access so commands only pay for what they use.
"""
import itertools
import logging
from dataclasses import dataclass
from functools import cached_property
from typing import Any, Dict, List, Set

from src.domain.blowup import BlowupBall, balance, build_eg_ball
from src.domain.devball import ComplexBall, build_x_ball
from src.domain.dualcc import DualCubeComplex, FiniteWallspace, dual, restrict_ball
from src.domain.freeprod import Presentation, Word
from src.domain.groupcalc import GroupCalculator
from src.domain.models.presentation_models import load_presentation
from src.domain.models.run_models import RunConfig
from src.domain.walls import Wall, core_nodes, eg_walls
from src.infrastructure.cubes.cube_interface import CubeModel
from src.infrastructure.cubes.cube_list import build_models
from src.infrastructure.exporters.json_exporter import eg_node_label
from src.infrastructure.services.service_factory import ServiceFactory

logger = logging.getLogger(__name__)


@dataclass
class PipelineContext:
    config: RunConfig
    presentation: Presentation

    @classmethod
    def from_config(cls, config: RunConfig) -> "PipelineContext":
        return cls(config, load_presentation(config.presentation))

    @cached_property
    def calc(self) -> GroupCalculator:
        return ServiceFactory.get_calculator(self.presentation, self.config.max_area)

    @cached_property
    def x_ball(self) -> ComplexBall:
        return build_x_ball(self.presentation, self.config.radius, self.calc, self.config.factor_window)

    @cached_property
    def models(self) -> Dict[int, CubeModel]:
        return build_models(self.presentation)

    @cached_property
    def eg_ball(self) -> BlowupBall:
        return build_eg_ball(self.presentation, self.models, self.config.radius, self.config.fibre_radius,
                             base=self.x_ball)

    @cached_property
    def balanced(self) -> BlowupBall:
        _, ball = balance(self.eg_ball, self.config.max_k)
        return ball

    @cached_property
    def balanced_view(self) -> ComplexBall:
        return self.balanced.x_view()

    def core(self, core_radius: int = None) -> Set:
        radius = self.config.core_radius if core_radius is None else core_radius
        return core_nodes(self.balanced, radius)

    @cached_property
    def walls(self) -> List[Wall]:
        return eg_walls(self.balanced, self.core())

    def wallspace_at(self, core_radius: int) -> FiniteWallspace:
        if core_radius == self.config.core_radius:
            walls = self.walls
        else:
            walls = eg_walls(self.balanced, self.core(core_radius))
        return restrict_ball(self.balanced, walls, core_radius)

    @cached_property
    def wallspace(self) -> FiniteWallspace:
        return self.wallspace_at(self.config.core_radius)

    @cached_property
    def dual_complex(self) -> DualCubeComplex:
        return dual(self.wallspace)

    @property
    def basepoint(self) -> Any:
        bal = self.balanced
        base = bal.base.base
        return ("f", base, bal.model(base).basepoint)

    def label(self, node) -> str:
        return eg_node_label(self.balanced, node)

    def profile_elements(self) -> List[Word]:
        """Identity, fibre powers up to the fibre radius, and short words of unit-norm syllables."""
        fp = self.presentation.free_product
        elements: List[Word] = [()]
        for factor in self.presentation.factors:
            unit = [h for h in factor.elements_within(1) if not factor.is_identity(h)]
            if unit:
                for n in range(1, self.config.fibre_radius + 1):
                    elements.append(fp.power(((factor.factor_id, unit[-1]),), n))
        syllables = [(f.factor_id, h) for f in self.presentation.factors
                     for h in f.elements_within(1) if not f.is_identity(h)]
        for length in range(1, self.config.core_radius + 2):
            for combo in itertools.product(syllables, repeat=length):
                if all(a[0] != c[0] for a, c in zip(combo, combo[1:])):
                    elements.append(tuple(combo))
        unique = list(dict.fromkeys(elements))
        return sorted(unique, key=fp.word_key)
