"""
Service factory for shared calculator instances.
"""
import logging
from typing import Dict

from src.config import COSET_MAX_STATES, DEFAULT_MAX_AREA
from src.domain.freeprod import Presentation
from src.domain.groupcalc import GroupCalculator

logger = logging.getLogger(__name__)


class ServiceFactory:
    """
    Factory caching one GroupCalculator per (presentation fingerprint, bounds).
    """

    _calculators: Dict[tuple, GroupCalculator] = {}

    @classmethod
    def get_calculator(cls, presentation: Presentation, max_area: int = DEFAULT_MAX_AREA,
                       max_states: int = COSET_MAX_STATES) -> GroupCalculator:
        """
        Get the calculator for a presentation, building it on first use.

        Raises:
            NotSmallCancellationError: If the presentation fails C'(1/6)
        """
        key = (presentation.fingerprint, max_area, max_states)
        if key not in cls._calculators:
            cls._calculators[key] = GroupCalculator(presentation, max_area=max_area, max_states=max_states)
            logger.info(f"Group calculator initialized for {presentation.name or presentation.fingerprint}")
        return cls._calculators[key]

    @classmethod
    def reset_services(cls):
        """
        Reset all service instances (useful for testing).
        """
        cls._calculators = {}
        logger.info("Service instances reset")
