import logging
from fractions import Fraction

from src.domain.freeprod import check_small_cancellation
from src.domain.models.presentation_models import load_presentation
from src.domain.models.run_models import CheckReport
from src.utils.constants import DEFAULT_LAMBDA
from src.utils.helpers import format_fraction

logger = logging.getLogger(__name__)


def run_check(source: str, lam: Fraction = DEFAULT_LAMBDA) -> CheckReport:
    """
    Decide the C'(lam) condition for a presentation.

    Args:
        source: Presentation file path or builtin:<name>
        lam: Small cancellation threshold

    Returns:
        CheckReport; `passed` is False when some piece is too long
    """
    p = load_presentation(source)
    verdict = check_small_cancellation(p, lam)
    violation = None
    if verdict.violation is not None:
        fp = p.free_product
        piece = verdict.violation
        violation = (f"piece {fp.format_word(piece.word)} shared by "
                     f"{fp.format_word(piece.left)} and {fp.format_word(piece.right)}")
    logger.info(f"Presentation {p.name or p.fingerprint[:12]}: C'({format_fraction(lam)}) "
                f"{'holds' if verdict.passed else 'fails'}")
    return CheckReport(
        name=p.name,
        fingerprint=p.fingerprint,
        passed=verdict.passed,
        lam=format_fraction(verdict.lam),
        max_piece_length=verdict.report.max_length,
        max_ratio=format_fraction(verdict.report.max_ratio),
        piece_count=len(verdict.report.pieces),
        violation=violation,
    )
