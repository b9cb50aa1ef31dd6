"""
Full invariant matrix over one configured run.

Each check returns True/False (optionally with a detail string). Bound and
truncation errors record the check as skipped; verification errors as failed.
"""
import logging
import random
from typing import Callable, List, Optional, Tuple, Union

from tqdm import tqdm

from src.domain import cubefiber
from src.domain.blowup import balance, balanced_at, check_no_turns, check_projection
from src.domain.catalog import random_presentation
from src.domain.devball import check_convex, check_embedded, check_rebuild_isomorphic, check_small_cancellation_x
from src.domain.discdiag import (
    appendix_angles,
    check_gauss_bonnet,
    classify,
    sample_polygon_diagrams,
    verify_reduced,
)
from src.domain.dualcc import (
    check_distances,
    check_flag_links,
    check_median,
    configuration_types,
    crossing_configurations,
    dimension,
    dual,
    fibre_edges,
    fibre_embedding_check,
    max_crossing_family,
    properness_profile,
    stabilization,
)
from src.domain.freeprod import Presentation, check_small_cancellation, pieces, pieces_bruteforce
from src.domain.models.run_models import RunConfig, VerifyReport
from src.domain.walls import (
    canonical_decomposition,
    check_gallery,
    door_tree,
    hypercarrier,
    two_piece_audit,
    XEdgeClass,
    x_classes,
)
from src.use_cases.pipeline import PipelineContext
from src.utils.exceptions import (
    FibreTruncationError,
    IncompleteError,
    ResourceBoundError,
    UndecidedError,
    VerificationError,
)

logger = logging.getLogger(__name__)

CheckOutcome = Union[bool, Tuple[bool, str]]
RANDOM_ORACLE_TRIALS = 100
GAUSS_BONNET_DIAGRAMS = 200


def _pieces_agree(p: Presentation) -> bool:
    found = {(pc.left, pc.right): pc.length for pc in pieces(p).pieces}
    return found == pieces_bruteforce(p)


class InvariantMatrix:
    """Ordered named checks over a pipeline context."""

    def __init__(self, ctx: PipelineContext):
        self.ctx = ctx
        self._classes: Optional[List[XEdgeClass]] = None
        self.checks: List[Tuple[str, Callable[[], CheckOutcome]]] = [
            ("small_cancellation", self.small_cancellation),
            ("pieces_oracle", lambda: _pieces_agree(self.ctx.presentation)),
            ("pieces_random_oracle", self.random_oracle),
            ("relators_trivial", self.relators_trivial),
            ("x_small_cancellation", self.x_small_cancellation),
            ("x_polygons_embedded", lambda: check_embedded(self.ctx.x_ball)),
            ("x_polygons_convex", self.x_convex),
            ("x_cosets_confirmed", lambda: not self.ctx.x_ball.unconfirmed),
            ("x_rebuild_isomorphic", self.rebuild_isomorphic),
            ("gauss_bonnet", self.gauss_bonnet),
            ("fibre_flag_links", self.fibre_flag_links),
            ("attaching_paths_no_turns", lambda: check_no_turns(self.ctx.balanced)),
            ("projection", lambda: check_projection(self.ctx.balanced)),
            ("balanced", self.balanced),
            ("x_galleries", self.x_galleries),
            ("x_hypercarriers", self.x_hypercarriers),
            ("door_trees", self.door_trees),
            ("two_piece_intersections", self.two_piece),
            ("eg_walls_separate", self.walls_separate),
            ("dual_distances", lambda: check_distances(self.ctx.dual_complex)),
            ("dual_median", lambda: check_median(self.ctx.dual_complex)),
            ("dual_flag_links", lambda: check_flag_links(self.ctx.dual_complex)),
            ("dual_dimension", self.dual_dimension),
            ("fibre_embedding", self.fibre_embedding),
            ("properness_monotone", self.properness),
            ("crossing_certificates", self.crossing_certificates),
            ("configuration_stabilization", self.stabilization),
        ]

    # --- free product level ---

    def small_cancellation(self) -> CheckOutcome:
        verdict = check_small_cancellation(self.ctx.presentation)
        return verdict.passed, f"max ratio {verdict.report.max_ratio}"

    def random_oracle(self) -> CheckOutcome:
        rng = random.Random(self.ctx.config.seed)
        for trial in range(RANDOM_ORACLE_TRIALS):
            p = random_presentation(rng, relator_count=rng.randint(1, 3), max_length=10)
            if not _pieces_agree(p):
                return False, f"trial {trial}"
        return True, f"{RANDOM_ORACLE_TRIALS} presentations"

    def relators_trivial(self) -> CheckOutcome:
        calc = self.ctx.calc
        for relator in self.ctx.presentation.symmetrized:
            if not calc.is_trivial(relator):
                return False, calc.fp.format_word(relator)
        return True

    # --- X ball ---

    def _closed(self) -> List[int]:
        b = self.ctx.x_ball
        return [p.id for p in b.polygons if b.is_closed(p)]

    def x_small_cancellation(self) -> CheckOutcome:
        report = check_small_cancellation_x(self.ctx.x_ball)
        return report.passed, f"{report.checked_polygons} closed polygons, max ratio {report.max_ratio}"

    def x_convex(self) -> CheckOutcome:
        closed = self._closed()
        return check_convex(self.ctx.x_ball, closed), f"{len(closed)} closed polygons"

    def rebuild_isomorphic(self) -> Optional[CheckOutcome]:
        b = self.ctx.x_ball
        if not all(f.is_finite for f in self.ctx.presentation.factors):
            return None
        others = [key for key in b.vertices if b.vertices[key].id != 0]
        if not others:
            return None
        return check_rebuild_isomorphic(b, others[0])

    def gauss_bonnet(self) -> CheckOutcome:
        rng = random.Random(self.ctx.config.seed)
        diagrams, skipped = sample_polygon_diagrams(self.ctx.x_ball, GAUSS_BONNET_DIAGRAMS, rng, self._closed())
        for d in diagrams:
            if not verify_reduced(d):
                return False, f"diagram over polygons {d.face_polygons} is not reduced"
            check_gauss_bonnet(d, appendix_angles(d))
            classify(d)
        return True, f"{len(diagrams)} diagrams checked, {skipped} groups skipped as not discs"

    # --- blow-up ---

    def fibre_flag_links(self) -> CheckOutcome:
        for factor_id, cb in sorted(self.ctx.balanced.fibre_balls.items()):
            if not cubefiber.check_flag_links(cb):
                return False, f"factor {factor_id}"
        return True

    def balanced(self) -> CheckOutcome:
        bal = self.ctx.balanced
        closed = [bal.base.polygons[pid] for pid in self._closed()]
        again, _ = balance(bal, self.ctx.config.max_k)
        return balanced_at(bal, closed) and again == 0, f"k={bal.k}"

    # --- walls ---

    def _x_classes(self) -> List[XEdgeClass]:
        if self._classes is None:
            self._classes = x_classes(self.ctx.balanced_view)
        return self._classes

    def x_galleries(self) -> CheckOutcome:
        b = self.ctx.balanced_view
        for cls in self._x_classes():
            verdict = check_gallery(b, cls.gallery)
            if not verdict.passed:
                return False, f"{verdict.violation} {verdict.witnesses}"
        return True, f"{len(self._x_classes())} classes"

    def x_hypercarriers(self) -> CheckOutcome:
        b = self.ctx.balanced_view
        convex = 0
        for cls in self._x_classes():
            carrier = hypercarrier(b, cls.gallery)
            if carrier.convex is False:
                return False, f"hypercarrier of polygons {list(carrier.polygons)} is not convex"
            convex += carrier.convex is True
        return True, f"{convex} complete hypercarriers convex"

    def door_trees(self) -> CheckOutcome:
        b = self.ctx.balanced_view
        for cls in self._x_classes():
            for pwd in cls.gallery.polygons:
                polygon = b.polygon(pwd.polygon)
                if not b.is_closed(polygon):
                    continue
                canonical_decomposition(b, pwd)
            for door in sorted(cls.gallery.doors, key=repr):
                if not door_tree(b, cls.gallery, door).is_tree:
                    return False, f"door {door!r}"
        return True

    def two_piece(self) -> CheckOutcome:
        b = self.ctx.balanced_view
        checked = 0
        for cls in self._x_classes():
            audit = two_piece_audit(b, cls.gallery)
            checked += audit.checked
            if not audit.passed:
                v = audit.violations[0]
                return False, f"polygon {v.polygon} meets a hypercarrier in {v.pieces} pieces"
        return True, f"{checked} polygons audited"

    def walls_separate(self) -> CheckOutcome:
        walls = self.ctx.walls
        failing = [w.id for w in walls if w.separates is False]
        return not failing, f"{len(walls)} walls" if not failing else f"walls {failing}"

    # --- dual ---

    def dual_dimension(self) -> CheckOutcome:
        c = self.ctx.dual_complex
        dim, family = dimension(c), max_crossing_family(c)
        return dim == family, f"dimension {dim}, largest crossing family {family}"

    def fibre_embedding(self) -> CheckOutcome:
        bal, fw = self.ctx.balanced, self.ctx.wallspace
        nodes, edges = fibre_edges(bal, fw, bal.base.base)
        return fibre_embedding_check(self.ctx.dual_complex, nodes, edges), f"{len(nodes)} fibre vertices"

    def properness(self) -> CheckOutcome:
        report = properness_profile(self.ctx.balanced, self.ctx.wallspace, self.ctx.basepoint,
                                    self.ctx.profile_elements())
        if report.undecided:
            raise UndecidedError(f"{report.undecided} of {len(report.rows)} profile rows undecided",
                                 {"undecided": report.undecided})
        return report.monotone, (f"shell minima {dict(sorted(report.shell_minima.items()))}, "
                                 f"{report.outside} rows outside the core")

    def crossing_certificates(self) -> CheckOutcome:
        found = crossing_configurations(self.ctx.dual_complex, self.ctx.balanced, self.ctx.config.max_clique)
        missing = [list(conf.walls) for conf in found if conf.certificate is None]
        if missing:
            return False, f"{len(missing)} of {len(found)} configurations uncertified, first {missing[0]}"
        return True, f"{len(found)} configurations certified"

    def stabilization(self) -> Optional[CheckOutcome]:
        r = self.ctx.config.core_radius
        if r + 1 > self.ctx.config.radius:
            return None
        c, bal = self.ctx.dual_complex, self.ctx.balanced
        types_r = configuration_types(crossing_configurations(c, bal, self.ctx.config.max_clique))
        c_next = dual(self.ctx.wallspace_at(r + 1))
        types_next = configuration_types(crossing_configurations(c_next, bal, self.ctx.config.max_clique))
        report = stabilization(r, types_r, types_next)
        return report.stable, f"{report.types_at_radius} types at {r}, {report.types_at_next} at {r + 1}"

    def run(self, report: VerifyReport, progress: bool = False) -> VerifyReport:
        for name, check in tqdm(self.checks, desc="invariants", disable=not progress):
            try:
                outcome = check()
            except (IncompleteError, ResourceBoundError, UndecidedError, FibreTruncationError) as e:
                report.record(name, None, e.message)
                continue
            except VerificationError as e:
                report.record(name, False, e.message)
                continue
            if outcome is None:
                report.record(name, None, "not applicable")
            elif isinstance(outcome, tuple):
                report.record(name, *outcome)
            else:
                report.record(name, outcome)
            logger.debug(f"{name}: {report.results[-1].status}")
        return report


def run_verify(config: RunConfig, progress: bool = False) -> VerifyReport:
    """
    Build everything for `config` and run the invariant matrix.

    Raises:
        InputError: If the presentation cannot be loaded
    """
    ctx = PipelineContext.from_config(config)
    report = VerifyReport(header=config.header(), fingerprint=ctx.presentation.fingerprint)
    InvariantMatrix(ctx).run(report, progress)
    failed = [r.name for r in report.results if r.status == "fail"]
    if failed:
        logger.warning(f"Invariants failed: {', '.join(failed)}")
    else:
        logger.info(f"All {len(report.results)} invariants passed or skipped")
    return report

