"""
Application constants.
"""
from fractions import Fraction

# Small cancellation
DEFAULT_LAMBDA = Fraction(1, 6)
FAR_APART_MIN_PIECES = 4

# Exit codes
EXIT_OK = 0
EXIT_VERIFICATION_FAILED = 1
EXIT_RESOURCE_BOUND = 2
EXIT_INPUT_ERROR = 3

# Factor kinds accepted in presentation files
FACTOR_FINITE = "finite"
FACTOR_ABELIAN = "abelian"
FACTOR_FREE = "free"
FACTOR_KINDS = (FACTOR_FINITE, FACTOR_ABELIAN, FACTOR_FREE)

# Cube model geometries
GEOMETRY_POINT = "point"
GEOMETRY_LINE = "line"
GEOMETRY_GRID = "grid"
GEOMETRY_TREE = "tree"

# Wall variants
WALL_LIFTED_X = "lifted_x"
WALL_FIRST_TYPE = "fibre_first_type"
WALL_SECOND_TYPE = "combined_second_type"

# Edge kinds in the blow-up
EDGE_HORIZONTAL = "horizontal"
EDGE_VERTICAL = "vertical"

# Diagram classification branches
BRANCH_SINGLE_CELL = "single_cell"
BRANCH_LADDER = "ladder"
BRANCH_SHELLS_OR_SPURS = "shells_or_spurs"

# Properness profile row status
PROFILE_IN_CORE = "in_core"
PROFILE_OUTSIDE = "outside"
PROFILE_UNDECIDED = "undecided"

# Export formats
EXPORT_FORMATS = ("json", "dot", "svg", "csv")

# Error Messages
ERROR_MESSAGES = {
    "INPUT_ERROR": "Invalid input",
    "NON_NORMAL_FORM": "Word is not in free product normal form",
    "NOT_WEAKLY_CYCLICALLY_REDUCED": "Relator is not weakly cyclically reduced",
    "NOT_SMALL_CANCELLATION": "Presentation has not passed the C'(1/6) check",
    "UNDECIDED": "Bounded search could not decide the query",
    "INCOMPLETE": "Query depends on cells outside the ball",
    "RESOURCE_BOUND": "Configured resource bound exceeded",
    "FIBRE_TRUNCATION": "Attaching path leaves the fibre ball",
    "VERIFICATION_FAILED": "Invariant verification failed",
    "CLASSIFICATION_FAILED": "Diagram matches no classification branch",
}
