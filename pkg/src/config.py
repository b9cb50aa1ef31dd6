import os
from dotenv import load_dotenv

# Load environment variables from .env file
load_dotenv()

# --- Construction radii ---
DEFAULT_RADIUS = int(os.getenv("TOOLKIT_RADIUS", "2"))
DEFAULT_FIBRE_RADIUS = int(os.getenv("TOOLKIT_FIBRE_RADIUS", "3"))
DEFAULT_CORE_RADIUS = int(os.getenv("TOOLKIT_CORE_RADIUS", "1"))
DEFAULT_FACTOR_WINDOW = int(os.getenv("TOOLKIT_FACTOR_WINDOW", "1"))

# --- Search bounds ---
DEFAULT_MAX_AREA = int(os.getenv("TOOLKIT_MAX_AREA", "8"))
COSET_ELEMENT_RADIUS = int(os.getenv("TOOLKIT_COSET_ELEMENT_RADIUS", "1"))
COSET_MAX_STATES = int(os.getenv("TOOLKIT_COSET_MAX_STATES", "256"))
DEFAULT_MAX_K = int(os.getenv("TOOLKIT_MAX_K", "20"))
DEFAULT_MAX_CLIQUE = int(os.getenv("TOOLKIT_MAX_CLIQUE", "12"))
MAX_BALL_CELLS = int(os.getenv("TOOLKIT_MAX_BALL_CELLS", "200000"))
MAX_DUAL_VERTICES = int(os.getenv("TOOLKIT_MAX_DUAL_VERTICES", "20000"))
DIAGRAM_MAX_STATES = int(os.getenv("TOOLKIT_DIAGRAM_MAX_STATES", "20000"))

# --- Reproducibility and logging ---
DEFAULT_SEED = int(os.getenv("TOOLKIT_SEED", "20240101"))
LOG_LEVEL = os.getenv("TOOLKIT_LOG_LEVEL", "INFO").upper()

# --- Validation ---
for _name, _value in (
    ("TOOLKIT_MAX_AREA", DEFAULT_MAX_AREA),
    ("TOOLKIT_COSET_MAX_STATES", COSET_MAX_STATES),
    ("TOOLKIT_MAX_K", DEFAULT_MAX_K),
    ("TOOLKIT_MAX_CLIQUE", DEFAULT_MAX_CLIQUE),
    ("TOOLKIT_MAX_BALL_CELLS", MAX_BALL_CELLS),
    ("TOOLKIT_MAX_DUAL_VERTICES", MAX_DUAL_VERTICES),
    ("TOOLKIT_DIAGRAM_MAX_STATES", DIAGRAM_MAX_STATES),
):
    if _value <= 0:
        raise ValueError(f"{_name} must be positive.")
if min(DEFAULT_RADIUS, DEFAULT_FIBRE_RADIUS, DEFAULT_CORE_RADIUS, DEFAULT_FACTOR_WINDOW, COSET_ELEMENT_RADIUS) < 0:
    raise ValueError("Radii and windows must be non-negative.")
if DEFAULT_CORE_RADIUS > DEFAULT_RADIUS:
    raise ValueError("TOOLKIT_CORE_RADIUS cannot exceed TOOLKIT_RADIUS.")
if DEFAULT_MAX_K % 2:
    raise ValueError("TOOLKIT_MAX_K must be even.")
