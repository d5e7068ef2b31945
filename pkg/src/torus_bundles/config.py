from pathlib import Path

ROOT = Path(__file__).resolve().parent.parent.parent
DATA_DIR = ROOT / "data"
JOBS_DIR = DATA_DIR / "jobs"

# Huebschmann identity verification defaults
DEFAULT_SEED = 20240611
DEFAULT_BOUND = 5
DEFAULT_SAMPLES = 200

# Randomized selftest sample counts
HEISENBERG_ORACLE_SAMPLES = 10_000
AUTOMORPHISM_SAMPLES = 1_000
SNF_SAMPLES = 1_000
COHERENCE_SAMPLES = 500
COBOUNDARY_SAMPLES = 100
QUICK_DIVISOR = 10

# Entry window for random integer matrices
RANDOM_ENTRY_BOUND = 20

# LaTeX fragments written by run_print_mn_family_table.py
TABLES_DIR = DATA_DIR / "tables"
