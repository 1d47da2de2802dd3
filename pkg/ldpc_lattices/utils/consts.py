"""Names, numeric constants, setting defaults and design presets."""
LOGGER_NAME = "ldpc-lattice"
PACKAGE_NAME = "ldpc_lattices"
VERSION = "0.3.0"

DEBUG_ENV = "LDPC_LATTICE_DEBUG"
LOG_DIR_ENV = "LDPC_LATTICE_LOG_DIR"

TIME_FORMAT_WITH_DATE = "%Y-%m-%d %H:%M:%S"
TIME_FORMAT_WITHOUT_DATE = "%H:%M:%S.%f"

# belief propagation
LLR_MAX = 64.0
BP_MAX_ITER = 50

# construction
RANK_RETRIES = 32
MAX_CODEBOOK_BITS = 24

# simulation stop rule
MIN_WORD_ERRORS = 100
MIN_WORD_ERRORS_DEEP = 50
DEEP_WER = 1e-6
MAX_TRIALS = 1_000_000
LONG_RUN_MAX_TRIALS = 10_000_000_000
BATCH_SIZE = 64

BUNDLE_MANIFEST = "bundle.conf"
RUN_MANIFEST = "run.manifest"
DESIGN_REPORT = "design.jsonl"

# Built-in defaults, the lowest settings layer.
DEFAULTS = {
    "levels": "2",
    "dv": "3",
    "seed": "1",
    "design.method": "peg",
    "design.retries": str(RANK_RETRIES),
    "sim.unit": "vnr_db",
    "sim.max_trials": str(MAX_TRIALS),
    "sim.min_errors": str(MIN_WORD_ERRORS),
    "sim.min_errors_deep": str(MIN_WORD_ERRORS_DEEP),
    "sim.batch_size": str(BATCH_SIZE),
    "sim.mode": "full",
    "sim.uncoded": "analytic",
    "sim.decoder": "coset",
    "bp.max_iter": str(BP_MAX_ITER),
    "bp.llr_max": str(LLR_MAX),
    "rates.rule": "optimized",
    "rates.grid": "5",
    "rates.r0_range": "0.3,0.7",
    "rates.r1_range": "0.9,0.99",
    "rates.trials": "2000",
    "rates.min_errors": "50",
    "encoder": "alt",
}

# Named design points: (n, m_0..m_{L-1}, dv, gap).
PRESETS = {
    "n1024": {"n": "1024", "levels": "2", "m": "788,103", "dv": "3", "gap": "22"},
    "n1000": {"n": "1000", "levels": "2", "m": "500,22", "dv": "3", "gap": "22"},
    "n10000": {"n": "10000", "levels": "2", "m": "5906,270", "dv": "3", "gap": "22"},
}
