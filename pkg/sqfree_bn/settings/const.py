from dataclasses import dataclass
from pathlib import Path

DEFAULT_FIELD = "Q"
DEFAULT_SEED = 0
DEFAULT_CYCLE_CAP = 10**6
DEFAULT_INDECOMPOSABLE_SAMPLES = 32
DEFAULT_ISOMORPHISM_SAMPLES = 32
DEFAULT_ISOMORPHISM_SYMBOLIC_MAX_DIM = 4
DEFAULT_SPECIAL_SAMPLES = 32
DEFAULT_GENERAL_SECTION_DRAWS = 64
DEFAULT_COEFFICIENT_SCALE = 10
DEFAULT_CLIFFORD_MAX_TRIPLES = 5000
DEFAULT_CLIFFORD_CYCLE_LENGTH_SLACK = 2
DEFAULT_GONALITY_DELETION_DEPTH = 3

# Random endomorphisms and homs use coefficients in [-RANDOM_COEFF_RANGE, RANDOM_COEFF_RANGE]
RANDOM_COEFF_RANGE = 50

NAMED_BUILDERS = (
    "cycle:k",
    "path:k",
    "k33",
    "petersen",
    "heawood",
    "complete:k",
    "theta:a,b,c",
    "wedge:a,b",
    "bowtie",
    "diamond",
)

TEXT_MAX_VALUE = 120


@dataclass
class ExitCodes:
    OK = 0
    DOMAIN_ERROR = 1
    USAGE_ERROR = 2
    INCONCLUSIVE = 3


@dataclass
class FilePaths:
    CONFIG_FILE = Path(__file__).parent / "config.yaml"
    LOG_FILE = Path(__file__).parent.parent / "data" / "sqfree_bn.log"
