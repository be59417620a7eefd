from pathlib import Path

import yaml
from pydantic import BaseModel, validator

from sqfree_bn.settings.const import (
    DEFAULT_CLIFFORD_CYCLE_LENGTH_SLACK,
    DEFAULT_CLIFFORD_MAX_TRIPLES,
    DEFAULT_COEFFICIENT_SCALE,
    DEFAULT_CYCLE_CAP,
    DEFAULT_FIELD,
    DEFAULT_GENERAL_SECTION_DRAWS,
    DEFAULT_GONALITY_DELETION_DEPTH,
    DEFAULT_INDECOMPOSABLE_SAMPLES,
    DEFAULT_ISOMORPHISM_SAMPLES,
    DEFAULT_ISOMORPHISM_SYMBOLIC_MAX_DIM,
    DEFAULT_SEED,
    DEFAULT_SPECIAL_SAMPLES,
    FilePaths,
)


class Config(BaseModel):
    debug: bool = False
    default_field: str = DEFAULT_FIELD
    default_seed: int = DEFAULT_SEED
    cycle_cap: int = DEFAULT_CYCLE_CAP
    indecomposable_samples: int = DEFAULT_INDECOMPOSABLE_SAMPLES
    isomorphism_samples: int = DEFAULT_ISOMORPHISM_SAMPLES
    isomorphism_symbolic_max_dim: int = DEFAULT_ISOMORPHISM_SYMBOLIC_MAX_DIM
    special_samples: int = DEFAULT_SPECIAL_SAMPLES
    general_section_draws: int = DEFAULT_GENERAL_SECTION_DRAWS
    coefficient_scale: int = DEFAULT_COEFFICIENT_SCALE
    clifford_max_triples: int = DEFAULT_CLIFFORD_MAX_TRIPLES
    clifford_cycle_length_slack: int = DEFAULT_CLIFFORD_CYCLE_LENGTH_SLACK
    gonality_deletion_depth: int = DEFAULT_GONALITY_DELETION_DEPTH
    log_file: Path = FilePaths.LOG_FILE
    log_max_bytes: int = 10 * 1024 * 1024
    log_backup_count: int = 5

    @validator(
        "cycle_cap",
        "indecomposable_samples",
        "isomorphism_samples",
        "special_samples",
        "general_section_draws",
        "coefficient_scale",
    )
    def positive(cls, value):
        if value < 1:
            raise ValueError("must be a positive integer")
        return value

    @validator("default_seed")
    def unsigned_seed(cls, value):
        if not 0 <= value < 2**64:
            raise ValueError("seed must fit in an unsigned 64-bit integer")
        return value


def get_config(path: str | Path | None = None) -> Config:
    config_file = Path(path) if path else FilePaths.CONFIG_FILE
    if not config_file.exists():
        if path:
            raise FileNotFoundError(f"Config file not found: {config_file}")
        return Config()
    with open(config_file, "r") as f:
        config = yaml.safe_load(f) or {}
    return Config(**config)
