"""Application configuration."""

from pydantic_settings import BaseSettings, SettingsConfigDict


class Settings(BaseSettings):
    """Runtime settings, overridable through ``PADIC_*`` environment variables."""

    # Worker threads for the clique search (PADIC_THREADS)
    threads: int = 1

    # Logging
    log_level: str = "WARNING"

    # Residue tuples enumerated before a search gives up
    enumeration_budget: int = 1_000_000
    # Nodes the exhaustive subset oracle may visit
    oracle_node_budget: int = 2_000_000

    # Default Hensel precision K' for lifted witnesses
    lift_precision: int = 6

    # Approximate separation mode
    approx_tolerance: str = "1e-30"
    approx_dps: int = 60

    # Orthogonality diagnostics
    quadrature_tolerance: float = 1e-12
    quadrature_max_nodes: int = 4096

    # Box radius for the p = 2 lower-bound point generator
    dyadic_radius: int = 3

    model_config = SettingsConfigDict(
        env_prefix="PADIC_",
        env_file=".env",
        case_sensitive=False,
    )


settings = Settings()
