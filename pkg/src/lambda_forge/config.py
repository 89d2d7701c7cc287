"""Size bounds.

LAMBDA_FORGE_BOUND in the environment overrides both defaults (a single
global scale is enough at desk scale).
"""

import os


def _env_bound() -> int | None:
    raw = os.environ.get("LAMBDA_FORGE_BOUND")
    if raw is None:
        return None
    try:
        return int(raw)
    except ValueError:
        return None


def residue_bound() -> int:
    return _env_bound() or 10**6


def monoid_bound() -> int:
    return _env_bound() or 10**4
