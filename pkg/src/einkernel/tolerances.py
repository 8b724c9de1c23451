"""Tolerance defaults used by the floating-point predicate paths.

Exact-rational inputs ignore all of these: sign tests are exact there.
The command-line front end may override the defaults through environment
variables (``EINKERNEL_EPS_CAUSAL`` and friends); library callers can pass
explicit ``tol`` arguments instead.
"""

import os

# Causal classification: |<v,v>| below this (relative) threshold counts as null.
EPS_CAUSAL = 1e-12

# Equality comparisons inside membership predicates, scaled by input magnitude.
EPS_PRED = 1e-9

# Residual allowed for a matrix to count as form-preserving.
EPS_GROUP = 1e-10

# Residual allowed for a mesh vertex to count as lying on its surface.
EPS_MESH = 1e-9

_ENV_NAMES = {
    "EPS_CAUSAL": "EINKERNEL_EPS_CAUSAL",
    "EPS_PRED": "EINKERNEL_EPS_PRED",
    "EPS_GROUP": "EINKERNEL_EPS_GROUP",
    "EPS_MESH": "EINKERNEL_EPS_MESH",
}


def load_env_overrides(environ=None):
    """Apply ``EINKERNEL_EPS_*`` environment overrides to the defaults.

    Returns the dict of names that were overridden.  Only tolerance defaults
    are configurable this way; every other knob is an explicit argument.
    """
    environ = os.environ if environ is None else environ
    applied = {}
    for attr, env_name in _ENV_NAMES.items():
        raw = environ.get(env_name)
        if raw is None:
            continue
        value = float(raw)
        if not value > 0.0:
            raise ValueError(f"{env_name} must be positive, got {raw!r}")
        globals()[attr] = value
        applied[attr] = value
    return applied
