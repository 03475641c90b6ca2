"""Error taxonomy and capacity bounds shared by all modules."""

import os


class RelcatError(Exception):
    pass


class InputError(RelcatError):
    """A value violates an operation's contract (bad index, carrier mismatch,
    failed hypothesis)."""


class CapacityError(RelcatError):
    """A configurable resource bound was exceeded; the request is legal but
    too large for this build."""


DEFAULT_MAX_CARRIER = 4096
ENUM_BOUND = 5


def max_carrier() -> int:
    """Carrier-size cap; override with the RELCAT_MAX_CARRIER env variable."""
    raw = os.environ.get("RELCAT_MAX_CARRIER")
    if raw is None:
        return DEFAULT_MAX_CARRIER
    try:
        value = int(raw)
    except ValueError:
        raise InputError(f"RELCAT_MAX_CARRIER is not an integer: {raw!r}")
    if value < 0:
        raise InputError("RELCAT_MAX_CARRIER must be nonnegative")
    return value


def check_carrier_size(n: int) -> int:
    if n < 0:
        raise InputError(f"carrier size must be nonnegative, got {n}")
    cap = max_carrier()
    if n > cap:
        raise CapacityError(f"carrier size {n} exceeds bound {cap}")
    return n
