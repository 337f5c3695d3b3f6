"""Exception taxonomy shared by the library and the CLI.

Exit-code mapping used by the CLI: validation problems exit 2, capacity
limits exit 3, internal invariant violations exit 4.
"""

EXIT_OK = 0
EXIT_VALIDATION = 2
EXIT_CAPACITY = 3
EXIT_INTERNAL = 4


class CausalPowerError(Exception):
    """Base class for all library errors."""

    exit_code = EXIT_VALIDATION


class ValidationError(CausalPowerError):
    """Invalid user input: bad file, bad argument, domain violation."""

    exit_code = EXIT_VALIDATION


class InvalidGameError(ValidationError):
    """A game constructor was fed data that cannot define a simple game."""


class InvalidCauseFamilyError(ValidationError):
    """A cause family violates its structural constraints (e.g. not an antichain)."""


class InvalidArgumentError(ValidationError):
    """An operation was called with arguments outside its contract."""


class ModelError(ValidationError):
    """A causal model is malformed or used inconsistently."""


class ModelIncompleteError(ModelError):
    """A structural-function table has no entry for a parent assignment."""


class InvalidInterventionError(ModelError):
    """An intervention targets the output variable or an out-of-domain value."""


class CapacityError(CausalPowerError):
    """Input size exceeds the exact-computation limits."""

    exit_code = EXIT_CAPACITY


class InternalInvariantError(CausalPowerError):
    """A supposedly-impossible state was reached; always a bug."""

    exit_code = EXIT_INTERNAL
