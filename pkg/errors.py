"""
Exception types shared by the library modules and the command line front end.

The CLI maps each family onto an exit status: schema problems exit 2,
mathematically invalid input exits 3 and broken internal invariants exit 4.
"""


class GrknError(Exception):
    """Base class for every error raised by this package."""

    code = "error"
    exit_status = 1

    def __init__(self, message: str, code: str = None):
        super().__init__(message)
        self.message = message
        if code is not None:
            self.code = code

    def to_dict(self) -> dict:
        return {"code": self.code, "message": self.message, "exit": self.exit_status}


class SchemaError(GrknError, ValueError):
    """Malformed input: bad JSON, missing keys, bad rational strings, bad shapes."""

    code = "schema"
    exit_status = 2


class MathInputError(GrknError, ValueError):
    """Well-formed input that does not describe a valid mathematical object."""

    code = "math_input"
    exit_status = 3


class MixedSignError(MathInputError):
    code = "mixed_signs"


class RankError(MathInputError):
    code = "rank_deficient"


class NotInCellError(MathInputError):
    code = "not_in_cell"


class GuardError(MathInputError):
    code = "guard_exceeded"


class InvariantError(GrknError, AssertionError):
    """An internal consistency check failed."""

    code = "invariant"
    exit_status = 4
