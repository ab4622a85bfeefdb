"""Exception hierarchy for domino-cycles.

Every error carries the exit code the command-line front end reports for it.
"""

EXIT_USAGE = 1
EXIT_INVALID_INPUT = 2
EXIT_VERIFICATION = 3


class DcyError(Exception):
    """Base class for all domino-cycles errors."""

    exit_code = EXIT_INVALID_INPUT


class WordParseError(DcyError, ValueError):
    """A signed word could not be parsed."""

    exit_code = EXIT_USAGE

    def __init__(self, message: str, position: int = 0):
        super().__init__(f"{message} (at token {position})")
        self.position = position


class ResourceBoundError(DcyError):
    """The requested enumeration exceeds the configured bound."""

    exit_code = EXIT_USAGE


class TableauFormatError(DcyError, ValueError):
    """Text or JSON input does not describe a valid domino tableau."""


class InvalidTableauError(DcyError, ValueError):
    """A tableau violates one of the standard domino tableau invariants."""


class LabelNotFoundError(DcyError, KeyError):
    """A domino label is not present in the tableau."""

    def __str__(self) -> str:
        return str(self.args[0]) if self.args else "label not found"


class DuplicateLabelError(DcyError, ValueError):
    """An inserted value is already a label of the tableau."""


class ShapeMismatchError(DcyError, ValueError):
    """Two tableaux that must share rank and shape do not."""


class RankTooSmallError(DcyError, ValueError):
    """The large-rank bitableau identification needs rank >= n - 1."""


class InvalidCycleSetError(DcyError, ValueError):
    """A set of labels is not a union of distinct cycles of the tableau."""


class StaleCycleError(DcyError, ValueError):
    """An extended cycle pair was not computed from the given pair."""


class SkeletonMismatchError(DcyError, ValueError):
    """Two labeled forests do not share the same unlabeled skeleton."""


class NoCoreCycleError(DcyError, ValueError):
    """The tableau has no open cycle through its diagonal."""


class NotEquivalentError(DcyError, ValueError):
    """Two tableaux are not related by moving through non-core open cycles."""


class GammaInconsistencyError(DcyError):
    """No hook tiling realises the requested cycle structure set."""

    exit_code = EXIT_VERIFICATION


class ExtendedCycleError(DcyError):
    """A computed extended cycle violates the endpoint chain condition."""

    exit_code = EXIT_VERIFICATION


class WitnessVerificationError(DcyError):
    """A constructed witness step failed its mmt right-tableau check."""

    exit_code = EXIT_VERIFICATION
