"""Exception hierarchy shared across the platform."""


class BugSpotterError(Exception):
    """Base class for all errors raised by this package."""


class ParseError(BugSpotterError):
    """A document (problem file, annotation CSV, ...) is malformed."""


class ReferenceSolutionInvalid(BugSpotterError):
    """The reference solution fails its own test suite; an authoring bug."""


class ToolchainUnavailable(BugSpotterError):
    """Compiler or interpreter missing; environment misconfiguration."""


class SandboxError(BugSpotterError):
    """The execution harness itself failed, unrelated to the code under test."""


class PromptBuildError(BugSpotterError):
    """Prompt template substitution got an empty or unusable value."""


class ResponseUnparseable(BugSpotterError):
    """No JSON object could be recovered from an LLM response."""


class LLMUnavailable(BugSpotterError):
    """The LLM client failed after exhausting retries."""


class NoValidExercise(BugSpotterError):
    """A generation batch produced zero candidates that pass validation."""


class InputTypeError(BugSpotterError):
    """Submitted inputs do not match the problem signature."""


class ExerciseNotFound(BugSpotterError):
    """Referenced exercise id is unknown."""


class LexError(BugSpotterError):
    """Source text contains bytes the lexer cannot tokenize."""


class UnknownExercise(BugSpotterError):
    """An annotation references an exercise id that does not exist."""


class LengthMismatch(BugSpotterError):
    """Paired rating vectors have different lengths."""


class DegenerateTable(BugSpotterError):
    """A contingency table has a zero row or column total."""


class BadRankingSize(BugSpotterError):
    """A difficulty ranking cannot be split into the configured bins."""
