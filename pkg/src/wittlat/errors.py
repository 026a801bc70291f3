"""Exception hierarchy shared across the package.

Three failure classes are kept strictly apart so the CLI can map them to
distinct exit codes: user/config errors, resource/precision errors, and
internal consistency failures (conditions the theory guarantees, whose
violation indicates an arithmetic bug and comes with a replayable
counterexample).
"""


class WittlatError(Exception):
    pass


class UsageError(WittlatError):
    """Invalid parameters or CLI usage.  CLI exit code 3."""


class PrecisionError(WittlatError):
    """A computation needed more p-adic digits than the ring retains.

    Raised instead of silently certifying an equality beyond the stored
    precision.  CLI exit code 2.
    """


class CeilingExceeded(WittlatError):
    """An enumeration's estimated candidate count exceeds the ceiling."""

    def __init__(self, estimate, ceiling):
        super().__init__(
            f"enumeration would scan ~{estimate} candidates "
            f"(ceiling {ceiling}); raise --ceiling to proceed"
        )
        self.estimate = estimate
        self.ceiling = ceiling


class ConsistencyError(WittlatError):
    """A condition guaranteed by the theory failed.

    This is never a user error: it means the arithmetic disagrees with a
    proved statement, so we abort loudly and keep the offending data for
    standalone replay.
    """

    def __init__(self, message, counterexample=None):
        super().__init__(message)
        self.counterexample = counterexample
