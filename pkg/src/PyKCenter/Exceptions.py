#!/usr/bin/env python3
"""
    File: Exceptions.py
    K-center bandit Exceptions and Warnings.
"""


########################################################################################################################
# Exceptions:
########################################################################################################################
class KCenterError(Exception):
    """
    Base Exception for k-center objects.
    """
    def __init__(self, error_message: str, **kwargs) -> None:
        """
        Base Exception for k-center Errors.
        :param error_message: Message explaining the error.
        :param kwargs: Any additional key word arguments, kept as context.
        """
        self.error_message: str = error_message
        self.key_word_args: dict = kwargs
        return

    def __str__(self) -> str:
        return self.error_message


class ParameterError(KCenterError):
    """
    Exception to throw when a parameter error occurs.
    """
    def __init__(self, error_message: str, **kwargs) -> None:
        """
        Initialize the ParameterError
        :param error_message: Str: The error message.
        :param kwargs: Any additional key word arguments.
        """
        KCenterError.__init__(self, error_message, **kwargs)
        return


class UsageError(KCenterError):
    """
    Exception to raise on an invalid command line or experiment spec.
    """
    def __init__(self, error_message: str, **kwargs) -> None:
        """
        Initialize a usage error.
        :param error_message: Str: Message explaining the error.
        :param kwargs: Any additional key word arguments.
        """
        KCenterError.__init__(self, error_message, **kwargs)
        return


class DataValidationError(KCenterError):
    """
    Exception to raise when a point set or distance matrix fails validation.
    """
    def __init__(self,
                 error_message: str,
                 row: int | None = None,
                 column: int | None = None,
                 **kwargs
                 ) -> None:
        """
        Initialize a data validation error.
        :param error_message: Str: Message explaining the error.
        :param row: Optional[int]: The offending row, if known.
        :param column: Optional[int]: The offending column / dimension, if known.
        :param kwargs: Any additional key word arguments.
        """
        if row is not None and column is not None:
            error_message = "%s (row=%i, column=%i)" % (error_message, row, column)
        elif row is not None:
            error_message = "%s (row=%i)" % (error_message, row)
        elif column is not None:
            error_message = "%s (column=%i)" % (error_message, column)
        KCenterError.__init__(self, error_message, **kwargs)
        self.row: int | None = row
        self.column: int | None = column
        return


class BruteForceRefused(KCenterError):
    """
    Exception to raise when an exhaustive search would enumerate too many subsets.
    """
    def __init__(self, n: int, k: int, subsets: int, limit: int, **kwargs) -> None:
        """
        Initialize a brute force refusal.
        :param n: Int: Number of points.
        :param k: Int: Number of centers.
        :param subsets: Int: C(n, k).
        :param limit: Int: The configured guard.
        :param kwargs: Any additional key word arguments.
        """
        message: str = "Refusing exhaustive k-center search: C(%i, %i) = %i subsets exceeds the limit %i." % (
            n, k, subsets, limit)
        KCenterError.__init__(self, message, **kwargs)
        self.subsets: int = subsets
        return


class OracleError(KCenterError):
    """
    Exception to raise when an oracle query is invalid for the session.
    """
    def __init__(self, error_message: str, **kwargs) -> None:
        """
        Initialize an oracle error.
        :param error_message: Str: Message explaining the error.
        :param kwargs: Any additional key word arguments.
        """
        KCenterError.__init__(self, error_message, **kwargs)
        return


class ConfidenceError(KCenterError):
    """
    Exception to raise when a confidence bound is read before it exists.
    """
    def __init__(self, error_message: str, **kwargs) -> None:
        """
        Initialize a confidence error.
        :param error_message: Str: Message explaining the error.
        :param kwargs: Any additional key word arguments.
        """
        KCenterError.__init__(self, error_message, **kwargs)
        return


class ArmStateError(KCenterError):
    """
    Exception to raise on an invalid arm update.
    """
    def __init__(self, error_message: str, **kwargs) -> None:
        """
        Initialize an arm state error.
        :param error_message: Str: Message explaining the error.
        :param kwargs: Any additional key word arguments.
        """
        KCenterError.__init__(self, error_message, **kwargs)
        return


class OptimizerError(KCenterError):
    """
    Exception to raise when the maximin weight optimizer fails.
    """
    def __init__(self, error_message: str, iterate: int | None = None, stage: int | None = None, **kwargs) -> None:
        """
        Initialize an optimizer error.
        :param error_message: Str: Message explaining the error.
        :param iterate: Optional[int]: The ascent iterate where the failure happened.
        :param stage: Optional[int]: The k-center stage, when called from a solver.
        :param kwargs: Any additional key word arguments.
        """
        if iterate is not None:
            error_message = "%s (iterate=%i)" % (error_message, iterate)
        if stage is not None:
            error_message = "%s (stage=%i)" % (error_message, stage)
        KCenterError.__init__(self, error_message, **kwargs)
        self.iterate: int | None = iterate
        self.stage: int | None = stage
        return


class RunFailure(KCenterError):
    """
    Exception to raise when a solver run cannot finish, IE: a stage hit the pull cap.
    """
    def __init__(self, error_message: str, stage: int | None = None, pulls: int | None = None, **kwargs) -> None:
        """
        Initialize a run failure.
        :param error_message: Str: Message explaining the error.
        :param stage: Optional[int]: The stage that failed.
        :param pulls: Optional[int]: Pulls made in that stage.
        :param kwargs: Any additional key word arguments.
        """
        KCenterError.__init__(self, error_message, **kwargs)
        self.stage: int | None = stage
        self.pulls: int | None = pulls
        return


########################################################################################################################
# Warnings:
########################################################################################################################
class KCenterWarning(Warning):
    """
    Warning to raise when runtime warnings occur.
    """
    pass
