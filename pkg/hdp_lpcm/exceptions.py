"""
Exceptions module for hdp-lpcm.

Every exception derives from `HDPLPCMException`. The three intermediate classes `InputError`,
`NumericalError` and `UsageError` decide the exit code used by the command line interface.
"""

from typing import Any, List, Optional


class HDPLPCMException(Exception):
    """
    Base exception for all hdp-lpcm exceptions.
    """


class InputError(HDPLPCMException):
    """
    Invalid user supplied data, parameters or files.
    """


class NumericalError(HDPLPCMException):
    """
    A numerical procedure could not produce a well defined result.
    """


class UsageError(HDPLPCMException):
    """
    The tool was invoked with an invalid combination of commands or arguments.
    """


class EdgeListParseError(InputError):
    """
    A record of an edge list could not be parsed.
    """

    def __init__(self, line_number: int, reason: str, *args: object) -> None:
        self.line_number = line_number
        super().__init__(f"Malformed edge list record on line {line_number}: {reason}", *args)


class SelfLoopError(InputError):
    """
    An edge list contained a record connecting an actor to itself.
    """

    def __init__(self, line_number: int, *args: object) -> None:
        self.line_number = line_number
        super().__init__(f"Self-loop record on line {line_number} is not allowed", *args)


class RangeError(InputError):
    """
    A time index or actor index fell outside of the declared bounds.
    """

    def __init__(self, name: str, value: Any, bound: int, line_number: Optional[int] = None, *args: object) -> None:
        self.line_number = line_number
        location = f" on line {line_number}" if line_number is not None else ""
        super().__init__(f"{name} {value}{location} is outside of the allowed range 1..{bound}", *args)


class EmptyNetworkError(InputError):
    """
    An operation would produce a network without any actors.
    """

    def __init__(self, *args: object) -> None:
        super().__init__("The resulting network has no actors", *args)


class DimensionError(InputError):
    """
    Array shapes of the inputs do not agree.
    """

    def __init__(self, detail: str, *args: object) -> None:
        super().__init__(f"Dimension mismatch: {detail}", *args)


class LabelError(InputError):
    """
    A group label is outside of the truncation range.
    """

    def __init__(self, label: Any, n_groups: int, *args: object) -> None:
        super().__init__(f"Label {label} is outside of the valid range 0..{n_groups - 1}", *args)


class ParameterError(InputError):
    """
    A parameter violates its documented constraint.
    """

    def __init__(self, name: str, value: Any, constraint: str, *args: object) -> None:
        super().__init__(f"Invalid value {value!r} for {name}: expected {constraint}", *args)


class EnumerationTooLarge(InputError):
    """
    An exhaustive enumeration would exceed the allowed number of configurations.
    """

    def __init__(self, size: int, limit: int, *args: object) -> None:
        super().__init__(f"Enumeration over {size} configurations exceeds the limit of {limit}", *args)


class LengthMismatchError(InputError):
    """
    Two partitions (or series) which must have the same length do not.
    """

    def __init__(self, length_a: int, length_b: int, *args: object) -> None:
        super().__init__(f"Length mismatch: {length_a} != {length_b}", *args)


class EmptyChainError(InputError):
    """
    A summary was requested for a chain without kept samples.
    """

    def __init__(self, *args: object) -> None:
        super().__init__("The chain does not contain any samples", *args)


class ChainFormatError(InputError):
    """
    A chain or checkpoint file could not be decoded.
    """

    def __init__(self, path: str, reason: str, *args: object) -> None:
        super().__init__(f"Could not read {path}: {reason}", *args)


class MissingFileError(InputError):
    """
    A referenced input file does not exist.
    """

    def __init__(self, path: str, *args: object) -> None:
        super().__init__(f"File {path} does not exist", *args)


class DegenerateDistributionError(NumericalError):
    """
    All weights of a discrete distribution vanished before drawing from it.
    """

    def __init__(self, context: str, *args: object) -> None:
        super().__init__(f"All sampling weights are zero ({context})", *args)


class InitializationError(NumericalError):
    """
    The initial state of a chain has a non-finite log posterior.
    """

    def __init__(self, log_post: float, *args: object) -> None:
        super().__init__(f"Initial state has non-finite log posterior {log_post}", *args)


class DegenerateLocationsError(NumericalError):
    """
    Two group locations coincide, so inverse distances are undefined.
    """

    def __init__(self, group_a: int, group_b: int, *args: object) -> None:
        super().__init__(f"Groups {group_a} and {group_b} share the same location", *args)


class UndefinedStatisticError(NumericalError):
    """
    A statistic (ESS, AUC, ...) is undefined for the given input.
    """

    def __init__(self, statistic: str, reason: str, *args: object) -> None:
        super().__init__(f"{statistic} is undefined: {reason}", *args)


class UnknownPresetError(UsageError):
    """
    A simulation preset name is not known.
    """

    def __init__(self, name: str, available: List[str], *args: object) -> None:
        super().__init__(f"Unknown preset {name}. Expected one of {available}", *args)


class InvalidArgumentsError(UsageError):
    """
    Command line arguments are inconsistent with each other.
    """

    def __init__(self, reason: str, *args: object) -> None:
        super().__init__(reason, *args)
