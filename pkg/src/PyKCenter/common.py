#!/usr/bin/env python3
"""
Common variables / functions for the k-center bandit library.
"""
import sys
import hashlib
from typing import Any, NoReturn, Optional
from datetime import datetime
import numpy as np
import pytz

USE_WARNINGS: bool = True

# Exhaustive k-center search refuses instances with more subsets than this:
BRUTE_FORCE_LIMIT: int = 10 ** 6
# Hard per-stage pull cap, a stage hitting it is reported as a run failure:
STAGE_PULL_CAP: int = 10 ** 7
# Distance matrix checks:
SYMMETRY_TOLERANCE: float = 1e-9
BOUNDARY_CLAMP: float = 1e-12
# Confidence interval defaults:
DEFAULT_C_ALPHA: float = 0.1
DEFAULT_KL_ALPHA: float = 1.1
DEFAULT_K1: float = 1.0 + 1.0 / (DEFAULT_KL_ALPHA - 1.0) + 0.01
# Floor for a noise variance used as a divisor:
VARIANCE_FLOOR: float = 1e-12


def __version_check__() -> Optional[NoReturn]:
    """
    Check the python version and exit gracefully if we're running the wrong version.
    :return: Optional[NoReturn]
    """
    if sys.version_info.major != 3 or sys.version_info.minor < 10:
        print("Only python >= 3.10 supported")
        exit(1)
    return


def is_timezone_aware(dt: datetime) -> bool:
    """
    Checks if a given datetime object is timezone-aware.
    :param dt: The datetime object to check.
    :return: Bool, True if timezone-aware, False if timezone-unaware.
    """
    return dt.tzinfo is not None and dt.tzinfo.utcoffset(dt) is not None


def convert_to_utc(date_time_obj: datetime) -> datetime:
    """
    Takes a datetime object that is either timezone-aware or timezone-naive, and returns a datetime object that is
    timezone-aware and is in UTC time.
    :param date_time_obj: Datetime object: The datetime to convert.
    :return: Datetime: Timezone-aware UTC datetime.
    """
    if is_timezone_aware(date_time_obj):
        return date_time_obj.astimezone(pytz.utc)
    return pytz.utc.localize(date_time_obj)


def utc_now() -> datetime:
    """
    The current time as a timezone-aware UTC datetime.
    :return: Datetime
    """
    return datetime.now(pytz.utc)


def __type_error__(argument_name: str, desired_types: str, received_obj: Any) -> NoReturn:
    """
    Raise a TypeError with a good message.
    :param argument_name: Str: String of the variable name.
    :param desired_types: Str: String of desired type(s).
    :param received_obj: The var which was received, note: type() will be called on it.
    :return: NoReturn
    """
    error: str = "TypeError: argument:%s, got %s type, expected: %s" % (argument_name,
                                                                        str(type(received_obj)), desired_types)
    raise TypeError(error)


def is_number(value: Any) -> bool:
    """
    True for ints and floats (numpy scalars included), False for bools.
    :param value: Any: The value to test.
    :return: Bool
    """
    if isinstance(value, bool):
        return False
    return isinstance(value, (int, float, np.integer, np.floating))


def parse_key_value_text(text: str) -> dict[str, str | list[str]]:
    """
    Parse a plain-text key=value config. '#' starts a comment, blank lines are skipped, and a value containing
    commas is returned as a list of stripped strings.
    :param text: Str: The file contents.
    :raises ValueError: If a non-blank line has no '='.
    :return: Dict[str, str | list[str]]
    """
    values: dict[str, str | list[str]] = {}
    for line_number, raw_line in enumerate(text.splitlines(), start=1):
        line = raw_line.split('#', 1)[0].strip()
        if len(line) == 0:
            continue
        if '=' not in line:
            raise ValueError("line %i: expected key=value, got '%s'" % (line_number, raw_line))
        key, value = line.split('=', 1)
        key = key.strip().replace('-', '_')
        value = value.strip()
        if ',' in value:
            values[key] = [item.strip() for item in value.split(',') if len(item.strip()) > 0]
        else:
            values[key] = value
    return values


def stable_hash(text: str) -> int:
    """
    A 64-bit hash of a string that is stable across processes and python versions.
    :param text: Str: The text to hash.
    :return: Int
    """
    return int.from_bytes(hashlib.blake2b(text.encode('utf-8'), digest_size=8).digest(), 'little')


def mix_seed(*parts: int) -> int:
    """
    Mix integers into one 64-bit seed through numpy's SeedSequence.
    :param parts: Int: The values to mix, in order.
    :return: Int: A seed in [0, 2**64).
    """
    state = np.random.SeedSequence([int(part) % (2 ** 64) for part in parts]).generate_state(2, dtype=np.uint32)
    return (int(state[0]) << 32) | int(state[1])
