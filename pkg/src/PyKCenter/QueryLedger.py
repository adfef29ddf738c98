#!/usr/bin/env python3
"""
    File: QueryLedger.py
"""
import csv
from typing import Optional
try:
    from common import __type_error__
    import common
    from Exceptions import ParameterError
except (ModuleNotFoundError, ImportError):
    from PyKCenter.common import __type_error__
    import PyKCenter.common as common
    from PyKCenter.Exceptions import ParameterError

# Version check:
common.__version_check__()
# Define Self:
try:
    from typing import Self
except ImportError:
    try:
        from typing_extensions import Self
    except (ModuleNotFoundError, ImportError):
        try:
            from typing import TypeVar
            Self = TypeVar("Self", bound="QueryLedger")
        except ImportError:
            print("FATAL: Unable to define Self.")
            exit(129)


class QueryLedger(object):
    """
    Snapshot of a session's query accounting: the total, per-stage counts, and per-arm counts.
    """
    def __init__(self,
                 total: int,
                 per_stage: list[int],
                 per_arm: Optional[dict[tuple[int, int], int]] = None,
                 ) -> None:
        """
        Initialize the ledger.
        :param total: Int: Total queries.
        :param per_stage: List[int]: Queries per stage, summing to total.
        :param per_arm: Optional[dict[tuple[int, int], int]]: Queries per (u, v) pair.
        :raises ParameterError: If per_stage does not sum to total.
        """
        if not isinstance(total, int):
            __type_error__("total", "int", total)
        elif not isinstance(per_stage, list):
            __type_error__("per_stage", "list[int]", per_stage)
        elif per_arm is not None and not isinstance(per_arm, dict):
            __type_error__("per_arm", "Optional[dict]", per_arm)
        if sum(per_stage) != total:
            raise ParameterError("per-stage counts sum to %i, total is %i." % (sum(per_stage), total))
        self._total: int = total
        self._per_stage: list[int] = list(per_stage)
        self._per_arm: dict[tuple[int, int], int] = {} if per_arm is None else dict(per_arm)
        return

    @classmethod
    def from_marks(cls, total: int, marks: list[int], per_arm: Optional[dict[tuple[int, int], int]] = None) -> Self:
        """
        Build a ledger from stage marks. Stage i holds the queries between mark i-1 and mark i; queries after the
        last mark form a trailing stage when there are any.
        :param total: Int: Total queries.
        :param marks: List[int]: Query totals at each stage mark, non-decreasing.
        :param per_arm: Optional[dict]: Per-arm counts.
        :return: QueryLedger
        """
        per_stage: list[int] = []
        previous = 0
        for mark in marks:
            per_stage.append(mark - previous)
            previous = mark
        if total > previous:
            per_stage.append(total - previous)
        return cls(total, per_stage, per_arm)

    def __to_dict__(self) -> dict:
        """
        Create a JSON / Pickle friendly dict. Arms are stored as 'u,v' strings.
        :return: Dict
        """
        return {
            'total': self._total,
            'per_stage': list(self._per_stage),
            'per_arm': {"%i,%i" % key: value for key, value in self._per_arm.items()},
        }

    @classmethod
    def __from_dict__(cls, from_dict: dict) -> Self:
        """
        Load from a dict created by __to_dict__().
        :param from_dict: Dict: The dict to load from.
        :return: QueryLedger
        """
        per_arm = {}
        for key, value in from_dict.get('per_arm', {}).items():
            u, v = key.split(',')
            per_arm[(int(u), int(v))] = int(value)
        return cls(int(from_dict['total']), [int(count) for count in from_dict['per_stage']], per_arm)

    def to_csv(self, path: str) -> None:
        """
        Write (stage, queries) rows, stages numbered from 1.
        :param path: Str: The output path.
        :return: None
        """
        with open(path, 'w', newline='') as file_handle:
            writer = csv.writer(file_handle, lineterminator='\n')
            writer.writerow(['stage', 'queries'])
            for stage, queries in enumerate(self._per_stage, start=1):
                writer.writerow([stage, queries])
        return

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, QueryLedger):
            return NotImplemented
        return self._total == other._total and self._per_stage == other._per_stage and self._per_arm == other._per_arm

    def __str__(self) -> str:
        return "QueryLedger(total=%i, per_stage=%s)" % (self._total, str(self._per_stage))

    @property
    def total(self) -> int:
        """
        Total queries.
        :return: Int
        """
        return self._total

    @property
    def per_stage(self) -> list[int]:
        """
        Queries per stage.
        :return: List[int]
        """
        return list(self._per_stage)

    @property
    def per_arm(self) -> dict[tuple[int, int], int]:
        """
        Queries per (u, v) pair.
        :return: Dict[tuple[int, int], int]
        """
        return dict(self._per_arm)
