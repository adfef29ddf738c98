#!/usr/bin/env python3
"""
    File: RunResult.py
"""
from datetime import datetime
from typing import Optional
try:
    from common import __type_error__, utc_now
    import common
    from CenterSet import CenterSet
    from QueryLedger import QueryLedger
except (ModuleNotFoundError, ImportError):
    from PyKCenter.common import __type_error__, utc_now
    import PyKCenter.common as common
    from PyKCenter.CenterSet import CenterSet
    from PyKCenter.QueryLedger import QueryLedger

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
            Self = TypeVar("Self")
        except ImportError:
            print("FATAL: Unable to define Self.")
            exit(129)


class StageReport(object):
    """What happened in one stage: the center it added, its rounds and queries, and the stopping margin."""
    def __init__(self, stage: int, center: int, rounds: int, queries: int, margin: float) -> None:
        self._stage: int = stage
        self._center: int = center
        self._rounds: int = rounds
        self._queries: int = queries
        self._margin: float = margin
        return

    def __to_dict__(self) -> dict:
        return {
            'stage': self._stage,
            'center': self._center,
            'rounds': self._rounds,
            'queries': self._queries,
            'margin': self._margin,
        }

    @classmethod
    def __from_dict__(cls, from_dict: dict) -> Self:
        return cls(from_dict['stage'], from_dict['center'], from_dict['rounds'], from_dict['queries'],
                   from_dict['margin'])

    @property
    def stage(self) -> int:
        """Stage number, from 1."""
        return self._stage

    @property
    def center(self) -> int:
        """The center the stage added."""
        return self._center

    @property
    def rounds(self) -> int:
        """Selection rounds after the stage's initialization pass."""
        return self._rounds

    @property
    def queries(self) -> int:
        """Queries charged during the stage."""
        return self._queries

    @property
    def margin(self) -> float:
        """Stopping margin when the stage ended."""
        return self._margin


class RunResult(object):
    """
    Output of one solver run.
    """
    def __init__(self,
                 algorithm: str,
                 centers: CenterSet,
                 ledger: QueryLedger,
                 stages: Optional[list[StageReport]] = None,
                 finished_at: Optional[datetime] = None,
                 ) -> None:
        """
        Initialize the result.
        :param algorithm: Str: Solver id.
        :param centers: CenterSet: Centers in stage order.
        :param ledger: QueryLedger: Query accounting.
        :param stages: Optional[list[StageReport]]: Per-stage diagnostics.
        :param finished_at: Optional[datetime]: Completion time, defaults to now (UTC).
        """
        if not isinstance(algorithm, str):
            __type_error__("algorithm", "str", algorithm)
        elif not isinstance(centers, CenterSet):
            __type_error__("centers", "CenterSet", centers)
        elif not isinstance(ledger, QueryLedger):
            __type_error__("ledger", "QueryLedger", ledger)
        self._algorithm: str = algorithm
        self._centers: CenterSet = centers
        self._ledger: QueryLedger = ledger
        self._stages: list[StageReport] = [] if stages is None else list(stages)
        self._finished_at: datetime = utc_now() if finished_at is None else common.convert_to_utc(finished_at)
        self.matched_greedy: Optional[bool] = None
        return

    def __to_dict__(self) -> dict:
        """
        Create a JSON / Pickle friendly dict.
        :return: Dict
        """
        return {
            'algorithm': self._algorithm,
            'centers': list(self._centers),
            'ledger': self._ledger.__to_dict__(),
            'stages': [stage.__to_dict__() for stage in self._stages],
            'finished_at': self._finished_at.isoformat(),
            'matched_greedy': self.matched_greedy,
        }

    @classmethod
    def __from_dict__(cls, from_dict: dict) -> Self:
        """
        Load from a dict created by __to_dict__().
        :param from_dict: Dict: The dict to load from.
        :return: RunResult
        """
        result = cls(from_dict['algorithm'], CenterSet(from_dict['centers']),
                     QueryLedger.__from_dict__(from_dict['ledger']),
                     [StageReport.__from_dict__(stage) for stage in from_dict['stages']],
                     datetime.fromisoformat(from_dict['finished_at']))
        result.matched_greedy = from_dict.get('matched_greedy')
        return result

    def __str__(self) -> str:
        return "RunResult(%s, centers=%s, queries=%i)" % (self._algorithm, str(list(self._centers)),
                                                          self._ledger.total)

    @property
    def algorithm(self) -> str:
        """Solver id."""
        return self._algorithm

    @property
    def centers(self) -> CenterSet:
        """Centers in stage order."""
        return self._centers

    @property
    def ledger(self) -> QueryLedger:
        """Query accounting."""
        return self._ledger

    @property
    def stages(self) -> list[StageReport]:
        """Per-stage diagnostics."""
        return list(self._stages)

    @property
    def finished_at(self) -> datetime:
        """Completion time, UTC."""
        return self._finished_at
