#!/usr/bin/env python3
"""
    File: CenterSet.py
"""
from typing import Iterator, Optional, Sequence
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
            Self = TypeVar("Self", bound="CenterSet")
        except ImportError:
            print("FATAL: Unable to define Self.")
            exit(129)


class CenterSet(object):
    """Ordered list of center indices, in the order the stages added them."""
    def __init__(self, centers: Sequence[int] = (), n: Optional[int] = None) -> None:
        """
        Initialize the center set.
        :param centers: Sequence[int]: Center indices, stage order.
        :param n: Optional[int]: Number of points; when given every index is checked against [0, n).
        :raises ParameterError: On a duplicate or out of range index.
        """
        if not isinstance(centers, (list, tuple)):
            __type_error__("centers", "list | tuple", centers)
        elif n is not None and not isinstance(n, int):
            __type_error__("n", "Optional[int]", n)
        values: tuple[int, ...] = tuple(int(center) for center in centers)
        if len(set(values)) != len(values):
            raise ParameterError("duplicate center in %s." % str(list(values)))
        if n is not None:
            for center in values:
                if not 0 <= center < n:
                    raise ParameterError("center %i out of range [0, %i)." % (center, n))
        self._centers: tuple[int, ...] = values
        self._n: Optional[int] = n
        return

    def append(self, center: int) -> Self:
        """
        A new center set with one more center at the end.
        :param center: Int: The new center.
        :return: CenterSet
        """
        return CenterSet(list(self._centers) + [int(center)], n=self._n)

    def __to_dict__(self) -> dict:
        return {'centers': list(self._centers), 'n': self._n}

    @classmethod
    def __from_dict__(cls, from_dict: dict) -> Self:
        return cls(from_dict['centers'], n=from_dict['n'])

    def __len__(self) -> int:
        return len(self._centers)

    def __iter__(self) -> Iterator[int]:
        return iter(self._centers)

    def __getitem__(self, index: int) -> int:
        return self._centers[index]

    def __contains__(self, item: int) -> bool:
        return item in self._centers

    def __eq__(self, other: object) -> bool:
        if isinstance(other, CenterSet):
            return self._centers == other._centers
        if isinstance(other, (list, tuple)):
            return self._centers == tuple(other)
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self._centers)

    def __str__(self) -> str:
        return "CenterSet(%s)" % ", ".join(str(center) for center in self._centers)

    __repr__ = __str__

    @property
    def centers(self) -> tuple[int, ...]:
        """
        The centers in stage order.
        :return: Tuple[int, ...]
        """
        return self._centers
