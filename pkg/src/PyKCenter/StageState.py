#!/usr/bin/env python3
"""
    File: StageState.py
    Per-stage aggregates over the current centers, kept in addressable heaps.
"""
import math
from typing import Iterator, Optional
try:
    import common
    from Exceptions import ParameterError
    from ArmState import ArmState
except (ModuleNotFoundError, ImportError):
    import PyKCenter.common as common
    from PyKCenter.Exceptions import ParameterError
    from PyKCenter.ArmState import ArmState

# Version check:
common.__version_check__()

Arm = tuple[int, int]


class IndexedHeap(object):
    """
    Addressable binary max-heap over integer items. Equal values are ordered by the lower item first, so the top is
    always the lowest index among the maxima.
    """
    def __init__(self) -> None:
        self._heap: list[int] = []
        self._position: dict[int, int] = {}
        self._value: dict[int, float] = {}
        return

    def _better(self, a: int, b: int) -> bool:
        value_a, value_b = self._value[a], self._value[b]
        return value_a > value_b or (value_a == value_b and a < b)

    def _swap(self, i: int, j: int) -> None:
        heap = self._heap
        heap[i], heap[j] = heap[j], heap[i]
        self._position[heap[i]] = i
        self._position[heap[j]] = j
        return

    def _sift_up(self, i: int) -> None:
        while i > 0:
            parent = (i - 1) // 2
            if not self._better(self._heap[i], self._heap[parent]):
                break
            self._swap(i, parent)
            i = parent
        return

    def _sift_down(self, i: int) -> None:
        size = len(self._heap)
        while True:
            best = i
            for child in (2 * i + 1, 2 * i + 2):
                if child < size and self._better(self._heap[child], self._heap[best]):
                    best = child
            if best == i:
                return
            self._swap(i, best)
            i = best

    def set(self, item: int, value: float) -> None:
        """
        Insert item, or move it to its new value.
        :param item: Int: The item.
        :param value: Float: Its priority.
        :return: None
        """
        if item in self._position:
            self._value[item] = value
            i = self._position[item]
            self._sift_up(i)
            self._sift_down(self._position[item])
        else:
            self._value[item] = value
            self._heap.append(item)
            self._position[item] = len(self._heap) - 1
            self._sift_up(len(self._heap) - 1)
        return

    def remove(self, item: int) -> None:
        """
        Remove item if present.
        :param item: Int: The item.
        :return: None
        """
        if item not in self._position:
            return
        i = self._position.pop(item)
        del self._value[item]
        last = self._heap.pop()
        if i < len(self._heap):
            self._heap[i] = last
            self._position[last] = i
            self._sift_up(i)
            self._sift_down(self._position[last])
        return

    def top(self) -> Optional[int]:
        """
        The best item, None when empty.
        :return: Optional[int]
        """
        return self._heap[0] if len(self._heap) > 0 else None

    def top_excluding(self, item: int) -> Optional[int]:
        """
        The best item other than the given one, read from the root and its children.
        :param item: Int: The item to skip.
        :return: Optional[int]
        """
        if len(self._heap) == 0:
            return None
        if self._heap[0] != item:
            return self._heap[0]
        best: Optional[int] = None
        for child in (1, 2):
            if child < len(self._heap) and (best is None or self._better(self._heap[child], best)):
                best = self._heap[child]
        return best

    def value(self, item: int) -> float:
        return self._value[item]

    def __len__(self) -> int:
        return len(self._heap)

    def __contains__(self, item: int) -> bool:
        return item in self._position

    def __iter__(self) -> Iterator[int]:
        return iter(list(self._heap))


class StageState(object):
    """
    The current centers and, for every other vertex, its distance-to-centers aggregates: the minimum over current
    centers of the arm upper bounds, lower bounds and estimates.
    """
    def __init__(self, n: int, arms: dict[Arm, ArmState], centers: Optional[list[int]] = None) -> None:
        """
        Initialize the stage state.
        :param n: Int: Number of points.
        :param arms: Dict[Arm, ArmState]: The solver's arm table, shared and read on refresh.
        :param centers: Optional[list[int]]: Initial centers.
        """
        self._n: int = n
        self._arms: dict[Arm, ArmState] = arms
        self._centers: list[int] = []
        self._center_set: set[int] = set()
        self._upper: IndexedHeap = IndexedHeap()
        self._lower: IndexedHeap = IndexedHeap()
        self._estimate: IndexedHeap = IndexedHeap()
        self._candidates: set[Arm] = set()
        for center in centers or []:
            self.add_center(center)
        return

    def add_center(self, center: int) -> None:
        """
        Add a center and drop it from the vertex heaps. Vertices must be refreshed once their arm to the new center
        has a reward.
        :param center: Int: The new center.
        :raises ParameterError: If center is out of range or already a center.
        :return: None
        """
        if not 0 <= center < self._n or center in self._center_set:
            raise ParameterError("invalid new center %i." % center)
        self._centers.append(center)
        self._center_set.add(center)
        for heap in (self._upper, self._lower, self._estimate):
            heap.remove(center)
        self._candidates = {arm for arm in self._candidates if arm[0] != center}
        return

    def aggregates(self, v: int) -> tuple[float, float, float]:
        """
        Compute (U, L, d_hat) for v as the minimum over the current centers, by scanning its arms.
        :param v: Int: The vertex.
        :return: Tuple[float, float, float]
        """
        upper = lower = estimate = math.inf
        for center in self._centers:
            arm = self._arms[(v, center)]
            upper = min(upper, arm.ucb)
            lower = min(lower, arm.lcb)
            estimate = min(estimate, arm.estimate)
        return upper, lower, estimate

    def refresh(self, v: int) -> None:
        """
        Recompute v's aggregates and reposition it in the heaps.
        :param v: Int: A vertex that is not a center.
        :return: None
        """
        upper, lower, estimate = self.aggregates(v)
        self._upper.set(v, upper)
        self._lower.set(v, lower)
        self._estimate.set(v, estimate)
        return

    def add_candidate(self, arm: Arm) -> None:
        self._candidates.add(arm)
        return

    def discard_candidate(self, arm: Arm) -> None:
        self._candidates.discard(arm)
        return

    def upper(self, v: int) -> float:
        return self._upper.value(v)

    def lower(self, v: int) -> float:
        return self._lower.value(v)

    def estimate(self, v: int) -> float:
        return self._estimate.value(v)

    def top_upper(self, excluding: Optional[int] = None) -> Optional[int]:
        """
        The vertex with the largest upper aggregate, optionally skipping one vertex.
        :param excluding: Optional[int]: A vertex to skip.
        :return: Optional[int]
        """
        return self._upper.top() if excluding is None else self._upper.top_excluding(excluding)

    def top_estimate(self) -> Optional[int]:
        """
        The vertex with the largest estimated distance to the centers.
        :return: Optional[int]
        """
        return self._estimate.top()

    def incumbent(self) -> Optional[int]:
        """
        The incumbent: the vertex with the largest lower aggregate.
        :return: Optional[int]
        """
        return self._lower.top()

    def margin(self) -> float:
        """
        The incumbent's lower aggregate minus the largest upper aggregate among the other vertices; +inf with a
        single vertex.
        :return: Float
        """
        incumbent = self._lower.top()
        if incumbent is None:
            return math.inf
        rival = self._upper.top_excluding(incumbent)
        if rival is None:
            return math.inf
        return self._lower.value(incumbent) - self._upper.value(rival)

    def resolution(self) -> Optional[int]:
        """
        The vertex to add as the next center when the stage can stop, else None. The stage stops when the incumbent's lower
        bound beats every other upper bound, or when the vertex with the largest upper bound is known exactly.
        :return: Optional[int]
        """
        if len(self._lower) == 0:
            return None
        if self.margin() > 0:
            return self._lower.top()
        leader = self._upper.top()
        if self._upper.value(leader) <= self._lower.value(leader):
            return leader
        return None

    @property
    def centers(self) -> list[int]:
        """The centers in stage order."""
        return list(self._centers)

    @property
    def center_count(self) -> int:
        return len(self._centers)

    def is_center(self, v: int) -> bool:
        return v in self._center_set

    @property
    def vertices(self) -> list[int]:
        """Non-center vertices in index order."""
        return [v for v in range(self._n) if v not in self._center_set]

    @property
    def candidates(self) -> set[Arm]:
        """Arms that may still be pulled (not exact)."""
        return self._candidates
