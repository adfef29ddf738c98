#!/usr/bin/env python3
"""
    File: PointSet.py
"""
from typing import Optional, Sequence
from warnings import warn
import numpy as np
try:
    from common import __type_error__
    import common
    from Exceptions import DataValidationError, ParameterError, KCenterWarning
except (ModuleNotFoundError, ImportError):
    from PyKCenter.common import __type_error__
    import PyKCenter.common as common
    from PyKCenter.Exceptions import DataValidationError, ParameterError, KCenterWarning

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
            Self = TypeVar("Self", bound="PointSet")
        except ImportError:
            print("FATAL: Unable to define Self.")
            exit(129)

CONVENTIONS: dict[str, tuple[float, float]] = {
    'centered': (-0.5, 0.5),
    'unit': (0.0, 1.0),
}


class PointSet(object):
    """
    Class to store n normalized points in m dimensions. Immutable once built.
    """
##########################
# Initialize:
##########################
    def __init__(self,
                 points: np.ndarray | Sequence[Sequence[float]],
                 labels: Optional[Sequence[str]] = None,
                 convention: str = 'centered',
                 ) -> None:
        """
        Initialize a point set from already normalized coordinates. Use normalize() for raw data.
        :param points: Array-like: n x m coordinates, each within the convention's bounds.
        :param labels: Optional[Sequence[str]]: Per-point identifiers.
        :param convention: Str: 'centered' for [-1/2, 1/2], 'unit' for [0, 1].
        :raises TypeError: If an invalid type is passed.
        :raises DataValidationError: If the shape is invalid or a coordinate is out of bounds.
        """
        # Type checks:
        if not isinstance(convention, str):
            __type_error__("convention", "str", convention)
        elif labels is not None and not isinstance(labels, (list, tuple)):
            __type_error__("labels", "Optional[list | tuple]", labels)
        # Value checks:
        if convention not in CONVENTIONS.keys():
            raise ParameterError("convention must be one of %s, got '%s'." % (str(list(CONVENTIONS)), convention))
        array = np.array(points, dtype=np.float64)
        if array.ndim != 2:
            raise DataValidationError("points must be a 2-D matrix, got %i dimension(s)." % array.ndim)
        if array.shape[0] < 2:
            raise DataValidationError("a point set needs at least 2 points, got %i." % array.shape[0])
        if array.shape[1] < 1:
            raise DataValidationError("a point set needs at least 1 dimension.")
        __check_finite__(array)
        low, high = CONVENTIONS[convention]
        out_of_bounds = np.argwhere((array < low - common.BOUNDARY_CLAMP) | (array > high + common.BOUNDARY_CLAMP))
        if len(out_of_bounds) > 0:
            row, column = (int(value) for value in out_of_bounds[0])
            raise DataValidationError("coordinate %r outside [%g, %g]" % (float(array[row, column]), low, high),
                                      row=row, column=column)
        if labels is not None and len(labels) != array.shape[0]:
            raise DataValidationError("got %i labels for %i points." % (len(labels), array.shape[0]))
        # Store the properties:
        self._points: np.ndarray = np.clip(array, low, high)
        self._points.flags.writeable = False
        self._labels: Optional[tuple[str, ...]] = None if labels is None else tuple(str(label) for label in labels)
        self._convention: str = convention
        self._distance_matrix: Optional[np.ndarray] = None
        return

##################################
# Load / Save functions:
##################################
    def __to_dict__(self) -> dict:
        """
        Create a JSON / Pickle friendly dict.
        :return: Dict.
        """
        return_dict: dict = {
            'points': self._points.tolist(),
            'labels': None if self._labels is None else list(self._labels),
            'convention': self._convention,
        }
        return return_dict

    @classmethod
    def __from_dict__(cls, from_dict: dict) -> Self:
        """
        Load from a dict created by __to_dict__().
        :param from_dict: Dict: The dict to load from.
        :raises DataValidationError: If a key is missing.
        :return: PointSet
        """
        try:
            return cls(from_dict['points'], labels=from_dict['labels'], convention=from_dict['convention'])
        except KeyError as e:
            error: str = "Invalid dict passed to __from_dict__: missing %s" % str(e)
            raise DataValidationError(error, exception=e)

#########################################
# Methods:
#########################################
    def exact_distance(self, u: int, v: int) -> float:
        """
        The normalized squared distance ||x_u - x_v||^2 / m.
        :param u: Int: The first point index.
        :param v: Int: The second point index.
        :raises IndexError: If an index is out of range.
        :return: Float: A value in [0, 1].
        """
        self.check_index(u)
        self.check_index(v)
        difference = self._points[u] - self._points[v]
        return float(np.mean(difference * difference))

    def distance_matrix(self) -> np.ndarray:
        """
        All pairwise normalized squared distances, computed once and cached. Rows use the same expression as
        exact_distance().
        :return: np.ndarray: Read only n x n matrix.
        """
        if self._distance_matrix is None:
            matrix = np.empty((self.n, self.n), dtype=np.float64)
            for u in range(self.n):
                difference = self._points - self._points[u]
                matrix[u] = np.mean(difference * difference, axis=1)
            matrix = np.minimum(matrix, matrix.T)
            np.fill_diagonal(matrix, 0.0)
            matrix.flags.writeable = False
            self._distance_matrix = matrix
        return self._distance_matrix

    def dimension_values(self, u: int, v: int) -> np.ndarray:
        """
        Per-dimension squared differences |[x_u]_j - [x_v]_j|^2 for every j.
        :param u: Int: The first point index.
        :param v: Int: The second point index.
        :return: np.ndarray: Length m vector.
        """
        difference = self._points[u] - self._points[v]
        return difference * difference

    def subset(self, indices: Sequence[int]) -> Self:
        """
        A new point set made of the given rows, coordinates unchanged.
        :param indices: Sequence[int]: Row indices, in the order wanted.
        :return: PointSet
        """
        rows = list(indices)
        labels = None if self._labels is None else [self._labels[i] for i in rows]
        return PointSet(self._points[rows], labels=labels, convention=self._convention)

    def check_index(self, index: int) -> None:
        """
        Raise IndexError if index is not a valid point index.
        :param index: Int: The index to check.
        :return: None
        """
        if not 0 <= index < self.n:
            raise IndexError("point index %i out of range [0, %i)." % (index, self.n))
        return

#########################################
# Overrides:
#########################################
    def __len__(self) -> int:
        return self.n

    def __str__(self) -> str:
        return "PointSet(n=%i, m=%i, convention=%s)" % (self.n, self.m, self._convention)

#########################################
# Properties:
#########################################
    @property
    def points(self) -> np.ndarray:
        """
        The normalized coordinates.
        :return: np.ndarray: Read only n x m matrix.
        """
        return self._points

    @property
    def labels(self) -> Optional[tuple[str, ...]]:
        """
        Per-point identifiers, if any.
        :return: Optional[tuple[str, ...]]
        """
        return self._labels

    @property
    def convention(self) -> str:
        """
        Normalization convention, 'centered' or 'unit'.
        :return: Str
        """
        return self._convention

    @property
    def n(self) -> int:
        """
        Number of points.
        :return: Int
        """
        return int(self._points.shape[0])

    @property
    def m(self) -> int:
        """
        Number of dimensions.
        :return: Int
        """
        return int(self._points.shape[1])


def __check_finite__(array: np.ndarray) -> None:
    """
    Raise DataValidationError naming the first non-finite entry.
    :param array: np.ndarray: The matrix to check.
    :return: None
    """
    bad = np.argwhere(~np.isfinite(array))
    if len(bad) > 0:
        row, column = (int(value) for value in bad[0])
        raise DataValidationError("non-finite value in dimension %i" % column, row=row, column=column)
    return


def normalize(points: np.ndarray | Sequence[Sequence[float]],
              convention: str = 'centered',
              labels: Optional[Sequence[str]] = None,
              ) -> PointSet:
    """
    Map each dimension's observed range onto [-1/2, 1/2] ('centered') or [0, 1] ('unit'). Constant dimensions map
    to 0.
    :param points: Array-like: Raw n x m matrix.
    :param convention: Str: 'centered' or 'unit'.
    :param labels: Optional[Sequence[str]]: Per-point identifiers.
    :raises DataValidationError: On a bad shape, or a non-finite entry (named by dimension).
    :return: PointSet
    """
    if convention not in CONVENTIONS.keys():
        raise ParameterError("convention must be one of %s, got '%s'." % (str(list(CONVENTIONS)), convention))
    array = np.array(points, dtype=np.float64)
    if array.ndim == 1:
        array = array.reshape(-1, 1)
    if array.ndim != 2 or array.shape[0] < 2 or array.shape[1] < 1:
        raise DataValidationError("normalize() needs an n x m matrix with n >= 2, m >= 1, got shape %s."
                                  % str(array.shape))
    __check_finite__(array)
    low = array.min(axis=0)
    high = array.max(axis=0)
    spread = high - low
    constant = spread == 0.0
    if common.USE_WARNINGS and bool(np.any(constant)):
        warning: str = "%i constant dimension(s) mapped to 0." % int(np.count_nonzero(constant))
        warn(warning, KCenterWarning)
    safe_spread = np.where(constant, 1.0, spread)
    if convention == 'centered':
        scaled = (array - (low + high) / 2.0) / safe_spread
    else:
        scaled = (array - low) / safe_spread
    scaled[:, constant] = 0.0
    bound_low, bound_high = CONVENTIONS[convention]
    return PointSet(np.clip(scaled, bound_low, bound_high), labels=labels, convention=convention)
