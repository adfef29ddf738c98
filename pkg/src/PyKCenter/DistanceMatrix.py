#!/usr/bin/env python3
"""
    File: DistanceMatrix.py
"""
from typing import Sequence
from warnings import warn
import numpy as np
try:
    import common
    from Exceptions import DataValidationError, KCenterWarning
except (ModuleNotFoundError, ImportError):
    import PyKCenter.common as common
    from PyKCenter.Exceptions import DataValidationError, KCenterWarning

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
            Self = TypeVar("Self", bound="DistanceMatrix")
        except ImportError:
            print("FATAL: Unable to define Self.")
            exit(129)


class DistanceMatrix(object):
    """
    Class to store a precomputed symmetric distance matrix with entries in [0, 1]. Immutable once built.
    """
##########################
# Initialize:
##########################
    def __init__(self, d: np.ndarray | Sequence[Sequence[float]]) -> None:
        """
        Initialize and validate the matrix.
        :param d: Array-like: n x n distances.
        :raises DataValidationError: If not square, not symmetric within common.SYMMETRY_TOLERANCE, non-zero on the
            diagonal, or an entry lies outside [0, 1] by more than common.BOUNDARY_CLAMP.
        """
        matrix = np.array(d, dtype=np.float64)
        if matrix.ndim != 2 or matrix.shape[0] != matrix.shape[1]:
            raise DataValidationError("distance matrix must be square, got shape %s." % str(matrix.shape))
        if matrix.shape[0] < 2:
            raise DataValidationError("distance matrix needs at least 2 points, got %i." % matrix.shape[0])
        bad = np.argwhere(~np.isfinite(matrix))
        if len(bad) > 0:
            raise DataValidationError("non-finite distance", row=int(bad[0][0]), column=int(bad[0][1]))
        asymmetric = np.argwhere(np.abs(matrix - matrix.T) > common.SYMMETRY_TOLERANCE)
        if len(asymmetric) > 0:
            row, column = (int(value) for value in asymmetric[0])
            raise DataValidationError("asymmetric entries %r != %r" % (float(matrix[row, column]),
                                                                      float(matrix[column, row])),
                                      row=row, column=column)
        off_diagonal = np.argwhere(np.abs(np.diag(matrix)) > common.BOUNDARY_CLAMP)
        if len(off_diagonal) > 0:
            index = int(off_diagonal[0][0])
            raise DataValidationError("non-zero diagonal entry %r" % float(matrix[index, index]),
                                      row=index, column=index)
        out_of_range = np.argwhere((matrix < -common.BOUNDARY_CLAMP) | (matrix > 1.0 + common.BOUNDARY_CLAMP))
        if len(out_of_range) > 0:
            row, column = (int(value) for value in out_of_range[0])
            raise DataValidationError("distance %r outside [0, 1]" % float(matrix[row, column]), row=row, column=column)
        clamped = int(np.count_nonzero((matrix < 0.0) | (matrix > 1.0)))
        if common.USE_WARNINGS and clamped > 0:
            warning: str = "%i distance(s) clamped to [0, 1]." % clamped
            warn(warning, KCenterWarning)
        matrix = np.clip((matrix + matrix.T) / 2.0, 0.0, 1.0)
        np.fill_diagonal(matrix, 0.0)
        matrix.flags.writeable = False
        self._d: np.ndarray = matrix
        return

##################################
# Load / Save functions:
##################################
    def __to_dict__(self) -> dict:
        """
        Create a JSON / Pickle friendly dict.
        :return: Dict.
        """
        return {'d': self._d.tolist()}

    @classmethod
    def __from_dict__(cls, from_dict: dict) -> Self:
        """
        Load from a dict created by __to_dict__().
        :param from_dict: Dict: The dict to load from.
        :raises DataValidationError: If the 'd' key is missing.
        :return: DistanceMatrix
        """
        try:
            return cls(from_dict['d'])
        except KeyError as e:
            error: str = "Invalid dict passed to __from_dict__: missing %s" % str(e)
            raise DataValidationError(error, exception=e)

#########################################
# Methods:
#########################################
    def exact_distance(self, u: int, v: int) -> float:
        """
        Look up d[u][v].
        :param u: Int: The first index.
        :param v: Int: The second index.
        :raises IndexError: If an index is out of range.
        :return: Float
        """
        self.check_index(u)
        self.check_index(v)
        return float(self._d[u, v])

    def distance_matrix(self) -> np.ndarray:
        """
        The validated matrix.
        :return: np.ndarray: Read only n x n matrix.
        """
        return self._d

    def subset(self, indices: Sequence[int]) -> Self:
        """
        The sub-matrix on the given indices, in the order given.
        :param indices: Sequence[int]: The point indices to keep.
        :return: DistanceMatrix
        """
        rows = np.array(list(indices), dtype=np.intp)
        return DistanceMatrix(self._d[np.ix_(rows, rows)])

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
        return "DistanceMatrix(n=%i)" % self.n

#########################################
# Properties:
#########################################
    @property
    def d(self) -> np.ndarray:
        """
        The distances.
        :return: np.ndarray
        """
        return self._d

    @property
    def n(self) -> int:
        """
        Number of points.
        :return: Int
        """
        return int(self._d.shape[0])

    @property
    def m(self) -> int:
        """
        A matrix answers a pair at once, so it counts as a single dimension when charging exact lookups.
        :return: Int: Always 1.
        """
        return 1
