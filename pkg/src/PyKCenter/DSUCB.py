#!/usr/bin/env python3
"""
    File: DSUCB.py
    Dimension-sampling UCB: pull the vertex with the largest upper bound against its lowest-LCB center.
"""
try:
    import common
    from OracleSession import OracleSession, OracleModel
    from RunConfig import RunConfig
    from RunResult import RunResult
    from StageState import Arm
    from Solver import ConfidenceSolver
except (ModuleNotFoundError, ImportError):
    import PyKCenter.common as common
    from PyKCenter.OracleSession import OracleSession, OracleModel
    from PyKCenter.RunConfig import RunConfig
    from PyKCenter.RunResult import RunResult
    from PyKCenter.StageState import Arm
    from PyKCenter.Solver import ConfidenceSolver

# Version check:
common.__version_check__()


class DSUCB(ConfidenceSolver):
    """
    UCB over vertices, LCB over centers. Each arm falls back to an exact distance after max_pulls random-dimension
    queries.
    """
    ALGORITHM: str = 'ds-ucb'
    MODELS: tuple[OracleModel, ...] = (OracleModel.DS,)

    def _choose_arms(self) -> list[Arm]:
        v = self._stage.top_upper()
        return [(v, self._lcb_center(v))]


def ds_ucb(session: OracleSession, config: RunConfig) -> RunResult:
    """
    Run DS-UCB.
    :param session: OracleSession: A DS session.
    :param config: RunConfig: The run parameters.
    :raises OracleError: On a session that is not DS.
    :raises RunFailure: If a stage hits the pull cap.
    :return: RunResult
    """
    return DSUCB(session, config).run()
