#!/usr/bin/env python3
"""
    File: DSTS.py
    Dimension-sampling Thompson sampling: DS-UCB's vertex rule with a Thompson / LCB mixture over Beta posteriors
    for the center.
"""
try:
    import common
    from OracleSession import OracleSession, OracleModel
    from RunConfig import RunConfig
    from RunResult import RunResult
    from StageState import Arm
    from Solver import ThompsonSolver
except (ModuleNotFoundError, ImportError):
    import PyKCenter.common as common
    from PyKCenter.OracleSession import OracleSession, OracleModel
    from PyKCenter.RunConfig import RunConfig
    from PyKCenter.RunResult import RunResult
    from PyKCenter.StageState import Arm
    from PyKCenter.Solver import ThompsonSolver

# Version check:
common.__version_check__()


class DSTS(ThompsonSolver):
    """
    The estimate and bounds follow the raw dimension value; the Beta posterior follows its Bernoulli conversion.
    Arms that reach the exact fallback leave the candidate set.
    """
    ALGORITHM: str = 'ds-ts'
    MODELS: tuple[OracleModel, ...] = (OracleModel.DS,)

    def _choose_arms(self) -> list[Arm]:
        v = self._stage.top_upper()
        return [(v, self._mixture_center(v))]


def ds_ts(session: OracleSession, config: RunConfig) -> RunResult:
    """
    Run DS-TS.
    :param session: OracleSession: A DS session.
    :param config: RunConfig: The run parameters; config.z is the Thompson weight.
    :raises OracleError: On a session that is not DS.
    :raises RunFailure: If a stage hits the pull cap.
    :return: RunResult
    """
    return DSTS(session, config).run()
