#!/usr/bin/env python3
"""
    File: NSTS.py
    Noisy-distance Thompson sampling. Two vertices per round: the one with the largest estimate and, among the
    rest, the one with the largest upper bound.
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


class NSTS(ThompsonSolver):
    """
    Gaussian posteriors and Gaussian KL-racing bounds on NS sessions; Beta posteriors and Bernoulli KL-racing bounds
    on Bernoulli sessions. Each chosen vertex gets its own mixture draw.
    """
    ALGORITHM: str = 'ns-ts'
    MODELS: tuple[OracleModel, ...] = (OracleModel.NS, OracleModel.BERNOULLI)

    def _choose_arms(self) -> list[Arm]:
        leader = self._stage.top_estimate()
        chosen = [leader]
        challenger = self._stage.top_upper(excluding=leader)
        if challenger is not None:
            chosen.append(challenger)
        return [(v, self._mixture_center(v)) for v in chosen]


def ns_ts(session: OracleSession, config: RunConfig) -> RunResult:
    """
    Run NS-TS.
    :param session: OracleSession: An NS or Bernoulli session.
    :param config: RunConfig: The run parameters; config.z is the Thompson weight.
    :raises OracleError: On a DS session.
    :raises RunFailure: If a stage hits the pull cap.
    :return: RunResult
    """
    return NSTS(session, config).run()
