#!/usr/bin/env python3
"""
    File: RandomSampling.py
    Uniform arm sampling with the DS-UCB stopping rule. The non-adaptive reference point for query savings.
"""
try:
    import common
    from OracleSession import OracleSession
    from RunConfig import RunConfig
    from RunResult import RunResult
    from StageState import Arm
    from Solver import ConfidenceSolver
except (ModuleNotFoundError, ImportError):
    import PyKCenter.common as common
    from PyKCenter.OracleSession import OracleSession
    from PyKCenter.RunConfig import RunConfig
    from PyKCenter.RunResult import RunResult
    from PyKCenter.StageState import Arm
    from PyKCenter.Solver import ConfidenceSolver

# Version check:
common.__version_check__()


class RandomSampling(ConfidenceSolver):
    """Pull a uniformly random arm that is not yet exact, every round."""
    ALGORITHM: str = 'random'

    def _choose_arms(self) -> list[Arm]:
        candidates = sorted(self._stage.candidates)
        # An empty candidate set means every arm is exact, so the stage has already resolved.
        return [candidates[int(self._session.policy_rng.integers(len(candidates)))]]


def random_sampling(session: OracleSession, config: RunConfig) -> RunResult:
    """
    Run random sampling under any oracle model.
    :param session: OracleSession: The oracle.
    :param config: RunConfig: The run parameters.
    :raises RunFailure: If a stage hits the pull cap.
    :return: RunResult
    """
    return RandomSampling(session, config).run()
