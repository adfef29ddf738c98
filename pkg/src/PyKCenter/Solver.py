#!/usr/bin/env python3
"""
    File: Solver.py
    Stage-wise solver skeleton shared by every adaptive k-center solver.
"""
import csv
from typing import Optional
try:
    from common import __type_error__
    import common
    from Exceptions import OracleError, ParameterError, RunFailure
    from CenterSet import CenterSet
    from OracleSession import OracleSession, OracleModel
    from RunConfig import RunConfig
    from RunResult import RunResult, StageReport
    from Confidence import CIConfig, CIFamily
    from Posteriors import BetaPosterior, GaussianPosterior
    from ArmState import ArmState
    from StageState import StageState, Arm
except (ModuleNotFoundError, ImportError):
    from PyKCenter.common import __type_error__
    import PyKCenter.common as common
    from PyKCenter.Exceptions import OracleError, ParameterError, RunFailure
    from PyKCenter.CenterSet import CenterSet
    from PyKCenter.OracleSession import OracleSession, OracleModel
    from PyKCenter.RunConfig import RunConfig
    from PyKCenter.RunResult import RunResult, StageReport
    from PyKCenter.Confidence import CIConfig, CIFamily
    from PyKCenter.Posteriors import BetaPosterior, GaussianPosterior
    from PyKCenter.ArmState import ArmState
    from PyKCenter.StageState import StageState, Arm

# Version check:
common.__version_check__()


class KCenterSolver(object):
    """
    Base class: picks the first center, runs k - 1 stages, marks stage boundaries on the session and collects the
    result. Subclasses implement _begin_stage() and _run_stage().
    """
    ALGORITHM: str = 'solver'
    MODELS: tuple[OracleModel, ...] = (OracleModel.DS, OracleModel.NS, OracleModel.BERNOULLI)

    def __init__(self, session: OracleSession, config: RunConfig) -> None:
        """
        Initialize the solver.
        :param session: OracleSession: The oracle, owned by this run.
        :param config: RunConfig: The run parameters.
        :raises TypeError: If an invalid type is passed.
        :raises OracleError: If the session's model does not suit the solver.
        :raises ParameterError: If k or the first center do not fit the data.
        """
        if not isinstance(session, OracleSession):
            __type_error__("session", "OracleSession", session)
        elif not isinstance(config, RunConfig):
            __type_error__("config", "RunConfig", config)
        if session.model not in self.MODELS:
            raise OracleError("%s needs a %s session, got %s." % (
                self.ALGORITHM, " or ".join(model.value for model in self.MODELS), session.model.value))
        if config.k > session.n:
            raise ParameterError("k = %i exceeds n = %i." % (config.k, session.n))
        if isinstance(config.first_center, int) and config.first_center >= session.n:
            raise ParameterError("first center %i out of range [0, %i)." % (config.first_center, session.n))
        self._session: OracleSession = session
        self._config: RunConfig = config
        self._n: int = session.n
        self._centers: list[int] = []
        return

    def _first_center(self) -> int:
        if self._config.first_center == 'random':
            return int(self._session.policy_rng.integers(self._n))
        return int(self._config.first_center)

    def _begin_stage(self, center: int) -> None:
        """Register a new center and make the mandated first query of every vertex against it."""
        raise NotImplementedError

    def _run_stage(self, stage: int) -> tuple[int, int, float]:
        """Run one stage; return (next center, rounds, final margin)."""
        raise NotImplementedError

    def run(self) -> RunResult:
        """
        Run all stages.
        :raises RunFailure: If a stage hits the pull cap.
        :return: RunResult: k centers in stage order and the ledger.
        """
        first = self._first_center()
        self._centers = [first]
        reports: list[StageReport] = []
        for stage in range(1, self._config.k):
            start = self._session.query_count
            self._begin_stage(self._centers[-1])
            center, rounds, margin = self._run_stage(stage)
            self._centers.append(center)
            self._session.mark_stage()
            reports.append(StageReport(stage, center, rounds, self._session.query_count - start, margin))
        return RunResult(self.ALGORITHM, CenterSet(self._centers, n=self._n), self._session.snapshot_ledger(),
                         reports)

    @property
    def session(self) -> OracleSession:
        """The oracle session."""
        return self._session

    @property
    def config(self) -> RunConfig:
        """The run parameters."""
        return self._config


class ConfidenceSolver(KCenterSolver):
    """
    Solvers that keep confidence bounds per arm and stop a stage once the incumbent's lower bound beats every
    other vertex's upper bound. Subclasses choose which arms to pull each round.
    """
    DEFAULT_CI: dict[OracleModel, CIFamily] = {
        OracleModel.DS: CIFamily.ITERATED_LOG_CALPHA,
        OracleModel.NS: CIFamily.KL_RACING,
        OracleModel.BERNOULLI: CIFamily.KL_RACING,
    }

    def __init__(self, session: OracleSession, config: RunConfig) -> None:
        KCenterSolver.__init__(self, session, config)
        ci = config.ci if config.ci is not None else CIConfig(self.DEFAULT_CI[session.model])
        self._ci: CIConfig = ci.with_delta_prime(config.delta_prime(self._n))
        # Gaussian rewards carry their variance, [0, 1] rewards carry None:
        self._sigma2: Optional[float] = None
        if session.model == OracleModel.NS:
            self._sigma2 = max(session.noise_sigma2, common.VARIANCE_FLOOR)
        self._max_pulls: Optional[int] = None
        if session.model == OracleModel.DS:
            self._max_pulls = session.m if config.max_pulls is None else config.max_pulls
        self._arms: dict[Arm, ArmState] = {}
        self._stage: StageState = StageState(self._n, self._arms)
        self._stage_pulls: int = 0
        self._margin_trace: list[list[float]] = []
        return

    def _new_posterior(self) -> Optional[BetaPosterior | GaussianPosterior]:
        return None

    def _observe(self, arm: ArmState) -> None:
        """Query the oracle once for arm and fold the reward in."""
        reward = self._session.reward(arm.v, arm.s)
        arm.add_reward(reward)
        return

    def _pull(self, arm: ArmState) -> None:
        """
        Pull an arm, or run the exact fallback once it has max_pulls rewards, then refresh its bounds.
        """
        if arm.exact:
            return
        self._stage_pulls += 1
        if self._stage_pulls > self._config.stage_cap:
            raise RunFailure("%s stage %i hit the pull cap %i." % (self.ALGORITHM, len(self._centers),
                                                                  self._config.stage_cap),
                             stage=len(self._centers), pulls=self._stage_pulls)
        if self._max_pulls is not None and arm.pulls >= self._max_pulls:
            arm.make_exact(self._session.exact_fallback(arm.v, arm.s))
            self._stage.discard_candidate((arm.v, arm.s))
            return
        self._observe(arm)
        lower, upper = self._ci.interval(arm.estimate, arm.pulls, self._sigma2)
        arm.set_bounds(lower, upper)
        return

    def _begin_stage(self, center: int) -> None:
        self._stage_pulls = 0
        self._margin_trace.append([])
        self._stage.add_center(center)
        for v in self._stage.vertices:
            arm = ArmState(v, center, self._new_posterior())
            self._arms[(v, center)] = arm
            self._stage.add_candidate((v, center))
            self._pull(arm)
        for v in self._stage.vertices:
            self._stage.refresh(v)
        return

    def _lcb_center(self, v: int) -> int:
        """The center whose arm from v has the smallest lower bound, lowest index on ties."""
        return min(self._stage.centers, key=lambda s: (self._arms[(v, s)].lcb, s))

    def _choose_arms(self) -> list[Arm]:
        """The arms to pull this round."""
        raise NotImplementedError

    def _run_stage(self, stage: int) -> tuple[int, int, float]:
        rounds = 0
        while True:
            chosen = self._stage.resolution()
            if chosen is not None:
                return chosen, rounds, self._stage.margin()
            for v, s in self._choose_arms():
                self._pull(self._arms[(v, s)])
                self._stage.refresh(v)
            rounds += 1
            self._margin_trace[-1].append(self._stage.margin())

    def dump_arm_table(self, path: str) -> None:
        """
        Write every arm as a (v, s, t, d_hat, L, U) CSV row.
        :param path: Str: The output path.
        :return: None
        """
        with open(path, 'w', newline='') as file_handle:
            writer = csv.writer(file_handle, lineterminator='\n')
            writer.writerow(['v', 's', 't', 'd_hat', 'L', 'U'])
            for key in sorted(self._arms):
                writer.writerow(self._arms[key].row())
        return

    @property
    def arms(self) -> dict[Arm, ArmState]:
        """The arm table."""
        return self._arms

    @property
    def margin_trace(self) -> list[list[float]]:
        """The stopping margin after every round, one list per stage."""
        return [list(trace) for trace in self._margin_trace]

    @property
    def stage_state(self) -> StageState:
        """The current stage aggregates."""
        return self._stage

    @property
    def ci(self) -> CIConfig:
        """The confidence interval config in use, delta_prime filled in."""
        return self._ci


class ThompsonSolver(ConfidenceSolver):
    """
    Confidence solvers that pick a vertex's center by a Thompson / LCB mixture: with probability z the center whose
    posterior sample is smallest, otherwise the lowest-LCB center.
    """
    DEFAULT_CI: dict[OracleModel, CIFamily] = {
        OracleModel.DS: CIFamily.KL_RACING,
        OracleModel.NS: CIFamily.KL_RACING,
        OracleModel.BERNOULLI: CIFamily.KL_RACING,
    }
    # Variance proxy for [0, 1] rewards in the Gaussian posterior:
    BOUNDED_VARIANCE: float = 0.25

    def __init__(self, session: OracleSession, config: RunConfig) -> None:
        ConfidenceSolver.__init__(self, session, config)
        posterior = config.ts_posterior
        if posterior == 'auto':
            posterior = 'gaussian' if session.model == OracleModel.NS else 'beta'
        self._posterior_family: str = posterior
        return

    def _new_posterior(self) -> BetaPosterior | GaussianPosterior:
        if self._posterior_family == 'beta':
            return BetaPosterior()
        return GaussianPosterior()

    def _observe(self, arm: ArmState) -> None:
        reward = self._session.reward(arm.v, arm.s)
        arm.add_reward(reward)
        if self._posterior_family == 'beta':
            if self._session.model == OracleModel.BERNOULLI:
                arm.posterior.update(int(reward))
            else:
                arm.posterior.update(self._session.convert_bernoulli(min(max(reward, 0.0), 1.0)))
        else:
            noise = self._sigma2 if self._sigma2 is not None else self.BOUNDED_VARIANCE
            arm.posterior.update(arm.estimate, arm.pulls - 1, noise)
        return

    def _mixture_center(self, v: int) -> int:
        """
        Draw z_t ~ Ber(z); on success take the center with the smallest posterior sample among v's arms that are
        not exact, else the lowest-LCB center.
        :param v: Int: The vertex.
        :return: Int: The center.
        """
        rng = self._session.policy_rng
        if self._config.z > 0 and rng.random() < self._config.z:
            best_center, best_sample = -1, 0.0
            for s in self._stage.centers:
                arm = self._arms[(v, s)]
                if arm.exact:
                    continue
                sample = arm.posterior.sample(rng)
                if best_center < 0 or sample < best_sample:
                    best_center, best_sample = s, sample
            if best_center >= 0:
                return best_center
        return self._lcb_center(v)

    @property
    def posterior_family(self) -> str:
        """'beta' or 'gaussian'."""
        return self._posterior_family
