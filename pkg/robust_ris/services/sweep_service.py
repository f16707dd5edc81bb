"""
Sweep Service
Monte-Carlo sweeps of the compared schemes over one system parameter
"""
from typing import List, Optional, Sequence, Union
import logging
import time

import numpy as np
from joblib import Parallel, delayed
from tqdm import tqdm

from robust_ris.data_processor import ReportProcessor
from robust_ris.exceptions import InvalidConfigError, RobustRisError
from robust_ris.models.channels import gen_channel_estimate
from robust_ris.models.system import distortion_constants, with_updates
from robust_ris.schemas.bench import Scheme, SweepReport, SweepSpec, SweepVariable, TrialOutcome
from robust_ris.schemas.geometry import Geometry
from robust_ris.schemas.solution import SolverOptions
from robust_ris.schemas.system import SystemConfig
from robust_ris.services.scheme_service import SchemeService
from robust_ris.utils.helpers import dbm_to_watts, trial_rng

logger = logging.getLogger(__name__)

SCHEME_KEYS = {scheme: index + 1 for index, scheme in enumerate(Scheme)}


def apply_sweep_value(
    cfg: SystemConfig, variable: Union[SweepVariable, str], value: float
) -> SystemConfig:
    """Config with the swept parameter set to value"""
    try:
        variable = SweepVariable(variable)
    except ValueError as e:
        raise InvalidConfigError(f"unknown sweep variable {variable!r}") from e

    if variable == SweepVariable.POWER_DBM:
        return with_updates(cfg, power=dbm_to_watts(value))
    if variable in (SweepVariable.BITS, SweepVariable.N_RIS):
        if float(value) != int(value):
            raise InvalidConfigError(f"{variable.value} must be an integer, got {value}")
        return with_updates(cfg, **{variable.value: int(value)})
    return with_updates(cfg, **{variable.value: float(value)})


def run_trial(
    cfg: SystemConfig,
    geometry: Geometry,
    schemes: Sequence[Scheme],
    options: SolverOptions,
    seed: int,
    value_index: int,
    value: float,
    trial: int,
) -> List[TrialOutcome]:
    """Draw one channel realization and run every scheme on it"""
    est = gen_channel_estimate(cfg, geometry, trial_rng(seed, value_index, trial))
    consts = distortion_constants(cfg.bits)
    service = SchemeService(options)

    outcomes = []
    for scheme in schemes:
        scheme = Scheme(scheme)
        rng = trial_rng(seed, value_index, trial, SCHEME_KEYS[scheme])
        start = time.perf_counter()
        try:
            solution = service.run(scheme, est, cfg, consts, rng)
            outcomes.append(
                TrialOutcome(
                    value_index=value_index, value=value, trial=trial, scheme=scheme,
                    anmse=solution.anmse,
                    iterations=solution.iterations,
                    wallclock_s=time.perf_counter() - start,
                )
            )
        except (RobustRisError, np.linalg.LinAlgError) as e:
            logger.warning(f"Trial {trial} of {scheme.value} at {value} failed: {e}")
            outcomes.append(
                TrialOutcome(
                    value_index=value_index, value=value, trial=trial, scheme=scheme,
                    wallclock_s=time.perf_counter() - start,
                    error=str(e),
                )
            )
    return outcomes


class SweepService:
    """Runs sweeps trial-parallel and aggregates them into reports"""

    def __init__(
        self,
        options: Optional[SolverOptions] = None,
        n_jobs: Optional[int] = None,
        record_timing: bool = False,
        progress: bool = True,
    ):
        self.options = options or SolverOptions()
        self.n_jobs = n_jobs if n_jobs is not None else -1
        self.record_timing = record_timing
        self.progress = progress
        self.processor = ReportProcessor()

    def run(
        self,
        spec: SweepSpec,
        base_cfg: SystemConfig,
        geometry: Geometry,
        schemes: Sequence[Scheme],
    ) -> SweepReport:
        """Every scheme on spec.trials fresh realizations per sweep value"""
        schemes = [Scheme(s) for s in schemes]
        configs = [apply_sweep_value(base_cfg, spec.variable, v) for v in spec.values]
        logger.info(
            f"Sweeping {spec.variable.value} over {len(spec.values)} values, "
            f"{spec.trials} trials, schemes {[s.value for s in schemes]}"
        )

        outcomes: List[TrialOutcome] = []
        parallel = Parallel(n_jobs=self.n_jobs)
        points = tqdm(
            list(enumerate(zip(spec.values, configs))),
            desc=f"sweep {spec.variable.value}",
            disable=not self.progress,
        )
        for value_index, (value, cfg) in points:
            batches = parallel(
                delayed(run_trial)(
                    cfg, geometry, schemes, self.options, spec.seed, value_index, float(value), trial
                )
                for trial in range(spec.trials)
            )
            for batch in batches:
                outcomes.extend(batch)

        failed = sum(o.failed for o in outcomes)
        if failed:
            logger.warning(f"{failed} of {len(outcomes)} scheme runs failed and were excluded")
        return self.processor.aggregate(spec, [s.value for s in schemes], outcomes, self.record_timing)


def run_sweep(
    spec: SweepSpec,
    base_cfg: SystemConfig,
    geometry: Geometry,
    schemes: Sequence[Scheme],
    options: Optional[SolverOptions] = None,
    n_jobs: Optional[int] = None,
    record_timing: bool = False,
    progress: bool = False,
) -> SweepReport:
    """Functional entry point for SweepService.run"""
    service = SweepService(options, n_jobs=n_jobs, record_timing=record_timing, progress=progress)
    return service.run(spec, base_cfg, geometry, schemes)
