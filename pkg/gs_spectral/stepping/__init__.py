from .imex import (
    SolverState,
    StepperConfig,
    TimeGrid,
    Trajectory,
    diffusion_factors,
    initialize,
    max_stage_amplification,
    run,
    stage1_explicit,
    stage1_update,
    stage2_implicit,
    stage2_update,
    whole_step_amplification,
)
from .observers import ErrorRecorder, ReferenceRecorder, ReferenceTrajectory, SnapshotWriter
