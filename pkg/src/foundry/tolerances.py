"""Single table of numerical tolerances and fixed numerical parameters.

Reports, solvers and the test-suite all read from ``TOL``; nothing else in
the package hard-codes a pass/fail threshold.
"""
from dataclasses import asdict, dataclass


@dataclass(frozen=True)
class Tolerances:
    const_identity: float = 1e-12
    pole_radius_factor: float = 1e-8
    trivial_multiplier: float = 1e-6
    degenerate_alpha_factor: float = 1e-6
    monodromy: float = 1e-10
    additive_consistency: float = 1e-10

    hill_step: float = 1e-4
    hill_residual: float = 1e-6

    contour_nodes: int = 256
    contour_radius_factor: float = 1e-2

    on_curve: float = 1e-7
    off_curve: float = 1e-4
    control_log_distance: float = 1e-2
    puncture_radius_factor: float = 0.05
    on_curve_fraction: float = 0.99
    kernel_rank: float = 1e-8
    kp_integrality: float = 1e-8

    closedness: float = 1e-10
    translation_defect: float = 1e-8
    conformality: float = 1e-10
    minimality: float = 1e-9
    end_laurent: float = 1e-9
    degenerate_lattice: float = 1e-10
    newton_iterations: int = 50
    newton_damping: float = 0.5
    clip_radius_factor: float = 0.05
    common_zero_floor: float = 0.0

    def as_dict(self) -> dict:
        return asdict(self)


TOL = Tolerances()
