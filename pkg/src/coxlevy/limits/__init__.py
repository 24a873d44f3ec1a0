from .bounds import (TightnessParams, check_lemma3_bound, check_tightness_bound,
                     moment_tail_bound, rademacher_tail_exact)
from .conditions import (check_condition_6, check_condition_18_26, check_condition_24,
                         condition_18_constant)
from .convergence import (ConvergenceSchedule, check_lemma4_equivalence, gvg_schedule,
                          point_mass_distance, run_convergence_experiment,
                          run_corollary3_experiment, trend_verdict)
from .presets import REGISTRY, RunSettings, get_experiment, run_experiment
from .reports import FAIL, PASS, Report
