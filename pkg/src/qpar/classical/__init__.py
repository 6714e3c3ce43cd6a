"""
Classical - p-并行经典查询模型、精确求解器、算法与对手
"""

from .model import (
    AdaptiveAnswerer,
    Decision,
    InputOracle,
    Positions,
    QueryStrategy,
    ReadAll,
    Round,
    Sequential,
    Transcript,
    checked_completion,
    run_strategy,
)
from .minimax import (
    GameSolver,
    MinimaxAdversary,
    OptimalStrategy,
    distributional_success,
    exact_parallel_D,
    optimal_transcript,
)
from .pointer import (
    pointer_adversary,
    pointer_det_algorithm,
    pointer_random_experiment,
    random_permutation_pointer_input,
)
from .cor import cor_det_adversary, distinguishing_advantage, hybrid_distribution
from .cheatsheet import (
    cheatsheet_det_adversary,
    cheatsheet_parallel_algorithm,
    cheatsheet_sequential_algorithm,
)
from .two_adaptive import (
    DJRandomSolver,
    dt_tables,
    fixed_bicert_distribution,
    sample_hard_instances,
    two_adaptive_det_adversary,
    two_adaptive_rand_algorithm,
    two_adaptive_success,
)
from .lifting import build_ksum_lift, composition_strategy, star_query_count, star_statistics

__all__ = [
    "AdaptiveAnswerer",
    "Decision",
    "InputOracle",
    "Positions",
    "QueryStrategy",
    "ReadAll",
    "Round",
    "Sequential",
    "Transcript",
    "checked_completion",
    "run_strategy",
    "GameSolver",
    "MinimaxAdversary",
    "OptimalStrategy",
    "distributional_success",
    "exact_parallel_D",
    "optimal_transcript",
    "pointer_adversary",
    "pointer_det_algorithm",
    "pointer_random_experiment",
    "random_permutation_pointer_input",
    "cor_det_adversary",
    "distinguishing_advantage",
    "hybrid_distribution",
    "cheatsheet_det_adversary",
    "cheatsheet_parallel_algorithm",
    "cheatsheet_sequential_algorithm",
    "DJRandomSolver",
    "dt_tables",
    "fixed_bicert_distribution",
    "sample_hard_instances",
    "two_adaptive_det_adversary",
    "two_adaptive_rand_algorithm",
    "two_adaptive_success",
    "build_ksum_lift",
    "composition_strategy",
    "star_query_count",
    "star_statistics",
]
