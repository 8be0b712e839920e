from app.semantics.evaluator import eval_unitary, eval_cptp, embed_in_ground, evaluate
from app.semantics.checks import Tolerance, matrices_equal, max_deviation, is_unitary, is_isometry, is_cptp, choi_matrix

__all__ = [
    "eval_unitary", "eval_cptp", "embed_in_ground", "evaluate", "Tolerance", "matrices_equal",
    "max_deviation", "is_unitary", "is_isometry", "is_cptp", "choi_matrix",
]
