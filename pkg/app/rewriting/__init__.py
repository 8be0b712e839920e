from app.rewriting.derivation import (
    Derivation, DerivationStep, parse_derivation, read_derivation, replay, replay_report, shipped_derivations,
)
from app.rewriting.engine import (
    BULLET, Direction, Rewrite, apply_bullet, apply_match, apply_rule, candidate_matches,
    deformation_normal_form, rewrite_pass, same_up_to_deformation,
)
from app.rewriting.matcher import Match, find_matches, hinted_match

__all__ = [
    "BULLET", "Derivation", "DerivationStep", "Direction", "Match", "Rewrite",
    "apply_bullet", "apply_match", "apply_rule", "candidate_matches", "deformation_normal_form",
    "find_matches", "hinted_match", "parse_derivation", "read_derivation", "replay", "replay_report",
    "rewrite_pass", "same_up_to_deformation", "shipped_derivations",
]
