from app.rules.catalog import CATALOG, get_rule, instantiate, rules_for
from app.rules.schema import Rule, RuleInstance, RuleStatus, Side
from app.rules.soundness import check_rule, check_theory, derived_identity_suite, discard_iso_check, soundness_check

__all__ = [
    "CATALOG", "get_rule", "instantiate", "rules_for", "Rule", "RuleInstance", "RuleStatus", "Side",
    "check_rule", "check_theory", "derived_identity_suite", "discard_iso_check", "soundness_check",
]
