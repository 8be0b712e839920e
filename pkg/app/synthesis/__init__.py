from app.synthesis.csd import CsdBlocks, csd_modified
from app.synthesis.multiplexor import multiplexed_rotation
from app.synthesis.synth import (
    complete_isometry, demultiplex, synth_isometry, synth_unitary, synth_zero_controlled, zero_controlled_circuit,
)

__all__ = [
    "CsdBlocks", "csd_modified", "multiplexed_rotation",
    "complete_isometry", "demultiplex", "synth_isometry", "synth_unitary",
    "synth_zero_controlled", "zero_controlled_circuit",
]
