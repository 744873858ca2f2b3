from dgmodcat.duality.biduality import bidual_map, dual_of_tensor_iso
from dgmodcat.duality.dualizability import (
    DualizabilityVerdict,
    check_condition_2,
    check_condition_3,
    check_condition_7,
    check_condition_8,
    check_condition_9,
    is_dualizable,
    verify_coevaluation,
)
from dgmodcat.duality.projectivity import GapSearchReport, is_projective_ring_case, search_semiprojective_gap
