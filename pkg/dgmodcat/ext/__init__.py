from dgmodcat.ext.battery import (
    Battery,
    SemiflatVerdict,
    SemiflatWitness,
    ShortExactSequence,
    acyclic_defect,
    is_semi_flat,
    recheck_witness,
    sequence_defect,
)
from dgmodcat.ext.presentation import (
    ProjectivePresentation,
    ext1,
    identity_cone,
    is_acyclic,
    is_semi_projective,
    projective_presentation,
)
