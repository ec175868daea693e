"""Direct-sum killing pipeline, its certificates, and an independent verifier."""

from .certificate import KillCertificate, SummandRecord, from_document
from .pipeline import (
    Claim1Report,
    Flavor,
    PipelineAbort,
    SignOracle,
    SignUndefined,
    SummandSpec,
    claim2_state,
    coordinate_zero_subgroup,
    kill_pipeline,
    neg_pos_cones,
    phi_sign,
    phi_sign_lp,
    sign_oracles,
    verify_claim1,
)
from .verify import check_certificate, verify_certificate

__all__ = [
    "Claim1Report",
    "Flavor",
    "KillCertificate",
    "PipelineAbort",
    "SignOracle",
    "SignUndefined",
    "SummandRecord",
    "SummandSpec",
    "check_certificate",
    "claim2_state",
    "coordinate_zero_subgroup",
    "from_document",
    "kill_pipeline",
    "neg_pos_cones",
    "phi_sign",
    "phi_sign_lp",
    "sign_oracles",
    "verify_certificate",
    "verify_claim1",
]
