"""exchange-kit: a constructive laboratory for finite exchange-style ring theory.

Everything is exact and everything is re-verified: decompositions return
witnesses, witnesses are checked by independent scans, and the compiled
kernels have a pure-Python twin selected at import.
"""

from ._kernels import BACKEND as kernel_backend
from .descriptors import dump_ring, load_ring, ring_from_descriptor
from .exchange import (
    ChainResult,
    Decomposition,
    ExchangeCertificate,
    exchange_chain,
    exchange_chain_via_quotient,
    first_certificate_violation,
    pi_regular_reduce,
    regularize,
    suitable_decompose,
    transfer_idempotent,
    validate_certificate,
    verify_exchange_ring,
)
from .idempotents import (
    IdempotentFamily,
    StrongIsoWitness,
    family,
    is_left_strongly_iso,
    is_right_strongly_iso,
    lemma1_equivalences,
    orthogonalize,
    power_kill,
    refine_three,
    transport_family,
    unit_from_strong_iso,
)
from .modules import (
    EndoRing,
    FiniteAbelianModule,
    endomorphism_ring,
    lemma8_check,
    module_from_spec,
    module_has_C2,
    modules_up_to,
)
from .radical import (
    ClassificationReport,
    RadicalData,
    classify,
    jacobson_radical,
    lift_idempotent,
    quotient_lift_family,
)
from .rings import (
    CornerRing,
    IdealData,
    MatrixRing,
    ProductRing,
    QuotientRing,
    Ring,
    TableRing,
    ZMod,
    triangular_ring,
)

__version__ = "0.1.0"

__all__ = [
    "kernel_backend", "__version__",
    # rings
    "Ring", "ZMod", "MatrixRing", "ProductRing", "CornerRing",
    "QuotientRing", "TableRing", "IdealData", "triangular_ring",
    "load_ring", "dump_ring", "ring_from_descriptor",
    # idempotent calculus
    "IdempotentFamily", "family", "StrongIsoWitness",
    "is_left_strongly_iso", "is_right_strongly_iso", "unit_from_strong_iso",
    "lemma1_equivalences", "refine_three", "transport_family",
    "orthogonalize", "power_kill",
    # radical
    "RadicalData", "jacobson_radical", "lift_idempotent",
    "quotient_lift_family", "classify", "ClassificationReport",
    # exchange engine
    "Decomposition", "suitable_decompose", "ExchangeCertificate",
    "first_certificate_violation", "validate_certificate",
    "ChainResult", "exchange_chain", "exchange_chain_via_quotient",
    "regularize", "pi_regular_reduce", "transfer_idempotent",
    "verify_exchange_ring",
    # modules
    "FiniteAbelianModule", "module_from_spec", "EndoRing",
    "endomorphism_ring", "module_has_C2", "lemma8_check", "modules_up_to",
]
