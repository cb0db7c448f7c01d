from ._core import (
    OrdertopError,
    Poset,
    StepFunction,
    complete,
    converges,
    olejcek_certificates,
    pairing,
    random_poset,
    run_cli,
    sigma_pq_separation,
    t5_escape,
    verify_dm,
    wolk_certificates,
)

__all__ = [
    "OrdertopError",
    "Poset",
    "StepFunction",
    "complete",
    "converges",
    "olejcek_certificates",
    "pairing",
    "random_poset",
    "run_cli",
    "sigma_pq_separation",
    "t5_escape",
    "verify_dm",
    "wolk_certificates",
]
