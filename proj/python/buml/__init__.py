from ._core import (
    Diagnostic,
    InputError,
    ModelError,
    check_conformance,
    check_constraints,
    enforce,
    generate,
    generators,
    infer,
    run_cli,
    run_fsm,
    validate_model,
)

__all__ = [
    "Diagnostic",
    "InputError",
    "ModelError",
    "check_conformance",
    "check_constraints",
    "enforce",
    "generate",
    "generators",
    "infer",
    "run_cli",
    "run_fsm",
    "validate_model",
]
