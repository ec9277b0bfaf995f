"""Cairo-Prismatic pentagonal tiling toolkit.

Thin python wrapper over the C++ core: least-perimeter polygon construction
with prescribed angles, tiling patch generation with self-validation,
perimeter-ratio measurement, and the numerical verification suite.
"""

from _pentile import (  # noqa: F401
    Patch,
    PentileError,
    circumscribed_polygon,
    closed_form_perimeter,
    constraint_identity_check,
    convexity_scan,
    eval_P,
    generate,
    grad_P,
    lemma32_discriminant,
    lemma33_discriminant,
    load_patch,
    polygon_metrics,
    prototile,
    q_bound_check,
    verify,
    __version__,
)

__all__ = [
    "Patch",
    "PentileError",
    "circumscribed_polygon",
    "closed_form_perimeter",
    "constraint_identity_check",
    "convexity_scan",
    "eval_P",
    "generate",
    "grad_P",
    "lemma32_discriminant",
    "lemma33_discriminant",
    "load_patch",
    "polygon_metrics",
    "prototile",
    "q_bound_check",
    "verify",
    "__version__",
]
