"""Index coding with coded side information."""

import json
from pkgutil import extend_path

# Lets an in-tree build directory supply the compiled module.
__path__ = extend_path(__path__, __name__)

from ._core import (  # noqa: E402
    BudgetExceeded,
    Instance,
    alpha,
    bound_table,
    concatenated_encoder,
    coset_encoder,
    length_bracket,
    min_rank,
    realizes_ic,
    subspace_existence_prob,
    verify_ecic,
    zippel_ic_prob,
)
from ._core import simulate_json as _simulate_json  # noqa: E402


def simulate(instance, encoder, delta, model, magnitude, **kwargs):
    """Monte-Carlo decoding report as a dict (see the CLI's JSON output)."""
    return json.loads(_simulate_json(instance, encoder, delta, model, magnitude, **kwargs))


__all__ = [
    "BudgetExceeded",
    "Instance",
    "alpha",
    "bound_table",
    "concatenated_encoder",
    "coset_encoder",
    "length_bracket",
    "min_rank",
    "realizes_ic",
    "simulate",
    "subspace_existence_prob",
    "verify_ecic",
    "zippel_ic_prob",
]
