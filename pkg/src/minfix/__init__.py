"""Search for, predict and certify elements with few fixed points in
primitive permutation groups."""

__version__ = "0.1.0"

from .perm import Permutation, fix_count, parse_cycles, perm_from_cycles  # noqa: E402
from .group import PermGroup  # noqa: E402
from .verifier import WitnessCertificate, neumann_witness, primitivity_report  # noqa: E402

__all__ = ["Permutation", "PermGroup", "WitnessCertificate", "fix_count", "neumann_witness",
           "parse_cycles", "perm_from_cycles", "primitivity_report", "__version__"]
