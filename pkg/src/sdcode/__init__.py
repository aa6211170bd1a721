"""Self-dual codes with odd-order automorphisms: construction, low-weight
codeword search, hard-decision iterative decoding and simulation."""

from .ring import RingElement
from .gf2 import BitMatrix
from .codes import (
    BlockWord,
    CodeModel,
    CodeValidationError,
    block_inner,
    build_code,
    expand_circulant,
    extremal_bound,
    pi_project,
    sigma_apply,
)

__version__ = "0.1.0"

__all__ = [
    "RingElement",
    "BitMatrix",
    "BlockWord",
    "CodeModel",
    "CodeValidationError",
    "block_inner",
    "build_code",
    "expand_circulant",
    "extremal_bound",
    "pi_project",
    "sigma_apply",
    "__version__",
]
