"""Level-k pre-quantization decision procedures.

A conjugacy class with alcove parameter xi admits a level-k pre-quantization
exactly when k*xi is a weight; homology torsion gives a divisibility rule;
fusion products inherit pre-quantizability componentwise.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence, Union

from .alcove import _membership, weight_lattice_contains
from .errors import InputError
from .rational import CartanVector, format_vector, scale
from .roots import RootSystem


@dataclass(frozen=True)
class PrequantVerdict:
    """Outcome of a level-k integrality test.

    On success the witness is the weight k*xi; on failure it is a short tag
    naming the violated condition.
    """

    answer: bool
    level: int
    witness: Union[CartanVector, str]

    def to_json(self) -> dict:
        witness = (
            self.witness
            if isinstance(self.witness, str)
            else format_vector(self.witness)
        )
        return {"answer": self.answer, "level": self.level, "witness": witness}


def class_prequantizable(rs: RootSystem, xi: CartanVector, k: int) -> PrequantVerdict:
    """Decide whether the conjugacy class of exp(xi) is pre-quantizable at
    level k, i.e. whether k*xi lands in the weight lattice."""
    if k < 1:
        raise InputError("invalid-level", f"level must be >= 1, got {k}")
    if len(xi) != rs.rank:
        raise InputError("dimension-mismatch", f"expected length {rs.rank}")
    if not _membership(rs, xi, 1).contains:
        raise InputError(
            "not-in-alcove",
            f"{xi} is not a conjugacy-class parameter (outside the alcove)",
        )
    candidate = scale(k, xi)
    if weight_lattice_contains(rs, candidate):
        return PrequantVerdict(True, k, candidate)
    return PrequantVerdict(False, k, "not-in-weight-lattice")


def torsion_level_admissible(r: int, k: int) -> bool:
    """Divisibility rule for r-torsion second homology: level k works iff
    r divides k (r = 1 encodes trivial H_2 and always passes)."""
    if r < 1:
        raise InputError("invalid-torsion", f"torsion exponent must be >= 1, got {r}")
    if k < 1:
        raise InputError("invalid-level", f"level must be >= 1, got {k}")
    return k % r == 0


def fusion_prequantizable(verdicts: Sequence[PrequantVerdict]) -> bool:
    """A fusion product is pre-quantizable iff every factor is.

    The empty list encodes a bare product of doubles, which carries a
    quasi-line bundle at every level, so it passes.
    """
    levels = {v.level for v in verdicts}
    if len(levels) > 1:
        raise InputError("mixed-levels", f"verdicts at different levels: {sorted(levels)}")
    return all(v.answer for v in verdicts)
