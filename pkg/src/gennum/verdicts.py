"""Three-valued outcomes for claims that finite data cannot settle absolutely.

A ``Verdict`` is one of:

* ``PROVEN`` / ``REFUTED`` -- decided exactly in the representation
  (e.g. an identity between truncation-free series).
* ``HOLDS_TO_ORDER`` -- the claim holds up to ``O(eps^order)`` or on the
  tested window; the order and window are part of the verdict.
* ``FAILS_AT_ORDER`` -- a concrete witness violates the claim at the given
  order.
* ``INCONCLUSIVE`` -- the data did not support a stable decision; the reason
  is recorded.

Every non-PROVEN verdict carries its evidence.
"""

from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction


class Kind(Enum):
    PROVEN = "proven"
    HOLDS_TO_ORDER = "holds_to_order"
    REFUTED = "refuted"
    FAILS_AT_ORDER = "fails_at_order"
    INCONCLUSIVE = "inconclusive"


@dataclass(frozen=True)
class Verdict:
    kind: Kind
    order: object = None          # Fraction or float order, when relevant
    window: tuple = None          # (kmin, kmax) of the tested window
    witness: object = None        # counterexample data for negative verdicts
    reason: str = ""
    evidence: dict = field(default_factory=dict)

    @property
    def holds(self) -> bool:
        """True for PROVEN and HOLDS_TO_ORDER."""
        return self.kind in (Kind.PROVEN, Kind.HOLDS_TO_ORDER)

    @property
    def fails(self) -> bool:
        return self.kind in (Kind.REFUTED, Kind.FAILS_AT_ORDER)

    def __str__(self):
        bits = [self.kind.value]
        if self.order is not None:
            bits.append(f"order={self.order}")
        if self.window is not None:
            bits.append(f"window={self.window}")
        if self.witness is not None:
            bits.append(f"witness={self.witness}")
        if self.reason:
            bits.append(self.reason)
        return "Verdict(" + ", ".join(str(b) for b in bits) + ")"


def proven(**kw) -> Verdict:
    return Verdict(Kind.PROVEN, **kw)


def refuted(witness=None, **kw) -> Verdict:
    return Verdict(Kind.REFUTED, witness=witness, **kw)


def holds_to_order(order, **kw) -> Verdict:
    if isinstance(order, int):
        order = Fraction(order)
    return Verdict(Kind.HOLDS_TO_ORDER, order=order, **kw)


def fails_at_order(order, witness=None, **kw) -> Verdict:
    if isinstance(order, int):
        order = Fraction(order)
    return Verdict(Kind.FAILS_AT_ORDER, order=order, witness=witness, **kw)


def inconclusive(reason, **kw) -> Verdict:
    return Verdict(Kind.INCONCLUSIVE, reason=reason, **kw)
