"""Eventually periodic subsets of the grid indices ``k = 1, 2, 3, ...``.

These sets play the role of the parameter subsets ``S`` that generate
idempotents: on the dyadic grid, a set is "large at 0" exactly when it is
infinite, and for eventually periodic sets infiniteness, equality, and all
Boolean operations are decidable.

Canonical form: a period ``P``, a residue mask valid from a threshold
``k0``, and an explicit table of members below ``k0``.  The period and the
threshold are minimized, so two sets are equal iff their canonical fields
coincide.
"""

from __future__ import annotations

import math
from itertools import count


def _lcm(a: int, b: int) -> int:
    return a * b // math.gcd(a, b)


class IndexSet:
    """Immutable eventually periodic subset of {1, 2, 3, ...}."""

    __slots__ = ("period", "residues", "threshold", "low")

    def __init__(self, period=1, residues=(), threshold=1, low=()):
        period = int(period)
        if period < 1:
            raise ValueError("period must be >= 1")
        threshold = max(1, int(threshold))
        residues = frozenset(int(r) % period for r in residues)
        low = frozenset(int(k) for k in low if 1 <= int(k) < threshold)
        period, residues, threshold, low = self._canonical(
            period, residues, threshold, low)
        object.__setattr__(self, "period", period)
        object.__setattr__(self, "residues", residues)
        object.__setattr__(self, "threshold", threshold)
        object.__setattr__(self, "low", low)

    def __setattr__(self, *a):  # pragma: no cover
        raise AttributeError("IndexSet is immutable")

    @staticmethod
    def _canonical(period, residues, threshold, low):
        # minimal period: smallest divisor d of period whose shifts fix the mask
        for d in range(1, period + 1):
            if period % d:
                continue
            if all(((r in residues) == (((r + d) % period) in residues))
                   for r in range(period)):
                period = d
                residues = frozenset(r % d for r in residues)
                break
        # minimal threshold: fold the explicit table into the mask where they agree
        while threshold > 1:
            k = threshold - 1
            if (k in low) == ((k % period) in residues):
                low = low - {k}
                threshold = k
            else:
                break
        return period, residues, threshold, low

    # -- membership / structure ----------------------------------------

    def __contains__(self, k) -> bool:
        k = int(k)
        if k < 1:
            return False
        if k < self.threshold:
            return k in self.low
        return (k % self.period) in self.residues

    def is_infinite(self) -> bool:
        return bool(self.residues)

    def is_empty(self) -> bool:
        return not self.residues and not self.low

    def sample(self, n: int, floor: int = 8):
        """The ``n`` smallest members >= ``floor`` (fewer if the set is finite)."""
        out = []
        if not self.is_infinite():
            for k in sorted(self.low):
                if k >= floor:
                    out.append(k)
                    if len(out) == n:
                        break
            return out
        for k in count(max(1, floor)):
            if k in self:
                out.append(k)
                if len(out) == n:
                    break
        return out

    def members_below(self, bound: int):
        return [k for k in range(1, bound) if k in self]

    # -- Boolean algebra -------------------------------------------------

    def _aligned(self, other: "IndexSet"):
        p = _lcm(self.period, other.period)
        t = max(self.threshold, other.threshold)
        return p, t

    def __and__(self, other: "IndexSet") -> "IndexSet":
        p, t = self._aligned(other)
        res = {r for r in range(p)
               if (r % self.period) in self.residues
               and (r % other.period) in other.residues}
        low = {k for k in range(1, t) if k in self and k in other}
        return IndexSet(p, res, t, low)

    def __or__(self, other: "IndexSet") -> "IndexSet":
        p, t = self._aligned(other)
        res = {r for r in range(p)
               if (r % self.period) in self.residues
               or (r % other.period) in other.residues}
        low = {k for k in range(1, t) if k in self or k in other}
        return IndexSet(p, res, t, low)

    def __invert__(self) -> "IndexSet":
        res = frozenset(r for r in range(self.period) if r not in self.residues)
        low = frozenset(k for k in range(1, self.threshold) if k not in self.low)
        return IndexSet(self.period, res, self.threshold, low)

    def __sub__(self, other: "IndexSet") -> "IndexSet":
        return self & ~other

    def union(self, other):
        return self | other

    def intersect(self, other):
        return self & other

    def complement(self):
        return ~self

    # -- identity ---------------------------------------------------------

    def _key(self):
        return (self.period, tuple(sorted(self.residues)),
                self.threshold, tuple(sorted(self.low)))

    def __eq__(self, other):
        if not isinstance(other, IndexSet):
            return NotImplemented
        return self._key() == other._key()

    def __hash__(self):
        return hash(self._key())

    def sort_key(self):
        first = next(iter(self.sample(1, floor=1)), 10**9)
        return (first,) + self._key()

    def __repr__(self):
        from .formatting import format_index_set

        return f"IndexSet({format_index_set(self)})"

    # -- constructors -------------------------------------------------------

    @staticmethod
    def all() -> "IndexSet":
        return IndexSet(1, {0})

    @staticmethod
    def none() -> "IndexSet":
        return IndexSet(1, ())

    @staticmethod
    def evens() -> "IndexSet":
        return IndexSet(2, {0})

    @staticmethod
    def odds() -> "IndexSet":
        return IndexSet(2, {1})

    @staticmethod
    def residue(a: int, m: int) -> "IndexSet":
        """{k >= 1 : k = a (mod m)}"""
        return IndexSet(m, {a % m})

    @staticmethod
    def finite(members) -> "IndexSet":
        members = {int(k) for k in members if int(k) >= 1}
        t = max(members) + 1 if members else 1
        return IndexSet(1, (), t, members)

    @staticmethod
    def from_progressions(progressions=(), include=(), exclude=()):
        """Union of arithmetic progressions {offset + t*period : t >= 0},
        plus ``include``, minus ``exclude``."""
        progs = [(int(o), int(p)) for o, p in progressions]
        for o, p in progs:
            if o < 1 or p < 1:
                raise ValueError("offsets and periods must be >= 1")
        period = 1
        for _, p in progs:
            period = _lcm(period, p)
        hi = [int(k) for k in exclude]
        threshold = max([o for o, _ in progs] + [k + 1 for k in hi] + [1])
        residues = set()
        for r in range(period):
            k = threshold + (r - threshold) % period
            if any(k >= o and (k - o) % p == 0 for o, p in progs):
                residues.add(r)
        low = {k for k in range(1, threshold)
               if any(k >= o and (k - o) % p == 0 for o, p in progs)}
        s = IndexSet(period, residues, threshold, low)
        if include:
            s = s | IndexSet.finite(include)
        if exclude:
            s = s - IndexSet.finite(exclude)
        return s

    def to_progressions(self):
        """Inverse of :meth:`from_progressions` on canonical sets."""
        progs = []
        for r in sorted(self.residues):
            offset = self.threshold + (r - self.threshold) % self.period
            progs.append((offset, self.period))
        include = sorted(self.low)
        return progs, include, []


class Partition:
    """A finite tiling of the grid by pairwise disjoint index sets."""

    __slots__ = ("parts",)

    def __init__(self, parts):
        parts = tuple(parts)
        if not parts:
            raise ValueError("partition needs at least one part")
        union = IndexSet.none()
        for i, s in enumerate(parts):
            for t in parts[i + 1:]:
                if not (s & t).is_empty():
                    from .errors import NotAPartitionError

                    raise NotAPartitionError("parts overlap")
            union = union | s
        if union != IndexSet.all():
            from .errors import NotAPartitionError

            raise NotAPartitionError("parts do not cover the grid")
        object.__setattr__(self, "parts", parts)

    def __setattr__(self, *a):  # pragma: no cover
        raise AttributeError("Partition is immutable")

    def __iter__(self):
        return iter(self.parts)

    def __len__(self):
        return len(self.parts)

    def refine(self, other: "Partition") -> "Partition":
        """Coarsest common refinement; empty intersections are dropped."""
        pieces = []
        for s in self.parts:
            for t in other.parts:
                u = s & t
                if not u.is_empty():
                    pieces.append(u)
        return Partition(pieces)

    def __eq__(self, other):
        if not isinstance(other, Partition):
            return NotImplemented
        return sorted(p._key() for p in self.parts) == \
            sorted(p._key() for p in other.parts)

    def __hash__(self):
        return hash(tuple(sorted(p._key() for p in self.parts)))

    def __repr__(self):
        from .formatting import format_index_set

        return "Partition(" + ", ".join(format_index_set(p) for p in self.parts) + ")"
