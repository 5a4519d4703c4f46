"""Generalized complex scalars: piecewise Puiseux series over a partition.

A :class:`GenComplex` assigns one truncated Puiseux series to each piece of
a partition of the grid indices.  Finite pieces carry no asymptotic
information (they are negligible as elements of the ring) but are retained
so that evaluation at any concrete index stays exact; canonicalization
merges pieces whose series coincide.

The idempotent attached to an infinite index set ``S`` is the scalar that
is 1 on ``S`` and 0 elsewhere; interleaving combines scalars along a
partition.  Invertibility is relative to an index set: ``a`` is invertible
w.r.t. ``S`` when it has a visible leading term on every infinite piece of
``S``, and the partial inverse is supported on ``S`` alone.
"""

from __future__ import annotations

import math
from fractions import Fraction

from . import asymptotics as asy
from .asymptotics import INF, PuiseuxPoly, Valuation
from .config import DEFAULT
from .errors import (
    EmptyIdempotentError,
    NotAPartitionError,
    NotInvertibleWrtError,
    NotRealError,
)
from .index_sets import IndexSet, Partition
from .verdicts import Verdict, fails_at_order, holds_to_order, proven, refuted


class GenComplex:
    """Immutable piecewise generalized scalar."""

    __slots__ = ("pieces",)

    def __init__(self, pieces):
        object.__setattr__(self, "pieces", _canonical_pieces(pieces))

    def __setattr__(self, *a):  # pragma: no cover
        raise AttributeError("GenComplex is immutable")

    # -- constructors ---------------------------------------------------

    @staticmethod
    def from_poly(poly: PuiseuxPoly) -> "GenComplex":
        return GenComplex(((IndexSet.all(), poly),))

    @staticmethod
    def constant(c) -> "GenComplex":
        return GenComplex.from_poly(PuiseuxPoly.constant(c))

    @staticmethod
    def eps(power=1) -> "GenComplex":
        return GenComplex.from_poly(PuiseuxPoly.monomial(power))

    @staticmethod
    def zero() -> "GenComplex":
        return GenComplex.from_poly(PuiseuxPoly.zero())

    @staticmethod
    def one() -> "GenComplex":
        return GenComplex.from_poly(PuiseuxPoly.constant(1.0))

    @staticmethod
    def idempotent(s: IndexSet) -> "GenComplex":
        """The scalar that is 1 on ``s`` and 0 off it."""
        return GenComplex.zero().patch(s, PuiseuxPoly.constant(1.0))

    @staticmethod
    def interleave(parts) -> "GenComplex":
        """``sum e_{S_j} a_j`` over a partition; parts are (set, scalar)."""
        sets = [s for s, _ in parts]
        Partition(sets)  # raises NotAPartitionError when invalid
        pieces = []
        for s, a in parts:
            a = _coerce(a)
            for t, poly in a.pieces:
                u = t & s
                if not u.is_empty():
                    pieces.append((u, poly))
        return GenComplex(pieces)

    def patch(self, s: IndexSet, poly: PuiseuxPoly) -> "GenComplex":
        """Replace the series on ``s``, keeping the rest."""
        pieces = [(s, poly)]
        for t, p in self.pieces:
            u = t - s
            if not u.is_empty():
                pieces.append((u, p))
        return GenComplex(pieces)

    # -- structure --------------------------------------------------------

    def partition(self) -> Partition:
        return Partition([s for s, _ in self.pieces])

    def poly_on(self, s: IndexSet) -> PuiseuxPoly:
        """The single series governing ``s``; ``s`` must not straddle pieces."""
        for t, p in self.pieces:
            if (s - t).is_empty():
                return p
        raise ValueError("index set straddles pieces; refine first")

    def infinite_pieces(self):
        return [(s, p) for s, p in self.pieces if s.is_infinite()]

    def eval_at(self, k: int) -> complex:
        for s, p in self.pieces:
            if k in s:
                return p.eval_at(k)
        raise AssertionError("partition does not cover index")  # pragma: no cover

    def restrict(self, s: IndexSet) -> "GenComplex":
        """Multiply by the idempotent of ``s``."""
        pieces = [(~s, PuiseuxPoly.zero())]
        for t, p in self.pieces:
            u = t & s
            if not u.is_empty():
                pieces.append((u, p))
        return GenComplex(pieces)

    # -- ring operations ---------------------------------------------------

    def _zip(self, other, op):
        pieces = []
        for s, p in self.pieces:
            for t, q in other.pieces:
                u = s & t
                if not u.is_empty():
                    pieces.append((u, op(p, q)))
        return GenComplex(pieces)

    def __add__(self, other):
        return self._zip(_coerce(other), lambda p, q: p + q)

    __radd__ = __add__

    def __sub__(self, other):
        return self._zip(_coerce(other), lambda p, q: p - q)

    def __rsub__(self, other):
        return _coerce(other)._zip(self, lambda p, q: p - q)

    def __mul__(self, other):
        return self._zip(_coerce(other), lambda p, q: p * q)

    __rmul__ = __mul__

    def __neg__(self):
        return GenComplex(tuple((s, -p) for s, p in self.pieces))

    def conjugate(self) -> "GenComplex":
        return GenComplex(tuple((s, p.conjugate()) for s, p in self.pieces))

    def truncate(self, trunc) -> "GenComplex":
        return GenComplex(tuple((s, p.truncate(trunc)) for s, p in self.pieces))

    def abs(self, out_trunc=None, tau=DEFAULT.tau_zero) -> "GenReal":
        """|a| as a generalized real: piecewise sqrt(p * conj(p))."""
        pieces = []
        for s, p in self.pieces:
            sq = p * p.conjugate()
            sq = PuiseuxPoly(tuple((e, complex(c.real, 0.0)) for e, c in sq.terms),
                             sq.trunc)
            if sq.is_zero_like():
                pieces.append((s, sq))
                continue
            t = out_trunc
            if t is None:
                t = sq.trunc if sq.trunc != INF else None
            if t is None:
                v = sq.valuation().bound
                t = v / 2 + DEFAULT.trunc
            r = asy.sqrt_branch(sq, t, tau=tau)
            pieces.append((s, r))
        return GenReal(pieces)

    # -- valuation / norms ---------------------------------------------------

    def valuation(self) -> Valuation:
        """min over infinite pieces; finite pieces carry no information."""
        exact = INF
        bound = INF
        for s, p in self.infinite_pieces():
            v = p.valuation()
            if v.at_least:
                bound = min(bound, v.bound)
            else:
                exact = min(exact, v.bound)
        if exact <= bound:
            return Valuation(exact, False)
        return Valuation(bound, True)

    def sharp_norm(self) -> float:
        v = self.valuation().bound
        return 0.0 if v == INF else math.exp(-float(v))

    def is_zero(self) -> bool:
        """Exact zero as a generalized number (finite pieces ignored)."""
        return all(p.is_exact_zero() for _, p in self.infinite_pieces())

    def is_zero_verdict(self) -> Verdict:
        worst = INF
        for s, p in self.infinite_pieces():
            if p.terms:
                return refuted(witness=(s, p))
            if p.trunc < worst:
                worst = p.trunc
        if worst == INF:
            return proven()
        return holds_to_order(worst)

    def is_real(self, tau=DEFAULT.tau_zero) -> bool:
        return all(p.is_real(tau) for s, p in self.infinite_pieces())

    def as_real(self, tau=DEFAULT.tau_zero) -> "GenReal":
        if not self.is_real(tau):
            raise NotRealError("imaginary parts above tolerance")
        return GenReal(tuple((s, p.real_part()) for s, p in self.pieces))

    def real_part(self) -> "GenReal":
        return GenReal(tuple((s, p.real_part()) for s, p in self.pieces))

    def imag_part(self) -> "GenReal":
        return GenReal(tuple((s, p.imag_part()) for s, p in self.pieces))

    # -- invertibility -------------------------------------------------------

    def invertible_wrt(self, s: IndexSet) -> bool:
        """True iff the element has visible leading behaviour on all of ``s``."""
        if not s.is_infinite():
            raise EmptyIdempotentError("index set is finite; e_S = 0")
        for t, p in self.pieces:
            u = t & s
            if u.is_infinite() and not p.terms:
                return False
        return True

    def invert_wrt(self, s: IndexSet, out_trunc=None, tau=DEFAULT.tau_zero) -> "GenComplex":
        """Partial inverse v supported on ``s``: a*v = e_S + O(eps^out_trunc)."""
        if not s.is_infinite():
            raise EmptyIdempotentError("index set is finite; e_S = 0")
        if out_trunc is None:
            out_trunc = DEFAULT.trunc
        pieces = [(~s, PuiseuxPoly.zero())]
        for t, p in self.pieces:
            u = t & s
            if u.is_empty():
                continue
            if not p.terms:
                if u.is_infinite():
                    raise NotInvertibleWrtError(
                        "no visible leading behaviour on an infinite piece",
                        witness=u)
                pieces.append((u, PuiseuxPoly.zero()))
                continue
            pieces.append((u, asy.invert(p, out_trunc, tau)))
        return GenComplex(pieces)

    def strictly_noninvertible(self) -> bool:
        """Invertible with respect to no infinite index set at all."""
        answer = self.is_zero()
        # cross-check: enumerate the infinite pieces directly
        witnessed = any(p.terms for _, p in self.infinite_pieces())
        assert answer == (not witnessed)
        return answer

    # -- identity ---------------------------------------------------------

    def __eq__(self, other):
        if not isinstance(other, GenComplex):
            return NotImplemented
        return self.pieces == other.pieces

    def __hash__(self):
        return hash(self.pieces)

    def __repr__(self):
        from .formatting import format_scalar

        return f"{type(self).__name__}({format_scalar(self)})"


class GenReal(GenComplex):
    """Generalized scalar whose every piece is real up to tolerance."""

    def __init__(self, pieces, tau=DEFAULT.tau_zero):
        super().__init__(pieces)
        for s, p in self.pieces:
            if not p.is_real(tau):
                raise NotRealError("imaginary parts above tolerance")

    def ge_zero(self, tau=DEFAULT.tau_zero) -> bool:
        """Order on the reals: every infinite piece is zero or has a positive
        leading coefficient (negligible perturbations are normalized away)."""
        for s, p in self.infinite_pieces():
            if p.is_exact_zero():
                continue
            if not p.terms:
                return False
            _, c = p.leading
            if not c.real > tau:
                return False
        return True

    def ge_zero_verdict(self, tau=DEFAULT.tau_zero) -> Verdict:
        worst = INF
        for s, p in self.infinite_pieces():
            if p.is_exact_zero():
                continue
            if not p.terms:
                worst = min(worst, p.trunc)
                continue
            _, c = p.leading
            if c.real <= tau:
                return fails_at_order(p.leading[0], witness=(s, p))
        if worst == INF:
            return proven()
        return holds_to_order(worst)

    def gg_zero(self, tau=DEFAULT.tau_zero) -> bool:
        """Strictly positive at some polynomial order on every infinite piece."""
        for s, p in self.infinite_pieces():
            if not p.terms:
                return False
            _, c = p.leading
            if not c.real > tau:
                return False
        return True


def _coerce(x) -> GenComplex:
    if isinstance(x, GenComplex):
        return x
    if isinstance(x, PuiseuxPoly):
        return GenComplex.from_poly(x)
    if isinstance(x, (int, float, complex, Fraction)):
        return GenComplex.constant(complex(x))
    raise TypeError(f"cannot coerce {type(x).__name__} to GenComplex")


def _canonical_pieces(pieces):
    pieces = [(s, p) for s, p in pieces if not s.is_empty()]
    if not pieces:
        raise ValueError("no pieces")
    # merge pieces with identical series
    merged = {}
    for s, p in pieces:
        if p in merged:
            merged[p] = merged[p] | s
        else:
            merged[p] = s
    out = sorted(((s, p) for p, s in merged.items()),
                 key=lambda sp: sp[0].sort_key())
    Partition([s for s, _ in out])  # validates tiling
    return tuple(out)


def gg(a, b, tau=DEFAULT.tau_zero) -> bool:
    """The strict asymptotic order a >> b on generalized reals."""
    a, b = _coerce(a), _coerce(b)
    if not (a.is_real(tau) and b.is_real(tau)):
        raise NotRealError("both sides must be real")
    return (a - b).as_real(tau).gg_zero(tau)


def real_nonneg(a, tau=DEFAULT.tau_zero) -> bool:
    a = _coerce(a)
    if not a.is_real(tau):
        raise NotRealError("not a real element")
    return a.as_real(tau).ge_zero(tau)


def real_max(a: GenReal, b: GenReal, tau=DEFAULT.tau_zero) -> GenReal:
    """Pointwise-eventually max of two generalized reals, piece by piece."""
    a, b = _coerce(a).as_real(tau), _coerce(b).as_real(tau)
    pieces = []
    for s, p in a.pieces:
        for t, q in b.pieces:
            u = s & t
            if u.is_empty():
                continue
            d = p - q
            if d.terms and d.leading[1].real > 0:
                pieces.append((u, p))
            else:
                pieces.append((u, q))
    return GenReal(pieces)
