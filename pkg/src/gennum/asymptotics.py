"""Truncated Puiseux series in the small parameter ``eps`` and their roots.

A :class:`PuiseuxPoly` is a finite sum ``sum c_j * eps^(e_j)`` with complex
double-precision coefficients, exact rational exponents, and an explicit
``O(eps^trunc)`` remainder.  The grid semantics are ``eps_k = 2**-k`` for
integer indices ``k >= 1``; :meth:`PuiseuxPoly.eval_at` realizes a series as
a concrete net of complex numbers on that grid.

Exponents are kept exact (``fractions.Fraction``) through every operation;
this exactness is what makes valuations, sharp norms, and Newton polygons
decidable.  Coefficients follow tolerance semantics: anything with magnitude
below ``tau * max(1, scale)`` is dropped.

The other half of the module is :func:`roots`: a Newton-polygon solver that
factors a monic polynomial with PuiseuxPoly coefficients into root branches
``(z - b_1)...(z - b_n)``, each branch again a PuiseuxPoly, with fractional
leading exponents discovered from the polygon's edge slopes and numeric edge
polynomials solved by a companion-matrix eigensolver plus Newton polishing.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .config import DEFAULT
from .errors import (
    BranchRangeError,
    NotInvertibleError,
    NumericBreakdownError,
    TruncationExhaustedError,
)

INF = math.inf

# Exponents are Fraction, or math.inf for "exact" (no remainder term).
Exponent = object


def _frac(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, float):
        if math.isinf(x):
            return x
        return Fraction(x).limit_denominator(10**9)
    return Fraction(x)


def _min_exp(a, b):
    return a if a <= b else b


@dataclass(frozen=True)
class Valuation:
    """Lower bound on the order of a series.

    ``bound`` is the valuation itself when ``at_least`` is False (a term
    attains it, or the series is exactly zero and bound is +inf).  When
    ``at_least`` is True only ``v >= bound`` is known: the series has no
    visible terms but a finite remainder order.
    """

    bound: object
    at_least: bool = False

    @property
    def exact(self) -> bool:
        return not self.at_least

    def __str__(self):
        if self.bound == INF:
            return "+inf"
        return f">= {self.bound}" if self.at_least else str(self.bound)


class PuiseuxPoly:
    """Immutable truncated Puiseux series.

    ``terms`` is a tuple of ``(exponent, coeff)`` sorted strictly ascending
    by exponent, every exponent below ``trunc``, no coefficient numerically
    zero.  The empty series with ``trunc == inf`` is the canonical exact
    zero.
    """

    __slots__ = ("terms", "trunc")

    def __init__(self, terms=(), trunc=INF, tau=DEFAULT.tau_zero, scale=None):
        cleaned = _normalize(terms, trunc, tau, scale)
        object.__setattr__(self, "terms", cleaned)
        object.__setattr__(self, "trunc", trunc)

    def __setattr__(self, *a):  # pragma: no cover - immutability guard
        raise AttributeError("PuiseuxPoly is immutable")

    # -- constructors -------------------------------------------------

    @staticmethod
    def zero(trunc=INF) -> "PuiseuxPoly":
        return PuiseuxPoly((), trunc)

    @staticmethod
    def constant(c) -> "PuiseuxPoly":
        return PuiseuxPoly(((Fraction(0), complex(c)),), INF)

    @staticmethod
    def monomial(exponent, c=1.0) -> "PuiseuxPoly":
        return PuiseuxPoly(((_frac(exponent), complex(c)),), INF)

    # -- structure ----------------------------------------------------

    def is_exact_zero(self) -> bool:
        return not self.terms and self.trunc == INF

    def is_zero_like(self) -> bool:
        """No visible terms (exactly zero, or zero up to the remainder)."""
        return not self.terms

    @property
    def leading(self):
        """(exponent, coefficient) of the lowest-order term."""
        if not self.terms:
            raise NotInvertibleError("series has no visible terms")
        return self.terms[0]

    def valuation(self) -> Valuation:
        if self.terms:
            return Valuation(self.terms[0][0], False)
        if self.trunc == INF:
            return Valuation(INF, False)
        return Valuation(self.trunc, True)

    def sharp_norm(self) -> float:
        """``exp(-valuation)``; an upper bound when only a bound is known."""
        v = self.valuation().bound
        if v == INF:
            return 0.0
        return math.exp(-float(v))

    def coeff_scale(self) -> float:
        return max((abs(c) for _, c in self.terms), default=0.0)

    def conjugate(self) -> "PuiseuxPoly":
        return PuiseuxPoly(
            tuple((e, c.conjugate()) for e, c in self.terms), self.trunc
        )

    def real_part(self) -> "PuiseuxPoly":
        return PuiseuxPoly(tuple((e, complex(c.real, 0.0)) for e, c in self.terms), self.trunc)

    def imag_part(self) -> "PuiseuxPoly":
        return PuiseuxPoly(tuple((e, complex(c.imag, 0.0)) for e, c in self.terms), self.trunc)

    def is_real(self, tau=DEFAULT.tau_zero) -> bool:
        scale = max(1.0, self.coeff_scale())
        return all(abs(c.imag) <= tau * scale for _, c in self.terms)

    # -- ring operations ----------------------------------------------

    def __add__(self, other) -> "PuiseuxPoly":
        other = _coerce(other)
        trunc = _min_exp(self.trunc, other.trunc)
        merged = {}
        local = {}
        for e, c in self.terms + other.terms:
            merged[e] = merged.get(e, 0j) + c
            local[e] = max(local.get(e, 0.0), abs(c))
        return PuiseuxPoly(tuple(merged.items()), trunc, scale=local)

    __radd__ = __add__

    def __neg__(self) -> "PuiseuxPoly":
        return PuiseuxPoly(tuple((e, -c) for e, c in self.terms), self.trunc)

    def __sub__(self, other) -> "PuiseuxPoly":
        return self + (-_coerce(other))

    def __rsub__(self, other) -> "PuiseuxPoly":
        return _coerce(other) + (-self)

    def __mul__(self, other) -> "PuiseuxPoly":
        other = _coerce(other)
        trunc = _mul_trunc(self, other)
        acc = {}
        local = {}
        for e1, c1 in self.terms:
            for e2, c2 in other.terms:
                e = e1 + e2
                if e < trunc:
                    p = c1 * c2
                    acc[e] = acc.get(e, 0j) + p
                    local[e] = max(local.get(e, 0.0), abs(p))
        return PuiseuxPoly(tuple(acc.items()), trunc, scale=local)

    __rmul__ = __mul__

    def shift(self, q) -> "PuiseuxPoly":
        """Multiply by ``eps^q`` (exact exponent shift)."""
        q = _frac(q)
        trunc = self.trunc if self.trunc == INF else self.trunc + q
        return PuiseuxPoly(tuple((e + q, c) for e, c in self.terms), trunc)

    def scale_by(self, c) -> "PuiseuxPoly":
        c = complex(c)
        return PuiseuxPoly(tuple((e, c * co) for e, co in self.terms), self.trunc)

    def truncate(self, trunc) -> "PuiseuxPoly":
        trunc = trunc if trunc == INF else _frac(trunc)
        t = _min_exp(self.trunc, trunc)
        return PuiseuxPoly(tuple(tc for tc in self.terms if tc[0] < t), t)

    def power(self, n: int, work_trunc=None) -> "PuiseuxPoly":
        out = PuiseuxPoly.constant(1.0)
        base = self
        n = int(n)
        while n:
            if n & 1:
                out = out * base
                if work_trunc is not None:
                    out = out.truncate(work_trunc)
            n >>= 1
            if n:
                base = base * base
                if work_trunc is not None:
                    base = base.truncate(work_trunc)
        return out

    # -- evaluation ----------------------------------------------------

    def eval_at(self, k: int) -> complex:
        """Value of the net at grid index ``k`` (eps_k = 2**-k).

        Exponent arithmetic is exact; the final sum is double precision.
        The remainder term is ignored.
        """
        return sum((c * 2.0 ** float(-k * e) for e, c in self.terms), 0j)

    # -- misc ----------------------------------------------------------

    def __eq__(self, other):
        if not isinstance(other, PuiseuxPoly):
            return NotImplemented
        return self.terms == other.terms and self.trunc == other.trunc

    def __hash__(self):
        return hash((self.terms, self.trunc))

    def __repr__(self):
        from .formatting import format_poly

        return f"PuiseuxPoly({format_poly(self)})"


def _coerce(x) -> PuiseuxPoly:
    if isinstance(x, PuiseuxPoly):
        return x
    if isinstance(x, (int, float, complex, Fraction)):
        return PuiseuxPoly.constant(complex(x))
    raise TypeError(f"cannot coerce {type(x).__name__} to PuiseuxPoly")


def _normalize(terms, trunc, tau, scale):
    """Merge, sort, and clean terms.

    ``scale`` sets the zero test: a summed coefficient is dropped when its
    magnitude is at most ``tau * max(1, local scale)``.  It may be a single
    number or a per-exponent dict of contribution magnitudes (the honest
    "local scale" after cancellation-prone sums).  When omitted, each
    term's own magnitude is its scale.
    """
    acc = {}
    loc = {}
    for e, c in terms:
        e = _frac(e)
        c = complex(c)
        if not (math.isfinite(c.real) and math.isfinite(c.imag)):
            raise ValueError("non-finite coefficient")
        acc[e] = acc.get(e, 0j) + c
        loc[e] = max(loc.get(e, 0.0), abs(c))
    if scale is not None and not isinstance(scale, dict):
        loc = {e: float(scale) for e in acc}
    elif isinstance(scale, dict):
        loc = {e: scale.get(e, loc[e]) for e in acc}
    out = []
    for e in sorted(acc):
        if e >= trunc:
            continue
        c = acc[e]
        cut = tau * max(1.0, loc[e])
        if abs(c) <= cut:
            continue
        # snap negligible components so real/imaginary values print exactly
        if c.imag != 0 and abs(c.imag) <= cut:
            c = complex(c.real, 0.0)
        if c.real != 0 and abs(c.real) <= cut:
            c = complex(0.0, c.imag)
        out.append((e, c))
    return tuple(out)


def _mul_trunc(a: PuiseuxPoly, b: PuiseuxPoly):
    """O-term order of a product: min over the three cross terms."""

    def vbound(p):
        return p.valuation().bound

    cands = []
    for t, v in ((a.trunc, vbound(b)), (b.trunc, vbound(a)), (a.trunc, b.trunc)):
        if t == INF or v == INF:
            cands.append(INF)
        else:
            cands.append(t + v)
    return min(cands)


ZERO = PuiseuxPoly.zero()
ONE = PuiseuxPoly.constant(1.0)
EPS = PuiseuxPoly.monomial(1)


def invert(a: PuiseuxPoly, out_trunc, tau=DEFAULT.tau_zero) -> PuiseuxPoly:
    """Series inverse, accurate so that ``a * invert(a) = 1 + O(eps^out_trunc)``.

    Writes ``a = c * eps^q * (1 - u)`` with ``val(u) > 0`` and sums the
    geometric series by Newton doubling.  Raises NotInvertibleError when no
    leading term is visible.
    """
    if not a.terms:
        raise NotInvertibleError("cannot invert a series with no visible terms")
    out_trunc = _frac(out_trunc)
    q, c = a.leading
    # relative series: a_rel = a / (c eps^q) = 1 - u, val(u) > 0.
    # a * r = (1-u) * s exactly, so s needs accuracy out_trunc itself.
    a_rel = a.shift(-q).scale_by(1.0 / c)
    work = out_trunc if out_trunc != INF else INF
    one = PuiseuxPoly.constant(1.0)
    u = one - a_rel
    if u.is_zero_like():
        s = one.truncate(u.trunc)
    else:
        # Newton: s <- s(2 - a_rel s); accuracy doubles each pass
        s = one
        guard = 0
        while True:
            r = (one - a_rel * s).truncate(work)
            if r.is_zero_like():
                s = s.truncate(_min_exp(work, r.trunc))
                break
            s = (s + s * r).truncate(work)
            guard += 1
            if guard > 200:  # pragma: no cover
                raise NumericBreakdownError("series inversion failed to settle")
    return s.shift(-q).scale_by(1.0 / c)


def divide(a: PuiseuxPoly, b: PuiseuxPoly, out_trunc, tau=DEFAULT.tau_zero) -> PuiseuxPoly:
    """``a / b`` accurate to ``O(eps^out_trunc)`` in the product sense."""
    if a.is_zero_like():
        vb = b.valuation().bound
        t = a.trunc if a.trunc == INF else a.trunc - (0 if vb == INF else vb)
        return PuiseuxPoly.zero(_min_exp(t, _frac(out_trunc)))
    out_trunc = _frac(out_trunc)
    va = a.valuation().bound
    vb = b.valuation().bound
    inv_t = out_trunc + vb - va
    return (a * invert(b, inv_t, tau)).truncate(out_trunc)


def nth_root(a: PuiseuxPoly, n: int, branch: int, out_trunc, tau=DEFAULT.tau_zero) -> PuiseuxPoly:
    """Branch ``branch`` of the n-th root, ``r^n = a + O(eps^out_trunc)``.

    The leading term is the branch-th complex n-th root of the leading term;
    the rest comes from the binomial series of ``(1+w)^(1/n)``.
    """
    if n < 1:
        raise ValueError("n must be a positive integer")
    if not 0 <= branch < n:
        raise BranchRangeError(f"branch {branch} not in [0, {n})")
    if not a.terms:
        raise NotInvertibleError("cannot take a root of a series with no visible terms")
    out_trunc = _frac(out_trunc)
    q, c = a.leading
    rho = abs(c) ** (1.0 / n)
    theta = (cmath.phase(c) + 2.0 * math.pi * branch) / n
    c_root = rho * cmath.exp(1j * theta)
    # relative part: a = c eps^q (1 + w), val(w) > 0
    w_full = a.shift(-q).scale_by(1.0 / c) - PuiseuxPoly.constant(1.0)
    if w_full.is_zero_like():
        # single visible term: the root of the term is the whole answer
        s = PuiseuxPoly.constant(1.0).truncate(w_full.trunc)
        return s.scale_by(c_root).shift(q / n)
    vw = w_full.valuation().bound
    work = out_trunc - q  # accuracy needed on the relative factor
    if work == INF:
        raise ValueError("finite out_trunc required for a multi-term root")
    if work <= vw:
        # the requested order keeps only the leading behaviour
        s = PuiseuxPoly.constant(1.0).truncate(vw)
        return s.scale_by(c_root).shift(q / n)
    # binomial series for (1+w)^(1/n)
    w = w_full.truncate(work)
    s = PuiseuxPoly.constant(1.0)
    term = PuiseuxPoly.constant(1.0)
    alpha = 1.0 / n
    kmax = int(math.ceil(float(work) / float(vw))) + 1
    coeff = 1.0
    for k in range(1, kmax + 1):
        coeff *= (alpha - (k - 1)) / k
        term = (term * w).truncate(work)
        if term.is_zero_like():
            break
        s = s + term.scale_by(coeff)
    s = s.truncate(work)
    return s.scale_by(c_root).shift(q / n)


def sqrt_branch(a: PuiseuxPoly, out_trunc, positive_real=True, tau=DEFAULT.tau_zero) -> PuiseuxPoly:
    """Square root whose leading coefficient has positive real part."""
    r = nth_root(a, 2, 0, out_trunc, tau)
    if positive_real and r.terms:
        _, c = r.leading
        if c.real < 0 or (abs(c.real) <= tau and c.imag < 0):
            r = -r
    return r


# ---------------------------------------------------------------------------
# polynomials with PuiseuxPoly coefficients
# ---------------------------------------------------------------------------


def poly_eval(coeffs, z: PuiseuxPoly, work_trunc=None) -> PuiseuxPoly:
    """Horner evaluation of ``sum coeffs[i] * z^i`` (ascending order)."""
    acc = _coerce(coeffs[-1])
    for c in reversed(coeffs[:-1]):
        acc = acc * z + _coerce(c)
        if work_trunc is not None:
            acc = acc.truncate(work_trunc)
    return acc


def poly_derivative(coeffs):
    return [_coerce(c).scale_by(float(i)) for i, c in enumerate(coeffs)][1:]


@dataclass(frozen=True)
class RootBranch:
    """One root branch of a monic polynomial, with multiplicity.

    ``collision_order`` is set when several branches agree up to that order
    and the coefficient truncation cannot separate them; they are reported
    as a single branch with the summed multiplicity.
    """

    value: PuiseuxPoly
    multiplicity: int
    collision_order: object = None

    def __repr__(self):
        from .formatting import format_poly

        tag = "" if self.collision_order is None else f", collided@{self.collision_order}"
        return f"RootBranch({format_poly(self.value)}, x{self.multiplicity}{tag})"


def _branch_sort_key(b: RootBranch):
    if not b.value.terms:
        v = b.value.valuation().bound
        return (1, 0.0 if v == INF else -float(v), 0.0, 0.0)
    v, c = b.value.leading
    ph = cmath.phase(c)
    if ph < -math.pi + 1e-13:  # fold -pi onto +pi for stability
        ph = math.pi
    return (0, float(v), ph, abs(c))


def _lower_hull(points):
    """Lower convex hull of exact points (i asc); Fraction arithmetic."""
    pts = sorted(points)
    hull = [pts[0]]
    for p in pts[1:]:
        while len(hull) >= 2:
            (x1, y1), (x2, y2) = hull[-2], hull[-1]
            # keep turn strictly convex downward
            if (x2 - x1) * (p[1] - y1) <= (p[0] - x1) * (y2 - y1):
                hull.pop()
            else:
                break
        hull.append(p)
    return hull


def _edge_roots(psi, tau):
    """Nonzero roots of the numeric edge polynomial (ascending coeffs).

    Roots come from the companion-matrix eigensolver, are polished by
    Newton, and are grouped into multiplicity clusters using each root's
    first-order error radius |psi(r)/psi'(r)|.  Grouping that is neither
    clearly merged nor clearly separated raises NumericBreakdownError.
    """
    arr = np.array(list(reversed(psi)), dtype=complex)  # numpy wants descending
    raw = np.roots(arr)
    dpsi = [i * c for i, c in enumerate(psi)][1:]
    polished = []
    for z in raw:
        z = complex(z)
        err = math.inf
        for _ in range(3):
            pv = _horner_num(psi, z)
            dv = _horner_num(dpsi, z)
            if dv == 0:
                break
            step = pv / dv
            if not (math.isfinite(step.real) and math.isfinite(step.imag)):
                break
            err = abs(step)
            z -= step
        if math.isinf(err):
            err = 1e-7 * max(1.0, abs(z))
        polished.append((z, err))
    # union-find style merge on error radii
    parent = list(range(len(polished)))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for i in range(len(polished)):
        for j in range(i + 1, len(polished)):
            zi, ei = polished[i]
            zj, ej = polished[j]
            radius = 16.0 * (ei + ej) + 1e-12 * max(1.0, abs(zi), abs(zj))
            if abs(zi - zj) <= radius:
                parent[find(i)] = find(j)
            elif abs(zi - zj) <= 8.0 * radius:
                raise NumericBreakdownError(
                    "edge roots cannot be resolved above tolerance")
    groups = {}
    for i, (z, _) in enumerate(polished):
        groups.setdefault(find(i), []).append(z)
    out = []
    for pts in groups.values():
        center = sum(pts) / len(pts)
        if len(pts) > 1:
            # an m-fold root is a simple root of the (m-1)-th derivative;
            # polishing there recovers the center to full precision
            dm = psi
            for _ in range(len(pts) - 1):
                dm = [i * c for i, c in enumerate(dm)][1:]
            ddm = [i * c for i, c in enumerate(dm)][1:]
            for _ in range(6):
                dv = _horner_num(ddm, center)
                if dv == 0:
                    break
                center -= _horner_num(dm, center) / dv
        if abs(center) <= math.sqrt(tau):
            raise NumericBreakdownError("edge root indistinguishable from zero")
        out.append((center, len(pts)))
    out.sort(key=lambda t: (t[0].real, t[0].imag))
    return out


def _horner_num(coeffs, z):
    acc = 0j
    for c in reversed(coeffs):
        acc = acc * z + c
    return acc


def roots(coeffs, out_trunc, tau=DEFAULT.tau_zero, on_collision="raise"):
    """All root branches of a monic polynomial over the Puiseux ring.

    ``coeffs`` lists PuiseuxPoly coefficients in ascending degree,
    ``coeffs[-1]`` exactly one.  Every returned branch ``b`` satisfies
    ``p(b) = O(eps^out_trunc)`` (when its coefficients carry enough
    information); multiplicities sum to the degree.  Branch order is
    deterministic: ascending leading exponent, then principal argument,
    then magnitude of the leading coefficient.

    ``on_collision`` decides what happens when branches agree beyond the
    information in the coefficients: "raise" throws
    TruncationExhaustedError, "collapse" reports the cluster as one branch
    tagged with its collision order.
    """
    out_trunc = _frac(out_trunc)
    coeffs = [_coerce(c) for c in coeffs]
    if len(coeffs) < 2:
        return []
    lead = coeffs[-1]
    if not (len(lead.terms) == 1 and lead.terms[0][0] == 0
            and abs(lead.terms[0][1] - 1.0) <= 1e-9):
        raise ValueError("polynomial must be monic with exact constant 1 leading coefficient")
    found = _solve(coeffs, out_trunc, tau, on_collision, positive_only=False)
    # branches with negative valuation amplify coefficient errors in the
    # product; redo with a deeper value target when any are present
    negshift = sum(min(0, _val_floor(v)) * m for v, m, _ in found)
    if negshift < 0:
        found = _solve(coeffs, out_trunc - negshift, tau, on_collision,
                       positive_only=False)
    out = [RootBranch(v, m, co) for v, m, co in found]
    out.sort(key=_branch_sort_key)
    assert sum(b.multiplicity for b in out) == len(coeffs) - 1
    _verify_product(coeffs, out, out_trunc, on_collision)
    return out


def _val_floor(p: PuiseuxPoly):
    b = p.valuation().bound
    return 0 if b == INF else b


def _verify_product(coeffs, branches, out_trunc, on_collision):
    """Check that expanding prod (z - b_j) reproduces the coefficients.

    Floating-point error accumulates through the eigensolver and the
    Newton chains, so the deviation gate allows 1e-9 relative to the
    coefficient scale (the cleaning tolerance itself stays at tau_zero).
    """
    prod = [PuiseuxPoly.constant(1.0)]
    collided = any(b.collision_order is not None for b in branches)
    if collided:
        return
    for b in branches:
        for _ in range(b.multiplicity):
            new = [PuiseuxPoly.zero() for _ in range(len(prod) + 1)]
            for i, c in enumerate(prod):
                new[i + 1] = new[i + 1] + c
                new[i] = new[i] - c * b.value
            prod = new
    for got, want in zip(prod, coeffs):
        gate = 1e-9 * max(1.0, got.coeff_scale(), want.coeff_scale())
        diff = got - want
        bad = [t for t in diff.terms if t[0] < out_trunc and abs(t[1]) > gate]
        if bad:
            raise NumericBreakdownError(
                f"branch product deviates from coefficients at order {bad[0][0]}")


def _solve(coeffs, target, tau, on_collision, positive_only):
    """Recursive polygon step. Returns [(branch_poly, multiplicity, collision_order)].

    ``target`` is the absolute residual order wanted for p at the branch.
    """
    n = len(coeffs) - 1
    branches = []

    # exact zero roots
    m0 = 0
    while m0 < n and coeffs[m0].is_exact_zero():
        m0 += 1
    if m0:
        branches.append((PuiseuxPoly.zero(), m0, None))
        coeffs = coeffs[m0:]
        n -= m0
    if n == 0:
        return branches

    # roots hidden below the truncation of low coefficients
    jstar = 0
    while jstar < n and coeffs[jstar].is_zero_like():
        jstar += 1
    if jstar:
        vj = coeffs[jstar].valuation().bound
        g = min((coeffs[i].trunc - vj) / (jstar - i) for i in range(jstar))
        if positive_only and g <= 0:
            raise TruncationExhaustedError(
                f"cannot certify positive-order roots below order {g}", order=g)
        if g >= target:
            branches.append((PuiseuxPoly.zero(g), jstar, None))
        elif on_collision == "collapse":
            branches.append((PuiseuxPoly.zero(g), jstar, g))
        else:
            raise TruncationExhaustedError(
                f"root cluster unresolved beyond order {g}", order=g)
        coeffs = coeffs[jstar:]
        n -= jstar
        if n == 0:
            return branches

    # Newton polygon over the exact (term-backed) points
    pts = [(i, coeffs[i].valuation().bound)
           for i in range(n + 1) if coeffs[i].terms]
    hull = _lower_hull(pts)
    # truncated coefficients must not be able to undercut the hull
    for i in range(n + 1):
        c = coeffs[i]
        if not c.terms and not c.is_exact_zero():
            if _below_hull(hull, i, c.trunc):
                raise TruncationExhaustedError(
                    f"coefficient {i} unknown below hull at order {c.trunc}",
                    order=c.trunc)

    for (i1, v1), (i2, v2) in zip(hull, hull[1:]):
        gamma = Fraction(v1 - v2, i2 - i1)
        if positive_only and gamma <= 0:
            continue
        edge_idx = [i for i, v in pts
                    if i1 <= i <= i2 and
                    (v - v1) * (i2 - i1) == (v2 - v1) * (i - i1)]
        psi = [0j] * (i2 - i1 + 1)
        for i in edge_idx:
            psi[i - i1] = coeffs[i].leading[1]
        for c_root, mult in _edge_roots(psi, tau):
            prefix = PuiseuxPoly.monomial(gamma, c_root)
            if mult == 1:
                lam, co = _newton_refine(coeffs, prefix, target, tau, on_collision)
                branches.append((lam, 1, co))
            else:
                sub, _shift = _transform(coeffs, gamma, c_root, tau)
                subbranches = _solve(sub, target - gamma, tau, on_collision,
                                     positive_only=True)
                got = 0
                for w, m, co in subbranches:
                    if got >= mult:
                        break
                    lam = prefix + w.shift(gamma)
                    if co is not None and co != INF:
                        co = co + gamma
                        lam = lam.truncate(co)
                    branches.append((lam, m, co))
                    got += m
                if got != mult:  # pragma: no cover - guarded by polygon theory
                    raise NumericBreakdownError(
                        f"expected {mult} sub-branches, found {got}")
    return branches


def _below_hull(hull, i, v):
    """True when the point (i, v) lies strictly below the hull chain."""
    for (x1, y1), (x2, y2) in zip(hull, hull[1:]):
        if x1 <= i <= x2:
            # hull height at i along this edge
            lhs = (v - y1) * (x2 - x1)
            rhs = (y2 - y1) * (i - x1)
            if lhs < rhs:
                return True
    if i < hull[0][0]:
        return True  # left of any exact point: cannot bound
    return False


def _transform(coeffs, gamma, c, tau):
    """Coefficients of p(eps^gamma (c + w)) in w, divided by eps^ell."""
    n = len(coeffs) - 1
    scaled = [coeffs[i].shift(i * gamma) for i in range(n + 1)]
    # Taylor shift by the constant c: out[j] = sum_i binom(i, j) c^(i-j) scaled[i]
    out = [PuiseuxPoly.zero() for _ in range(n + 1)]
    binom = [[0] * (n + 1) for _ in range(n + 1)]
    for i in range(n + 1):
        binom[i][0] = 1
        for j in range(1, i + 1):
            binom[i][j] = binom[i - 1][j - 1] + binom[i - 1][j]
    cpow = [1.0 + 0j]
    for _ in range(n):
        cpow.append(cpow[-1] * c)
    for i in range(n + 1):
        ai = scaled[i]
        if ai.is_exact_zero():
            continue
        for j in range(i + 1):
            out[j] = out[j] + ai.scale_by(binom[i][j] * cpow[i - j])
    vmin = INF
    for p in out:
        b = p.valuation().bound
        if b < vmin:
            vmin = b
    if vmin == INF:  # pragma: no cover
        raise NumericBreakdownError("transformed polynomial vanished")
    return [p.shift(-vmin) for p in out], vmin


def _newton_refine(coeffs, guess, target, tau, on_collision):
    """Polish a separated branch until its VALUE is accurate to O(eps^target).

    The stopping residual order is ``target + val(p'(branch))``: the value
    error of a simple branch is the residual divided by the derivative.
    """
    dcoeffs = poly_derivative(coeffs)
    lam = guess
    best_order = None
    stalls = 0
    for _ in range(80):
        dval = poly_eval(dcoeffs, lam)
        dv = dval.valuation()
        if dv.bound == INF:
            raise NumericBreakdownError("derivative vanished on a simple branch")
        sep = dv.bound
        need = target + sep
        res = poly_eval(coeffs, lam, work_trunc=need)
        rv = res.valuation()
        if rv.bound >= need:
            return lam.truncate(target), None
        if rv.at_least:
            # information in the coefficients ran out before the target
            reach = rv.bound - sep
            if on_collision == "collapse":
                return lam.truncate(reach), reach
            raise TruncationExhaustedError(
                f"branch value unknown beyond order {reach}", order=reach)
        if best_order is not None and rv.bound <= best_order:
            stalls += 1
            if stalls > 2:
                raise NumericBreakdownError("Newton refinement stalled")
        else:
            stalls = 0
        best_order = rv.bound
        lam = lam - divide(res, dval, target)
    raise NumericBreakdownError("Newton refinement did not converge")  # pragma: no cover
