"""Canonical text rendering for every value type.

The printers here are the inverse of the expression grammar in
:mod:`gennum.expr`: ``parse(format(x))`` reproduces ``x`` on canonical
values, and the output is deterministic, so reports can be compared
byte-for-byte.
"""

from fractions import Fraction
import math


def format_number(x: float) -> str:
    if x == int(x) and abs(x) < 1e15:
        return str(int(x))
    return repr(x)


def format_coeff(c: complex) -> str:
    re, im = c.real, c.imag
    if im == 0:
        return format_number(re)
    if re == 0:
        if im == 1:
            return "i"
        if im == -1:
            return "-i"
        return f"{format_number(im)}*i"
    sign = "+" if im > 0 else "-"
    mag = abs(im)
    itxt = "i" if mag == 1 else f"{format_number(mag)}*i"
    return f"({format_number(re)}{sign}{itxt})"


def format_exponent(e) -> str:
    if isinstance(e, Fraction) and e.denominator == 1:
        e = e.numerator
    if isinstance(e, int):
        return str(e) if e >= 0 else f"({e})"
    return f"({e.numerator}/{e.denominator})"


def _eps_power(e) -> str:
    if e == 0:
        return ""
    if e == 1:
        return "eps"
    return f"eps^{format_exponent(e)}"


def format_poly(p) -> str:
    parts = []
    for e, c in p.terms:
        ep = _eps_power(e)
        if not ep:
            parts.append(format_coeff(c))
        elif c == 1:
            parts.append(ep)
        elif c == -1:
            parts.append(f"-{ep}")
        else:
            parts.append(f"{format_coeff(c)}*{ep}")
    if p.trunc != math.inf:
        parts.append(f"O(eps^{format_exponent(p.trunc)})")
    if not parts:
        return "0"
    out = parts[0]
    for part in parts[1:]:
        if part.startswith("-"):
            out += " - " + part[1:]
        else:
            out += " + " + part
    return out


def format_index_set(s) -> str:
    """Canonical set syntax: named sets, residue classes, finite adjustments."""
    if s.is_empty():
        return "none"
    base_residues = sorted(s.residues)
    if s.period == 1 and base_residues == [0]:
        base = "all"
    elif s.period == 2 and base_residues == [0]:
        base = "evens"
    elif s.period == 2 and base_residues == [1]:
        base = "odds"
    elif base_residues:
        terms = []
        for r in base_residues:
            terms.append(f"{{{r} mod {s.period}}}")
        base = " | ".join(terms)
    else:
        base = "none"
    # finite corrections against the full residue classes
    excl = sorted(k for k in range(1, s.threshold)
                  if (k % s.period) in s.residues and k not in s.low)
    incl = sorted(k for k in s.low if (k % s.period) not in s.residues)
    out = base
    if excl:
        inner = f"({out})" if "|" in out else out
        out = f"{inner} & ~{{{','.join(map(str, excl))}}}"
    if incl:
        inner = f"({out})" if ("|" in out or "&" in out) else out
        if out == "none":
            out = f"{{{','.join(map(str, incl))}}}"
        else:
            out = f"{inner} | {{{','.join(map(str, incl))}}}"
    return out


def format_scalar(a) -> str:
    pieces = a.pieces
    if len(pieces) == 1:
        return format_poly(pieces[0][1])
    parts = []
    for s, p in pieces:
        stxt = format_index_set(s)
        ptxt = format_poly(p)
        if ptxt == "0":
            parts.append(f"e[{stxt}]*0")
        elif ("+" in ptxt or "-" in ptxt or "*" in ptxt):
            parts.append(f"e[{stxt}]*({ptxt})")
        else:
            parts.append(f"e[{stxt}]*{ptxt}")
    return " + ".join(parts)


def format_matrix(m) -> str:
    rows = []
    for row in m.entries:
        rows.append("[" + ", ".join(format_scalar(x) for x in row) + "]")
    return "[" + ", ".join(rows) + "]"


def format_vector(v) -> str:
    return "(" + ", ".join(format_scalar(x) for x in v.entries) + ")"


def format_branches(sb) -> str:
    chunks = []
    for s, branches in sb.pieces:
        items = []
        for b in branches:
            t = format_poly(b.value)
            if b.multiplicity > 1:
                t += f" (x{b.multiplicity})"
            if b.collision_order is not None:
                t += f" [collided @ {format_exponent(b.collision_order)}]"
            items.append(t)
        chunks.append(f"on {format_index_set(s)}: [{'; '.join(items)}]")
    return " | ".join(chunks)


def format_value(x) -> str:
    """Dispatch on value type; used by the CLI printer."""
    from .asymptotics import PuiseuxPoly
    from .genscalar import GenComplex
    from .genmatrix import GenMatrix, GenVector, SpectrumBranches

    if isinstance(x, GenMatrix):
        return format_matrix(x)
    if isinstance(x, GenVector):
        return format_vector(x)
    if isinstance(x, GenComplex):
        return format_scalar(x)
    if isinstance(x, SpectrumBranches):
        return format_branches(x)
    if isinstance(x, PuiseuxPoly):
        return format_poly(x)
    if isinstance(x, float):
        return format_number(x)
    return str(x)
