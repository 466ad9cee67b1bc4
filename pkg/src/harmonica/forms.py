"""Canonical bigraded exterior algebra over the coframe {phi^1..phi^n, phi^1bar..phi^nbar}.

A monomial phi^{I,Jbar} keeps all holomorphic factors (strictly increasing)
before all antiholomorphic ones (strictly increasing); inserting factors in
any other order normalizes to this form with the correct permutation sign.
The unique representation makes zero tests and row reduction trivial.
"""

from __future__ import annotations

import itertools
import re as _re
from typing import Iterable, NamedTuple

from .errors import NotHomogeneous, ParseError
from .scalars import (
    Coefficient,
    DerivationTable,
    GaussianRational,
    parse_rational,
)

__all__ = ["MultiIndex", "Form", "basis_multiindices", "parse_form", "format_form"]


class MultiIndex(NamedTuple):
    hol: tuple
    anti: tuple

    @property
    def p(self) -> int:
        return len(self.hol)

    @property
    def q(self) -> int:
        return len(self.anti)

    @property
    def degree(self) -> int:
        return len(self.hol) + len(self.anti)


def _sort_with_sign(indices: Iterable[int]):
    """Sort by insertion, counting transpositions; None sign on duplicates."""
    seq = list(indices)
    sign = 1
    for i in range(1, len(seq)):
        j = i
        while j > 0 and seq[j - 1] > seq[j]:
            seq[j - 1], seq[j] = seq[j], seq[j - 1]
            sign = -sign
            j -= 1
    for a, b in zip(seq, seq[1:]):
        if a == b:
            return None, 0
    return tuple(seq), sign


def basis_multiindices(n: int, p: int, q: int) -> list[MultiIndex]:
    """All (p,q) monomials in canonical order (lexicographic hol, then anti)."""
    return [
        MultiIndex(hol, anti)
        for hol in itertools.combinations(range(1, n + 1), p)
        for anti in itertools.combinations(range(1, n + 1), q)
    ]


class Form:
    """A finite Coefficient-linear combination of coframe monomials."""

    __slots__ = ("n", "terms")

    def __init__(self, n: int, terms=None):
        self.n = n
        self.terms = {}
        if terms:
            for idx, c in terms.items():
                c = Coefficient.coerce(c)
                if not c.is_zero():
                    self.terms[idx] = c

    @classmethod
    def zero(cls, n: int) -> "Form":
        return cls(n)

    @classmethod
    def scalar(cls, n: int, value) -> "Form":
        return cls(n, {MultiIndex((), ()): Coefficient.coerce(value)})

    @classmethod
    def monomial(cls, n: int, hol=(), anti=(), coeff=1) -> "Form":
        """Build coeff * phi^{hol, anti-bar}, normalizing order and sign."""
        hol_s, s1 = _sort_with_sign(hol)
        anti_s, s2 = _sort_with_sign(anti)
        if hol_s is None or anti_s is None:
            return cls.zero(n)
        if hol_s and hol_s[-1] > n or anti_s and anti_s[-1] > n:
            raise ValueError(f"index out of range for n={n}")
        if (hol_s and hol_s[0] < 1) or (anti_s and anti_s[0] < 1):
            raise ValueError("indices are 1-based")
        c = Coefficient.coerce(coeff) * (s1 * s2)
        return cls(n, {MultiIndex(hol_s, anti_s): c})

    def coefficient(self, idx: MultiIndex) -> Coefficient:
        return self.terms.get(idx, Coefficient.zero())

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return not self.is_zero()

    def __eq__(self, other):
        if not isinstance(other, Form):
            return NotImplemented
        return self.n == other.n and self.terms == other.terms

    def __hash__(self):
        return hash((self.n, frozenset(self.terms.items())))

    def __add__(self, other: "Form") -> "Form":
        self._check_ambient(other)
        terms = dict(self.terms)
        for idx, c in other.terms.items():
            terms[idx] = terms.get(idx, Coefficient.zero()) + c
        return Form(self.n, terms)

    def __sub__(self, other: "Form") -> "Form":
        return self + (-other)

    def __neg__(self) -> "Form":
        return Form(self.n, {idx: -c for idx, c in self.terms.items()})

    def __mul__(self, scalar) -> "Form":
        c = Coefficient.coerce(scalar)
        return Form(self.n, {idx: v * c for idx, v in self.terms.items()})

    __rmul__ = __mul__

    def __truediv__(self, scalar) -> "Form":
        return Form(self.n, {idx: v / scalar for idx, v in self.terms.items()})

    def _check_ambient(self, other: "Form") -> None:
        if self.n != other.n:
            raise ValueError(f"ambient mismatch: n={self.n} vs n={other.n}")

    def wedge(self, other: "Form") -> "Form":
        self._check_ambient(other)
        terms: dict = {}
        for (h1, a1), c1 in self.terms.items():
            for (h2, a2), c2 in other.terms.items():
                hol, s1 = _sort_with_sign(h1 + h2)
                if hol is None:
                    continue
                anti, s2 = _sort_with_sign(a1 + a2)
                if anti is None:
                    continue
                # moving other's holomorphic block past self's anti block
                sign = s1 * s2 * (-1) ** (len(a1) * len(h2))
                idx = MultiIndex(hol, anti)
                c = c1 * c2 * sign
                acc = terms.get(idx)
                terms[idx] = c if acc is None else acc + c
        return Form(self.n, terms)

    def conjugate(self, table: DerivationTable | None = None) -> "Form":
        """Complex conjugation; swaps bidegrees (p,q) <-> (q,p)."""
        table = table or DerivationTable()
        terms: dict = {}
        for (hol, anti), c in self.terms.items():
            sign = (-1) ** (len(hol) * len(anti))
            idx = MultiIndex(anti, hol)
            cc = c.conjugate(table) * sign
            acc = terms.get(idx)
            terms[idx] = cc if acc is None else acc + cc
        return Form(self.n, terms)

    def bidegree_project(self, p: int, q: int) -> "Form":
        return Form(
            self.n,
            {idx: c for idx, c in self.terms.items() if (idx.p, idx.q) == (p, q)},
        )

    def homogeneous_parts(self) -> dict:
        """Split into (p,q) -> homogeneous part; the parts sum back to self."""
        parts: dict = {}
        for idx, c in self.terms.items():
            key = (idx.p, idx.q)
            parts.setdefault(key, {})[idx] = c
        return {key: Form(self.n, terms) for key, terms in parts.items()}

    def bidegrees(self) -> set:
        return {(idx.p, idx.q) for idx in self.terms}

    def degree(self) -> int | None:
        """Total degree if homogeneous (zero form counts as any; returns None)."""
        degrees = {idx.degree for idx in self.terms}
        if len(degrees) == 1:
            return degrees.pop()
        return None

    def bidegree(self) -> tuple | None:
        bids = self.bidegrees()
        if len(bids) == 1:
            return bids.pop()
        return None

    def require_homogeneous_degree(self) -> int:
        if self.is_zero():
            return 0
        k = self.degree()
        if k is None:
            raise NotHomogeneous("form mixes total degrees")
        return k

    def require_bidegree(self) -> tuple:
        if self.is_zero():
            return (0, 0)
        b = self.bidegree()
        if b is None:
            raise NotHomogeneous("form mixes bidegrees")
        return b

    def is_constant_coefficients(self) -> bool:
        return all(c.is_constant() for c in self.terms.values())

    def sorted_terms(self) -> list:
        return sorted(
            self.terms.items(),
            key=lambda kv: (kv[0].degree, kv[0].p, kv[0].hol, kv[0].anti),
        )

    def __repr__(self):
        return f"Form(n={self.n}, {format_form(self)!r})"

    def __str__(self):
        return format_form(self)


# ---------------------------------------------------------------------------
# text syntax: `phi[1,3;2]` is phi^{13,2bar}; coefficients `(re,im)`, rational
# literals, or symbol factors with optional ^power, joined by `*`; terms are
# separated by + and -.  parse(format(f)) == f bit-exactly.
# ---------------------------------------------------------------------------

_TOKEN_RE = _re.compile(
    r"\s*(?:(?P<sign>[+-])"
    r"|(?P<gauss>\(\s*[+-]?\d+(?:/\d+)?\s*,\s*[+-]?\d+(?:/\d+)?\s*\))"
    r"|(?P<phi>phi\[[0-9,\s]*;[0-9,\s]*\])"
    r"|(?P<rat>\d+(?:/\d+)?)"
    r"|(?P<sym>[A-Za-z_][A-Za-z0-9_]*(?:\[[A-Za-z0-9_\[\]]*\])?)(?:\^(?P<pow>\d+))?"
    r"|(?P<star>\*))"
)


def _parse_int_list(text: str) -> tuple:
    text = text.strip()
    if not text:
        return ()
    return tuple(int(x) for x in text.split(","))


def parse_form(text: str, n: int) -> Form:
    """Parse the CLI form syntax into a Form over the 2n-dimensional coframe."""
    pos = 0
    total = Form.zero(n)
    sign = 1
    coeff = None
    phi_idx = None
    seen_factor = False

    def flush():
        nonlocal total, sign, coeff, phi_idx, seen_factor
        if not seen_factor:
            return
        c = coeff if coeff is not None else Coefficient.one()
        hol, anti = phi_idx if phi_idx is not None else ((), ())
        try:
            total = total + Form.monomial(n, hol, anti, c * sign)
        except ValueError as exc:
            raise ParseError(str(exc)) from None
        sign, coeff, phi_idx, seen_factor = 1, None, None, False

    text_stripped = text.strip()
    if not text_stripped or text_stripped == "0":
        return total
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        m = _TOKEN_RE.match(text, pos)
        if not m:
            raise ParseError(f"bad form syntax at position {pos}: {text[pos:pos+20]!r}")
        pos = m.end()
        if m.group("sign"):
            if seen_factor:
                flush()
            if m.group("sign") == "-":
                sign = -sign
            continue
        if m.group("star"):
            if not seen_factor:
                raise ParseError("misplaced '*'")
            continue
        seen_factor = True
        if m.group("gauss"):
            inner = m.group("gauss")[1:-1]
            re_txt, im_txt = inner.split(",")
            g = GaussianRational(parse_rational(re_txt), parse_rational(im_txt))
            factor = Coefficient({(): g})
        elif m.group("rat"):
            factor = Coefficient.coerce(parse_rational(m.group("rat")))
        elif m.group("phi"):
            if phi_idx is not None:
                raise ParseError("at most one phi[...] factor per term")
            body = m.group("phi")[4:-1]
            hol_txt, anti_txt = body.split(";")
            phi_idx = (_parse_int_list(hol_txt), _parse_int_list(anti_txt))
            continue
        else:
            name = m.group("sym")
            if name == "phi":
                raise ParseError("phi must be followed by [hol;anti]")
            factor = Coefficient.symbol(name) ** int(m.group("pow") or 1)
        coeff = factor if coeff is None else coeff * factor
    flush()
    return total


def _format_multiindex(idx: MultiIndex) -> str:
    hol = ",".join(str(i) for i in idx.hol)
    anti = ",".join(str(i) for i in idx.anti)
    return f"phi[{hol};{anti}]"


def format_form(form: Form) -> str:
    """Print in the parseable phi[...] syntax, canonically ordered."""
    if form.is_zero():
        return "0"
    pieces = []
    for idx, coeff in form.sorted_terms():
        for mono, g in coeff.terms():
            factors = [str(g)]
            factors.extend(s if e == 1 else f"{s}^{e}" for s, e in mono)
            if idx.degree:
                factors.append(_format_multiindex(idx))
            pieces.append("*".join(factors))
    return " + ".join(pieces)
