"""Manifold specs, the exterior differential, and its bidegree components.

A spec fixes invariant structure equations d(phi^a) for a left-invariant
coframe on a 2n-dimensional Lie group quotient, diagonal fundamental-form
coefficients, and the symbol tables.  d on barred generators is forced to be
the conjugate of d on the unbarred ones, and d extends to arbitrary forms by
the Leibniz rule plus frame derivatives of coefficients.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field, replace
from functools import lru_cache

from .errors import ValidationError
from .forms import Form, MultiIndex, basis_multiindices
from .report import REFUTED, VERIFIED, CheckItem, VerificationReport
from .scalars import Coefficient, DerivationTable, Direction, Fraction, GaussianRational

__all__ = [
    "OperatorKind",
    "ManifoldSpec",
    "exterior_d",
    "differential_component",
    "check_integrability_relations",
    "check_almost_kahler",
    "all_basis_monomials",
]


class OperatorKind(enum.Enum):
    """The four bidegree components of d, plus d itself."""

    D = "d"
    MU = "mu"
    DEL = "del"
    DELBAR = "delbar"
    MUBAR = "mubar"

    @property
    def shift(self) -> tuple | None:
        return {
            OperatorKind.D: None,
            OperatorKind.MU: (2, -1),
            OperatorKind.DEL: (1, 0),
            OperatorKind.DELBAR: (0, 1),
            OperatorKind.MUBAR: (-1, 2),
        }[self]

    @property
    def conjugate(self) -> "OperatorKind":
        return {
            OperatorKind.D: OperatorKind.D,
            OperatorKind.MU: OperatorKind.MUBAR,
            OperatorKind.DEL: OperatorKind.DELBAR,
            OperatorKind.DELBAR: OperatorKind.DEL,
            OperatorKind.MUBAR: OperatorKind.MU,
        }[self]


@dataclass(eq=False)
class ManifoldSpec:
    """Structure equations and metric data; immutable after construction.

    Identity-hashable so that per-spec operator caches can key on it.
    """

    name: str
    n: int
    generators: list
    d_gen: dict  # generator index (1-based) -> 2-form value of d
    omega_coeffs: tuple
    table: DerivationTable = field(default_factory=DerivationTable)

    def __post_init__(self):
        if self.n < 1:
            raise ValidationError("n must be >= 1")
        if len(self.generators) != self.n:
            raise ValidationError(f"need exactly {self.n} generator names")
        if len(self.omega_coeffs) != self.n:
            raise ValidationError(f"need exactly {self.n} omega coefficients")
        self.omega_coeffs = tuple(Fraction(c) for c in self.omega_coeffs)
        for c in self.omega_coeffs:
            if c <= 0:
                raise ValidationError(f"omega coefficients must be positive, got {c}")
        for a in range(1, self.n + 1):
            form = self.d_gen.get(a)
            if form is None:
                self.d_gen[a] = Form.zero(self.n)
                continue
            if form.n != self.n:
                raise ValidationError(f"d(gen {a}) lives in the wrong ambient algebra")
            # degree of d_gen values is checked by check_integrability_relations,
            # so broken inputs stay loadable and explorable

    def d_generator(self, index: int, bar: bool) -> Form:
        if bar:
            return _d_generator_bar(self, index)
        return self.d_gen[index]

    def has_symbolic_structure(self) -> bool:
        return any(not f.is_constant_coefficients() for f in self.d_gen.values())

    def with_omega(self, coeffs) -> "ManifoldSpec":
        return replace(self, omega_coeffs=tuple(Fraction(c) for c in coeffs))


@lru_cache(maxsize=None)
def _d_generator_bar(spec: ManifoldSpec, index: int) -> Form:
    return spec.d_gen[index].conjugate(spec.table)


def _d_coefficient(coeff: Coefficient, spec: ManifoldSpec) -> Form:
    """d of a function: sum of frame derivatives against the dual coframe."""
    out = Form.zero(spec.n)
    for a in range(1, spec.n + 1):
        for bar in (False, True):
            dc = coeff.derive(Direction(a, bar), spec.table)
            if not dc.is_zero():
                out = out + Form.monomial(spec.n, () if bar else (a,), (a,) if bar else (), dc)
    return out


@lru_cache(maxsize=None)
def _d_monomial(idx: MultiIndex, spec: ManifoldSpec) -> Form:
    factors = [(a, False) for a in idx.hol] + [(a, True) for a in idx.anti]
    out = Form.zero(spec.n)
    for k, (a, bar) in enumerate(factors):
        d_fac = spec.d_generator(a, bar)
        if d_fac.is_zero():
            continue
        before = factors[:k]
        after = factors[k + 1 :]
        piece = d_fac
        if before:
            hol = tuple(i for i, b in before if not b)
            anti = tuple(i for i, b in before if b)
            piece = Form.monomial(spec.n, hol, anti).wedge(piece)
        if after:
            hol = tuple(i for i, b in after if not b)
            anti = tuple(i for i, b in after if b)
            piece = piece.wedge(Form.monomial(spec.n, hol, anti))
        out = out + piece * ((-1) ** k)
    return out


def exterior_d(form: Form, spec: ManifoldSpec) -> Form:
    """Exterior differential via the Leibniz rule on each monomial term."""
    out = Form.zero(spec.n)
    for idx, coeff in form.terms.items():
        dc = _d_coefficient(coeff, spec)
        if not dc.is_zero():
            out = out + dc.wedge(Form.monomial(spec.n, idx.hol, idx.anti))
        dm = _d_monomial(idx, spec)
        if not dm.is_zero():
            out = out + dm * coeff
    return out


def differential_component(form: Form, kind: OperatorKind, spec: ManifoldSpec) -> Form:
    """One of mu, del, delbar, mubar (or d itself), by bidegree projection."""
    if kind is OperatorKind.D:
        return exterior_d(form, spec)
    dp, dq = kind.shift
    out = Form.zero(spec.n)
    for (p, q), part in form.homogeneous_parts().items():
        if 0 <= p + dp <= spec.n and 0 <= q + dq <= spec.n:
            out = out + exterior_d(part, spec).bidegree_project(p + dp, q + dq)
    return out


def all_basis_monomials(n: int) -> list[MultiIndex]:
    """Every coframe monomial, all 2^(2n) of them, by degree then descending p."""
    out = []
    for k in range(0, 2 * n + 1):
        for p in range(min(k, n), max(0, k - n) - 1, -1):
            out.extend(basis_multiindices(n, p, k - p))
    return out


def _operator_identities(spec: ManifoldSpec):
    """The d^2 = 0 relations among the four components of d."""
    mu = lambda f: differential_component(f, OperatorKind.MU, spec)
    de = lambda f: differential_component(f, OperatorKind.DEL, spec)
    db = lambda f: differential_component(f, OperatorKind.DELBAR, spec)
    mb = lambda f: differential_component(f, OperatorKind.MUBAR, spec)
    return [
        ("d^2", lambda f: exterior_d(exterior_d(f, spec), spec)),
        ("mu^2", lambda f: mu(mu(f))),
        ("mu del + del mu", lambda f: mu(de(f)) + de(mu(f))),
        ("del^2 + mu delbar + delbar mu", lambda f: de(de(f)) + mu(db(f)) + db(mu(f))),
        (
            "del delbar + delbar del + mu mubar + mubar mu",
            lambda f: de(db(f)) + db(de(f)) + mu(mb(f)) + mb(mu(f)),
        ),
        ("delbar^2 + mubar del + del mubar", lambda f: db(db(f)) + mb(de(f)) + de(mb(f))),
        ("mubar delbar + delbar mubar", lambda f: mb(db(f)) + db(mb(f))),
        ("mubar^2", lambda f: mb(mb(f))),
    ]


def check_integrability_relations(spec: ManifoldSpec) -> VerificationReport:
    """Evaluate d^2 and the seven component identities on every basis monomial."""
    monomials = all_basis_monomials(spec.n)
    items = []
    bad = [
        a
        for a in range(1, spec.n + 1)
        if not spec.d_gen[a].is_zero() and spec.d_gen[a].degree() != 2
    ]
    items.append(
        CheckItem(
            "d(generators) are 2-forms",
            not bad,
            witness=None if not bad else spec.d_gen[bad[0]],
        )
    )
    for name, op in _operator_identities(spec):
        ok = True
        witness = residual = None
        for idx in monomials:
            m = Form.monomial(spec.n, idx.hol, idx.anti)
            value = op(m)
            if not value.is_zero():
                ok, witness, residual = False, m, value
                break
        items.append(CheckItem(name, ok, witness=witness, residual=residual))
    status = VERIFIED if all(i.ok for i in items) else REFUTED
    return VerificationReport(f"integrability:{spec.name}", status, items=items)


def fundamental_form(spec: ManifoldSpec) -> Form:
    """omega = i * sum_a c_a phi^{a,abar}."""
    out = Form.zero(spec.n)
    for a in range(1, spec.n + 1):
        out = out + Form.monomial(
            spec.n, (a,), (a,), GaussianRational(0, spec.omega_coeffs[a - 1])
        )
    return out


def is_integrable(spec: ManifoldSpec) -> bool:
    """True when mu and mubar vanish on every basis monomial."""
    for idx in all_basis_monomials(spec.n):
        m = Form.monomial(spec.n, idx.hol, idx.anti)
        if not differential_component(m, OperatorKind.MU, spec).is_zero():
            return False
        if not differential_component(m, OperatorKind.MUBAR, spec).is_zero():
            return False
    return True


def check_almost_kahler(spec: ManifoldSpec) -> VerificationReport:
    """d omega = 0 and positive metric coefficients; integrability is reported
    as a flag, not a requirement."""
    omega = fundamental_form(spec)
    d_omega = exterior_d(omega, spec)
    items = [
        CheckItem(
            "d omega = 0",
            d_omega.is_zero(),
            witness=None if d_omega.is_zero() else omega,
            residual=None if d_omega.is_zero() else d_omega,
        ),
        CheckItem("omega coefficients positive", all(c > 0 for c in spec.omega_coeffs)),
    ]
    integrable = is_integrable(spec)
    status = VERIFIED if all(i.ok for i in items) else REFUTED
    return VerificationReport(
        f"almost-kahler:{spec.name}",
        status,
        items=items,
        data={"integrable": integrable, "almost_kahler": all(i.ok for i in items)},
    )
