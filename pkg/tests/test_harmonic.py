import math
from fractions import Fraction

import pytest

from harmonica.errors import SymbolicCoefficients
from harmonica.forms import Form, basis_multiindices, parse_form
from harmonica.harmonic import (
    HarmonicKind,
    _condition_kernel,
    adjoint,
    forms_to_rows,
    harmonic_space,
    is_harmonic,
    laplacian_apply,
)
from harmonica.hermitian import (
    fundamental_form,
    hodge_star,
    monomial_inner_square,
    volume_form,
)
from harmonica.linalg import rref, subspace_equal
from harmonica.scalars import Coefficient, GaussianRational
from harmonica.structure import OperatorKind, all_basis_monomials, differential_component

from conftest import rand_form_pq


def G(re, im=0):
    return GaussianRational(Fraction(re), Fraction(im))


def mono(n, hol=(), anti=(), c=1):
    return Form.monomial(n, hol, anti, c)


def hermitian_inner(a, b, spec):
    total = GaussianRational(0)
    for idx, ca in a.terms.items():
        cb = b.coefficient(idx).constant_value()
        if cb is not None and not cb.is_zero():
            total = total + ca.constant_value() * cb.conjugate() * Fraction(
                monomial_inner_square(idx, spec)
            )
    return total


class TestAdjoint:
    def test_delbar_adjoint_kills_omega(self, iwasawa):
        assert adjoint(OperatorKind.DELBAR, fundamental_form(iwasawa), iwasawa).is_zero()

    def test_d_adjoint_kills_volume(self, iwasawa):
        assert adjoint(OperatorKind.D, volume_form(iwasawa), iwasawa).is_zero()

    def test_del_adjoint_on_torus_monomial(self, torus):
        assert adjoint(OperatorKind.DEL, mono(3, (2,), (1,)), torus).is_zero()

    def test_bidegree_shifts(self, iwasawa):
        f = mono(3, (1, 2), (1,))
        table = {
            OperatorKind.DEL: (1, 1),
            OperatorKind.DELBAR: (2, 0),
            OperatorKind.MU: (0, 2),
            OperatorKind.MUBAR: (3, -1),
        }
        for kind, (p, q) in table.items():
            image = adjoint(kind, f, iwasawa)
            if not image.is_zero():
                assert image.bidegree() == (p, q)

    def test_adjointness_against_inner_product(self, iwasawa, rng):
        # <k a, b> = <a, k* b> for the Hermitian inner product
        pairs = [
            (OperatorKind.D, None),
            (OperatorKind.DEL, (1, 0)),
            (OperatorKind.DELBAR, (0, 1)),
            (OperatorKind.MU, (2, -1)),
            (OperatorKind.MUBAR, (-1, 2)),
        ]
        for _ in range(25):
            p, q = rng.randint(0, 2), rng.randint(0, 2)
            a = rand_form_pq(3, p, q, rng)
            for kind, shift in pairs:
                if shift is None:
                    bs = [
                        rand_form_pq(3, p + 1, q, rng),
                        rand_form_pq(3, p, q + 1, rng),
                    ]
                else:
                    dp, dq = shift
                    if not (0 <= p + dp <= 3 and 0 <= q + dq <= 3):
                        continue
                    bs = [rand_form_pq(3, p + dp, q + dq, rng)]
                for b in bs:
                    lhs = hermitian_inner(
                        differential_component(a, kind, iwasawa), b, iwasawa
                    )
                    rhs = hermitian_inner(a, adjoint(kind, b, iwasawa), iwasawa)
                    assert lhs == rhs


class TestLaplacians:
    def test_bc_kills_omega(self, iwasawa):
        assert laplacian_apply(HarmonicKind.BC, fundamental_form(iwasawa), iwasawa).is_zero()

    def test_delbar_kills_phi3(self, iwasawa):
        assert laplacian_apply(HarmonicKind.DELBAR, mono(3, (3,)), iwasawa).is_zero()

    def test_d_kills_constants(self, iwasawa):
        assert laplacian_apply(HarmonicKind.D, Form.scalar(3, 5), iwasawa).is_zero()

    def test_bidegree_preserved(self, iwasawa, rng):
        for kind in (HarmonicKind.DEL, HarmonicKind.DELBAR, HarmonicKind.BC, HarmonicKind.A):
            for _ in range(6):
                p, q = rng.randint(0, 3), rng.randint(0, 3)
                f = rand_form_pq(3, p, q, rng)
                image = laplacian_apply(kind, f, iwasawa)
                if not image.is_zero():
                    assert image.bidegree() == (p, q)

    def test_d_preserves_total_degree(self, iwasawa, rng):
        for _ in range(10):
            p, q = rng.randint(0, 3), rng.randint(0, 3)
            f = rand_form_pq(3, p, q, rng)
            image = laplacian_apply(HarmonicKind.D, f, iwasawa)
            if not image.is_zero():
                assert image.degree() == p + q

    def test_star_intertwines_bc_and_a(self, iwasawa):
        for idx in all_basis_monomials(3):
            m = mono(3, idx.hol, idx.anti)
            lhs = hodge_star(laplacian_apply(HarmonicKind.BC, m, iwasawa), iwasawa)
            rhs = laplacian_apply(HarmonicKind.A, hodge_star(m, iwasawa), iwasawa)
            assert lhs == rhs


class TestHarmonicSpace:
    def test_iwasawa_bc_21_known_basis(self, iwasawa):
        space = harmonic_space(HarmonicKind.BC, 2, 1, iwasawa)
        assert space.dim == 2
        want = [
            parse_form("phi[1,3;1] + phi[2,3;2]", 3),
            parse_form("phi[1,3;2] + phi[2,3;1] + (0,-2)*phi[2,3;2]", 3),
        ]
        assert space.basis == want

    def test_iwasawa_bc_10_and_L_image(self, iwasawa):
        space = harmonic_space(HarmonicKind.BC, 1, 0, iwasawa)
        assert space.basis == [mono(3, (3,))]
        lifted = fundamental_form(iwasawa).wedge(space.basis[0])
        monomials = basis_multiindices(3, 2, 1)
        span = rref(forms_to_rows([lifted], monomials))
        want = rref(forms_to_rows([parse_form("phi[1,3;1] + phi[2,3;2]", 3)], monomials))
        assert span == want

    def test_flat_every_space_full(self, flat):
        for kind in HarmonicKind:
            for p in range(4):
                for q in range(4):
                    space = harmonic_space(kind, p, q, flat)
                    assert space.dim == math.comb(3, p) * math.comb(3, q)

    def test_symbolic_spec_rejected(self, torus):
        with pytest.raises(SymbolicCoefficients):
            harmonic_space(HarmonicKind.BC, 1, 1, torus)

    def test_all_cells_cross_checked(self, iwasawa, flat):
        # harmonic_space asserts condition-kernel == Laplacian-nullspace inside
        for spec in (iwasawa, flat):
            for kind in HarmonicKind:
                for p in range(4):
                    for q in range(4):
                        harmonic_space(kind, p, q, spec)

    def test_flat_kahler_all_kinds_agree(self, flat):
        for p in range(4):
            for q in range(4):
                bases = [
                    forms_to_rows(
                        harmonic_space(kind, p, q, flat).basis,
                        basis_multiindices(3, p, q),
                    )
                    for kind in HarmonicKind
                ]
                for rows in bases[1:]:
                    assert subspace_equal(bases[0], rows)

    def test_star_duality_bc_a(self, iwasawa, flat):
        for spec in (iwasawa, flat):
            for p in range(4):
                for q in range(4):
                    bc = harmonic_space(HarmonicKind.BC, p, q, spec)
                    a = harmonic_space(HarmonicKind.A, 3 - q, 3 - p, spec)
                    monomials = basis_multiindices(3, 3 - q, 3 - p)
                    starred = forms_to_rows(
                        [hodge_star(f, spec) for f in bc.basis], monomials
                    )
                    assert subspace_equal(starred, forms_to_rows(a.basis, monomials))

    def test_conjugation_symmetry_bc_bc2(self, iwasawa):
        # conj maps ker Delta_BC onto the kernel of the conjugated system
        for p in range(4):
            for q in range(4):
                bc = harmonic_space(HarmonicKind.BC, p, q, iwasawa)
                kernel2, monomials2 = _condition_kernel("bc2", q, p, iwasawa)
                conjugated = forms_to_rows(
                    [f.conjugate(iwasawa.table) for f in bc.basis], monomials2
                )
                assert subspace_equal(conjugated, kernel2)
                a = harmonic_space(HarmonicKind.A, p, q, iwasawa)
                kernel2, monomials2 = _condition_kernel("a2", q, p, iwasawa)
                conjugated = forms_to_rows(
                    [f.conjugate(iwasawa.table) for f in a.basis], monomials2
                )
                assert subspace_equal(conjugated, kernel2)


class TestMembership:
    def test_torus_phi21_delbar_member(self, torus):
        cert = is_harmonic(HarmonicKind.DELBAR, mono(3, (2,), (1,)), torus)
        assert cert.verdict
        assert all(c.residual.is_zero() for c in cert.conditions)

    def test_torus_phi21_del_nonmember_residual(self, torus):
        cert = is_harmonic(HarmonicKind.DEL, mono(3, (2,), (1,)), torus)
        assert not cert.verdict
        failing = cert.first_failing()
        assert failing.label == "del a"
        assert failing.residual == mono(3, (1, 2), (3,), -Coefficient.symbol("g3c"))

    def test_torus_phi12_aeppli_nonmember_residual(self, torus):
        cert = is_harmonic(HarmonicKind.A, mono(3, (1,), (2,)), torus)
        assert not cert.verdict
        failing = cert.first_failing()
        assert failing.label == "del delbar a"
        g3g3c = Coefficient.symbol("g3") * Coefficient.symbol("g3c")
        # canonical reordering of -g3*g3c * phi^{3,3bar} wedge phi^{1,2bar}
        want = mono(3, (3,), (3,), -g3g3c).wedge(mono(3, (1,), (2,)))
        assert failing.residual == want
        assert want == mono(3, (1, 3), (2, 3), g3g3c)

    def test_membership_agrees_with_kernel(self, iwasawa, rng):
        for kind in HarmonicKind:
            space = harmonic_space(kind, 1, 1, iwasawa)
            for f in space.basis:
                assert is_harmonic(kind, f, iwasawa).verdict
            combo = Form.zero(3)
            for f in space.basis:
                combo = combo + f * G(rng.randint(1, 5), rng.randint(-3, 3))
            if not combo.is_zero():
                assert is_harmonic(kind, combo, iwasawa).verdict


class TestSymbolicLaplacians:
    def test_delbar_laplacian_vanishes_symbolically(self, torus):
        # delbar(a) = 0 and del(*a) = 0 make both Laplacian terms vanish
        # exactly, fresh derivative symbols and all
        f = mono(3, (2,), (1,))
        assert laplacian_apply(HarmonicKind.DELBAR, f, torus).is_zero()

    def test_bc_laplacian_nonzero_on_del_nonclosed(self, torus):
        f = mono(3, (2,), (1,))
        image = laplacian_apply(HarmonicKind.BC, f, torus)
        assert not image.is_zero()
        assert image.bidegree() == (1, 1)

    def test_depth_limit_surfaces(self, torus):
        import dataclasses

        from harmonica.errors import DepthExceeded
        from harmonica.scalars import DerivationTable

        shallow = dataclasses.replace(
            torus,
            table=DerivationTable(
                symbols=set(torus.table.symbols),
                conjugates=dict(torus.table.conjugates),
                entries=dict(torus.table.entries),
                depth_limit=1,
                auto_fresh=True,
            ),
        )
        f = mono(3, (2,), (1,), Coefficient.symbol("g3"))
        with pytest.raises(DepthExceeded):
            laplacian_apply(HarmonicKind.BC, f, shallow)
