"""Hodge star, the Lefschetz pair (L, Lambda), and primitive decompositions.

Run:  python demos/02_star_and_primitive.py
"""

from fractions import Fraction

from harmonica import (
    Form,
    GaussianRational,
    catalog,
    format_form,
    fundamental_form,
    hodge_star,
    is_primitive,
    lefschetz_lambda,
    primitive_decompose,
    volume_form,
    weil_star_primitive,
)

iw = catalog("iwasawa_ak")
omega = fundamental_form(iw)
print("omega      =", format_form(omega))
print("vol        =", format_form(volume_form(iw)))
print("*1 == vol  :", hodge_star(Form.scalar(3, 1), iw) == volume_form(iw))
print("*omega     =", format_form(hodge_star(omega, iw)), " (= omega^2/2)")
print("Lambda(omega) =", format_form(lefschetz_lambda(omega, iw)), " (= n)")

# a primitive (1,1)-form: star is a wedge with omega up to sign
f = Form.monomial(3, (1,), (2,))
print("\nphi[1;2] primitive:", is_primitive(f, iw))
print("*phi[1;2]          =", format_form(hodge_star(f, iw)))
print("-omega ^ phi[1;2]  =", format_form(-omega.wedge(f)))
print("closed formula     =", format_form(weil_star_primitive(f, 0, iw)))

# every form splits uniquely as sum of (1/r!) L^r beta with beta primitive
g = Form.monomial(3, (1,), (1,), GaussianRational(0, 1)) + Form.monomial(
    3, (2,), (3,), GaussianRational(Fraction(5, 2))
)
print("\ndecomposing", format_form(g))
decomp = primitive_decompose(g, iw)
for r, beta in decomp.parts:
    print(f"  r={r}: beta = {format_form(beta)}   (primitive: {is_primitive(beta, iw)})")
print("reassembles exactly:", decomp.reassemble(iw) == g)
