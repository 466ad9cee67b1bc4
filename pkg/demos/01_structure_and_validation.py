"""Walk through the built-in specs: structure equations, d^2 checks, metric flags.

Run:  python demos/01_structure_and_validation.py
"""

from harmonica import (
    Form,
    catalog,
    check_almost_kahler,
    check_integrability_relations,
    exterior_d,
    format_form,
)

for name in ("flat_kahler6", "torus6", "iwasawa_ak", "iwasawa_cplx"):
    spec = catalog(name)
    print(f"\n=== {name} (n = {spec.n}) ===")
    for a, label in enumerate(spec.generators, start=1):
        print(f"  d {label} = {format_form(spec.d_gen[a])}")

    integ = check_integrability_relations(spec)
    print(f"  d^2 and the seven component identities: {integ.status}")

    ak = check_almost_kahler(spec)
    print(f"  almost Kahler: {ak.data['almost_kahler']}, integrable: {ak.data['integrable']}")

# exterior_d acts on anything, by the Leibniz rule
iw = catalog("iwasawa_ak")
f = Form.monomial(3, (1, 3))
print("\nLeibniz in action on iwasawa_ak:")
print(f"  d(phi[1,3;]) = {format_form(exterior_d(f, iw))}")
