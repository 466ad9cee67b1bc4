"""Symbolic membership certificates on the twisted six-torus.

The torus spec carries a formal function symbol g3 = V3(g) in its structure
equations, so harmonic-space kernels are not available — but exact membership
checks are: each certificate lists every defining condition with its residual
form, symbols and all.

Run:  python demos/04_torus_membership_certificates.py
"""

from harmonica import (
    Form,
    HarmonicKind,
    catalog,
    check_counterexamples_torus,
    format_form,
    is_harmonic,
    is_primitive,
)

torus = catalog("torus6")
candidates = {
    "phi[2;1]": Form.monomial(3, (2,), (1,)),
    "phi[1;2]": Form.monomial(3, (1,), (2,)),
}

for name, form in candidates.items():
    print(f"\n=== {name} (primitive: {is_primitive(form, torus)}) ===")
    for kind in HarmonicKind:
        cert = is_harmonic(kind, form, torus)
        verdict = "member" if cert.verdict else "non-member"
        print(f"  {kind.value:7s} {verdict}")
        for cond in cert.conditions:
            if not cond.ok:
                print(f"          {cond.label} -> {format_form(cond.residual)}")

print("\nThe two candidates separate the five harmonic families:")
report = check_counterexamples_torus(torus)
print("cross-family non-inclusion report:", report.status)
for item in report.items:
    if "not<=" in item.name:
        print("  ", item.name, "->", "ok" if item.ok else "FAIL")
