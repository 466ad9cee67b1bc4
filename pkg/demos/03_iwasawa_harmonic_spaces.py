"""Invariant harmonic spaces on the almost Kahler Iwasawa structure.

Computes the Bott-Chern (2,1) space, the image of the Lefschetz operator on
the (1,0) space, and the primitive/Lefschetz split of the (2,1) space — the
situation where the naive expectation of a zero-dimensional overlap breaks
down: here the two pieces still span everything.

Run:  python demos/03_iwasawa_harmonic_spaces.py
"""

from harmonica import (
    GaussianRational,
    HarmonicKind,
    catalog,
    format_form,
    harmonic_space,
    is_primitive,
    lefschetz_L,
    verify_bc21_gap,
)

iw = catalog("iwasawa_ak")

bc21 = harmonic_space(HarmonicKind.BC, 2, 1, iw)
print(f"invariant H^(2,1)_BC: dimension {bc21.dim}")
for f in bc21.basis:
    print("   ", format_form(f))

bc10 = harmonic_space(HarmonicKind.BC, 1, 0, iw)
print(f"\ninvariant H^(1,0)_BC: dimension {bc10.dim}")
for f in bc10.basis:
    print("   ", format_form(f), "->  L:", format_form(lefschetz_L(f, iw)))

v1, v2 = bc21.basis
print("\nL-images of the (2,1) basis (note: parallel!):")
print("  L(v1) =", format_form(lefschetz_L(v1, iw)))
print("  L(v2) =", format_form(lefschetz_L(v2, iw)))

combo = v2 + v1 * GaussianRational(0, 1)
print("\nv2 + i*v1 =", format_form(combo))
print("  primitive:", is_primitive(combo, iw), " (so the primitive part is nonzero)")

report = verify_bc21_gap(iw)
print(f"\n(2,1) split report: {report.status}, equality = {report.data['equality']}")
print(
    "  dims: harmonic =", report.data["dim_harmonic"],
    ", primitive part =", report.data["dim_primitive_part"],
    ", L part =", report.data["dim_L_part"],
)

print("\nfull dimension table, Bott-Chern:")
for p in range(4):
    row = [harmonic_space(HarmonicKind.BC, p, q, iw).dim for q in range(4)]
    print(f"  p={p}:", row)
