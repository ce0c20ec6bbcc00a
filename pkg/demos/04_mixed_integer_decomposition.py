#!/usr/bin/env python3
# Decomposing a mixed-integer linear set into fibers plus integer ray
# families, and pulling small integer points out of it.

from fractions import Fraction

from miqpcert import (
    HPolyhedron,
    MixedIntegerSet,
    QMatrix,
    QVector,
    decompose_mixed_integer_set,
    mip_point,
)

vec = lambda *a: QVector.of(a)

# --- the positive quadrant with both coordinates integral ------------------
quadrant = MixedIntegerSet(
    HPolyhedron(QMatrix.from_rows([[-1, 0], [0, -1]]), QVector.of([0, 0])), 2
)
dec = decompose_mixed_integer_set(quadrant)
print("quadrant ray families:")
for i, fam in enumerate(dec.ray_families):
    print(f"  family {i}: {[str(r) for r in fam.rays]}")
print("fibers (integer part, family):")
for fib in dec.fiber_records:
    print(f"  {fib.integer_part} from family {fib.family_index}")

# every lattice point of the quadrant is one fiber point plus an integer
# combination of one family's rays; (2,3) = (0,0) + 2*(1,0) + 3*(0,1)

# --- a shifted half-line ----------------------------------------------------
half = MixedIntegerSet(HPolyhedron(QMatrix.from_rows([[-1]]), QVector.of([Fraction(-2, 3)])), 1)
dec = decompose_mixed_integer_set(half)
print("\nx >= 2/3 with x integral:")
for fib in dec.fiber_records:
    print("  fiber at", fib.integer_part)
print("  smallest integer point:", mip_point(half))

# --- integrality can be a narrow needle ------------------------------------
narrow = MixedIntegerSet(
    HPolyhedron(QMatrix.from_rows([[1], [-1]]), QVector.of([Fraction(2, 3), Fraction(-1, 3)])), 1
)
print("\n1/3 <= x <= 2/3 with x integral has a point:", mip_point(narrow))

# --- mixed case: one integer, one continuous coordinate --------------------
strip = MixedIntegerSet(
    HPolyhedron(
        QMatrix.from_rows([[1, -1], [-1, 1], [0, 1], [0, -1]]),
        QVector.of([0, 0, Fraction(7, 5), Fraction(-1, 2)]),
    ),
    1,
)
print("y = z, 1/2 <= z <= 7/5, y integral gives:", mip_point(strip))
