#!/usr/bin/env python3
# End to end: decide feasibility of one quadratic inequality over a
# mixed-integer polyhedral set and audit the certificates bit-exactly.

from fractions import Fraction

from miqpcert import (
    HPolyhedron,
    MiqpInstance,
    QMatrix,
    QVector,
    QuadraticForm,
    brute_force_feasibility,
    find_certificate,
    maxcut_instance,
    verify_certificate,
)

vec = lambda *a: QVector.of(a)


def show(name, inst, box=None):
    cert = find_certificate(inst)
    if cert is None:
        print(f"{name}: INFEASIBLE")
    else:
        report = verify_certificate(inst, cert.point)
        print(
            f"{name}: x = {cert.point}, Q(x) = {report.q_value}, "
            f"{cert.size.bits} bits, branch {cert.trace.branch}"
        )
        assert report.ok
    if box is not None:
        verdict = brute_force_feasibility(inst, box)
        assert verdict.feasible == (cert is not None)
        print(f"   brute-force oracle agrees (box {box})")
    return cert


# --- descent along a negative-curvature recession direction ---------------
# -x^2 + 4096 <= 0 over integers x >= 0: the search jumps straight to x = 64
descent = MiqpInstance(
    QuadraticForm(QMatrix.from_rows([[-1]]), QVector.of([0]), Fraction(4096)),
    HPolyhedron(QMatrix.from_rows([[-1]]), QVector.of([0])),
    1,
)
show("negative curvature", descent)

# --- a flat direction with a negative linear rate --------------------------
flat = MiqpInstance(
    QuadraticForm(QMatrix.from_rows([[0]]), QVector.of([-1]), Fraction(1)),
    HPolyhedron(QMatrix.from_rows([[-1]]), QVector.of([0])),
    1,
)
show("flat descent", flat)

# --- bounded residual window ------------------------------------------------
window = MiqpInstance(
    QuadraticForm(QMatrix.from_rows([[1]]), QVector.of([0]), Fraction(-4)),
    HPolyhedron(QMatrix.from_rows([[-1]]), QVector.of([0])),
    1,
)
show("bounded window", window)

# --- max-cut as a single quadratic inequality -------------------------------
triangle = [(0, 1), (1, 2), (0, 2)]
show("triangle cut >= 2", maxcut_instance(triangle, 2, 3), box=1)
show("triangle cut >= 3", maxcut_instance(triangle, 3, 3), box=1)

# --- why exactly one quadratic row -------------------------------------------
# chains of quadratic inequalities force doubly-exponential growth: with
# x1 >= 2 and x_{i+1} >= x_i^2 the smallest solution is x_i = 2^(2^(i-1)),
# whose bit size doubles per step.  One quadratic row never does that; the
# certificate sizes above stay polynomial in the instance size.
value = 2
for i in range(1, 8):
    print(f"squaring chain x_{i} needs {value.bit_length()} bits")
    value = value * value
