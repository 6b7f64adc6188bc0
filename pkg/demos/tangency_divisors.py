"""Tangency divisors of log canonical foliations, with certificates.

For a vector field v and a boundary R (coordinate hyperplanes), contracting v
against a logarithmic 1-form gives a divisor Gamma.  The coefficients of the
form are chosen so that Gamma is log canonical at the origin, and the choice
comes with a proof tree that can be re-checked on its own.
"""

import json

from foliated import certificate_to_json, gamma_construct, mp_classify, parse_vector_field, verify_certificate
from foliated.poly import parse_polynomial, weighted_lowest_part

cases = [
    ("x, 2*y", "1,2", None),
    ("3*y + x^2, 5*x + y^3", "1,2", None),
    ("x2*x3 + x2, x3 - x1^2, 2*x1", "1,2,3", None),
    ("1, 0", "2", None),
    ("1, 1", "1", "y + x^2"),
]

for field, boundary, delta in cases:
    v = parse_vector_field(field)
    R = {int(i) for i in boundary.split(",")}
    d = parse_polynomial(delta, v.dimension) if delta else None
    print(f"--- v = ({v}), R = {sorted(R)}, delta = {d}")
    print("  singularity type:", mp_classify(v).tag)
    res = gamma_construct(v, R, d, seed=0)
    print("  lambda:", [str(c) for c in res.lam])
    print("  Gamma:", res.gamma)
    print("  lowest part:", weighted_lowest_part(res.gamma))
    print("  certificate:", json.dumps(certificate_to_json(res.certificate)))
    print("  verified:", verify_certificate(res.gamma, res.certificate))

# a nilpotent linear part is refused
try:
    gamma_construct(parse_vector_field("y^2, -x^2"), {1, 2})
except ValueError as exc:
    print("--- y^2 d/dx - x^2 d/dy:", exc)
