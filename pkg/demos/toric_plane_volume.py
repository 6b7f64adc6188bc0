"""A foliation on P(1, 1, n) whose canonical class has volume 1/n.

The form X^2 Z dX + Y^2 Z dY - (X^3 + Y^3) dZ has weight 3 + n, so the
canonical class of the foliation is O(1) and its self-intersection is 1/n.
On the chart Z = 1 it is defined by y^2 d/dx - x^2 d/dy, whose linear part
vanishes: the foliation is not log canonical there.  As n grows the volumes
accumulate at 0.
"""

from foliated.foliation import mp_classify
from foliated.wps import (
    annihilator_2d,
    cubic_toric_form,
    dehomogenize,
    euler_contraction,
    foliation_canonical_degree,
    form_weight,
    self_intersection,
)

print(f"{'n':>3} {'weight':>6} {'K':>3} {'K^2':>6}  chart field          verdict")
for n in range(1, 11):
    omega, w = cubic_toric_form(n)
    d = foliation_canonical_degree(omega, w)
    v = annihilator_2d(*dehomogenize(omega, 2, w).components)
    print(
        f"{n:>3} {form_weight(omega, w):>6} {d:>3} {str(self_intersection(d, d, w)):>6}"
        f"  {v.to_text():<20} {mp_classify(v).tag}"
    )

# the Euler contraction is (1 - n) Z (X^3 + Y^3); reported, not corrected
omega, w = cubic_toric_form(4)
print("Euler contraction for n = 4:", euler_contraction(omega, w))
