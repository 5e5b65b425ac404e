"""
A deterministic 2-isogeny chain
===============================

Starting from ``y^2 = x^3 + 1 + p t`` over Q_p((t)) we lift a 2-torsion
point, apply Velu's formulas, and repeat.  The reduced fibers stay
supersingular, and the j-invariant alternates between 0 and 54000.
"""

from epik import (
    PrecisionPolicy,
    base_curve,
    chain,
    count_points_fp,
    j_invariant,
    reduce_fiber,
    select_torsion,
    velu_step,
)

p = 251
policy = PrecisionPolicy(8, 32)
E = base_curve(p, policy)

# the kernel comes from the smallest simple root of x^3 + 1 mod p, which is -1
T = select_torsion(E)
print("torsion x(t) residues:", T.x.residues())

# one Velu step: the fiber at t = 0 is y^2 = x^3 - 15x + 22
step = velu_step(E, T)
print("codomain fiber:", reduce_fiber(step.codomain), "(-15 mod 251 = 236)")

# supersingular fibers have exactly p + 1 points over F_p
for k in range(1, 5):
    a, b = reduce_fiber(chain(E, k))
    print(f"step {k}: fiber ({a}, {b}), #E(F_p) = {count_points_fp(a, b, p)}")

# j only sees the parity of the step count
for k in range(1, 5):
    j = j_invariant(chain(E, k))
    print(f"step {k}: j =", 0 if j.is_zero else j.coeffs[0].to_fraction())
