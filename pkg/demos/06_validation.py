"""
Screening a system before use
=============================

Every estimate starts with a contraction screen on a complex rectangle
around [0, 1].  The screen samples the boundary; it is evidence, not proof.
"""
from fractions import Fraction as F

from ifsmeasure import check_nonoverlap, validate
from ifsmeasure.system import affine_system, largest_passing_epsilon

good = affine_system([(F(1, 3), 0), (F(1, 3), F(2, 3))], (F(1, 3), F(2, 3)), epsilon=F(1, 4))
bad = affine_system([(F(11, 10), 0), (F(1, 3), F(2, 3))], (F(1, 2), F(1, 2)))

for name, ifs in (("cantor", good), ("expanding", bad)):
    rep = validate(ifs, nonoverlap_level=2)
    print(name, "ok" if rep.ok else "rejected", float(rep.contraction_sup), rep.messages)

print("largest passing epsilon:", largest_passing_epsilon(good))
print("level-3 cylinders disjoint:", check_nonoverlap(good, 3))
