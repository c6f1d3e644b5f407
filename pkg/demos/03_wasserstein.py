"""
Wasserstein distance between two stationary measures
====================================================

For increasing, non-overlapping maps whose weight vectors p and q satisfy a
sign condition, W1 equals the gap between first moments.
"""
from fractions import Fraction as F

from ifsmeasure import make_context, render, wasserstein, wasserstein_oracle_affine
from ifsmeasure.system import affine_system, sine_system

affine = affine_system(
    [(F(1, 3), 0), (F(1, 2), F(1, 2))], (F(1, 3), F(2, 3)), q=(F(3, 4), F(1, 4)),
    epsilon=F(1, 4), precision=make_context(64),
)
print("exact:", wasserstein_oracle_affine(affine))
res = wasserstein(affine, 16)
with affine.precision.activate():
    for k, w in enumerate(res.per_k[7:], 8):
        print(f"k={k:2d}  {render(w, 45)}")

# %%
# Nonlinear maps: only the estimate is available.
sine = sine_system(
    [(F(1, 6), F(1, 4)), (F(1, 3), F(2, 3))], (F(1, 7), F(6, 7)), q=(F(1, 2), F(1, 2)),
    epsilon=F(1, 10), precision=make_context(100),
)
res = wasserstein(sine, 15)
with sine.precision.activate():
    print("sine system:", render(res.value, 80))
