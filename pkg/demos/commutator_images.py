# Images of A x y - B y x.
#
# Compares the closed forms and per-case predictions with certified oracle
# spans.  Run with: python3 demos/commutator_images.py

from collections import Counter

import numpy as np

from matimage import Matrix2, make_field
from matimage.commutator import CommutatorPoly, canonical_case_prediction, image_subspace

F3 = make_field(3)

# %% A = B gives A times the trace-zero matrices
A = Matrix2.parse(F3, "[[1,0],[0,0]]")
sub, cert = image_subspace(CommutatorPoly(A, A))
print("A = B:", sub.describe(), "via", cert.mode)

# %% invertible difference: onto
B = Matrix2.parse(F3, "[[0,0],[0,1]]")
sub, cert = image_subspace(CommutatorPoly(A, B))
print("det(A-B) != 0:", sub.dim, "dimensional, via", cert.mode)

# %% a first-row case, certified by enumeration
B = Matrix2.parse(F3, "[[1,1],[0,0]]")
poly = CommutatorPoly(A, B)
sub, cert = image_subspace(poly)
print("prediction:", canonical_case_prediction(poly))
print("oracle:", sub.describe(), "| closed under addition:", cert.is_subspace)

# %% random pairs with singular difference
rng = np.random.default_rng(1)
dims, verdicts = Counter(), Counter()
for _ in range(60):
    A = Matrix2.from_code(F3, int(rng.integers(1, 81)))
    D = Matrix2.from_code(F3, int(rng.integers(1, 81)))
    if D.det():
        continue
    B = A - D
    if B.is_zero():
        continue
    poly = CommutatorPoly(A, B)
    sub, cert = image_subspace(poly)
    pred = canonical_case_prediction(poly)
    dims[sub.dim] += 1
    if pred is None:
        verdicts["abstain"] += 1
    else:
        verdicts["agree" if pred.subspace() == sub else "disagree"] += 1
print("oracle dims:", dict(sorted(dims.items())))
print("predictions:", dict(verdicts))
