# Images of A x^k1 + B y^k2 over small fields.
#
# Walks through prediction, exhaustive enumeration and witness search for a
# handful of constant pairs.  Run with: python3 demos/power_sum_images.py

import numpy as np

from matimage import Matrix2, PowerSumPoly, classify_image, enumerate_image, is_subspace, make_field, solve
from matimage.waring import roots_gate

F3 = make_field(3)

# %% a singular pair sharing a zero row: the image lives in one row
A = Matrix2.parse(F3, "[[1,0],[0,0]]")
B = Matrix2.parse(F3, "[[2,0],[0,0]]")
poly = PowerSumPoly(A, B, 1, 1)
pred = classify_image(poly)
print("prediction:", pred)
print("predicted subspace:", pred.subspace().describe())

image = enumerate_image(poly)
rep = is_subspace(image)
print("oracle:", len(image), "matrices, dim", rep.dim, "subspace" if rep.is_subspace else "not a subspace")

# %% generic pair: everything is hit
A = Matrix2.parse(F3, "[[1,1],[0,1]]")
B = Matrix2.parse(F3, "[[0,0],[1,0]]")
poly = PowerSumPoly(A, B, 2, 2)
print(classify_image(poly), "| image size", len(enumerate_image(poly)), "of", 3**4)

# %% find explicit witnesses for a few targets
rng = np.random.default_rng(7)
for code in rng.integers(0, 81, size=4):
    C = Matrix2.from_code(F3, int(code))
    w = solve(poly, C)
    if w is None:
        print(C, "not in the image")
    else:
        X, Y = w
        print(C, "= A", X, "^2 + B", Y, "^2", poly(X, Y) == C)

# %% powers need roots: k=3 over F_4 breaks the subspace property
F4 = make_field(2, 2)
A = Matrix2.diag(F4, F4.one, F4.zero)
B = Matrix2.diag(F4, F4.zero, F4.one)
poly = PowerSumPoly(A, B, 3, 3)
rep = is_subspace(enumerate_image(poly))
print("F_4, k=3: roots available?", roots_gate(F4, 3, 3), "| size", rep.size, "| subspace?", rep.is_subspace)
