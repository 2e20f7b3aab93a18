"""An MDS test set for the [7,4,3] Hamming code, checked on all 128 inputs.

Run: python demos/02_hamming_testset.py
"""
from fractions import Fraction
import itertools

import numpy as np

from codecheck.codes import LinearCode, hamming_code, trace_code
from codecheck.fmatrix import Vector, mat_vec, row_space_equal
from codecheck.testset import build_mds_testset, non_orthogonal_fraction

C = hamming_code(3)
print(C.label, "parity check:")
print(C.parity_check.data)

# Ask for a false-accept probability of at most 1/3 per round, with rows
# over GF(2^3).  The outer code is RS(6,3) over GF(8), so S has 6 rows.
S = build_mds_testset(C.parity_check, Fraction(1, 3), 3)
print(f"\ntest set over {S.ext.name}: {S.nbar} rows, outer {S.outer_label}, p = {S.designed_p}")
print(S.rows.data)

# Every codeword is orthogonal to every row.  Every other vector is
# orthogonal to at most p * nbar rows.
hist = {}
for bits in itertools.product((0, 1), repeat=7):
    x = Vector(C.field, bits)
    frac = non_orthogonal_fraction(S, x)
    key = "codeword" if C.contains(x) else "non-codeword"
    hist.setdefault(key, []).append(frac)
for key, fracs in hist.items():
    print(f"{key:>13}: {len(fracs):3d} vectors, rejecting-row fraction in "
          f"[{min(fracs)}, {max(fracs)}]")

# The traces of the test-set span recover the dual code.
T = trace_code(LinearCode.from_generator(S.rows), C.field)
print("\ntrace of span(S) equals the dual code:", row_space_equal(T.generator, C.parity_check))

x = Vector(C.field, [1, 0, 0, 0, 0, 0, 0])
print("S x^T for x = e1:", mat_vec(S.rows, x).tolist(),
      "-> weight", int(np.count_nonzero(mat_vec(S.rows, x).data)))
