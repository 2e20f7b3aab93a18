"""Test set versus checking random rows of H, on a hard input.

The input x has syndrome e_1: exactly one row of H sees it.  Sampling a
row of H catches it with probability 1/32; a row of the test set catches
it with probability at least 1 - 31/255.  The second input is the
random non-codeword out of 200 that the test set finds hardest.

Run: python demos/04_monte_carlo.py
"""
import time

from codecheck.cli import random_noncodeword, unit_syndrome_error
from codecheck.rng import Sampler
from codecheck.codes import rs_code
from codecheck.gf import field_from_order
from codecheck.testset import build_code_testset, non_orthogonal_fraction
from codecheck.verifier import mc_counts, row_testset

F = field_from_order(256)
C = rs_code(F, 255, 223)
S = build_code_testset(C.parity_check, rs_code(F, 255, 32))
naive = row_testset(C.parity_check)
hard = unit_syndrome_error(C, 0)
# a non-codeword on which the test set has the most orthogonal rows
smp = Sampler(3)
easy = min((random_noncodeword(C, smp) for _ in range(200)),
           key=lambda v: non_orthogonal_fraction(S, v))

trials = 20_000
for label, T, x in (("test set", S, hard), ("rows of H", naive, hard),
                    ("test set", S, easy), ("rows of H", naive, easy)):
    if x is easy and T is S:
        print()
    exact = non_orthogonal_fraction(T, x)
    for R in (1, 3, 7):
        t0 = time.perf_counter()
        accepted = mc_counts(T, [x], trials, R, seed=R)[0]
        dt = time.perf_counter() - t0
        predicted = float((1 - exact) ** R)
        print(f"{label:<10} R={R}: false accepts {accepted / trials:.4f} "
              f"(exact {predicted:.4f}), {dt:.2f}s")
