"""Operation counts: R rounds against the test set versus a full syndrome.

Run: python demos/03_operation_counts.py
"""
from codecheck.cli import PRESETS, run_bench
from codecheck.codes import rs_code
from codecheck.gf import field_from_order
from codecheck.testset import build_code_testset

print(f"{'code':<14}{'test set':<26}{'R':>3}{'mul':>9}{'add':>9}"
      f"{'syn mul':>10}{'syn add':>10}  bound p^R")
for name, (q, n, k, ko) in PRESETS.items():
    F = field_from_order(q)
    C = rs_code(F, n, k)
    S = build_code_testset(C.parity_check, rs_code(F, n, ko))
    rep = run_bench(C, S, rounds=7, seed=0)
    print(f"{rep.code:<14}{rep.testset:<26}{rep.R:>3}{rep.mul:>9,}{rep.add:>9,}"
          f"{rep.syndrome_mul:>10,}{rep.syndrome_add:>10,}  {float(rep.bound):.2e}")

# The test-set verifier costs R*u*n multiplications whatever n-k is,
# while the syndrome costs (n-k)*n.  The gap widens with redundancy.
F = field_from_order(256)
print("\nRS(255,k) with R=7: multiplications")
for k in (239, 223, 191, 127):
    print(f"  n-k={255 - k:3d}: test set {7 * 255:6,}   syndrome {(255 - k) * 255:7,}")
