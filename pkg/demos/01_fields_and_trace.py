"""Finite fields, towers and the trace map.

Run: python demos/01_fields_and_trace.py
"""
import numpy as np

from codecheck.gf import Fe, field_build, field_extend, field_from_order

# GF(8) is built from the default irreducible polynomial x^3 + x + 1.
# Elements are integers whose bits are polynomial coefficients.
F8 = field_from_order(8)
a = Fe(F8, 2)  # the class of x
print(F8.name, "elements:", F8.elements().tolist())
print("a =", a.value, " a^3 =", (a ** 3).value, "(equals a + 1 = 3)")
print("a^-1 =", a.inverse().value, " a * a^-1 =", (a * a.inverse()).value)

# The AES field, with its modulus given explicitly.
aes = field_build(2, 8, modulus=0x11B)
print("\nAES field: 0x57 * 0x83 =", hex(aes.scalar_mul(0x57, 0x83)))

# Vectorised arithmetic on whole arrays.
xs = np.arange(1, 8)
print("\nx * x^-1 over GF(8)^*:", F8.mul(xs, F8.inv(xs)).tolist())

# A tower GF(4) -> GF(16).  Base-field elements keep their integer
# encoding inside the extension, so embedding needs no conversion.
GF4 = field_from_order(4)
GF16 = field_extend(GF4, 2)
print("\n" + GF16.name, "chain:", [f.name for f in GF16.chain()])
els = GF16.elements()
tr = GF16.trace(els, GF4)
print("Tr_{16/4} of every element:", tr.tolist())
print("each value of GF(4) is hit", np.bincount(tr, minlength=4).tolist(), "times")

# Linearity of the trace on random pairs.
rng = np.random.default_rng(0)
x, y = rng.integers(0, 16, 50), rng.integers(0, 16, 50)
c = rng.integers(0, 4, 50)
lhs = GF16.trace(GF16.add(GF16.mul(c, x), y), GF4)
rhs = GF4.add(GF4.mul(c, GF16.trace(x, GF4)), GF16.trace(y, GF4))
print("Tr(c x + y) == c Tr(x) + Tr(y) on 50 samples:", bool(np.array_equal(lhs, rhs)))
