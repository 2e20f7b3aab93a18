"""List decoding Reed-Muller codes through a Reed-Solomon decoder.

RM_2(1,3) is contained in RS(8,5) over GF(8).  Decode the received word as
an RS word, keep the binary candidates and let the verifier discard any
that are not RM codewords.

Run: python demos/05_rm_list_decoding.py
"""
from fractions import Fraction
import itertools

from codecheck.codes import all_codewords
from codecheck.fmatrix import Vector
from codecheck.gf import FieldSpec
from codecheck.rmlist import default_rm_testset, naive_rs_list_decode, rm_list_decode, rm_rs_setup
from codecheck.testset import non_orthogonal_fraction
from codecheck.verifier import VerifierConfig

GF2 = FieldSpec(2)
setup = rm_rs_setup(2, 1, 3)
params, rm, rs = setup
print(f"RM_2(1,3): n={rm.n} k={rm.k} d={rm.distance};  {rs.label} over {rs.field.name}, "
      f"designed distance D={params.D}")
S = default_rm_testset(rm)
print(f"test set: {S.nbar} rows over {S.ext.name}, p = {S.designed_p}")

c = Vector(GF2, all_codewords(rm)[6])
y = c + Vector(GF2, [0, 0, 1, 0, 0, 0, 0, 0])
print("\nsent    ", c.tolist())
print("received", y.tolist())
res = rm_list_decode(2, 1, 3, y, Fraction(1, 8), VerifierConfig(5, 1), testset=S, setup=setup)
print(f"RS list size {res.rs_list_size}, binary candidates {len(res.candidates)}, "
      f"verified {len(res.words)}")
print("recovered", [w.tolist() for w in res.words])

# A dishonest RS decoder that also returns a binary word outside RM, the
# one the test set rejects least often.
outside = [Vector(GF2, w) for w in itertools.product((0, 1), repeat=8)
           if not rm.contains(Vector(GF2, w))]
junk = min(outside, key=lambda w: non_orthogonal_fraction(S, w))
print(f"\njunk word {junk.tolist()} is caught by {non_orthogonal_fraction(S, junk)} of the rows")


def padded(code, query):
    return naive_rs_list_decode(code, query) + [junk.over(code.field)]


bad = 0
for seed in range(200):
    out = rm_list_decode(2, 1, 3, y, Fraction(1, 8), VerifierConfig(3, seed), testset=S,
                         setup=setup, decoder=padded)
    bad += junk in out.words
print(f"junk word survived verification in {bad}/200 runs "
      f"(bound p^R = {float(S.designed_p ** 3):.3f})")
