import math
from collections import Counter

import numpy as np
import pytest
from hypothesis import given, strategies as st

from codecheck.codes import (LinearCode, all_codewords, code_from_text, code_to_text,
                             hamming_code, iter_codewords, load_code,
                             min_distance_exhaustive, random_code, rm_code,
                             rm_monomials, rs_code, rs_points, save_code,
                             subfield_subcode, syndrome_direct, trace_code)
from codecheck.fmatrix import Matrix, Vector, mat_mul, row_space_equal
from codecheck.gf import FieldSpec, field_build, field_extend
from codecheck.opcount import OpCounter
from codecheck.rng import Sampler

from oracles import min_distance, oracle_for

GF2 = FieldSpec(2)
GF3 = FieldSpec(3)
GF7 = FieldSpec(7)
GF4 = field_build(2, 2)
GF8 = field_build(2, 3)
GF9 = field_build(3, 2)
GF16 = field_build(2, 4)
GF16_OVER_4 = field_extend(GF4, 2)
GF64_OVER_8 = field_extend(GF8, 2)


def codeword_set(C):
    return {tuple(int(v) for v in row) for row in all_codewords(C)}


# -- Hamming -----------------------------------------------------------------


def test_hamming_743_layout():
    C = hamming_code(3)
    assert (C.n, C.k, C.distance) == (7, 4, 3)
    P = C.generator.data[:, 4:]
    assert np.array_equal(C.generator.data[:, :4], np.eye(4))
    assert np.array_equal(C.parity_check.data, np.concatenate([P.T, np.eye(3)], axis=1))
    # columns of H are the seven distinct nonzero 3-bit vectors
    cols = {tuple(c) for c in C.parity_check.data.T.tolist()}
    assert len(cols) == 7 and (0, 0, 0) not in cols


@pytest.mark.parametrize("r", [2, 3, 4])
def test_hamming_distance_by_enumeration(r):
    C = hamming_code(r)
    assert C.n == 2 ** r - 1
    assert min_distance_exhaustive(C) == 3
    assert min_distance(oracle_for(GF2), C.generator.data) == 3


# -- Reed-Solomon ---------------------------------------------------------------


RS_CASES = [(GF8, 7, 3), (GF8, 8, 3), (GF8, 7, 1), (GF8, 7, 6), (GF7, 6, 3),
            (GF9, 9, 4), (GF16, 10, 2), (GF64_OVER_8, 9, 2)]


@pytest.mark.parametrize("F,n,k", RS_CASES, ids=[f"{F!r}-{n}-{k}" for F, n, k in RS_CASES])
def test_rs_is_mds_by_enumeration(F, n, k):
    C = rs_code(F, n, k)
    assert mat_mul(C.generator, C.parity_check.T).is_zero()
    assert C.distance == n - k + 1
    assert min_distance_exhaustive(C) == n - k + 1
    if F.order ** k <= 6561 and F.prime_degree == F.degree:  # skip towers: slow oracle
        assert min_distance(oracle_for(F), C.generator.data) == n - k + 1


def test_rs_generator_rows_are_monomial_evaluations():
    C = rs_code(GF8, 7, 3)
    pts = rs_points(GF8, 7)
    K = oracle_for(GF8)
    for i in range(3):
        for j, a in enumerate(pts):
            v = 1
            for _ in range(i):
                v = K.mul(v, int(a))
            assert C.generator.data[i, j] == v


def test_rs_points_default_order():
    g = GF8.primitive_element
    assert rs_points(GF8, 7).tolist() == [GF8.scalar_pow(g, i) for i in range(7)]
    assert rs_points(GF8, 8).tolist()[:2] == [0, 1]
    with pytest.raises(ValueError):
        rs_points(GF8, 9)


def test_rs_rejects_bad_points():
    with pytest.raises(ValueError):
        rs_code(GF8, 3, 2, points=[1, 1, 2])
    with pytest.raises(ValueError):
        rs_code(GF8, 3, 4)


def test_rs_255_223_shape():
    F = field_build(2, 8)
    C = rs_code(F, 255, 223)
    assert (C.n, C.k, C.distance) == (255, 223, 33)
    rng = np.random.default_rng(0)
    c = C.encode(rng.integers(0, 256, 223))
    assert C.contains(c)
    bad = c.data.copy()
    bad[17] ^= 1
    assert not C.contains(Vector(F, bad))


# -- Reed-Muller -------------------------------------------------------------


def test_rm2_1_3_weight_distribution():
    C = rm_code(2, 1, 3)
    weights = Counter(np.count_nonzero(all_codewords(C), axis=1).tolist())
    assert weights == {0: 1, 4: 14, 8: 1}


def test_rm3_1_2_weight_distribution():
    C = rm_code(3, 1, 2)
    weights = Counter(np.count_nonzero(all_codewords(C), axis=1).tolist())
    # constants: 2 of weight 9; the 24 non-constant affine forms vanish on a line
    assert weights == {0: 1, 6: 24, 9: 2}


RM_CASES = [(2, 0, 3), (2, 1, 3), (2, 2, 3), (2, 1, 4), (2, 2, 4), (3, 1, 2),
            (3, 2, 2), (3, 3, 2), (4, 1, 2), (4, 2, 2), (4, 3, 2), (5, 1, 2), (3, 1, 3)]


@pytest.mark.parametrize("q,r,m", RM_CASES, ids=[f"RM_{q}({r},{m})" for q, r, m in RM_CASES])
def test_rm_distance_and_dimension(q, r, m):
    C = rm_code(q, r, m)
    # dimension: monomials with per-variable degree < q and total <= r
    count = sum(1 for e in np.ndindex(*([q] * m)) if sum(e) <= r)
    assert C.k == count == len(rm_monomials(q, r, m))
    assert C.n == q ** m
    assert min_distance_exhaustive(C) == C.distance
    u, s = divmod(r, q - 1)
    assert C.distance == (q - s) * q ** (m - u - 1)


def test_rm_binary_dimension_formula():
    for m in range(1, 6):
        for r in range(m + 1):
            assert rm_code(2, r, m).k == sum(math.comb(m, i) for i in range(r + 1))


def test_rm_point_encoding():
    C = rm_code(2, 1, 3)
    # row 0 is the constant 1, then x_1, x_2, x_3 = bits of the point index
    assert C.generator.data[0].tolist() == [1] * 8
    for i in range(3):
        assert C.generator.data[1 + i].tolist() == [(t >> i) & 1 for t in range(8)]


# -- random codes ----------------------------------------------------------------


def test_random_code_is_deterministic_per_seed():
    a = random_code(GF8, 12, 4, seed=1)
    b = random_code(GF8, 12, 4, seed=1)
    c = random_code(GF8, 12, 4, seed=2)
    assert a.generator == b.generator and a.parity_check == b.parity_check
    assert a.generator != c.generator
    assert a.label == "Random(12,4;seed=1)"


def test_random_code_regression_distance():
    # distance of the pinned [12,4] seed-1 code, re-derived by a pure-python
    # enumeration of all 4096 codewords
    C = random_code(GF8, 12, 4, seed=1)
    d = min_distance_exhaustive(C)
    assert d == min_distance(oracle_for(GF8), C.generator.data)
    assert d == 6


@given(st.integers(0, 2 ** 32), st.integers(2, 8), st.data())
def test_random_codes_are_consistent(seed, n, data):
    k = data.draw(st.integers(1, n - 1))
    C = random_code(GF4, n, k, seed)
    assert mat_mul(C.generator, C.parity_check.T).is_zero()
    msg = Sampler(seed).many_below(4, k)
    c = C.encode(msg)
    assert C.contains(c)
    assert C.message_of(c).tolist() == msg.tolist()
    assert C.message_index(c) == sum(int(m) * 4 ** i for i, m in enumerate(msg))


# -- subfield subcodes and trace codes --------------------------------------------


SUBFIELD_CASES = [(rs_code(GF8, 7, 3), GF2), (rs_code(GF8, 7, 5), GF2),
                  (rs_code(GF16, 15, 4), GF2), (rs_code(GF16_OVER_4, 12, 3), GF4),
                  (rs_code(GF16_OVER_4, 12, 3), GF2), (rs_code(GF64_OVER_8, 10, 3), GF8),
                  (random_code(GF9, 6, 3, 5), GF3)]
sub_ids = [f"{C.label}/{C.field!r}->{B!r}" for C, B in SUBFIELD_CASES]


@pytest.mark.parametrize("C,B", SUBFIELD_CASES, ids=sub_ids)
def test_subfield_subcode_is_intersection(C, B):
    S = subfield_subcode(C, B)
    assert S.field == B
    inside = {w for w in codeword_set(C) if all(v < B.order for v in w)}
    assert codeword_set(S) == inside


@pytest.mark.parametrize("C,B", SUBFIELD_CASES, ids=sub_ids)
def test_trace_code_is_image_of_trace(C, B):
    T = trace_code(C, B)
    words = all_codewords(C)
    image = {tuple(row) for row in C.field.trace(words, B).tolist()}
    assert codeword_set(T) == image


@pytest.mark.parametrize("C,B", SUBFIELD_CASES, ids=sub_ids)
def test_delsarte_duality(C, B):
    # (C restricted to B)^perp = Tr(C^perp)
    lhs = subfield_subcode(C, B).dual()
    rhs = trace_code(C.dual(), B)
    assert lhs.k == rhs.k
    assert row_space_equal(lhs.generator, rhs.generator)


def test_binary_subcode_of_rs_7_5_has_hamming_parameters():
    # RS(7,5) over GF(8) restricted to GF(2) is the [7,4] Hamming code up to
    # coordinate labelling: same length, dimension and distance
    S = subfield_subcode(rs_code(GF8, 7, 5), GF2)
    assert (S.n, S.k) == (7, 4)
    assert min_distance_exhaustive(S) == 3


# -- syndromes and op counts -------------------------------------------------------


def test_syndrome_direct_counts_and_value():
    F = field_build(2, 8)
    C = rs_code(F, 31, 25, points=F.pow(F.primitive_element, np.arange(31)))
    rng = np.random.default_rng(3)
    x = Vector(F, rng.integers(0, 256, 31))
    ctr = OpCounter()
    s = syndrome_direct(C, x, ctr)
    assert s == C.syndrome(x)
    assert (ctr.base_mul, ctr.base_add) == (6 * 31, 6 * 30)


def test_iter_codewords_order_and_budget():
    C = random_code(GF3, 5, 2, 0)
    blocks = list(iter_codewords(C, chunk_elems=10))
    assert blocks[0][0] == 0
    words = np.concatenate([b for _, b in blocks])
    assert len(words) == 9
    for j, w in enumerate(words):
        assert C.message_index(Vector(GF3, w)) == j
    with pytest.raises(ValueError, match="budget"):
        list(iter_codewords(C, budget=8))


# -- validation and file format --------------------------------------------------


def test_linear_code_validation():
    C = hamming_code(3)
    with pytest.raises(ValueError):
        LinearCode(C.generator, C.generator)
    with pytest.raises(ValueError):
        LinearCode(C.generator, C.parity_check, label="has space")
    H = C.parity_check.data.copy()
    H[0, 0] ^= 1
    with pytest.raises(ValueError):
        LinearCode(C.generator, Matrix(GF2, H))


def test_from_parity_check_and_dual():
    C = rs_code(GF8, 7, 3)
    D = LinearCode.from_parity_check(C.parity_check)
    assert row_space_equal(D.generator, C.generator)
    assert C.dual().k == 4
    assert row_space_equal(C.dual().generator, C.parity_check)


@pytest.mark.parametrize("C", [hamming_code(3), rs_code(GF8, 7, 3), rm_code(3, 1, 2),
                               rs_code(GF64_OVER_8, 9, 4), random_code(GF4, 8, 3, 9)],
                         ids=lambda C: C.label)
def test_code_text_roundtrip(C, tmp_path):
    path = tmp_path / "c.code"
    save_code(C, path)
    D = load_code(path)
    assert D.generator == C.generator and D.parity_check == C.parity_check
    assert (D.label, D.distance) == (C.label, C.distance)


def test_code_file_errors():
    text = code_to_text(rs_code(GF8, 7, 3))
    lines = text.splitlines()
    with pytest.raises(ValueError):
        code_from_text("\n".join(lines[:-1]))
    with pytest.raises(ValueError):
        code_from_text(text + "0 0 0\n")
    with pytest.raises(ValueError, match="distance"):
        code_from_text(text.replace("DISTANCE 5", "DISTANCE 4"))
    with pytest.raises(ValueError):
        code_from_text(text.replace("GF(2^3) 7 3", "GF(2^4) 7 3", 1))
    with pytest.raises(ValueError):
        code_from_text(text.replace("CODE", "COAD", 1))


def test_large_code_with_corrupted_parity_check_is_rejected():
    # above the exact-check budget G H^T = 0 is tested with random vectors
    F = field_build(2, 10)
    C = rs_code(F, 1023, 895)
    H = C.parity_check.data.copy()
    H[7, 300] ^= 1
    with pytest.raises(ValueError, match="G H"):
        LinearCode(C.generator, Matrix(F, H))
