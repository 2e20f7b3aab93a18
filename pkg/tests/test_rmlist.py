from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from codecheck.codes import all_codewords, rs_code, subfield_subcode
from codecheck.fmatrix import Vector
from codecheck.gf import FieldSpec, field_build
from codecheck.rng import Sampler
from codecheck.rmlist import (ListDecodeQuery, default_rm_testset, naive_rs_list_decode,
                              rm_list_decode, rm_rs_params, rm_rs_setup)
from codecheck.testset import non_orthogonal_fraction
from codecheck.verifier import VerifierConfig

GF2 = FieldSpec(2)
GF8 = field_build(2, 3)


def brute_list(C, y, t):
    """Every codeword within Hamming distance t of y, by full enumeration."""
    words = all_codewords(C)
    dist = np.count_nonzero(words != y.data[None, :], axis=1)
    return sorted(tuple(w) for w in words[dist <= t].tolist())


# -- parameters ----------------------------------------------------------------


def test_params_examples():
    p = rm_rs_params(2, 1, 3)
    assert (p.u, p.s, p.D, p.N, p.k) == (1, 0, 4, 8, 5)
    p = rm_rs_params(3, 1, 2)
    assert (p.u, p.s, p.D, p.N, p.k) == (0, 1, 6, 9, 4)
    p = rm_rs_params(2, 2, 3)
    assert (p.u, p.s, p.D, p.k) == (2, 0, 2, 7)
    for q, m in [(2, 3), (3, 2), (4, 2), (5, 3)]:
        p = rm_rs_params(q, 0, m)
        assert p.D == q ** m and p.k == 1


def test_params_errors():
    with pytest.raises(ValueError):
        rm_rs_params(2, 3, 3)  # u = 3 > m-1
    with pytest.raises(ValueError):
        rm_rs_params(2, -1, 3)
    with pytest.raises(ValueError):
        rm_rs_params(3, 5, 2)


CONTAINMENT = [(2, 0, 3), (2, 1, 3), (2, 2, 3), (2, 1, 4), (2, 2, 4), (2, 3, 4),
               (3, 1, 2), (3, 2, 2), (3, 1, 3), (4, 1, 2), (4, 2, 2), (4, 3, 2),
               (5, 1, 2), (5, 3, 2)]


@pytest.mark.parametrize("q,r,m", CONTAINMENT, ids=[f"{q}-{r}-{m}" for q, r, m in CONTAINMENT])
def test_rm_sits_in_rs_subfield_subcode(q, r, m):
    params, rm, rs = rm_rs_setup(q, r, m)
    assert rs.distance == params.D == rm.distance
    for row in rm.generator:
        assert rs.contains(row.over(rs.field))
    sub = subfield_subcode(rs, rm.field)
    assert sub.k >= rm.k


# -- naive RS list decoding --------------------------------------------------------


@settings(max_examples=60)
@given(st.integers(0, 2 ** 32), st.integers(0, 3), st.integers(0, 4))
def test_list_decoder_strategies_agree_with_enumeration(seed, t, noise):
    C = rs_code(GF8, 7, 3)
    smp = Sampler(seed)
    y = C.random_codeword(smp).data.copy()
    pos = smp.many_below(7, noise)
    y[pos] = smp.many_below(8, noise)
    y = Vector(GF8, y)
    q = ListDecodeQuery(y, Fraction(t, 7))
    a = naive_rs_list_decode(C, q, method="codewords")
    b = naive_rs_list_decode(C, q, method="errors")
    assert a == b
    assert sorted(tuple(c.tolist()) for c in a) == brute_list(C, y, t)
    assert [C.message_index(c) for c in a] == sorted(C.message_index(c) for c in a)


def test_two_codewords_at_half_distance():
    # RS(7,2) has d = 6.  y copies half the support of a weight-6 codeword c,
    # so it lies at distance 3 from both 0 and c.
    C = rs_code(GF8, 7, 2)
    words = all_codewords(C)
    c = next(w for w in words if np.count_nonzero(w) == 6)
    support = np.flatnonzero(c)
    y = np.zeros(7, dtype=np.int64)
    y[support[:3]] = c[support[:3]]
    y = Vector(GF8, y)
    L = naive_rs_list_decode(C, ListDecodeQuery(y, Fraction(3, 7)))
    got = {tuple(v.tolist()) for v in L}
    assert {(0,) * 7, tuple(c.tolist())} <= got
    assert sorted(got) == brute_list(C, y, 3)
    assert len(L) >= 2


def test_radius_zero():
    C = rs_code(GF8, 7, 3)
    c = C.random_codeword(Sampler(4))
    assert naive_rs_list_decode(C, ListDecodeQuery(c, Fraction(0))) == [c]
    bad = c + Vector(GF8, [1, 0, 0, 0, 0, 0, 0])
    assert naive_rs_list_decode(C, ListDecodeQuery(bad, Fraction(0))) == []


def test_decoder_budget_and_method_errors():
    C = rs_code(field_build(2, 8), 255, 223)
    y = Vector(C.field, np.zeros(255, dtype=np.int64))
    with pytest.raises(ValueError, match="budget"):
        naive_rs_list_decode(C, ListDecodeQuery(y, Fraction(1, 5)))
    with pytest.raises(ValueError, match="method"):
        naive_rs_list_decode(rs_code(GF8, 7, 3),
                             ListDecodeQuery(Vector(GF8, [0] * 7), Fraction(0)), method="gs")


def test_query_validation():
    y = Vector(GF8, [0] * 7)
    with pytest.raises(ValueError):
        ListDecodeQuery(y, Fraction(1))
    with pytest.raises(ValueError):
        ListDecodeQuery(y, Fraction(-1, 7))
    assert ListDecodeQuery(y, Fraction(3, 7)).max_errors == 3
    assert ListDecodeQuery(y, 0.5).max_errors == 3


# -- full pipeline ---------------------------------------------------------------


@pytest.fixture(scope="module")
def rm213():
    return rm_rs_setup(2, 1, 3)


def test_default_rm_testset_is_admissible(rm213):
    _, rm, _ = rm213
    S = default_rm_testset(rm)
    assert S.designed_p <= Fraction(1, 2)
    assert S.base == rm.field and S.n == 8


def test_codeword_at_radius_zero_is_returned(rm213):
    _, rm, _ = rm213
    for w in all_codewords(rm):
        c = Vector(GF2, w)
        res = rm_list_decode(2, 1, 3, c, 0, VerifierConfig(5, 1), setup=rm213)
        assert res.words == [c] and not res.truncated


def test_single_error_recovered(rm213):
    _, rm, _ = rm213
    c = Vector(GF2, all_codewords(rm)[5])
    for j in range(8):
        y = c + Vector(GF2, np.eye(8, dtype=np.int64)[j])
        res = rm_list_decode(2, 1, 3, y, Fraction(1, 8), VerifierConfig(5, j), setup=rm213)
        assert c in res.words
        assert all(rm.contains(w) for w in res.words)


def test_word_in_subcode_but_not_in_rm_is_rejected():
    # for RM_4(3,2) the RS subfield subcode has dimension 11 against RM's 10,
    # so some base-field RS codewords are not RM codewords
    setup = rm_rs_setup(4, 3, 2)
    _, rm, rs = setup
    sub = subfield_subcode(rs, rm.field)
    assert (sub.k, rm.k) == (11, 10)
    w = next(row for row in sub.generator if not rm.contains(row))
    S = default_rm_testset(rm)
    assert non_orthogonal_fraction(S, w) >= 1 - S.designed_p
    res = rm_list_decode(4, 3, 2, w, 0, VerifierConfig(20, 3), testset=S, setup=setup)
    assert res.candidates == [w]
    assert res.words == []
    assert res.reports[0].verdict == "reject"


def test_list_cap_truncates(rm213):
    y = Vector(GF2, [0] * 8)
    full = rm_list_decode(2, 1, 3, y, Fraction(1, 2), VerifierConfig(3, 0), setup=rm213)
    assert full.rs_list_size > 3 and not full.truncated
    cut = rm_list_decode(2, 1, 3, y, Fraction(1, 2), VerifierConfig(3, 0), setup=rm213,
                         list_cap=3)
    assert cut.truncated and cut.rs_list_size == 3


def test_plugged_decoder_output_is_filtered_and_deduplicated(rm213):
    _, rm, rs = rm213
    c = Vector(GF2, all_codewords(rm)[3])
    F = rs.field
    off_field = Vector(F, [2] * 8)  # not over GF(2)

    def noisy_decoder(code, query):
        return [c.over(F), c.over(F), off_field]

    res = rm_list_decode(2, 1, 3, c, 0, VerifierConfig(4, 0), setup=rm213,
                         decoder=noisy_decoder)
    assert res.rs_list_size == 3
    assert res.candidates == [c] and res.words == [c]


def test_pipeline_input_validation(rm213):
    with pytest.raises(ValueError):
        rm_list_decode(2, 1, 3, Vector(GF2, [0] * 7), 0, VerifierConfig(1), setup=rm213)
    with pytest.raises(ValueError):
        rm_list_decode(2, 1, 3, Vector(GF8, [0] * 8), 0, VerifierConfig(1), setup=rm213)
