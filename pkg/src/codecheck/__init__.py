"""Randomised codeword-membership testing for linear codes over finite fields.

A code C with parity check H gets a precomputed test set S (rows of
G_outer^T H for an outer code over an extension field).  Checking x costs
one inner product per round, and a non-codeword slips through R rounds with
probability at most p**R.
"""

from .codes import (LinearCode, hamming_code, load_code, min_distance_exhaustive,
                    random_code, rm_code, rs_code, save_code, subfield_subcode,
                    syndrome_direct, trace_code)
from .fmatrix import Matrix, Vector, mat_mul, mat_vec, rref_rank_nullspace, weight
from .gf import FieldSpec, Fe, embed, field_build, field_extend, field_from_order, trace
from .opcount import OpCounter
from .rmlist import (ListDecodeQuery, RmRsParams, naive_rs_list_decode,
                     rm_list_decode, rm_rs_params)
from .testset import (TestSet, build_code_testset, build_mds_testset,
                      load_testset, non_orthogonal_fraction, save_testset)
from .verifier import (VerifierConfig, VerifierReport, determine_codeword,
                       error_bound, mc_error_rate, naive_row_verifier,
                       rounds_for_target)

__version__ = "0.1.0"
