"""Scalar and vector network codes for generalized combination networks."""

from .gf import FieldCtx, FieldElement, FieldError, extension, field_ctx, gf
from .linalg import LinAlgError, Mat, inverse, rank, rref, solve
from .network import Classification, NetworkError, NetworkSpec, build_network, classify, receivers
from .rankmetric import CodeError, companion_code, gabidulin_code, gabidulin_codeword, min_rank_distance
from .solver import (
    Assignment,
    SolverError,
    completion_rows,
    scalar_3msg_solution,
    scalar_blocks_solution,
    scalar_mds_solution,
    solve_network,
    vector_construction1,
    vector_construction2,
    vector_construction3,
    vector_from_cover_code,
)
from .subspace import (
    CoverCode,
    Subspace,
    SubspaceError,
    alpha_cover_check,
    enumerate_grassmannian,
    gaussian_binomial,
    greedy_cover_search,
    paper51_code,
)
from .verify import VerifyReport, block_vandermonde, check_all, simulate, transfer_matrix

__version__ = "0.1.0"
