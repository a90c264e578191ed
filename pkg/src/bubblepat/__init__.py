"""Preimages of permutation classes under one pass of bubble sort."""

from bubblepat.basis import (
    BasisResult,
    basis_one_lr,
    basis_special_three,
    basis_two_lr,
    generate_R,
    inverse_basis,
    inverse_basis_set,
)
from bubblepat.classification import (
    Case,
    Classification,
    WitnessPair,
    append_max,
    classify,
    is_good,
    witness_pair,
)
from bubblepat.kernels import BACKEND
from bubblepat.operators import (
    OperatorChain,
    apply_chain,
    bubble_k,
    bubble_recursive,
    bubble_splice,
    stack_pass,
)
from bubblepat.perm import (
    contains,
    format_perm,
    lr_decompose,
    minimal_elements,
    one_point_deletions,
    parse_permutation,
    standardize,
)

__version__ = "0.1.0"
