"""Braid groups in left normal form, with conjugacy and root extraction,
and the attacks they enable on braid-based authentication and signatures.

Braids are :class:`BraidWord` values (``B<n>: 1 -2 ...`` as text); anything
that needs a canonical form goes through :func:`left_normal_form`.
"""

from .braid import (
    BraidWord,
    delete_strands,
    embed,
    exponent_sum,
    format_braid,
    identity,
    inverse,
    lower_block,
    multiply,
    parse_braid,
    permutation_of,
    random_word,
    upper_block,
)
from .conjugacy import (
    CentralizerGens,
    ConjugacyWitness,
    ResourceCapExceeded,
    SlidingCircuitGraph,
    centralizer_gens,
    conjugacy_search,
    constrained_conjugacy_search,
    sliding_circuit_set,
)
from .garside import (
    NormalForm,
    cyclic_sliding,
    decompose,
    equals,
    fraction_word,
    in_parabolic,
    is_left_weighted,
    is_rigid,
    left_normal_form,
    nf_power,
    nf_product,
    parse_normal_form,
    word_product,
)
from .roots import RootResult, brute_force_root, kth_root

__version__ = "0.1.0"

__all__ = [
    "BraidWord",
    "CentralizerGens",
    "ConjugacyWitness",
    "NormalForm",
    "ResourceCapExceeded",
    "RootResult",
    "SlidingCircuitGraph",
    "brute_force_root",
    "centralizer_gens",
    "conjugacy_search",
    "constrained_conjugacy_search",
    "cyclic_sliding",
    "decompose",
    "delete_strands",
    "embed",
    "equals",
    "exponent_sum",
    "format_braid",
    "fraction_word",
    "identity",
    "in_parabolic",
    "inverse",
    "is_left_weighted",
    "is_rigid",
    "kth_root",
    "left_normal_form",
    "lower_block",
    "multiply",
    "nf_power",
    "nf_product",
    "parse_braid",
    "parse_normal_form",
    "permutation_of",
    "random_word",
    "sliding_circuit_set",
    "upper_block",
    "word_product",
]
