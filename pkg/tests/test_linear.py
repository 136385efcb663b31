import random

import pytest

from codeplane.codes import min_distance, params
from codeplane.errors import BudgetExceededError, ContractViolationError, UnknownSeedFamilyError
from codeplane.fields import GF
from codeplane.linear import (
    GeneratorMatrix,
    LinearCode,
    min_weight,
    product_code,
    read_generator_text,
    seed_family,
    to_code,
    write_generator_text,
)


def _exhaustive_min_weight_oracle(code):
    """Independent check: min pairwise distance of the explicit word set."""
    d, _ = min_distance(to_code(code))
    return d


def test_min_weight_examples():
    assert min_weight(seed_family("repetition", n=3, q=2)) == 3
    assert min_weight(seed_family("parity", n=3, q=2)) == 2
    ham = seed_family("hamming_7_4")
    assert min_weight(ham) == 3
    # the linear min weight equals the unstructured min distance
    assert _exhaustive_min_weight_oracle(ham) == 3


def test_to_code_matches_parameters():
    rep = seed_family("repetition", n=3, q=2)
    assert to_code(rep).words == (bytes(3), b"\x01\x01\x01")
    par = seed_family("parity", n=3, q=2)
    assert to_code(par).words == (bytes(3), b"\x00\x01\x01", b"\x01\x00\x01", b"\x01\x01\x00")
    ham = seed_family("hamming_7_4")
    p = params(to_code(ham))
    assert p.triple() == (7, 16, 3)


def test_seed_family_parameters():
    ext = seed_family("extended_hamming_8_4")
    assert (ext.n, ext.k, ext.d) == (8, 4, 4)
    assert params(to_code(ext)).triple() == (8, 16, 4)
    rep = seed_family("repetition", n=5, q=3)
    assert params(to_code(rep)).triple() == (5, 3, 5)
    par = seed_family("parity", n=4, q=2)
    assert params(to_code(par)).triple() == (4, 8, 2)
    with pytest.raises(UnknownSeedFamilyError):
        seed_family("nonesuch")


def test_product_code_parameters_multiply():
    rep = seed_family("repetition", n=3, q=2)
    par = seed_family("parity", n=3, q=2)
    prod = seed_family("product", factors=(rep, par))
    assert (prod.n, prod.k, prod.d) == (9, 2, 6)
    assert params(to_code(prod)).triple() == (9, 4, 6)


def test_min_weight_invariant_under_column_permutation():
    rng = random.Random(11)
    base = seed_family("hamming_7_4")
    for _ in range(10):
        perm = list(range(base.n))
        rng.shuffle(perm)
        rows = tuple(tuple(row[p] for p in perm) for row in base.gen.rows)
        permuted = LinearCode(GeneratorMatrix(base.field, rows))
        assert min_weight(permuted) == base.d


def test_min_weight_generic_field_matches_exhaustive():
    field = GF(3)
    gen = GeneratorMatrix(field, ((1, 0, 1, 2), (0, 1, 2, 2)))
    code = LinearCode(gen)
    assert min_weight(code) == _exhaustive_min_weight_oracle(code)


def test_cardinality_is_exact_power():
    ham = seed_family("hamming_7_4")
    assert ham.m == 2 ** 4
    assert to_code(ham).m == 16


def test_generator_full_rank_enforced():
    field = GF(2)
    with pytest.raises(ContractViolationError):
        GeneratorMatrix(field, ((1, 0, 1), (1, 0, 1)))
    with pytest.raises(ContractViolationError):
        GeneratorMatrix(field, ((1, 2, 0),))  # entry outside field


def test_enumeration_budget():
    rows = tuple(
        tuple(1 if c == r else 0 for c in range(30)) for r in range(30)
    )
    big = LinearCode(GeneratorMatrix(GF(2), rows))
    with pytest.raises(BudgetExceededError):
        min_weight(big)
    with pytest.raises(BudgetExceededError):
        to_code(big, cap=1 << 10)


def test_generator_text_roundtrip():
    ham = seed_family("hamming_7_4")
    text = write_generator_text(ham)
    assert text.splitlines()[0] == "2 7 4"
    again = read_generator_text(text)
    assert again.gen == ham.gen
    with pytest.raises(ContractViolationError):
        read_generator_text("2 3 2\n1 0 1\n")
