import math
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from codeplane.enclosure import log2_enclosure, log_enclosure, pow2
from codeplane.errors import ContractViolationError

positive_fractions = st.fractions(min_value="1/1000", max_value=1000, max_denominator=10**6)


def test_exact_for_powers_of_two():
    for k in (-5, -1, 0, 1, 3, 20):
        iv = log2_enclosure(pow2(k), 40)
        assert iv.is_point and iv.lo == k


@given(positive_fractions, st.integers(min_value=4, max_value=60))
@settings(max_examples=150, deadline=None)
def test_log2_brackets_float_oracle(x, precision):
    iv = log2_enclosure(x, precision)
    assert iv.width <= pow2(-precision)
    # float logarithm as the independent oracle, with double-precision slack
    true = math.log2(x)
    assert float(iv.lo) - 1e-9 <= true <= float(iv.hi) + 1e-9


def test_log2_width_contract_tightens():
    x = Fraction(7, 5)
    w20 = log2_enclosure(x, 20).width
    w40 = log2_enclosure(x, 40).width
    assert w20 <= pow2(-20)
    assert w40 <= pow2(-40)
    assert w40 <= w20 / 2


def test_log2_near_power_of_two_stays_on_the_correct_side():
    x = Fraction(2**60 - 1, 2**59)  # just below 2
    iv = log2_enclosure(x, 80)
    assert iv.hi < 1
    iv = log2_enclosure(Fraction(2**60 + 1, 2**59), 80)  # just above 2
    assert iv.lo > 1


def test_log_enclosure_general_base():
    iv = log_enclosure(Fraction(20), 2, 50)
    assert iv.width <= pow2(-50)
    assert float(iv.lo) <= math.log2(20) <= float(iv.hi)
    iv = log_enclosure(Fraction(3, 4), 3, 40)
    true = math.log(0.75, 3)
    assert float(iv.lo) - 1e-9 <= true <= float(iv.hi) + 1e-9
    # base q applied to q - 1 = base itself
    assert log_enclosure(Fraction(9), 3, 30).is_point


def test_rejects_bad_arguments():
    with pytest.raises(ContractViolationError):
        log2_enclosure(Fraction(0), 10)
    with pytest.raises(ContractViolationError):
        log2_enclosure(Fraction(-1), 10)
    with pytest.raises(ContractViolationError):
        log2_enclosure(Fraction(3), 0)
    with pytest.raises(ContractViolationError):
        log_enclosure(Fraction(3), 1, 10)
