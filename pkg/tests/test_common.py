from datetime import datetime, timedelta, timezone
import warnings

import pytest

from PyKCenter.common import parse_key_value_text, stable_hash, mix_seed, convert_to_utc, utc_now, is_number, \
    __type_error__
from PyKCenter.Exceptions import KCenterError, DataValidationError, OptimizerError, RunFailure, BruteForceRefused


def test_parse_key_value_text_lists_comments_and_dashes():
    values = parse_key_value_text("# header\nalgorithm = ds-ucb\ndelta=0.3, 0.1,0.01  # grid\n\nmin-separation=0.3\n")
    assert values == {'algorithm': 'ds-ucb', 'delta': ['0.3', '0.1', '0.01'], 'min_separation': '0.3'}


def test_parse_key_value_text_rejects_a_bare_line():
    with pytest.raises(ValueError, match="line 2"):
        parse_key_value_text("k=4\nnot a pair\n")


def test_stable_hash_is_fixed_and_64_bit():
    assert stable_hash("algorithm=ds-ucb") == stable_hash("algorithm=ds-ucb")
    assert stable_hash("algorithm=ds-ucb") != stable_hash("algorithm=ds-ts")
    assert 0 <= stable_hash("x") < 2 ** 64


def test_mix_seed_depends_on_every_part_and_order():
    seeds = {mix_seed(1, 2, 3), mix_seed(1, 2, 4), mix_seed(2, 1, 3), mix_seed(1, 3, 2)}
    assert len(seeds) == 4
    assert mix_seed(1, 2, 3) == mix_seed(1, 2, 3)
    assert 0 <= mix_seed(2 ** 70, -1) < 2 ** 64


def test_convert_to_utc_handles_naive_and_aware():
    naive = datetime(2024, 1, 1, 12, 0, 0)
    assert convert_to_utc(naive).utcoffset() == timedelta(0)
    aware = datetime(2024, 1, 1, 12, 0, 0, tzinfo=timezone(timedelta(hours=2)))
    assert convert_to_utc(aware).hour == 10
    assert utc_now().utcoffset() == timedelta(0)


def test_utc_now_is_aware_and_current():
    with warnings.catch_warnings():
        warnings.simplefilter('error', DeprecationWarning)
        now = utc_now()
    assert now.tzinfo is not None and now.utcoffset() == timedelta(0)
    assert abs(now - datetime.now(timezone.utc)) < timedelta(seconds=5)


def test_is_number_rejects_bools():
    assert is_number(1) and is_number(0.5)
    assert not is_number(True)
    assert not is_number("1")


def test_type_error_names_the_argument():
    with pytest.raises(TypeError, match="argument:k"):
        __type_error__("k", "int", "4")


def test_exceptions_carry_context():
    error = DataValidationError("bad cell", row=3, column=1, exception=None)
    assert str(error) == "bad cell (row=3, column=1)"
    assert error.row == 3 and error.column == 1
    assert 'exception' in error.key_word_args
    assert isinstance(error, KCenterError)
    optimizer = OptimizerError("non-finite objective", iterate=7, stage=2)
    assert "iterate=7" in str(optimizer) and "stage=2" in str(optimizer)
    failure = RunFailure("cap", stage=1, pulls=10)
    assert failure.stage == 1 and failure.pulls == 10
    refused = BruteForceRefused(30, 10, 30045015, 10 ** 6)
    assert refused.subsets == 30045015
