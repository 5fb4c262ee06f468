import math

import pytest

from squarerun.corpus import (ParseError, fibonacci_word, periodic, random_string, read_tokens,
                              ternary_thue_morse, unary, write_tokens)
from squarerun.oracle import InputError
from conftest import np_has_square


def test_tm3_prefix():
    assert ternary_thue_morse(7) == [2, 1, 0, 2, 0, 1, 2]
    assert ternary_thue_morse(1) == [2]
    with pytest.raises(InputError):
        ternary_thue_morse(0)


@pytest.mark.parametrize("n", [2000, 10000])
def test_tm3_square_free(n):
    w = ternary_thue_morse(n)
    assert set(w) == {0, 1, 2}
    assert not np_has_square(w)


def test_random_string():
    assert random_string(5, 1, 3) == [0] * 5
    assert random_string(8, 8, 11) == random_string(8, 8, 11)
    assert np_has_square(random_string(10 ** 4, 2, 0))
    with pytest.raises(InputError):
        random_string(5, 0, 1)


@pytest.mark.parametrize("sigma", [2, 3, 8, 64])
def test_random_string_uses_full_alphabet(sigma):
    n = math.ceil(64 * sigma * math.log(sigma))
    assert len(set(random_string(n, sigma, 5))) == sigma


def test_other_generators():
    assert unary(3) == [0, 0, 0]
    p = periodic(20, 3, seed=2)
    assert all(p[i] == p[i + 3] for i in range(17))
    assert fibonacci_word(8) == [0, 1, 0, 0, 1, 0, 1, 0]


def test_round_trip(tmp_path):
    f = tmp_path / "t.txt"
    write_tokens(f, [2, 1, 0, 2])
    assert read_tokens(f) == [2, 1, 0, 2]


def test_byte_mode(tmp_path):
    f = tmp_path / "b"
    f.write_bytes(b"banananas")
    assert read_tokens(f, raw=True) == list(b"banananas")


def test_parse_errors(tmp_path):
    f = tmp_path / "e"
    f.write_text("")
    with pytest.raises(ParseError):
        read_tokens(f)
    f.write_text("1 2\n3 x\n")
    with pytest.raises(ParseError, match="line 2"):
        read_tokens(f)
