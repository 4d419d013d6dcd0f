import random

import pytest
from hypothesis import strategies as st

from borel_qo.words import Word, _letter


def words(letters="xy", max_len=12):
    letter = st.builds(_letter, st.sampled_from(list(letters)), st.sampled_from([1, -1]))
    return st.lists(letter, max_size=max_len).map(lambda ls: Word(tuple(ls)))


@pytest.fixture
def rng():
    return random.Random(12345)
