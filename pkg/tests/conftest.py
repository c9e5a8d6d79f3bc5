from hypothesis import strategies as st

from adjmon.words import EPS, ETA, Generator


def letters(max_index: int = 5):
    return st.builds(Generator, st.sampled_from([ETA, EPS]), st.integers(0, max_index))


def small_words(max_len: int = 6, max_index: int = 5):
    return st.lists(letters(max_index), max_size=max_len).map(tuple)
