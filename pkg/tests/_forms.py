"""Shared generators of random circuits and canonical forms for the tests."""

import random

from hypothesis import strategies as st

from qutritct.core import Word
from qutritct.normal_form import FIRST_BLOCK_ORDER, SYLLABLE_ORDER, CanonicalForm


def random_blocks(rng, t):
    if t == 0:
        return []
    return [rng.choice(FIRST_BLOCK_ORDER)] + [rng.choice(SYLLABLE_ORDER) for _ in range(t - 1)]


def random_form(rng, t):
    return CanonicalForm.from_blocks(random_blocks(rng, t), rng.randrange(648))


def random_word(rng, max_len, alphabet="HSTXZ"):
    return Word([rng.choice(alphabet) for _ in range(rng.randint(0, max_len))])


@st.composite
def canonical_forms(draw, max_t=8):
    t = draw(st.integers(0, max_t))
    seed = draw(st.integers(0, 2**32 - 1))
    return random_form(random.Random(seed), t)


words = st.lists(st.sampled_from("HSTXZ"), max_size=60).map(lambda g: Word(list(g)))
