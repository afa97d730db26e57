from __future__ import annotations

from fractions import Fraction

from hypothesis import strategies as st

from quadfrieze.qint import QuadRat, field

SQUAREFREE_NEG = [-1, -2, -3, -5, -6, -7, -10, -11, -13, -14, -15, -19, -21, -23]


def quad_rats(d: int, max_den: int = 6, max_num: int = 40):
    fr = st.builds(Fraction, st.integers(-max_num, max_num), st.integers(1, max_den))
    return st.builds(lambda x, y: QuadRat(x, y, field(d)), fr, fr)


@st.composite
def field_and_pair(draw):
    d = draw(st.sampled_from(SQUAREFREE_NEG))
    return d, draw(quad_rats(d)), draw(quad_rats(d))


def grow_cycle(rng, target_len: int, tag=None, small=range(-3, 4)):
    """Random quiddity cycle of length ``target_len`` built by inverse rewrites.

    Rules that flip the sign of the eta-product are applied in pairs so the
    result is a quiddity cycle again.  ``rng`` is a ``random.Random``.
    """
    from quadfrieze.eta import QuiddityCycle, Rule, inverse_step

    cur = QuiddityCycle([1, 1, 1] if rng.random() < 0.5 else [0, 0], tag)

    def grow(c, rule):
        split = rng.choice(list(small)) if rule is Rule.MERGE_ZERO else None
        return inverse_step(c, rule, rng.randrange(len(c)), split)

    while len(cur) < target_len:
        room = target_len - len(cur)
        if room < 2 or rng.random() < 0.4:
            cur = grow(cur, Rule.REMOVE_ONE)
            continue
        first = rng.choice([Rule.REMOVE_MINUS_ONE, Rule.MERGE_ZERO] if room >= 3 else [Rule.REMOVE_MINUS_ONE])
        cur = grow(cur, first)
        left = target_len - len(cur)
        second = rng.choice([Rule.REMOVE_MINUS_ONE, Rule.MERGE_ZERO] if left >= 2 else [Rule.REMOVE_MINUS_ONE])
        cur = grow(cur, second)
    return cur
