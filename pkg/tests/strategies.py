#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""hypothesis 策略：分拆、标号、θ 与有理向量"""

from fractions import Fraction

from hypothesis import strategies as st


@st.composite
def partitions(draw, max_parts=4, max_part=4):
    parts = draw(st.lists(st.integers(min_value=0, max_value=max_part), max_size=max_parts))
    return tuple(p for p in sorted(parts, reverse=True) if p > 0)


@st.composite
def signatures(draw, min_n=1, max_n=4, bound=3):
    n = draw(st.integers(min_value=min_n, max_value=max_n))
    parts = draw(st.lists(st.integers(min_value=-bound, max_value=bound), min_size=n, max_size=n))
    return tuple(sorted(parts, reverse=True))


thetas = st.sampled_from([Fraction(1, 3), Fraction(1, 2), Fraction(1), Fraction(2)])


@st.composite
def rational_vectors(draw, max_n=6):
    """弱递减的有理数向量"""
    n = draw(st.integers(min_value=1, max_value=max_n))
    values = draw(st.lists(st.fractions(min_value=-5, max_value=5, max_denominator=7), min_size=n, max_size=n))
    return tuple(sorted(values, reverse=True))
