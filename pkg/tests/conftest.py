import random

import pytest

from algcert.fields import QQ
from algcert.poly import Poly, parse_poly


@pytest.fixture
def rng():
    return random.Random(20240811)


def pp(text: str, n_vars: int, field=QQ) -> Poly:
    return parse_poly(text, n_vars, field)


def random_poly(rng: random.Random, n_vars: int, field, max_degree: int,
                n_terms: int = 4) -> Poly:
    terms = {}
    for _ in range(n_terms):
        mono = [0] * n_vars
        deg = rng.randint(0, max_degree)
        for _ in range(deg):
            mono[rng.randrange(n_vars)] += 1
        coeff = rng.randint(-5, 5)
        if coeff:
            terms[tuple(mono)] = field.coerce(coeff)
    return Poly(n_vars, field, terms)
