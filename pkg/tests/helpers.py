"""Builders shared by the test modules."""
import random
import time
from fractions import Fraction

from weyldim.algebra import WeylElement, WeylMonomial
from weyldim.terms import ModuleElement, Term

X = WeylElement.x(1, 1)
D = WeylElement.d(1, 1)


def mono(alpha, beta):
    return WeylMonomial(tuple(alpha), tuple(beta))


def term(alpha, beta, gen=1):
    return Term(mono(alpha, beta), gen)


def on(Dop, gen=1, m=1):
    """The module element Dop*e_gen of A_n^m."""
    return ModuleElement.from_operator(Dop, gen, m)


def quadratic():
    """(x^2 + d^2 + x d) e over A_1."""
    return on(X**2 + D**2 + X * D)


def parametric(a, b):
    """(x^a d^b + d^(a+b)) e over A_1."""
    return on(X**a * D**b + D ** (a + b))


PARAMS = [(1, 1), (1, 2), (2, 1), (2, 3)]


def random_relation(rng: random.Random, n: int, m: int, deg: int = 3, max_terms: int = 3) -> ModuleElement:
    """Sparse relation with every term of bidegree at most (deg, deg)."""
    while True:
        terms = {}
        for _ in range(rng.randint(1, max_terms)):
            a = [0] * n
            b = [0] * n
            for _ in range(rng.randint(0, deg)):
                a[rng.randrange(n)] += 1
            for _ in range(rng.randint(0, deg)):
                b[rng.randrange(n)] += 1
            t = Term(WeylMonomial(tuple(a), tuple(b)), rng.randint(1, m))
            terms[t] = terms.get(t, 0) + Fraction(rng.choice([-3, -2, -1, 1, 2, 3]))
        f = ModuleElement(n, m, terms)
        if f:
            return f


def random_presentation(rng: random.Random, deg: int = 3):
    """n, m in {1, 2}, one or two relations of bidegree at most (deg, deg)."""
    n = rng.choice([1, 2])
    m = rng.choice([1, 2])
    k = rng.randint(1, 2)
    return n, m, [random_relation(rng, n, m, deg) for _ in range(k)]


# acceptance reporting: one (criterion, passed, detail) row per criterion
ACCEPTANCE_ROWS = []


class criterion:
    """Context manager recording the outcome of one acceptance criterion."""

    def __init__(self, key: int, label: str):
        self.key = key
        self.label = label

    def __enter__(self):
        self.start = time.perf_counter()
        return self

    def __exit__(self, kind, exc, tb):
        took = time.perf_counter() - self.start
        detail = f"{self.label} ({took:.2f}s)"
        if exc is not None:
            detail += f": {exc.__class__.__name__}: {str(exc).splitlines()[0] if str(exc) else ''}"
        ACCEPTANCE_ROWS.append((self.key, exc is None, detail))
        print(f"criterion {self.key}: {'PASS' if exc is None else 'FAIL'}  {detail}")
        return False
