"""Shared builders for randomized tests.

Everything here is deterministic given a `random.Random` instance; tests
construct their own seeded generators so failures reproduce exactly.
"""

import itertools
import random
from fractions import Fraction

from germcalc import FormalMap, FormalSeries, IdealPresentation


def exponent_tuples(dimension, degree):
    """All exponent tuples of total degree <= degree."""
    out = []
    for combo in itertools.product(range(degree + 1), repeat=dimension):
        if sum(combo) <= degree:
            out.append(combo)
    return out


def random_scalar(rng, scale=6, allow_zero=True):
    num = rng.randint(-scale, scale)
    if not allow_zero:
        while num == 0:
            num = rng.randint(-scale, scale)
    den = rng.randint(1, 4)
    return Fraction(num, den)


def random_series(rng, dimension, truncation, density=0.4, scale=6, min_order=0):
    """A sparse random series; roughly `density` of the exponents are hit."""
    terms = {}
    for exp in exponent_tuples(dimension, truncation):
        if sum(exp) < min_order:
            continue
        if rng.random() < density:
            terms[exp] = random_scalar(rng, scale)
    return FormalSeries(dimension, truncation, terms)


def random_nonzero_series(rng, dimension, truncation, **kw):
    f = random_series(rng, dimension, truncation, **kw)
    while f.is_zero:
        f = random_series(rng, dimension, truncation, **kw)
    return f


def random_ideal(rng, dimension, truncation, max_generators=3):
    count = rng.randint(1, max_generators)
    gens = [
        random_nonzero_series(rng, dimension, truncation, min_order=1)
        for _ in range(count)
    ]
    return IdealPresentation(dimension, gens)


def random_invertible_map(rng, dimension, truncation, higher_density=0.3):
    """Random formal map with invertible linear part and sparse tail."""
    while True:
        comps = []
        for i in range(dimension):
            terms = {}
            for j in range(dimension):
                exp = tuple(1 if t == j else 0 for t in range(dimension))
                terms[exp] = Fraction(rng.randint(-2, 2))
            comps.append(FormalSeries(dimension, truncation, terms))
        candidate = FormalMap(comps)
        if candidate.is_invertible:
            break
    tails = []
    for comp in candidate.components:
        tail = random_series(
            rng, dimension, truncation, density=higher_density, scale=3, min_order=2
        )
        tails.append(comp + tail)
    return FormalMap(tails)


def random_tangent_to_identity_map(rng, dimension, truncation, density=0.3):
    """Identity plus random higher-order terms; always invertible."""
    comps = []
    for i in range(dimension):
        base = FormalSeries.variable(dimension, truncation, i)
        tail = random_series(
            rng, dimension, truncation, density=density, scale=3, min_order=2
        )
        comps.append(base + tail)
    return FormalMap(comps)


def make_rng(seed):
    return random.Random(seed)


def dense_membership_oracle(f, ideal, k):
    """Decide f in I + m^k by dense Gaussian elimination.

    Independent of the library's jet spaces: flattens everything onto a
    fixed column order (plain tuple sort) and eliminates greedily.  The
    degree-(k-1) part of any combination sum(h_i g_i) is spanned by the
    monomial multiples m * g_i with |m| <= k - 1, so membership in
    I + m^k is a finite linear question over those rows.
    """
    n = f.dimension
    cols = sorted(exponent_tuples(n, k - 1))
    col_index = {exp: i for i, exp in enumerate(cols)}

    def vector(series):
        vec = [Fraction(0)] * len(cols)
        for mono, coeff in series.terms.items():
            exp = tuple(mono.exponents)
            if sum(exp) <= k - 1:
                vec[col_index[exp]] = vec[col_index[exp]] + coeff
        return vec

    rows = []
    for g in ideal.generators:
        for mult in exponent_tuples(n, k - 1):
            vec = [Fraction(0)] * len(cols)
            for mono, coeff in g.terms.items():
                exp = tuple(a + b for a, b in zip(mono.exponents, mult))
                if sum(exp) <= k - 1:
                    vec[col_index[exp]] = vec[col_index[exp]] + coeff
            if any(vec):
                rows.append(vec)

    target = vector(f)
    pivots = {}
    for row in rows:
        for col in range(len(cols)):
            if not row[col]:
                continue
            if col in pivots:
                lead = pivots[col]
                factor = row[col] / lead[col]
                for j in range(col, len(cols)):
                    row[j] = row[j] - factor * lead[j]
            else:
                pivots[col] = row
                break
    for col in range(len(cols)):
        if target[col] and col in pivots:
            lead = pivots[col]
            factor = target[col] / lead[col]
            for j in range(col, len(cols)):
                target[j] = target[j] - factor * lead[j]
    return not any(target)
