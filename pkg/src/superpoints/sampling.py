"""Seeded random generators for test and verification sampling.

All sampling is driven by ``random.Random`` (Mersenne Twister) seeded
explicitly, so every verification run is reproducible: identities here are
exact, and a failure only depends on which elements were visited.
"""

from __future__ import annotations

from fractions import Fraction

from .coeff import DualExtension, GrassmannAlgebra, Scalar


def rand_scalar(field, rng, nonzero=False):
    p = field.characteristic
    if p == 0:
        while True:
            raw = Fraction(rng.randint(-4, 4), rng.choice([1, 1, 2, 3]))
            if not nonzero or raw != 0:
                return Scalar(field, raw)
    while True:
        raw = rng.randrange(p)
        if not nonzero or raw != 0:
            return Scalar(field, raw)


def rand_unit_scalar(field, rng):
    return rand_scalar(field, rng, nonzero=True)


def _rand_grassmann(algebra, rng, parity, max_terms, min_degree=0):
    masks = [
        m
        for m in algebra.basis_masks()
        if (parity is None or m.bit_count() % 2 == parity) and m.bit_count() >= min_degree
    ]
    out = algebra.zero()
    if not masks:
        return out
    for _ in range(rng.randint(1, max_terms)):
        m = rng.choice(masks)
        idx = [i + 1 for i in range(algebra.rank) if m >> i & 1]
        out = out + algebra.monomial(idx, rand_scalar(algebra.field, rng, nonzero=True))
    return out


def rand_element(algebra, rng, parity=None, max_terms=2, min_degree=0):
    """A small random element, optionally of fixed parity."""
    if isinstance(algebra, DualExtension):
        a = rand_element(algebra.inner, rng, parity, max_terms, min_degree)
        b = rand_element(algebra.inner, rng, parity, max_terms, min_degree)
        return algebra.include(a) + algebra.times_eps(b)
    if isinstance(algebra, GrassmannAlgebra):
        return _rand_grassmann(algebra, rng, parity, max_terms, min_degree)
    raise TypeError(f"no sampler for {algebra!r}")


def rand_odd(algebra, rng, max_terms=2):
    return rand_element(algebra, rng, parity=1, max_terms=max_terms)


def rand_even_soul(algebra, rng, max_terms=2):
    """Even element with zero body (degree >= 2 monomials only)."""
    if isinstance(algebra, GrassmannAlgebra):
        return _rand_grassmann(algebra, rng, 0, max_terms, min_degree=2)
    if isinstance(algebra, DualExtension):
        a = rand_even_soul(algebra.inner, rng, max_terms)
        b = rand_element(algebra.inner, rng, parity=0, max_terms=max_terms)
        return algebra.include(a) + algebra.times_eps(b)
    raise TypeError(f"no sampler for {algebra!r}")


def rand_square_zero_even(algebra, rng):
    """Even c with c*c = 0 exactly: a scalar multiple of one soul monomial."""
    if isinstance(algebra, GrassmannAlgebra):
        masks = [m for m in algebra.basis_masks() if m.bit_count() % 2 == 0 and m.bit_count() >= 2]
        if not masks:
            return algebra.zero()
        m = rng.choice(masks)
        idx = [i + 1 for i in range(algebra.rank) if m >> i & 1]
        return algebra.monomial(idx, rand_scalar(algebra.field, rng, nonzero=True))
    raise TypeError(f"no sampler for {algebra!r}")


def rand_invertible(algebra, rng, max_terms=2):
    """Unit of the coefficient algebra: nonzero body plus a small soul."""
    u = algebra.from_scalar(rand_unit_scalar(algebra.field, rng))
    if isinstance(algebra, GrassmannAlgebra):
        soul = _rand_grassmann(algebra, rng, None, max_terms, min_degree=1)
        return u + soul
    return u


def rand_even_unit(algebra, rng, max_terms=2):
    """Unit lying in A_0: nonzero body plus an even soul."""
    u = algebra.from_scalar(rand_unit_scalar(algebra.field, rng))
    return u + rand_even_soul(algebra, rng, max_terms)


def rand_k_vector(field, rng, n, nonzero=False):
    while True:
        v = [rand_scalar(field, rng).raw for _ in range(n)]
        if not nonzero or any(x != field.from_int(0) for x in v):
            return v
