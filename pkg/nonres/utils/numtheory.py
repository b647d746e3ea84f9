"""Elementary number theory helpers shared by the character and sieve services."""
from functools import lru_cache

from sympy import factorint
from sympy.ntheory import n_order


@lru_cache(maxsize=4096)
def prime_power_factors(q: int) -> tuple[tuple[int, int], ...]:
    """Factor q as ((p, e), ...) with p ascending; q = 1 gives ()."""
    if q == 1:
        return ()
    return tuple(sorted((int(p), int(e)) for p, e in factorint(q).items()))


@lru_cache(maxsize=4096)
def conrey_generator(p: int) -> int:
    """Least primitive root mod p^2; it generates (Z/p^eZ)^* for every e >= 1."""
    g = 2
    while n_order(g, p) != p - 1 or pow(g, p - 1, p * p) == 1:
        g += 1
    return g


def inverse_mod(a: int, m: int) -> int:
    if m == 1:
        return 0
    return pow(a, -1, m)
