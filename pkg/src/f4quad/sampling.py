"""Seeded, deterministic samplers for field and group elements.

A tiny xorshift generator keeps the byte-for-byte reproducibility
contract independent of the standard library's evolution.  Samplers are
degree- and sparsity-bounded; denominators default to monomials, which
keeps canonicalisation cheap along the deep group-theoretic pipelines
while still exercising genuine fractions.
"""

from __future__ import annotations

from .fields import FieldInstance, KElem, LElem, phi_k
from .polynomials import Poly2


class Rng:
    """xorshift64* with a splitmix-style seeding; stable across versions."""

    __slots__ = ("state",)

    def __init__(self, seed: int):
        z = (seed + 0x9E3779B97F4A7C15) & 0xFFFFFFFFFFFFFFFF
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & 0xFFFFFFFFFFFFFFFF
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & 0xFFFFFFFFFFFFFFFF
        self.state = (z ^ (z >> 31)) or 0x2545F4914F6CDD1D

    def next64(self) -> int:
        x = self.state
        x ^= (x >> 12)
        x ^= (x << 25) & 0xFFFFFFFFFFFFFFFF
        x ^= (x >> 27)
        self.state = x
        return (x * 0x2545F4914F6CDD1D) & 0xFFFFFFFFFFFFFFFF

    def below(self, n: int) -> int:
        return self.next64() % n

    def chance(self, num: int, den: int) -> bool:
        return self.below(den) < num


def sample_poly(rng: Rng, max_degree: int, max_terms: int = 4) -> Poly2:
    """Sparse random polynomial of bounded total degree."""
    nterms = rng.below(max_terms + 1)
    terms = []
    for _ in range(nterms):
        i = rng.below(max_degree + 1)
        j = rng.below(max_degree + 1 - i)
        terms.append((i, j))
    return Poly2.from_terms(terms)


def sample_poly_nonzero(rng: Rng, max_degree: int, max_terms: int = 4) -> Poly2:
    while True:
        p = sample_poly(rng, max_degree, max_terms)
        if not p.is_zero():
            return p


def sample_k(rng: Rng, max_degree: int, fractions: bool = True) -> KElem:
    """Random K element; denominator a monomial of small degree."""
    num = sample_poly(rng, max_degree)
    if not fractions or rng.chance(1, 2):
        return KElem(num)
    i = rng.below(2)
    j = rng.below(2 - i) if i < 2 else 0
    den = Poly2.monomial(i, j)
    return KElem(num, den)


def sample_k_general(rng: Rng, max_degree: int) -> KElem:
    """Random K element with a genuine polynomial denominator."""
    num = sample_poly(rng, max_degree)
    den = sample_poly_nonzero(rng, max(1, max_degree - 1), max_terms=3)
    return KElem(num, den)


def sample_k_nonzero(rng: Rng, max_degree: int) -> KElem:
    while True:
        f = sample_k(rng, max_degree)
        if not f.is_zero():
            return f


def sample_kprime(rng: Rng, max_degree: int) -> KElem:
    return phi_k(sample_k(rng, max_degree))


def sample_l(rng: Rng, max_degree: int) -> LElem:
    return LElem(sample_k(rng, max_degree), sample_k(rng, max_degree))


def sample_l_nonzero(rng: Rng, max_degree: int) -> LElem:
    while True:
        z = sample_l(rng, max_degree)
        if not z.is_zero():
            return z


def sample_lprime(inst: FieldInstance, rng: Rng, max_degree: int) -> LElem:
    return inst.phi_l(sample_l(rng, max_degree))
