"""Modular-forms layer on Gamma0(4).

Monomial bases F^b * phi^a of the graded ring generated by the theta series
phi and the weight-2 block F, triangular decomposition of q-expansions in
those bases, and the coefficient operators (Hecke, U, V, twist, progression
sieve) with their level/character bookkeeping.

The space labels are metadata carried alongside the q-expansions: the code
tracks how weight, level, group and character transform under each operator,
it does not verify transformation laws.  Characters attached to labels are
Kronecker symbols (c/.) recorded by their top argument c; operator rules
multiply these tags (the symbol is completely multiplicative on top).
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from functools import lru_cache
from math import gcd, lcm

import numpy as np

from . import chars
from .modseries import (ResidueRing, TruncSeries, extract_progression,
                        ring_add, ring_mul, scalar_mul, transform,
                        zero_series)
from .qgen import theta_phi, weight2_form

GAMMA0 = "Gamma0"
GAMMA1 = "Gamma1"


@dataclass(frozen=True)
class SpaceLabel:
    """Where a q-expansion is asserted to live: weight k2/2, level, group,
    and (for Gamma0) a Kronecker character tag (char_numer/.)."""

    twice_weight: int
    level: int
    group: str = GAMMA0
    char_numer: int = 1

    def __post_init__(self):
        if self.twice_weight < 1:
            raise ValueError("twice_weight must be >= 1")
        if self.level % 4 != 0 or self.level <= 0:
            raise ValueError(f"level must be a positive multiple of 4, got {self.level}")
        if self.group not in (GAMMA0, GAMMA1):
            raise ValueError(f"group must be {GAMMA0} or {GAMMA1}")

    @property
    def weight_str(self) -> str:
        k2 = self.twice_weight
        return f"{k2 // 2}" if k2 % 2 == 0 else f"{k2}/2"

    def character_value(self, n: int) -> int:
        return chars.kronecker(self.char_numer, n)

    def describe(self) -> str:
        g = "Gamma0" if self.group == GAMMA0 else "Gamma1"
        if self.group == GAMMA0 and self.char_numer != 1:
            return f"M_{self.weight_str}({g}({self.level}), ({self.char_numer}/.))"
        return f"M_{self.weight_str}({g}({self.level}))"


@dataclass(frozen=True)
class MonomialBasis:
    """The monomials F^b * phi^a with a + 4b = k2, listed by ascending b.

    The b-th element has q-expansion q^b + O(q^(b+1)), so the basis is
    triangular.  The implied character mod 4 is trivial except for
    k2 = 2 mod 4, where it is (-4/.).
    """

    k2: int
    monomials: tuple[tuple[int, int], ...]

    @property
    def char_numer(self) -> int:
        return -4 if self.k2 % 4 == 2 else 1


def basis_monomials(k2: int) -> MonomialBasis:
    k2 = int(k2)
    if k2 < 1:
        raise ValueError("k2 must be >= 1")
    mons = tuple((k2 - 4 * b, b) for b in range(k2 // 4 + 1))
    return MonomialBasis(k2, mons)


@lru_cache(maxsize=64)
def _expand_monomial_cached(a: int, b: int, trunc: int, modulus: int) -> TruncSeries:
    ring = ResidueRing(modulus)
    if b == 0:
        out = np.zeros(trunc + 1, np.int64)
        out[0] = 1 % modulus
        acc = TruncSeries(ring, out, trunc)
    else:
        f = weight2_form(trunc, ring)
        acc = f
        for _ in range(b - 1):
            acc = ring_mul(acc, f)
    phi = theta_phi(trunc, ring)
    for _ in range(a):
        acc = ring_mul(acc, phi)
    return acc


def expand_monomial(a: int, b: int, trunc: int, ring: ResidueRing) -> TruncSeries:
    """F^b * phi^a through q^trunc; leading term is q^b."""
    if a < 0 or b < 0:
        raise ValueError("exponents must be >= 0")
    return _expand_monomial_cached(int(a), int(b), int(trunc), ring.modulus)


@dataclass(frozen=True)
class Decomposition:
    """Coordinates of a series in the monomial basis of its graded piece,
    indexed by ascending b."""

    k2: int
    ring: ResidueRing
    coeffs: tuple[int, ...]

    def recombine(self, trunc: int) -> TruncSeries:
        acc = zero_series(self.ring, trunc)
        for b, c in enumerate(self.coeffs):
            if c:
                acc = ring_add(acc, scalar_mul(c, expand_monomial(self.k2 - 4 * b, b, trunc, self.ring)))
        return acc

    def cancel_phi(self) -> "Decomposition":
        """Divide every monomial by phi, dropping the weight by 1/2.  Exact
        whenever no monomial with phi-exponent zero carries a coefficient."""
        for b, c in enumerate(self.coeffs):
            if c and self.k2 - 4 * b == 0:
                raise ValueError("combination has a pure-F term; cannot cancel phi")
        new_len = (self.k2 - 1) // 4 + 1
        return Decomposition(self.k2 - 1, self.ring, tuple(self.coeffs[:new_len]))


def decompose(f: TruncSeries, k2: int) -> Decomposition:
    """Express f in the triangular basis F^b * phi^(k2-4b) by forward
    substitution; the residual must vanish through f.trunc."""
    basis = basis_monomials(k2)
    if f.trunc < len(basis.monomials) - 1:
        raise ValueError(f"truncation {f.trunc} too small for k2={k2}")
    m = f.ring.modulus
    resid = f.coeffs.copy()
    coeffs = []
    for a, b in basis.monomials:
        c = int(resid[b]) % m
        coeffs.append(c)
        if c:
            mono = expand_monomial(a, b, f.trunc, f.ring)
            resid = (resid - c * mono.coeffs) % m
    bad = np.flatnonzero(resid)
    if len(bad):
        raise ValueError(f"not in span at this truncation: residual at q^{int(bad[0])}")
    return Decomposition(k2, f.ring, tuple(coeffs))


def hecke_T(f: TruncSeries, k2even: int, ell: int,
            chi: chars.DirichletChar, out_trunc: int | None = None) -> TruncSeries:
    """Integral-weight Hecke operator on coefficients:

        (f | T(ell))[n] = a(ell*n) + chi(ell) * ell^(k-1) * a(n/ell)

    with a(n/ell) = 0 unless ell divides n.  k = k2even/2; ell must be a
    prime not dividing the character modulus.  Exact in the series ring.
    """
    if k2even % 2 != 0:
        raise ValueError("Hecke action implemented for integral weight only")
    if not chars.is_prime(ell):
        raise ValueError(f"{ell} is not prime")
    if gcd(ell, chi.modulus) != 1:
        raise ValueError(f"{ell} divides the level {chi.modulus}")
    k = k2even // 2
    m = f.ring.modulus
    limit = f.trunc // ell
    if out_trunc is None:
        out_trunc = limit
    elif out_trunc > limit:
        raise ValueError(f"insufficient truncation: need {ell * out_trunc}, have {f.trunc}")
    factor = chi.value_int(ell) * pow(ell, k - 1, m) % m
    out = f.coeffs[::ell][:out_trunc + 1].copy()
    n_low = out_trunc // ell
    out[::ell][:n_low + 1] += factor * f.coeffs[:n_low + 1]
    return TruncSeries(f.ring, out % m, out_trunc)


def _inflate_level(label: SpaceLabel, d: int) -> SpaceLabel:
    # Natural inclusion into the least level 4N' with d | N'.
    n = label.level // 4
    if n % d:
        label = replace(label, level=4 * lcm(n, d))
    return label


def apply_U(f: TruncSeries, label: SpaceLabel, d: int) -> tuple[TruncSeries, SpaceLabel]:
    """Coefficient extraction (f|U(d))[n] = f[d*n].  Writing the level as 4N,
    d must divide N; the label is inflated first when it does not.  The
    character picks up the factor (4d/.)."""
    d = int(d)
    if d < 1:
        raise ValueError("d must be >= 1")
    if d == 1:
        return f, label
    label = _inflate_level(label, d)
    series = extract_progression(f, d, 0, compact=True)
    new = replace(label, char_numer=label.char_numer * 4 * d)
    return series, new


def apply_V(f: TruncSeries, label: SpaceLabel, d: int) -> tuple[TruncSeries, SpaceLabel]:
    """Exponent dilation (f|V(d))[d*n] = f[n]; level and character pick up d."""
    d = int(d)
    if d < 1:
        raise ValueError("d must be >= 1")
    if d == 1:
        return f, label
    series = transform(f, d, 1)
    new = replace(label, level=label.level * d,
                  char_numer=label.char_numer * 4 * d)
    return series, new


def apply_twist(f: TruncSeries, label: SpaceLabel,
                psi: chars.DirichletChar) -> tuple[TruncSeries, SpaceLabel]:
    """Coefficientwise twist (f x psi)[n] = psi(n) * f[n] for a real character
    psi; the level is multiplied by the square of psi's conductor."""
    m = f.ring.modulus
    values = np.array([psi.value_int(n) for n in range(psi.modulus)], np.int64)
    table = values[np.arange(f.trunc + 1) % psi.modulus]
    series = TruncSeries(f.ring, (f.coeffs * table) % m, f.trunc)
    cond = psi.conductor
    new = replace(label, level=label.level * cond * cond,
                  char_numer=label.char_numer * cond * cond)
    return series, new


def sieve_progression(f: TruncSeries, label: SpaceLabel, d: int, a: int,
                      b: int) -> tuple[TruncSeries, SpaceLabel]:
    """Keep the coefficients f[d*(a*n+b)] at exponents a*n+b.

    Computed as U(d) followed by progression extraction; the label follows
    the character-averaging construction, landing on Gamma1(level*d*a^2),
    downgraded to Gamma0 with character (4d/.)*chi when every character
    mod a is real.
    """
    a = int(a)
    b = int(b)
    d = int(d)
    if gcd(a, b) != 1:
        raise ValueError(f"progression offset {b} must be coprime to {a}")
    u = extract_progression(f, d, 0, compact=True) if d > 1 else f
    series = extract_progression(u, a, b)
    new_level = label.level * d * a * a
    new_numer = label.char_numer * 4 * d if d > 1 else label.char_numer
    if chars.all_real_characters(a):
        new = SpaceLabel(label.twice_weight, new_level, GAMMA0, new_numer)
    else:
        new = SpaceLabel(label.twice_weight, new_level, GAMMA1)
    return series, new
