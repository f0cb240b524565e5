"""Truncated half-logarithms and their vanishing loci.

The level-n plus/minus half-log is a product of cyclotomic factors in gamma:
the plus element collects phi(s) for even s < n, the minus element for odd
s < n, each normalized by 1/p; the weight-k truncation multiplies the k-1
gamma-twists u^(-j)gamma for j = 0..k-2 and one more global 1/p per twist.

Every factor is a polynomial in gamma of degree below p^(n-1) (the factor
degrees sum to less than p^(n-1)), so per-factor character evaluation is
exact.  Evaluating the assembled product at a twisted character (r >= 1) is
not: reducing gamma-exponents mod p^(n-1) discards multiples of
gamma^(p^(n-1)) - 1, whose twisted value u^(r p^(n-1)) - 1 is nonzero of
valuation n + v_p(r).  The zero-locus scan therefore works factor by factor,
which realizes the product formula exactly and keeps the locus sharp.
"""

from dataclasses import dataclass

from .cyclotomic import CharacterSpec, eval_char
from .errors import InvalidParameter, PrecisionExhausted
from .groupring import GroupRingElem, phi, phi_twisted, twist_gamma
from .padic import check_odd_prime

PLUS = "+"
MINUS = "-"


@dataclass(frozen=True)
class HalfLogParams:
    """Prime, weight, level, sign, and the unit eps with alpha^2 = -eps p^(k-1)."""

    p: int
    k: int
    n: int
    sign: str
    eps: int = 1

    def __post_init__(self):
        check_odd_prime(self.p)
        if self.k < 2:
            raise InvalidParameter("weight must be at least 2")
        if self.n < 1:
            raise InvalidParameter("level must be at least 1")
        if self.sign not in (PLUS, MINUS):
            raise InvalidParameter("sign must be '+' or '-'")
        if self.eps % self.p == 0:
            raise InvalidParameter("eps must be a unit")

    def to_json(self) -> dict:
        return {
            "p": self.p,
            "k": self.k,
            "n": self.n,
            "sign": self.sign,
            "eps": self.eps,
        }


def factor_indices(n: int, sign: str) -> tuple:
    """Indices s of the phi-factors: even (plus) or odd (minus), 1 <= s < n."""
    start = 2 if sign == PLUS else 1
    return tuple(range(start, n, 2))


def omega_tilde(p: int, n: int, sign: str, N: int) -> GroupRingElem:
    """Product of the parity-matched phi(s) without the 1/p normalizations."""
    out = GroupRingElem.one(p, n, N)
    for s in factor_indices(n, sign):
        out = out * phi(p, n, s, N)
    return out


def omega_poly(p: int, n: int, sign: str, N: int) -> GroupRingElem:
    """Product of phi(s)/p over the parity range; empty product is 1."""
    c = len(factor_indices(n, sign))
    return omega_tilde(p, n, sign, N).shift_p(-c)


def denominator_exponent(params: HalfLogParams) -> int:
    """Total power of p cleared by log_trunc: (k-1)(1 + #factors)."""
    c = len(factor_indices(params.n, params.sign))
    return (params.k - 1) * (1 + c)


def log_trunc(params: HalfLogParams, N: int) -> GroupRingElem:
    """p^(1-k) times the product of the j-twisted omega_poly, j = 0..k-2."""
    p, n = params.p, params.n
    # the result sits at valuation >= -den_exp; with N <= den_exp it would
    # certify nothing even mod p^0
    if N <= denominator_exponent(params):
        raise PrecisionExhausted(
            "not enough digits for the half-log denominators at this level"
        )
    out = GroupRingElem.one(p, n, N)
    base = omega_tilde(p, n, params.sign, N)
    for j in range(params.k - 1):
        out = out * twist_gamma(base, j)
    return out.shift_p(-denominator_exponent(params))


def log_factors(params: HalfLogParams, N: int) -> list:
    """The k-1 twisted omega_tilde factors, unnormalized, in twist order."""
    base = omega_tilde(params.p, params.n, params.sign, N)
    return [twist_gamma(base, j) for j in range(params.k - 1)]


# -- zero locus ----------------------------------------------------------------


def character_grid(p: int, n: int, k: int):
    """All (d, m, e, r) at level n with twists bounded by the weight."""
    out = []
    for r in range(k - 1):
        for d in range(p - 1):
            for m in range(n):
                es = (1,) if m == 0 else tuple(
                    e for e in range(1, p**m) if e % p
                )
                for e in es:
                    out.append(CharacterSpec(d, m, e, r))
    return out


def zero_factor_counts(params: HalfLogParams, N: int) -> dict:
    """Number of vanishing (twist j, index s) factors at each character.

    A character is a zero of the half-log iff its count is positive; the
    zeros are simple precisely when every positive count equals 1.
    """
    p, n = params.p, params.n
    pieces = {}
    for j in range(params.k - 1):
        for s in factor_indices(n, params.sign):
            pieces[(j, s)] = twist_gamma(phi(p, n, s, N), j)
    counts = {}
    for chi in character_grid(p, n, params.k):
        c = 0
        for elem in pieces.values():
            if eval_char(elem, chi).is_zero():
                c += 1
        counts[chi] = c
    return counts


def vanishing_locus(params: HalfLogParams, N: int) -> frozenset:
    """Characters annihilating the half-log, by exact per-factor evaluation."""
    return frozenset(
        chi for chi, c in zero_factor_counts(params, N).items() if c > 0
    )


def predicted_locus(params: HalfLogParams) -> frozenset:
    """Parity law: zeros exactly at gamma-order p^m, m matching the sign.

    Plus vanishes at even m, minus at odd m, 1 <= m < n, for every torsion
    part d, every primitive e, every twist 0 <= r <= k-2.
    """
    p, n = params.p, params.n
    want_parity = 0 if params.sign == PLUS else 1
    out = []
    for chi in character_grid(p, n, params.k):
        if chi.m >= 1 and chi.m % 2 == want_parity:
            out.append(chi)
    return frozenset(out)


def saturated_twist_unit(p, n, m, j, N) -> GroupRingElem:
    """phi(m)/p realized with the twist substituted before gamma-reduction.

    For m >= n the plain phi(m) collapses to the constant p, which a
    coefficient twist leaves untouched; substituting gamma -> u^(-j) gamma
    first keeps the u-powers, and the result is a one-unit of the group
    algebra (j = 0 gives exactly 1).
    """
    return phi_twisted(p, n, m, j, N).shift_p(-1)
