"""Arithmetic in E(zeta_{p^m}) and character evaluation.

Elements are coefficient vectors of length phi(p^m) in the power basis
1, zeta, ..., zeta^(phi(p^m)-1), reduced modulo the p^m-th cyclotomic
polynomial Phi(X) = sum_i X^(i*p^(m-1)).  Coefficients are either base
PadicScalar values or QuadExtScalar values; the code is agnostic.

Characters of the level-n Galois group are (d, m, e, r): omega^d on the
torsion part, gamma |-> zeta_{p^m}^e of exact order p^m, twisted by the
r-th power of the cyclotomic character.
"""

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb, gcd, inf

from .errors import (
    BadConductor,
    DivideByZero,
    InvalidParameter,
    MalformedInput,
    PrecisionExhausted,
    TrivialCharacter,
)
from .padic import PadicScalar, QuadExtScalar, check_odd_prime, teichmuller


@lru_cache(maxsize=None)
def primitive_root(p: int) -> int:
    """Smallest generator of (Z/p)^*."""
    check_odd_prime(p)
    for g in range(2, p):
        x, order = g, 1
        while x != 1:
            x = x * g % p
            order += 1
        if order == p - 1:
            return g
    raise InvalidParameter(f"no primitive root mod {p}")


@lru_cache(maxsize=None)
def dlog_table(p: int) -> dict:
    """Index of each unit mod p with respect to the smallest primitive root."""
    g = primitive_root(p)
    table, x = {}, 1
    for i in range(p - 1):
        table[x] = i
        x = x * g % p
    return table


def dlog_oneunits(x: int, p: int, M: int) -> int:
    """Exponent t in [0, p^M) with (1+p)^t = x mod p^(M+1), for x = 1 mod p.

    Solved one digit at a time: (1+p)^(p^j) = 1 + p^(j+1)*w_j with w_j a
    unit, so each digit is a division mod p.
    """
    mod = p ** (M + 1)
    x %= mod
    if x % p != 1:
        raise InvalidParameter("argument is not a one-unit")
    u = 1 + p
    t, cur = 0, 1
    for j in range(M):
        pj1 = p ** (j + 1)
        diff = x * pow(cur, -1, mod) % mod
        digit = (diff - 1) // pj1 % p
        wj = (pow(u, p**j, p ** (j + 2)) - 1) // pj1
        digit = digit * pow(wj, -1, p) % p
        t += digit * p**j
        cur = cur * pow(u, digit * p**j, mod) % mod
    return t


def _zero_like(sample):
    if isinstance(sample, QuadExtScalar):
        return QuadExtScalar.zero(sample.p, sample.N, sample.s)
    return PadicScalar.zero(sample.p, sample.N)


def _one_like(sample):
    if isinstance(sample, QuadExtScalar):
        return QuadExtScalar.one(sample.p, sample.N, sample.s)
    return PadicScalar.one(sample.p, sample.N)


def phi_degree(p: int, m: int) -> int:
    return 1 if m == 0 else (p - 1) * p ** (m - 1)


class CyclotomicScalar:
    """Element of E(zeta_{p^m}) in the reduced power basis."""

    __slots__ = ("p", "m", "coeffs")

    def __init__(self, p: int, m: int, coeffs):
        coeffs = tuple(coeffs)
        if m < 0 or len(coeffs) != phi_degree(p, m):
            raise InvalidParameter("coefficient vector has the wrong length")
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "m", m)
        object.__setattr__(self, "coeffs", coeffs)

    def __setattr__(self, name, value):
        raise AttributeError("CyclotomicScalar is immutable")

    @classmethod
    def from_scalar(cls, x, m: int = 0) -> "CyclotomicScalar":
        deg = phi_degree(x.p, m)
        z = _zero_like(x)
        return cls(x.p, m, (x,) + (z,) * (deg - 1))

    @classmethod
    def from_exponent_terms(cls, p: int, m: int, terms, zero) -> "CyclotomicScalar":
        """Fold zeta^exp contributions into the reduced basis.

        Exponents are taken mod p^m; an exponent q*p^(m-1)+s with q = p-1
        rewrites as minus the sum over the lower q by the defining relation.
        """
        deg = phi_degree(p, m)
        out = [zero] * deg
        if m == 0:
            for _, c in terms:
                out[0] = out[0] + c
            return cls(p, m, out)
        pm = p**m
        block = p ** (m - 1)
        for e, c in terms:
            e %= pm
            q, s = divmod(e, block)
            if q < p - 1:
                out[e] = out[e] + c
            else:
                for i in range(p - 1):
                    out[i * block + s] = out[i * block + s] - c
        return cls(p, m, out)

    @classmethod
    def root(cls, p: int, m: int, e: int, N: int) -> "CyclotomicScalar":
        """zeta_{p^m}^e as a base-ring element."""
        one = PadicScalar.one(p, N)
        return cls.from_exponent_terms(p, m, [(e, one)], PadicScalar.zero(p, N))

    def _zero(self):
        return _zero_like(self.coeffs[0])

    def is_zero(self) -> bool:
        return all(c.is_zero() for c in self.coeffs)

    def _check(self, other):
        if self.p != other.p or self.m != other.m:
            raise InvalidParameter("mixed cyclotomic levels")

    def __add__(self, other):
        self._check(other)
        return CyclotomicScalar(
            self.p, self.m, tuple(a + b for a, b in zip(self.coeffs, other.coeffs))
        )

    def __neg__(self):
        return CyclotomicScalar(self.p, self.m, tuple(-a for a in self.coeffs))

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        self._check(other)
        deg = len(self.coeffs)
        conv = {}
        for i, a in enumerate(self.coeffs):
            if a.is_zero():
                continue
            for j, b in enumerate(other.coeffs):
                if b.is_zero():
                    continue
                k = i + j
                t = a * b
                if k in conv:
                    conv[k] = conv[k] + t
                else:
                    conv[k] = t
        return CyclotomicScalar.from_exponent_terms(
            self.p, self.m, sorted(conv.items()), self._zero()
        )

    def scalar_mul(self, x) -> "CyclotomicScalar":
        return CyclotomicScalar(self.p, self.m, tuple(c * x for c in self.coeffs))

    def conjugate(self, t: int) -> "CyclotomicScalar":
        """Galois image zeta -> zeta^t for t coprime to p."""
        if gcd(t, self.p) != 1:
            raise InvalidParameter("conjugation index must be a unit")
        if self.m == 0:
            return self
        return CyclotomicScalar.from_exponent_terms(
            self.p,
            self.m,
            [(i * t, c) for i, c in enumerate(self.coeffs)],
            self._zero(),
        )

    def inv(self) -> "CyclotomicScalar":
        """Inverse via the product of all nontrivial conjugates over the norm.

        Verified by re-multiplication; raises if the element is zero at
        working precision or the verification fails.
        """
        if self.is_zero():
            raise DivideByZero("inverse of zero at working precision")
        if self.m == 0:
            return CyclotomicScalar(self.p, 0, (self.coeffs[0].inv(),))
        cof = None
        pm = self.p**self.m
        for t in range(2, pm):
            if t % self.p == 0:
                continue
            c = self.conjugate(t)
            cof = c if cof is None else cof * c
        full = cof * self
        n0 = full.coeffs[0]
        if n0.is_zero() or not all(c.is_zero() for c in full.coeffs[1:]):
            raise PrecisionExhausted("norm lost all significant digits")
        out = cof.scalar_mul(n0.inv())
        check = out * self
        if not (check - CyclotomicScalar.from_scalar(_one_like(n0), self.m)).is_zero():
            raise PrecisionExhausted("inverse failed re-multiplication check")
        return out

    def __eq__(self, other):
        if not isinstance(other, CyclotomicScalar):
            return NotImplemented
        self._check(other)
        return (self - other).is_zero()

    __hash__ = None

    def pi_valuation(self):
        """Valuation normalized by v(p) = 1, as an exact Fraction.

        Rewrites the element in powers of pi = 1 - zeta; the candidate
        valuations j/phi + v_p(d_j) are pairwise distinct mod 1, so the
        minimum is exact.  Returns inf for zero at precision.  Base-ring
        coefficients only.
        """
        if any(isinstance(c, QuadExtScalar) for c in self.coeffs):
            raise InvalidParameter("pi_valuation is defined over the base ring")
        if self.m == 0:
            c = self.coeffs[0]
            return inf if c.is_zero() else Fraction(c.v)
        e = len(self.coeffs)
        best = inf
        for j in range(e):
            d = None
            for i in range(j, e):
                t = self.coeffs[i] * comb(i, j)
                d = t if d is None else d + t
            if d is None or d.is_zero():
                continue
            cand = Fraction(d.v) + Fraction(j, e)
            if cand < best:
                best = cand
        return best

    def __repr__(self):
        return f"CyclotomicScalar(p={self.p}, m={self.m}, {list(self.coeffs)!r})"

    def to_json(self) -> dict:
        return {
            "p": self.p,
            "m": self.m,
            "coeffs": [c.to_json() for c in self.coeffs],
        }

    @classmethod
    def from_json(cls, obj: dict) -> "CyclotomicScalar":
        try:
            p = int(obj["p"])
            m = int(obj["m"])
            raw = obj["coeffs"]
        except (KeyError, TypeError, ValueError) as exc:
            raise MalformedInput(f"bad cyclotomic object: {exc}") from exc
        coeffs = [
            QuadExtScalar.from_json(c) if "a" in c else PadicScalar.from_json(c)
            for c in raw
        ]
        try:
            return cls(p, m, coeffs)
        except InvalidParameter as exc:
            raise MalformedInput(str(exc)) from exc


@dataclass(frozen=True)
class CharacterSpec:
    """Character data: omega^d on torsion, gamma -> zeta_{p^m}^e, twist r."""

    d: int
    m: int
    e: int
    r: int

    def validate(self, p: int, n: int | None = None) -> None:
        if not 0 <= self.d < p - 1:
            raise InvalidParameter("d out of range")
        if self.m < 0 or self.r < 0:
            raise InvalidParameter("negative character index")
        if self.m == 0:
            if self.e != 1:
                raise InvalidParameter("e must be 1 for trivial gamma-part")
        else:
            if not (0 < self.e < p**self.m and self.e % p != 0):
                raise InvalidParameter("e must be a unit mod p^m")
        if n is not None and self.m > n - 1:
            raise BadConductor(f"gamma-order p^{self.m} unreachable at level {n}")

    def is_trivial(self) -> bool:
        return self.d == 0 and self.m == 0

    def conductor_exponent(self) -> int:
        if self.is_trivial():
            return 0
        return self.m + 1

    def inverse(self, p: int) -> "CharacterSpec":
        e = 1 if self.m == 0 else (-self.e) % p**self.m
        return CharacterSpec((-self.d) % (p - 1), self.m, e, self.r)

    def to_json(self) -> dict:
        return {"d": self.d, "m": self.m, "e": self.e, "r": self.r}

    @classmethod
    def from_json(cls, obj: dict) -> "CharacterSpec":
        try:
            return cls(int(obj["d"]), int(obj["m"]), int(obj["e"]), int(obj["r"]))
        except (KeyError, TypeError, ValueError) as exc:
            raise MalformedInput(f"bad character object: {exc}") from exc


def eval_char(f, chi: CharacterSpec) -> CyclotomicScalar:
    """Evaluate a group-ring element at the character chi.

    Sum of c_{r',a} * omega(g)^(a(d+r)) * u^(r r') * zeta_{p^m}^(e r') over
    the coefficient grid, with u = 1 + p and g the fixed generator of the
    torsion part.  Ring homomorphism in f for each fixed chi.
    """
    p, n, N = f.p, f.n, f.N
    chi.validate(p, n)
    g = primitive_root(p)
    w = teichmuller(g, p, N)
    weights = [w ** ((a * (chi.d + chi.r)) % (p - 1)) for a in range(p - 1)]
    ur = PadicScalar.from_int(1 + p, p, N) ** chi.r
    zero = _zero_like(f.coeffs[0][0])
    cols = p ** (n - 1)
    terms = []
    upow = PadicScalar.one(p, N)
    for rp in range(cols):
        acc = None
        for a in range(p - 1):
            c = f.coeffs[a][rp]
            if c.is_zero():
                continue
            t = c * weights[a]
            acc = t if acc is None else acc + t
        if acc is not None:
            terms.append(((chi.e * rp) % p**chi.m if chi.m else 0, acc * upow))
        upow = upow * ur
    return CyclotomicScalar.from_exponent_terms(p, chi.m, terms, zero)


def character_value(chi: CharacterSpec, a: int, p: int, N: int) -> tuple[int, int]:
    """Dirichlet realization at a unit a mod p^(m+1).

    Returns (torsion exponent of omega(g)^d at a, gamma exponent), i.e. the
    pair (d * dlog_g(a mod p), e * dlog_u(<a>)) so the value of the character
    is omega(g)^first * zeta_{p^m}^second.
    """
    if a % p == 0:
        raise InvalidParameter("a must be a unit")
    cm = chi.m + 1
    ad = dlog_table(p)[a % p]
    w = teichmuller(a, p, max(N, cm))
    abar = a * pow(w.u % p**cm, -1, p**cm) % p**cm
    ag = dlog_oneunits(abar, p, chi.m)
    return (chi.d * ad) % (p - 1), (chi.e * ag) % p**chi.m if chi.m else 0


def gauss_sum(chi: CharacterSpec, p: int, N: int) -> CyclotomicScalar:
    """Gauss sum over the conductor, valued in E(zeta_{p^(m+1)}).

    tau = sum over units a mod p^(m+1) of chi~(a) * zeta_cond^a, where chi~
    is the Dirichlet character matching chi under the standard isomorphism.
    The lower-level root of unity embeds via zeta_{p^m} = zeta_cond^p.
    """
    if chi.r != 0:
        raise InvalidParameter("gauss_sum is defined for untwisted characters")
    chi.validate(p)
    if chi.is_trivial():
        raise TrivialCharacter("no Gauss sum for the trivial character")
    cm = chi.conductor_exponent()
    if N < cm:
        raise PrecisionExhausted("need at least conductor-exponent digits")
    cond = p**cm
    g = primitive_root(p)
    w = teichmuller(g, p, N)
    buckets: dict[int, PadicScalar] = {}
    for a in range(1, cond):
        if a % p == 0:
            continue
        te, ge = character_value(chi, a, p, N)
        exp = (a + p * ge) % cond
        val = w**te
        if exp in buckets:
            buckets[exp] = buckets[exp] + val
        else:
            buckets[exp] = val
    return CyclotomicScalar.from_exponent_terms(
        p, cm, sorted(buckets.items()), PadicScalar.zero(p, N)
    )


def embed_root(x: CyclotomicScalar, m: int) -> CyclotomicScalar:
    """Re-express a level-x.m element at a level m >= x.m."""
    if m < x.m:
        raise InvalidParameter("cannot embed into a smaller field")
    if m == x.m:
        return x
    step = x.p ** (m - x.m)
    return CyclotomicScalar.from_exponent_terms(
        x.p, m, [(i * step, c) for i, c in enumerate(x.coeffs)], x._zero()
    )
