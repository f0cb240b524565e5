"""Signed decomposition of p-adic L-element pairs at a supersingular prime.

A pair (L1, L2) indexed by the two roots alpha, -alpha of X^2 + eps p^(k-1)
decomposes as

    L1 = log+ Lplus + alpha log- Lminus
    L2 = log+ Lplus - alpha log- Lminus

so Lplus = (L1+L2) / (2 log+) and Lminus = (L1-L2) / (2 alpha log-).  The
half-log splits as a p-power, the untwisted phi-factors (zero divisors,
divided via the CRT slots), and the j >= 1 twisted factors, which are units
of the group algebra because u^(-j) zeta is never a p-power root of unity;
their inverses are cached per (p, n, k, sign).

Quotients carry canonical zeroed slots, so they are coset representatives:
re-multiplying by the corresponding half-log reproduces the input exactly.
A canonical representative is generally non-integral (slot projectors have
p-denominators), so the O(1) valuation floor is enforced up to the zeroed
slots' projector denominators.
"""

from dataclasses import dataclass
from fractions import Fraction
from math import inf

from .cyclotomic import CharacterSpec, eval_char
from .errors import (
    InvalidParameter,
    NotDecomposable,
    ShapeMismatch,
    UnboundedResult,
)
from .groupring import (
    GroupRingElem,
    crt_context,
    divide_exact,
    divisible_by_phi,
    invert_unit,
    twist_gamma,
)
from .halflogs import (
    MINUS,
    PLUS,
    HalfLogParams,
    factor_indices,
    log_trunc,
    omega_tilde,
)
from .padic import PadicScalar, QuadExtScalar, half_val_fraction


def make_alpha(p: int, k: int, eps: int, N: int) -> QuadExtScalar:
    """A root of X^2 + eps p^(k-1), as a quadratic-extension scalar.

    For odd k the valuation of alpha^2 is even, so a genuine field needs
    -eps to be a non-residue mod p; the split case is rejected because the
    half-integer valuation bookkeeping relies on the field property.
    """
    if k < 2:
        raise InvalidParameter("weight must be at least 2")
    if eps % p == 0:
        raise InvalidParameter("eps must be a unit")
    if k % 2 == 1 and pow(-eps % p, (p - 1) // 2, p) == 1:
        raise InvalidParameter(
            "odd weight with -eps a square mod p gives a split algebra"
        )
    s = PadicScalar.from_int(-eps, p, N).shift(k - 1)
    return QuadExtScalar(PadicScalar.zero(p, N), PadicScalar.one(p, N), s)


class AdmissiblePair:
    """Two L-elements over Q_p(alpha) sharing shape and precision."""

    __slots__ = ("L1", "L2", "params", "alpha")

    def __init__(self, L1, L2, params: HalfLogParams, alpha: QuadExtScalar):
        if L1.kind != "quad" or L2.kind != "quad":
            raise ShapeMismatch("pair members must live over Q_p(alpha)")
        if (L1.p, L1.n) != (L2.p, L2.n) or L1.p != params.p:
            raise ShapeMismatch("pair members disagree on (p, n)")
        if not (L1.s == alpha.s and L2.s == alpha.s):
            raise ShapeMismatch("pair members live in a different extension")
        if half_val_fraction(alpha) != Fraction(params.k - 1, 2):
            raise InvalidParameter("alpha valuation must be (k-1)/2")
        object.__setattr__(self, "L1", L1)
        object.__setattr__(self, "L2", L2)
        object.__setattr__(self, "params", params)
        object.__setattr__(self, "alpha", alpha)

    def __setattr__(self, name, value):
        raise AttributeError("AdmissiblePair is immutable")

    def to_json(self) -> dict:
        return {
            "k": self.params.k,
            "eps": self.params.eps,
            "L1": self.L1.to_json(),
            "L2": self.L2.to_json(),
        }

    @classmethod
    def from_json(cls, obj: dict, N: int | None = None) -> "AdmissiblePair":
        from .errors import MalformedInput

        try:
            k = int(obj["k"])
            eps = int(obj["eps"])
        except (KeyError, TypeError, ValueError) as exc:
            raise MalformedInput(f"bad pair object: {exc}") from exc
        L1 = GroupRingElem.from_json(obj["L1"])
        L2 = GroupRingElem.from_json(obj["L2"])
        params = HalfLogParams(L1.p, k, L1.n, PLUS, eps)
        alpha = make_alpha(L1.p, k, eps, N or L1.N)
        if L1.kind == "base":
            L1 = L1.to_quad(alpha.s)
        if L2.kind == "base":
            L2 = L2.to_quad(alpha.s)
        return cls(L1, L2, params, alpha)


@dataclass(frozen=True)
class PMDecomposition:
    """Signed components with their canonical zeroed CRT slots."""

    Lplus: GroupRingElem
    Lminus: GroupRingElem
    plus_slots: tuple
    minus_slots: tuple
    params: HalfLogParams
    alpha: QuadExtScalar

    def to_json(self) -> dict:
        return {
            "k": self.params.k,
            "eps": self.params.eps,
            "Lplus": self.Lplus.to_json(),
            "Lminus": self.Lminus.to_json(),
            "plus_slots": list(self.plus_slots),
            "minus_slots": list(self.minus_slots),
        }


def pm_from_json(obj: dict, N: int | None = None) -> PMDecomposition:
    from .errors import MalformedInput

    try:
        k = int(obj["k"])
        eps = int(obj["eps"])
    except (KeyError, TypeError, ValueError) as exc:
        raise MalformedInput(f"bad decomposition object: {exc}") from exc
    Lp = GroupRingElem.from_json(obj["Lplus"])
    Lm = GroupRingElem.from_json(obj["Lminus"])
    params = HalfLogParams(Lp.p, k, Lp.n, PLUS, eps)
    alpha = make_alpha(Lp.p, k, eps, N or Lp.N)
    if Lp.kind == "base":
        Lp = Lp.to_quad(alpha.s)
    if Lm.kind == "base":
        Lm = Lm.to_quad(alpha.s)
    return PMDecomposition(
        Lp,
        Lm,
        factor_indices(Lp.n, PLUS),
        factor_indices(Lm.n, MINUS),
        params,
        alpha,
    )


def _signed(params: HalfLogParams, sign: str) -> HalfLogParams:
    return HalfLogParams(params.p, params.k, params.n, sign, params.eps)


_UNIT_INV_CACHE: dict[tuple, GroupRingElem] = {}


def _twisted_unit_inverse(params: HalfLogParams, sign: str, N: int):
    """Cached inverse of prod_{j=1..k-2} twist_j(omega_tilde); None if empty."""
    p, n, k = params.p, params.n, params.k
    if k == 2 or not factor_indices(n, sign):
        return None
    key = (p, n, k, sign)
    hit = _UNIT_INV_CACHE.get(key)
    if hit is not None and hit.N >= N:
        return hit
    # headroom: the inversion itself spends digits on slot denominators,
    # and the quotient chain downstream spends more
    work = max(N, 40) + 4 * n + 8
    base = omega_tilde(p, n, sign, work)
    unit = twist_gamma(base, 1)
    for j in range(2, k - 1):
        unit = unit * twist_gamma(base, j)
    inv = invert_unit(unit)
    _UNIT_INV_CACHE[key] = inv
    return inv


def compose(Lplus, Lminus, params: HalfLogParams, alpha: QuadExtScalar) -> AdmissiblePair:
    """Assemble (L1, L2) = (log+ Lplus + a log- Lminus, ... - a ...)."""
    s = alpha.s
    p, n = params.p, params.n
    if (Lplus.p, Lplus.n) != (p, n) or (Lminus.p, Lminus.n) != (p, n):
        raise ShapeMismatch("components disagree with the parameters")
    N = min(Lplus.N, Lminus.N)
    lp = log_trunc(_signed(params, PLUS), N).to_quad(s)
    lm = log_trunc(_signed(params, MINUS), N).to_quad(s)
    P = lp * Lplus.to_quad(s)
    M = lm * Lminus.to_quad(s)
    Ma = M.scale(alpha)
    return AdmissiblePair(P + Ma, P - Ma, params, alpha)


def _extract(numerator, params, sign, floor):
    p, n, N = numerator.p, numerator.n, numerator.N
    k = params.k
    indices = factor_indices(n, sign)
    X = numerator.shift_p((k - 1) * (1 + len(indices)))
    inv = _twisted_unit_inverse(params, sign, N)
    if inv is not None:
        X = X * inv.to_quad(numerator.s)
    for m in indices:
        if not divisible_by_phi(X, m):
            raise NotDecomposable(
                f"{'plus' if sign == PLUS else 'minus'} numerator "
                f"is not a multiple of phi({m})"
            )
    for m in indices:
        X = divide_exact(X, m)
    allowance = 0
    if indices:
        ctx = crt_context(p, n, N)
        allowance = max(ctx.idem_den_exp[m] for m in indices)
    minv = X.min_valuation()
    if minv is not inf and minv < floor - allowance:
        raise UnboundedResult(
            f"{'plus' if sign == PLUS else 'minus'} component valuation "
            f"{minv} under floor {floor} (slot denominators allow "
            f"{allowance})"
        )
    return X, indices


def decompose(pair: AdmissiblePair, floor: int = 0) -> PMDecomposition:
    """Split an admissible pair; quotients carry canonical zeroed slots.

    Raises NotDecomposable when a phi-factor divisibility fails and
    UnboundedResult when a component breaks the valuation floor beyond the
    zeroed slots' projector denominators.
    """
    params = pair.params
    p, N = params.p, min(pair.L1.N, pair.L2.N)
    half = PadicScalar.from_rational(1, 2, p, N)
    S = (pair.L1 + pair.L2).scale(half)
    D = (pair.L1 - pair.L2).scale(half).scale(pair.alpha.inv())
    Lplus, plus_slots = _extract(S, params, PLUS, floor)
    Lminus, minus_slots = _extract(D, params, MINUS, floor)
    return PMDecomposition(Lplus, Lminus, plus_slots, minus_slots, params, pair.alpha)


# -- interpolation-shape admissibility -------------------------------------------


@dataclass(frozen=True)
class AdmissibilityReport:
    """Per-character comparison of alpha^s eval(L1) against (-alpha)^s eval(L2)."""

    rows: tuple
    s_min: int

    @property
    def passed(self) -> bool:
        return all(r["ok"] for r in self.rows if r["enforced"])

    def to_json(self) -> dict:
        return {
            "passed": self.passed,
            "s_min": self.s_min,
            "rows": [dict(r) for r in self.rows],
        }


def check_admissible(pair: AdmissiblePair, s_min: int = 2) -> AdmissibilityReport:
    """Interpolation-shape identity at every character of conductor index s.

    Characters with gamma-order p^(s-1) carry the constraint
    alpha^s eval(L1) = (-alpha)^s eval(L2) for each twist 0 <= r <= k-2.
    Rows with s < s_min are reported but never enforced: at s = 1 the
    truncated plus-log supplies no vanishing, so the identity has no
    finite-level reason to hold.
    """
    params, alpha = pair.params, pair.alpha
    p, n, k = params.p, params.n, params.k
    rows = []
    for s in range(1, n + 1):
        m = s - 1
        a1 = alpha**s
        a2 = (-alpha) ** s
        es = (1,) if m == 0 else tuple(e for e in range(1, p**m) if e % p)
        ds = range(1, p - 1) if s == 1 else range(p - 1)
        for d in ds:
            for e in es:
                for r in range(k - 1):
                    chi = CharacterSpec(d, m, e, r)
                    lhs = eval_char(pair.L1, chi).scalar_mul(a1)
                    rhs = eval_char(pair.L2, chi).scalar_mul(a2)
                    rows.append(
                        {
                            "s": s,
                            "d": d,
                            "e": e,
                            "r": r,
                            "ok": (lhs - rhs).is_zero(),
                            "enforced": s >= s_min,
                        }
                    )
    return AdmissibilityReport(tuple(rows), s_min)
