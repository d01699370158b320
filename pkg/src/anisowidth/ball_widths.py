"""Order formulas and lower-bound plans for anisotropic ball widths.

Width orders of ``B_p`` in ``l_q`` over a ``k_1 x ... x k_d`` index box are
pure products ``prod base^exponent`` with rational exponents, so this module
carries them in :class:`PowerProduct`, an exact positive-product type whose
comparisons clear denominators and compare big integers.  Float exponents
degrade a product to float comparisons but keep the same interface.

The V-set machinery (convex hulls of permuted, sign-flipped corner blocks)
provides matching lower bounds: :func:`lower_bound_plan` picks the block
shape ``s`` for a given ``n``, and :func:`vset_l2_lower` is the exact
Euclidean width bound for that block.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from typing import Optional, Union

import numpy as np

from .mixed_norm import (
    ExponentVector,
    PropertyViolation,
    Tensor,
    ValidationError,
    as_exponents,
)
from .exponents import sorted_profile

__all__ = [
    "PowerProduct",
    "BallProblem",
    "PhiResult",
    "phi",
    "ball_order_low_q",
    "PlanResult",
    "lower_bound_plan",
    "VSet",
    "sample_group_element",
    "vset_extreme_point",
    "vset_l2_lower",
]

_HALF = Fraction(1, 2)


class PowerProduct:
    """Positive quantity ``coeff * prod base_i ** exp_i`` with exact order.

    Bases are integers ``>= 2`` after normalization, ``coeff`` is a positive
    ``Fraction``.  Exponents are ``Fraction`` (exact path) or float (the
    comparison then falls back to logarithms).
    """

    __slots__ = ("coeff", "factors")

    def __init__(self, coeff=Fraction(1), factors=()):
        coeff = Fraction(coeff) if not isinstance(coeff, float) else coeff
        if not coeff > 0:
            raise ValidationError(f"PowerProduct coefficient {coeff} must be positive")
        merged = {}
        for base, exp in factors:
            base = int(base)
            if base < 1:
                raise ValidationError(f"PowerProduct base {base} must be >= 1")
            if base == 1 or exp == 0:
                continue
            merged[base] = merged.get(base, 0) + exp
        self.coeff = coeff
        self.factors = tuple(
            (b, e) for b, e in sorted(merged.items()) if e != 0
        )

    @classmethod
    def one(cls) -> "PowerProduct":
        return cls()

    @classmethod
    def power(cls, base: int, exp) -> "PowerProduct":
        return cls(Fraction(1), ((base, exp),))

    @property
    def is_exact(self) -> bool:
        return isinstance(self.coeff, Fraction) and all(
            isinstance(e, Fraction) for _, e in self.factors
        )

    def value(self) -> float:
        logv = math.log(float(self.coeff)) + sum(
            float(e) * math.log(b) for b, e in self.factors
        )
        return math.exp(logv)

    def __mul__(self, other) -> "PowerProduct":
        other = _as_power(other)
        return PowerProduct(self.coeff * other.coeff, self.factors + other.factors)

    def __truediv__(self, other) -> "PowerProduct":
        return self * _as_power(other)._inv()

    def _inv(self) -> "PowerProduct":
        return PowerProduct(1 / self.coeff, tuple((b, -e) for b, e in self.factors))

    def __pow__(self, exp) -> "PowerProduct":
        if exp == 0:
            return PowerProduct.one()
        if self.coeff != 1:
            if isinstance(exp, int) or (isinstance(exp, Fraction) and exp.denominator == 1):
                return PowerProduct(
                    self.coeff ** int(exp), tuple((b, e * exp) for b, e in self.factors)
                )
            raise ValidationError(
                "fractional power of a PowerProduct with a non-unit coefficient"
            )
        return PowerProduct(Fraction(1), tuple((b, e * exp) for b, e in self.factors))

    def _cmp(self, other) -> int:
        ratio = self / _as_power(other)
        if ratio.is_exact:
            lcm = 1
            for _, e in ratio.factors:
                lcm = lcm * e.denominator // math.gcd(lcm, e.denominator)
            num = ratio.coeff.numerator**lcm
            den = ratio.coeff.denominator**lcm
            for b, e in ratio.factors:
                scaled = e * lcm
                if scaled > 0:
                    num *= b ** int(scaled)
                else:
                    den *= b ** int(-scaled)
            return (num > den) - (num < den)
        logv = math.log(float(ratio.coeff)) + sum(
            float(e) * math.log(b) for b, e in ratio.factors
        )
        return (logv > 0) - (logv < 0)

    def __lt__(self, other):
        return self._cmp(other) < 0

    def __le__(self, other):
        return self._cmp(other) <= 0

    def __gt__(self, other):
        return self._cmp(other) > 0

    def __ge__(self, other):
        return self._cmp(other) >= 0

    def __eq__(self, other):
        if not isinstance(other, (PowerProduct, int, Fraction)):
            return NotImplemented
        return self._cmp(other) == 0

    def __hash__(self):
        return hash(round(self.value(), 12))

    def ceil_int(self) -> int:
        """Smallest integer >= the product value (exact for exact products)."""
        m = max(1, math.ceil(self.value() - 1e-9))
        while PowerProduct(Fraction(m)) < self:
            m += 1
        while m > 1 and self <= PowerProduct(Fraction(m - 1)):
            m -= 1
        return m

    def __repr__(self):
        body = " * ".join(f"{b}^({e})" for b, e in self.factors)
        return f"PowerProduct({self.coeff}{' * ' + body if body else ''})"


def _as_power(v) -> PowerProduct:
    if isinstance(v, PowerProduct):
        return v
    if isinstance(v, (int, Fraction)):
        return PowerProduct(Fraction(v))
    raise ValidationError(f"cannot interpret {v!r} as a positive product")


@dataclass(frozen=True)
class BallProblem:
    """Width problem for ``B_p`` in ``l_q`` over a ``k``-box, ``2n <= prod k``."""

    k: tuple
    n: int
    p: ExponentVector
    q: ExponentVector

    def __post_init__(self):
        object.__setattr__(self, "k", tuple(int(v) for v in self.k))
        object.__setattr__(self, "p", as_exponents(self.p))
        object.__setattr__(self, "q", as_exponents(self.q))
        if any(v < 1 for v in self.k):
            raise ValidationError(f"box sides must be >= 1, got {self.k}")
        d = len(self.k)
        if not (self.p.d == self.q.d == d):
            raise ValidationError("dimension mismatch among k, p, q")
        if not isinstance(self.n, int) or self.n < 0:
            raise ValidationError(f"n must be a nonnegative integer, got {self.n}")
        if 2 * self.n > self.K:
            raise ValidationError(
                f"n={self.n} exceeds half the total dimension K={self.K}"
            )

    @property
    def K(self) -> int:
        return math.prod(self.k)

    @property
    def d(self) -> int:
        return len(self.k)


def _require_q_range(q: ExponentVector):
    for rqj in q.recip:
        if rqj == 0 or rqj > _HALF:
            raise ValidationError("every target exponent q_j must lie in [2, inf)")


@dataclass(frozen=True)
class PhiResult:
    value: float
    exact: PowerProduct
    branch: str
    argmin_t: Optional[int]


def phi(prob: BallProblem) -> PhiResult:
    """Order of the width of ``B_p`` in ``l_q``: prefix times a branch minimum.

    The prefix collects the zero-weight axes; the minimum runs over the
    constant branch 1 and one branch per remaining sorted position ``t``,
    each a pure power product evaluated exactly.  Ties between a ``t``
    branch and the constant branch report the constant branch; ties among
    ``t`` branches report the smallest ``t``.
    """
    _require_q_range(prob.q)
    prof = sorted_profile(prob.p, prob.q)
    d, mu = prof.d, prof.mu
    pos = [a - 1 for a in prof.sigma]
    ks = [prob.k[a] for a in pos]
    rqs = [prob.q.recip[a] for a in pos]
    rps = [prob.p.recip[a] for a in pos]
    oms = [prof.omega[a] for a in pos]

    prefix = PowerProduct.one()
    for j in range(mu):
        prefix = prefix * PowerProduct.power(ks[j], rqs[j] - rps[j])

    best = None
    best_t = None
    for t in range(mu + 1, d + 1):
        pre = PowerProduct.one()
        for j in range(mu, t - 1):
            pre = pre * PowerProduct.power(ks[j], rqs[j] - min(rps[j], _HALF))
        w = oms[t - 1]
        if w == 0:
            term = pre
        elif prob.n == 0:
            continue
        else:
            bracket = PowerProduct.power(prob.n, -_HALF)
            for j in range(t - 1):
                bracket = bracket * PowerProduct.power(ks[j], _HALF)
            for j in range(t - 1, d):
                bracket = bracket * PowerProduct.power(ks[j], rqs[j])
            term = pre * bracket**w
        if best is None or term < best:
            best, best_t = term, t

    if best is None or PowerProduct.one() <= best:
        return PhiResult(
            value=prefix.value(), exact=prefix, branch="constant", argmin_t=None
        )
    exact = prefix * best
    return PhiResult(value=exact.value(), exact=exact, branch="term", argmin_t=best_t)


def ball_order_low_q(prob: BallProblem, nu_split: int) -> float:
    """Width order for the two-block low target-exponent pattern.

    Axes in given order: first ``nu_split`` axes need ``p_j <= q_j <= 2``,
    the rest ``q_j <= p_j``.  The order is ``prod_(j>nu) k_j^(1/q_j-1/p_j)``,
    constant in ``n`` over the admissible range ``2n <= prod k``.
    """
    d = prob.d
    if not (0 <= nu_split <= d):
        raise ValidationError(f"nu_split={nu_split} outside 0..{d}")
    for j in range(nu_split):
        if not (prob.p.recip[j] >= prob.q.recip[j] >= _HALF):
            raise ValidationError(
                f"axis {j + 1}: need 1 <= p <= q <= 2 in the first block"
            )
    for j in range(nu_split, d):
        if not (prob.q.recip[j] >= prob.p.recip[j]):
            raise ValidationError(f"axis {j + 1}: need q <= p in the second block")
    out = PowerProduct.one()
    for j in range(nu_split, d):
        out = out * PowerProduct.power(prob.k[j], prob.q.recip[j] - prob.p.recip[j])
    return out.value()


@dataclass(frozen=True)
class PlanResult:
    """Block shape and predicted order for the V-set lower bound."""

    s: tuple
    predicted: float
    exact: PowerProduct
    regime: str
    t: Optional[int]


def lower_bound_plan(prob: BallProblem) -> PlanResult:
    """Choose the corner-block shape ``s`` matching the width order at ``n``.

    Splits the admissible range by the thresholds
    ``T_t = prod_(j<=t) k_sigma(j) * prod_(j>t) k_sigma(j)^(2/q_sigma(j))``
    (nondecreasing in ``t``): at or below ``T_mu`` the full zero-weight
    corner, inside a window the fractional side on the window axis (exact
    ceiling of a pure power), past ``T_nu`` the tail block.  The returned
    ``s`` is in original axis order; ``predicted`` is the matching order
    value, a pure power product.
    """
    _require_q_range(prob.q)
    prof = sorted_profile(prob.p, prob.q)
    d, mu, nu = prof.d, prof.mu, prof.nu
    pos = [a - 1 for a in prof.sigma]
    ks = [prob.k[a] for a in pos]
    rqs = [prob.q.recip[a] for a in pos]
    rps = [prob.p.recip[a] for a in pos]
    oms = [prof.omega[a] for a in pos]

    def threshold(t):
        out = PowerProduct.one()
        for j in range(t):
            out = out * PowerProduct.power(ks[j], 1)
        for j in range(t, d):
            out = out * PowerProduct.power(ks[j], 2 * rqs[j])
        return out

    def order_prefix(upto):
        out = PowerProduct.one()
        for j in range(upto):
            out = out * PowerProduct.power(ks[j], rqs[j] - rps[j])
        return out

    npp = PowerProduct(Fraction(prob.n)) if prob.n > 0 else None

    if npp is None or npp <= threshold(mu):
        s_sorted = [ks[j] if j < mu else 1 for j in range(d)]
        exact = order_prefix(mu)
        regime, t_out = "corner", None
    else:
        t_found = None
        for t in range(mu + 1, nu + 1):
            if npp <= threshold(t):
                t_found = t
                break
        if t_found is not None:
            t = t_found
            rq_t = rqs[t - 1]
            if not rq_t < _HALF:
                raise PropertyViolation(
                    "window regime requires q > 2 on the window axis"
                )
            base = PowerProduct.power(prob.n, _HALF)
            for j in range(t - 1):
                base = base * PowerProduct.power(ks[j], -_HALF)
            for j in range(t - 1, d):
                base = base * PowerProduct.power(ks[j], -rqs[j])
            side = base ** (1 / (_HALF - rq_t))
            s_t = side.ceil_int()
            if not (1 <= s_t <= ks[t - 1]):
                raise PropertyViolation(
                    f"window side {s_t} escapes [1, {ks[t - 1]}]"
                )
            s_sorted = [ks[j] for j in range(t - 1)] + [s_t] + [1] * (d - t)
            bracket = PowerProduct.power(prob.n, -_HALF)
            for j in range(t - 1):
                bracket = bracket * PowerProduct.power(ks[j], _HALF)
            for j in range(t - 1, d):
                bracket = bracket * PowerProduct.power(ks[j], rqs[j])
            exact = order_prefix(t - 1) * bracket ** oms[t - 1]
            regime, t_out = "window", t
        else:
            if nu >= d:
                raise PropertyViolation(
                    "tail regime reached with nu = d; thresholds are inconsistent"
                )
            s_sorted = [ks[j] if j < nu else 1 for j in range(d)]
            exact = order_prefix(nu) * PowerProduct.power(prob.n, -_HALF)
            for j in range(nu):
                exact = exact * PowerProduct.power(ks[j], _HALF)
            for j in range(nu, d):
                exact = exact * PowerProduct.power(ks[j], rqs[j])
            regime, t_out = "tail", None

    s = [0] * d
    for j in range(d):
        s[prof.sigma[j] - 1] = s_sorted[j]
    return PlanResult(
        s=tuple(s), predicted=exact.value(), exact=exact, regime=regime, t=t_out
    )


@dataclass(frozen=True)
class VSet:
    """Orbit hull of a corner block: sides ``s`` inside a ``k``-box."""

    k: tuple
    s: tuple

    def __post_init__(self):
        object.__setattr__(self, "k", tuple(int(v) for v in self.k))
        object.__setattr__(self, "s", tuple(int(v) for v in self.s))
        if len(self.k) != len(self.s):
            raise ValidationError("k and s must have the same length")
        for kj, sj in zip(self.k, self.s):
            if not (1 <= sj <= kj):
                raise ValidationError(f"block side {sj} outside [1, {kj}]")

    @property
    def K(self) -> int:
        return math.prod(self.k)

    @property
    def d(self) -> int:
        return len(self.k)


def sample_group_element(k, rng):
    """Random per-axis permutations and sign flips."""
    perms = tuple(tuple(int(v) for v in rng.permutation(kj)) for kj in k)
    signs = tuple(
        tuple(int(v) for v in rng.choice((-1, 1), size=kj)) for kj in k
    )
    return perms, signs


def vset_extreme_point(v: VSet, g=None, seed=None) -> Tensor:
    """Image of the corner block under a group element, as a Tensor.

    ``g`` is a pair ``(perms, signs)`` of per-axis permutations (0-based)
    and sign vectors; ``g=None`` with a seed samples one, ``g=None`` without
    a seed returns the corner block itself.  The result factors along axes,
    so its mixed norm is exactly ``prod s_j^(1/p_j)`` for every ``p``.
    """
    if g is None:
        if seed is None:
            perms = tuple(tuple(range(kj)) for kj in v.k)
            signs = tuple((1,) * kj for kj in v.k)
        else:
            perms, signs = sample_group_element(v.k, np.random.default_rng(seed))
    else:
        perms, signs = g
    if len(perms) != v.d or len(signs) != v.d:
        raise ValidationError("group element axis count mismatch")
    axes = []
    for kj, sj, perm, sgn in zip(v.k, v.s, perms, signs):
        if sorted(perm) != list(range(kj)):
            raise ValidationError("bad permutation in group element")
        if len(sgn) != kj or any(e not in (-1, 1) for e in sgn):
            raise ValidationError("bad sign vector in group element")
        axes.append(
            np.array([sgn[i] * (1.0 if perm[i] < sj else 0.0) for i in range(kj)])
        )
    arr = reduce(np.multiply.outer, axes)
    if arr.ndim == 0:
        arr = arr.reshape(1)
    return Tensor.from_array(arr)


def vset_l2_lower(v: VSet, n: int) -> float:
    """Exact Euclidean width lower bound ``sqrt(prod s) * sqrt(1 - n/K)``."""
    if not (0 <= n <= v.K):
        raise ValidationError(f"n={n} outside [0, {v.K}]")
    return math.sqrt(math.prod(v.s)) * math.sqrt(1.0 - n / v.K)
