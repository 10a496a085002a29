"""Exact arithmetic for density targets and Beatty multipliers.

Two kinds of multiplier are supported on the decision path:

* :class:`IrrationalNumber` -- a quadratic irrational ``(u + v*sqrt(d)) / w``.
  Every floor and every comparison against a rational is decided with
  integer arithmetic only, so results are bit-reproducible for any ``n``.
* :class:`FixedPointReal` -- ``mantissa * 2**-F``, an approximation of an
  arbitrary real.  Decisions that fall within the error band ``n * 2**-F`` of
  a threshold raise :class:`PrecisionError` instead of guessing.

Plain ``int`` / ``Fraction`` multipliers are accepted by the module-level
helpers as well (used by floor scaling with rational factors).
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from decimal import Decimal, localcontext
from fractions import Fraction
from numbers import Rational
from typing import Union

import numpy as np

__all__ = [
    "DensityTarget",
    "FixedPointReal",
    "IrrationalNumber",
    "PrecisionError",
    "floor_mul",
    "floor_mul_many",
    "frac_compare",
    "frac_less_many",
    "less_than_many",
    "parse_density",
    "parse_theta",
    "sign_vs_rational",
]

LESS = -1
GREATER = 1

# numpy fast paths stay below this bound; larger operands fall back to Python ints
_INT64_SAFE = 1 << 62


class PrecisionError(ArithmeticError):
    """A fixed-point decision landed inside its error band."""


@dataclass(frozen=True)
class DensityTarget:
    """A rational density ``p/q`` in ``[0, 1]``, stored in lowest terms."""

    p: int
    q: int

    def __post_init__(self):
        if self.q <= 0:
            raise ValueError(f"denominator must be positive, got {self.q}")
        if not 0 <= self.p <= self.q:
            raise ValueError(f"density {self.p}/{self.q} lies outside [0, 1]")
        g = math.gcd(self.p, self.q)
        object.__setattr__(self, "p", self.p // g)
        object.__setattr__(self, "q", self.q // g)

    @classmethod
    def from_fraction(cls, x) -> DensityTarget:
        x = Fraction(x)
        return cls(x.numerator, x.denominator)

    @property
    def fraction(self) -> Fraction:
        return Fraction(self.p, self.q)

    def __float__(self) -> float:
        return self.p / self.q

    def __str__(self) -> str:
        return f"{self.p}/{self.q}"


_FRACTION_RE = re.compile(r"^\s*([+-]?\d+)\s*/\s*(\d+)\s*$")
_DECIMAL_RE = re.compile(r"^\s*[+-]?\d+(\.\d+)?\s*$")


def parse_density(text: str) -> DensityTarget:
    """Parse ``"p/q"`` or a finite decimal such as ``"0.55"`` exactly.

    >>> parse_density("0.55")
    DensityTarget(p=11, q=20)
    """
    m = _FRACTION_RE.match(text)
    if m:
        p, q = int(m.group(1)), int(m.group(2))
        if q == 0:
            raise ValueError(f"zero denominator in {text!r}")
        value = Fraction(p, q)
    elif _DECIMAL_RE.match(text):
        value = Fraction(Decimal(text.strip()))
    else:
        raise ValueError(f"malformed density {text!r}; expected 'p/q' or a decimal")
    if not 0 <= value <= 1:
        raise ValueError(f"density {text!r} lies outside [0, 1]")
    return DensityTarget.from_fraction(value)


def _isqrt_many(x: np.ndarray) -> np.ndarray:
    """Exact floor square root of a nonnegative int64 array below 2**62."""
    r = np.floor(np.sqrt(x.astype(np.float64))).astype(np.int64)
    # float sqrt is off by at most one or two here; settle it with integers
    for _ in range(4):
        too_big = r * r > x
        if not too_big.any():
            break
        r[too_big] -= 1
    for _ in range(4):
        too_small = (r + 1) * (r + 1) <= x
        if not too_small.any():
            break
        r[too_small] += 1
    return r


@dataclass(frozen=True)
class IrrationalNumber:
    """The quadratic irrational ``(u + v*sqrt(d)) / w`` with ``d`` not a square."""

    u: int
    v: int
    w: int
    d: int

    def __post_init__(self):
        if self.v == 0:
            raise ValueError("v must be nonzero")
        if self.w <= 0:
            raise ValueError("w must be positive")
        if self.d <= 0:
            raise ValueError("d must be positive")
        r = math.isqrt(self.d)
        if r * r == self.d:
            raise ValueError(f"d={self.d} is a perfect square; value would be rational")

    @classmethod
    def sqrt(cls, d: int) -> IrrationalNumber:
        return cls(0, 1, 1, d)

    def reciprocal(self) -> IrrationalNumber:
        # w / (u + v√d) = w(u - v√d) / (u² - v²d); denominator is nonzero as d is no square
        den = self.u * self.u - self.v * self.v * self.d
        u, v = self.w * self.u, -self.w * self.v
        if den < 0:
            u, v, den = -u, -v, -den
        g = math.gcd(math.gcd(u, v), den)
        return IrrationalNumber(u // g, v // g, den // g, self.d)

    def to_decimal(self, digits: int = 50) -> Decimal:
        with localcontext() as ctx:
            ctx.prec = digits + 10
            return (self.u + self.v * Decimal(self.d).sqrt()) / self.w

    def __float__(self) -> float:
        return float(self.to_decimal(30))

    def __str__(self) -> str:
        if (self.u, self.v, self.w) == (0, 1, 1):
            return f"sqrt({self.d})"
        return f"({self.u}{self.v:+}*sqrt({self.d}))/{self.w}"

    def sign_vs_rational(self, n: int, x) -> int:
        """Sign of ``n*theta - x`` for integer ``n`` and rational ``x``.

        Clears denominators and compares ``L*sqrt(d)`` against an integer
        ``R`` by squaring, after sign analysis.  Never returns 0 for ``n != 0``.
        """
        x = Fraction(x)
        P, Q = x.numerator, x.denominator
        L = Q * n * self.v
        R = self.w * P - Q * n * self.u
        if L == 0:
            return (R < 0) - (R > 0)
        if L > 0:
            if R <= 0:
                return GREATER
            return GREATER if L * L * self.d > R * R else LESS
        if R >= 0:
            return LESS
        return LESS if L * L * self.d > R * R else GREATER

    def floor_mul(self, n: int) -> int:
        """``floor(n*theta)`` via the integer square root of ``(n*v)**2 * d``."""
        if n == 0:
            return 0
        s = math.isqrt(n * n * self.v * self.v * self.d)
        # |n v|√d lies strictly inside (s, s+1)
        numer = n * self.u + (s if n * self.v > 0 else -s - 1)
        return numer // self.w

    def frac_compare(self, n: int, t) -> int:
        """Return ``LESS`` (-1) if ``{n*theta} < t`` else ``GREATER`` (1)."""
        if n == 0:
            raise ValueError("{0*theta} = 0 is rational; comparison may tie")
        return self.sign_vs_rational(n, self.floor_mul(n) + Fraction(t))

    # -- vectorized paths ------------------------------------------------

    def less_than_many(self, ns: np.ndarray, num: np.ndarray, den: int) -> np.ndarray:
        """Elementwise ``ns*theta < num/den`` for int arrays ``ns``, ``num``."""
        ns = np.asarray(ns, dtype=np.int64)
        num = np.broadcast_to(np.asarray(num, dtype=np.int64), ns.shape)
        if ns.size == 0:
            return np.zeros(0, dtype=bool)
        nmax = int(np.abs(ns).max())
        lmax = den * nmax * abs(self.v)
        rmax = self.w * int(np.abs(num).max()) + den * nmax * abs(self.u)
        if lmax * lmax * self.d >= _INT64_SAFE or rmax >= _INT64_SAFE:
            return np.array(
                [self.sign_vs_rational(int(n), Fraction(int(p), den)) < 0 for n, p in zip(ns, num)],
                dtype=bool,
            )
        L = den * ns * self.v
        R = self.w * num - den * ns * self.u
        s = _isqrt_many(L * L * self.d)
        # L>0: L√d ∈ (s, s+1) so L√d < R iff s < R.  L<0: L√d ∈ (-s-1, -s) so iff R >= -s.
        out = np.where(L > 0, s < R, R >= -s)
        zero = L == 0
        if zero.any():
            out[zero] = 0 < R[zero]
        return out

    def floor_mul_many(self, ns: np.ndarray) -> np.ndarray:
        ns = np.asarray(ns, dtype=np.int64)
        if ns.size == 0:
            return np.zeros(0, dtype=np.int64)
        nmax = int(np.abs(ns).max())
        sq = nmax * nmax * self.v * self.v * self.d
        if sq >= _INT64_SAFE or nmax * abs(self.u) >= _INT64_SAFE:
            return np.array([self.floor_mul(int(n)) for n in ns], dtype=object).astype(np.int64)
        s = _isqrt_many(ns * ns * (self.v * self.v * self.d))
        numer = ns * self.u + np.where(ns * self.v > 0, s, -s - 1)
        out = numer // self.w
        out[ns == 0] = 0
        return out

    def frac_less_many(self, ns: np.ndarray, t) -> np.ndarray:
        t = Fraction(t)
        ns = np.asarray(ns, dtype=np.int64)
        floors = self.floor_mul_many(ns)
        return self.less_than_many(ns, floors * t.denominator + t.numerator, t.denominator)


@dataclass(frozen=True)
class FixedPointReal:
    """``mantissa * 2**-frac_bits``, assumed within ``2**-frac_bits`` of the true value."""

    mantissa: int
    frac_bits: int

    def __post_init__(self):
        if self.frac_bits <= 0:
            raise ValueError("frac_bits must be positive")

    @classmethod
    def from_decimal(cls, text: str, frac_bits: int) -> FixedPointReal:
        value = Fraction(Decimal(text.strip())) * (1 << frac_bits)
        return cls(round(value), frac_bits)

    def _check_same(self, other: FixedPointReal) -> None:
        if not isinstance(other, FixedPointReal):
            raise TypeError(f"cannot combine FixedPointReal with {type(other).__name__}")
        if other.frac_bits != self.frac_bits:
            raise ValueError(
                f"mixed precision: {self.frac_bits} vs {other.frac_bits} fractional bits"
            )

    def __add__(self, other):
        self._check_same(other)
        return FixedPointReal(self.mantissa + other.mantissa, self.frac_bits)

    def __sub__(self, other):
        self._check_same(other)
        return FixedPointReal(self.mantissa - other.mantissa, self.frac_bits)

    def __float__(self) -> float:
        return self.mantissa / (1 << self.frac_bits)

    def __str__(self) -> str:
        return f"fixed({float(self)!r}, F={self.frac_bits})"

    def reciprocal(self) -> FixedPointReal:
        if self.mantissa == 0:
            raise ZeroDivisionError("reciprocal of zero")
        return FixedPointReal((1 << (2 * self.frac_bits)) // self.mantissa, self.frac_bits)

    def _split(self, n: int) -> tuple[int, int]:
        x = n * self.mantissa
        return x >> self.frac_bits, x & ((1 << self.frac_bits) - 1)

    def floor_mul(self, n: int) -> int:
        fl, rem = self._split(n)
        err = abs(n)
        if rem < err or rem + err >= (1 << self.frac_bits):
            raise PrecisionError(
                f"floor({n}*theta) undecidable at {self.frac_bits} fractional bits"
            )
        return fl

    def sign_vs_rational(self, n: int, x) -> int:
        x = Fraction(x)
        scale = 1 << self.frac_bits
        # n*theta lies in [n*mant - |n|, n*mant + |n|] / 2**F
        lo = (n * self.mantissa - abs(n)) * x.denominator
        hi = (n * self.mantissa + abs(n)) * x.denominator
        target = x.numerator * scale
        if hi < target:
            return LESS
        if lo > target:
            return GREATER
        raise PrecisionError(f"{n}*theta too close to {x} at {self.frac_bits} fractional bits")

    def frac_compare(self, n: int, t) -> int:
        return self.sign_vs_rational(n, self.floor_mul(n) + Fraction(t))

    def less_than_many(self, ns, num, den: int) -> np.ndarray:
        ns = np.asarray(ns)
        num = np.broadcast_to(np.asarray(num), ns.shape)
        return np.array(
            [self.sign_vs_rational(int(n), Fraction(int(p), den)) < 0 for n, p in zip(ns, num)],
            dtype=bool,
        )

    def floor_mul_many(self, ns) -> np.ndarray:
        return np.array([self.floor_mul(int(n)) for n in np.asarray(ns)], dtype=np.int64)

    def frac_less_many(self, ns, t) -> np.ndarray:
        return np.array([self.frac_compare(int(n), t) < 0 for n in np.asarray(ns)], dtype=bool)


Real = Union[IrrationalNumber, FixedPointReal, int, Fraction]


def floor_mul(theta: Real, n: int) -> int:
    """``floor(n*theta)``, exact for quadratic and rational ``theta``."""
    if isinstance(theta, (IrrationalNumber, FixedPointReal)):
        return theta.floor_mul(n)
    if isinstance(theta, Rational):
        return math.floor(n * Fraction(theta))
    raise TypeError(f"unsupported multiplier {type(theta).__name__}")


def floor_mul_many(theta: Real, ns) -> np.ndarray:
    if isinstance(theta, (IrrationalNumber, FixedPointReal)):
        return theta.floor_mul_many(ns)
    t = Fraction(theta)
    ns = np.asarray(ns, dtype=np.int64)
    return (ns * t.numerator) // t.denominator


def frac_compare(theta: Union[IrrationalNumber, FixedPointReal], n: int, t) -> int:
    """Compare ``{n*theta}`` with rational ``t``: -1 if less, 1 if greater.

    Equality cannot occur for an irrational ``theta`` and ``n >= 1``.
    """
    return theta.frac_compare(n, t)


def frac_less_many(theta: Union[IrrationalNumber, FixedPointReal], ns, t) -> np.ndarray:
    return theta.frac_less_many(ns, t)


def less_than_many(theta: Union[IrrationalNumber, FixedPointReal], ns, num, den: int) -> np.ndarray:
    return theta.less_than_many(ns, num, den)


def sign_vs_rational(theta: Union[IrrationalNumber, FixedPointReal], n: int, x) -> int:
    return theta.sign_vs_rational(n, x)


def parse_theta(text: str) -> Union[IrrationalNumber, FixedPointReal]:
    """Parse ``sqrt:d``, ``quad:u,v,w,d`` or ``fixed:decimal,F``."""
    kind, _, body = text.partition(":")
    try:
        if kind == "sqrt":
            return IrrationalNumber.sqrt(int(body))
        if kind == "quad":
            u, v, w, d = (int(part) for part in body.split(","))
            return IrrationalNumber(u, v, w, d)
        if kind == "fixed":
            digits, bits = body.split(",")
            if not _DECIMAL_RE.match(digits):
                raise ValueError(f"malformed decimal {digits!r}")
            return FixedPointReal.from_decimal(digits, int(bits))
    except ValueError as exc:
        raise ValueError(f"bad theta {text!r}: {exc}") from None
    raise ValueError(f"bad theta {text!r}; expected sqrt:d, quad:u,v,w,d or fixed:decimal,F")
