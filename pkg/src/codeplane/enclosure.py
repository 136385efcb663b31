"""Certified two-sided logarithm enclosures over exact rationals.

``log2_enclosure`` reduces its argument to [1, 2) and extracts binary digits
of the logarithm by repeated squaring in fixed-point arithmetic, keeping an
outward-rounded [lower, upper] pair of integer tracks so the returned
interval is a guaranteed enclosure. When the two tracks disagree about a
digit (the interval straddles 2), the computation retries at a larger
working scale; since log2 of a non-dyadic rational is irrational, the
straddle always resolves. Precision is requested in bits of enclosure
width. Endpoints are exact rationals; every operation downstream of the
digit extraction is exact Fraction arithmetic.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import ContractViolationError, InternalContractError
from .geometry import RatInterval


def _is_power_of_two(n: int) -> bool:
    return n > 0 and (n & (n - 1)) == 0


def pow2(k: int) -> Fraction:
    """2**k as an exact rational, k may be negative."""
    if k >= 0:
        return Fraction(1 << k)
    return Fraction(1, 1 << (-k))


def log2_enclosure(x: Fraction, precision: int) -> RatInterval:
    """Enclosure of log2(x) with width <= 2**-precision.

    Exact (zero-width) for powers of two. ``x`` must be positive.
    """
    x = Fraction(x)
    if x <= 0:
        raise ContractViolationError("log2 requires a positive argument")
    if precision < 1:
        raise ContractViolationError("precision must be a positive bit count")

    p, q = x.numerator, x.denominator
    if _is_power_of_two(p) and _is_power_of_two(q):
        exact = p.bit_length() - q.bit_length()
        return RatInterval.point(Fraction(exact))

    # argument reduction: x = 2**t * y with y in [1, 2)
    t = p.bit_length() - q.bit_length()
    while x < pow2(t):
        t -= 1
    while x >= pow2(t + 1):
        t += 1
    y = x / pow2(t)

    digits = precision + 2
    scale = 2 * digits + 16
    for _attempt in range(64):
        result = _extract_digits(y, digits, scale, precision)
        if result is not None:
            num, nbits = result
            lo = Fraction(t) + Fraction(num, 1 << nbits)
            hi = Fraction(t) + Fraction(num + 1, 1 << nbits)
            return RatInterval(lo, hi)
        scale *= 2
    raise InternalContractError("log2 digit extraction failed to separate from a dyadic")


def _extract_digits(y: Fraction, digits: int, scale: int, precision: int):
    """Run the two-track extraction; return (digit_numerator, digit_count) or None.

    Invariant: the true residual value always lies in [y_lo, y_hi]/2**scale,
    and while both tracks agree on digit decisions the true residual stays
    in [1, 2), so after J agreed digits D the logarithm of the reduced
    argument lies in [D/2**J, (D+1)/2**J].
    """
    one = 1 << scale
    two = one << 1
    num, den = y.numerator, y.denominator
    shifted = num << scale
    y_lo = shifted // den
    y_hi = -((-shifted) // den)

    acc = 0
    for j in range(1, digits + 1):
        y_lo = (y_lo * y_lo) >> scale
        y_hi = -((-(y_hi * y_hi)) >> scale)
        if y_lo >= two and y_hi >= two:
            acc = (acc << 1) + 1
            y_lo >>= 1
            y_hi = -((-y_hi) >> 1)
        elif y_hi < two:
            acc <<= 1
        else:
            # tracks straddle 2: residual known only within [1, 4), which
            # costs two bits; accept if the target width is already met
            done = j - 1
            if done >= 1 and Fraction(4, 1 << done) <= pow2(-precision):
                return (acc << 2, done + 2)
            return None
    return (acc, digits)


def log_enclosure(x: Fraction, base: int, precision: int) -> RatInterval:
    """Enclosure of log_base(x) with width <= 2**-precision, base >= 2.

    Exact (zero width) when x is an integer power of the base."""
    if base < 2:
        raise ContractViolationError("logarithm base must be >= 2")
    x = Fraction(x)
    if x <= 0:
        raise ContractViolationError("logarithm requires a positive argument")
    exact = _integer_power_of(x, base)
    if exact is not None:
        return RatInterval.point(Fraction(exact))
    target = pow2(-precision)
    bits = precision + 4
    for _ in range(64):
        num = log2_enclosure(x, bits)
        den = log2_enclosure(Fraction(base), bits)
        result = num.div_positive(den)
        if result.width <= target:
            return result
        bits += max(8, bits // 2)
    raise InternalContractError("log enclosure failed to reach requested width")


def _integer_power_of(x: Fraction, base: int):
    """k with x == base**k, or None."""
    if x == 1:
        return 0
    value = x if x > 1 else 1 / x
    if value.denominator != 1:
        return None
    k = 0
    n = value.numerator
    while n % base == 0:
        n //= base
        k += 1
    if n != 1:
        return None
    return k if x > 1 else -k
