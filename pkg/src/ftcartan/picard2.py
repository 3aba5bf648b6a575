"""Exact numeric core for rank-2 intersection data.

All quantities live in exact rationals.  Complex numbers appear only as
(real part, squared imaginary part) pairs, which is enough to decide whether
an integer power is real.  The admissible dimension offsets are derived, not
hardcoded: an integer c equals 4cos^2(pi/k) exactly when the integer
recurrence u_0 = 2, u_1 = c - 2, u_{t+1} = u_1 u_t - u_{t-1} first returns
to 2 at step k (the recurrence tracks 2cos(2 pi t / k), and a rational value
of that number is fixed by every conjugate angle).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb

from .cartan import ConsistencyError


class InadmissibleDegree(ValueError):
    def __init__(self, m: int):
        super().__init__(f"degree m={m} admits no integer 4cos^2(pi/(m+1)) in 1..3")
        self.m = m


class ZeroNu(ValueError):
    pass


@dataclass(frozen=True)
class Rank2Data:
    """Intersection numbers of a rank-2 candidate of dimension m + 1.

    nu1, nu2 are the canonical degrees against the opposite extremal curves;
    mu1, mu2 the corresponding pivot-bundle degrees.
    """

    nu1: int
    nu2: int
    mu1: int
    mu2: int
    m: int = 1

    def __post_init__(self):
        if self.nu1 < 0 or self.nu2 < 0:
            raise ValueError("nu values must be nonnegative")
        if self.mu1 < 1 or self.mu2 < 1:
            raise ValueError("mu values must be positive")
        if self.m < 1:
            raise ValueError("m must be positive")


@dataclass(frozen=True)
class ExactComplex:
    """z = re + i*sqrt(im_sq), with im_sq >= 0 rational."""

    re: Fraction
    im_sq: Fraction

    def __post_init__(self):
        object.__setattr__(self, "re", Fraction(self.re))
        object.__setattr__(self, "im_sq", Fraction(self.im_sq))
        if self.im_sq < 0:
            raise ValueError("im_sq must be nonnegative")


@dataclass(frozen=True)
class Rank2Classification:
    type_name: str | None
    reason: str | None


def basechange_matrix(d: Rank2Data) -> tuple[tuple[Fraction, Fraction], tuple[Fraction, Fraction]]:
    """Matrix expressing the first fibration's (-K, H) pair in terms of the
    second one's."""
    return (
        (Fraction(-d.nu1, 2), Fraction(4 - d.nu1 * d.nu2, 2 * d.mu2)),
        (Fraction(d.mu1, 2), Fraction(d.mu1 * d.nu2, 2 * d.mu2)),
    )


def im_power_vanishes(z: ExactComplex, p: int) -> bool:
    """Exact decision of Im(z^p) = 0.

    Writing z = a + ib, Im(z^p) = b * Q(a, b^2) with Q from the binomial
    expansion; only Q matters once b > 0, and b = 0 is trivially real.
    """
    if p < 1:
        raise ValueError("the exponent must be positive")
    if z.im_sq == 0:
        return True
    q = Fraction(0)
    for odd in range(1, p + 1, 2):
        sign = -1 if (odd // 2) % 2 else 1
        q += sign * comb(p, odd) * z.re ** (p - odd) * z.im_sq ** (odd // 2)
    return q == 0


def _two_cos_two_pi_over(k: int, y: int) -> bool:
    """Whether 2cos(2*pi/k) equals the integer y, by the return time of the
    Chebyshev-style recurrence."""
    if k < 1:
        raise ValueError("k must be positive")
    prev, cur = 2, y
    for step in range(2, k + 1):
        if cur == 2:  # returned too early: y is 2cos of a larger angle's multiple
            return False
        prev, cur = cur, y * cur - prev
    return cur == 2 if k > 1 else y == 2


def cos_square_integer(m: int) -> int:
    """The integer c in {1,2,3} with c = 4cos^2(pi/(m+1)), when it exists."""
    for c in (1, 2, 3):
        if _two_cos_two_pi_over(m + 1, c - 2):
            return c
    raise InadmissibleDegree(m)


def admissible_degrees(scan_bound: int = 50) -> frozenset[int]:
    """All m up to the bound for which 4cos^2(pi/(m+1)) is an integer in
    {1,2,3}; the answer is stable once the bound passes 5."""
    out = set()
    for m in range(1, scan_bound + 1):
        try:
            cos_square_integer(m)
        except InadmissibleDegree:
            continue
        out.add(m)
    return frozenset(out)


def classify_rank2(nu1: int, nu2: int) -> Rank2Classification:
    """Type of a rank-2 candidate from the product of its nu values.

    Products 0, 1, 2, 3 give A1xA1, A2, B2, G2; anything else is not
    realizable, nor is a product in 1..3 without a unit factor.
    """
    if nu1 < 0 or nu2 < 0:
        raise ValueError("nu values must be nonnegative")
    product = nu1 * nu2
    if product == 0:
        return Rank2Classification("A1xA1", None)
    if product not in (1, 2, 3):
        return Rank2Classification(None, f"nu1*nu2 = {product} is not 0, 1, 2 or 3")
    if 1 not in (nu1, nu2):
        return Rank2Classification(None, f"nu1*nu2 = {product} but neither factor is 1")
    return Rank2Classification({1: "A2", 2: "B2", 3: "G2"}[product], None)


def verify_cos_identity(m: int, d: Rank2Data) -> bool:
    """Exact check of (nu1*nu2/4)^(m-1) = (c/4)^(m-1) for the integer
    c = 4cos^2(pi/(m+1)); equivalent to nu1*nu2 = c."""
    c = cos_square_integer(m)
    return Fraction(d.nu1 * d.nu2, 4) ** (m - 1) == Fraction(c, 4) ** (m - 1)


def discriminant_for(m: int, nu: int, mu: int) -> Fraction:
    """The unique negative rational discriminant compatible with the degree.

    The argument condition pins the squared imaginary part to
    (nu/mu)^2 * (4/c - 1); the result is cross-checked to make the (m+1)-st
    power real.
    """
    if mu < 1:
        raise ValueError("mu must be positive")
    if nu == 0:
        raise ZeroNu("nu = 0 forces no negative discriminant")
    if nu < 0:
        raise ValueError("nu must be nonnegative")
    c = cos_square_integer(m)
    a = Fraction(nu, mu)
    delta = -(a * a * (Fraction(4, c) - 1))
    if not im_power_vanishes(ExactComplex(a, -delta), m + 1):
        raise ConsistencyError(f"discriminant {delta} fails the power-reality check")
    return delta
