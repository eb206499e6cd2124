"""Pell equation x^2 - D*y^2 = 1 over the integers.

Fundamental solutions come from the continued-fraction expansion of sqrt(D);
naive search is hopeless for many small D because the solutions grow
exponentially.  Only the +1 equation is provided.
"""

from dataclasses import dataclass
from math import gcd, isqrt


class NoSolution(ValueError):
    """x^2 - D*y^2 = 1 has no nontrivial solution (D is a perfect square)."""


class InvalidSolution(ValueError):
    """A claimed Pell solution does not satisfy the equation."""


def is_square(n):
    """True iff n is a perfect square (n >= 0 required)."""
    if n < 0:
        raise ValueError("is_square expects a nonnegative integer")
    return isqrt(n) ** 2 == n


@dataclass(frozen=True)
class PellFundamental:
    """Minimal positive solution of x^2 - D*y^2 = 1."""

    D: int
    x0: int
    y0: int

    def __post_init__(self):
        if self.x0 * self.x0 - self.D * self.y0 * self.y0 != 1:
            raise InvalidSolution("fundamental solution fails the Pell equation")
        if gcd(self.x0, self.y0) != 1:
            raise InvalidSolution("fundamental solution must be primitive")


def fundamental_solution(D):
    """Fundamental solution of x^2 - D*y^2 = 1 for a non-square D >= 2.

    Walks the continued-fraction convergents of sqrt(D) until the first one
    satisfying the equation; that convergent is the minimal positive solution.
    """
    if D < 2:
        raise ValueError("D must be at least 2")
    if is_square(D):
        raise NoSolution(f"{D} is a perfect square")
    a0 = isqrt(D)
    m, d, a = 0, 1, a0
    p_prev, p = 1, a0
    q_prev, q = 0, 1
    while p * p - D * q * q != 1:
        m = d * a - m
        d = (D - m * m) // d
        a = (a0 + m) // d
        p, p_prev = a * p + p_prev, p
        q, q_prev = a * q + q_prev, q
    return PellFundamental(D, p, q)


def next_solution(fund, solution):
    """Step (x, y) -> (x0*x + D*y0*y, x0*y + y0*x) along the solution group."""
    x, y = solution
    if x * x - fund.D * y * y != 1:
        raise InvalidSolution("input does not satisfy the Pell equation")
    return (fund.x0 * x + fund.D * fund.y0 * y, fund.x0 * y + fund.y0 * x)
