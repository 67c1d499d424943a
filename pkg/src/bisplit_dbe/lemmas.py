"""Exact integer checks of the two counting inequalities the line bounds rely on."""

from __future__ import annotations

from dataclasses import dataclass
from math import comb


def _positive(x: int, y: int) -> None:
    if x < 1 or y < 1:
        raise ValueError(f"x and y must be positive integers, got ({x}, {y})")


def ceil_div(a: int, b: int) -> int:
    return (a + b - 1) // b


@dataclass(frozen=True)
class LemmaDomain:
    x_max: int = 100
    y_max: int = 100

    def __post_init__(self) -> None:
        if self.x_max < 1 or self.y_max < 1:
            raise ValueError("domain bounds must be positive")

    def points(self):
        for y in range(1, self.y_max + 1):
            for x in range(1, self.x_max + 1):
                yield x, y


def lemma1_check(x: int, y: int) -> bool:
    """C(x,2) >= x-1, xy >= x+y-1, and xy >= x+y once both are at least 2."""
    _positive(x, y)
    if comb(x, 2) < x - 1 or x * y < x + y - 1:
        return False
    return not (x >= 2 and y >= 2 and x * y < x + y)


def lemma2_holds(x: int, y: int) -> bool:
    """C(y,2) + C(ceil(2x/y), 2) < x + y - 1."""
    _positive(x, y)
    return comb(y, 2) + comb(ceil_div(2 * x, y), 2) < x + y - 1


LEMMA2_SOLUTIONS = frozenset({(1, 2), (2, 2), (3, 3)})


def lemma2_solution_set(dom: LemmaDomain) -> set[tuple[int, int]]:
    return {(x, y) for x, y in dom.points() if lemma2_holds(x, y)}


def trinomial(x: int, y: int) -> int:
    return 4 * x * x - 2 * (y * y + y) * x + (y**4 - 3 * y**3 + 2 * y * y)


def discriminant_factor(y: int) -> int:
    # the trinomial's discriminant is 4 y^2 times this
    return -3 * y * y + 14 * y - 7


def trinomial_implication_check(dom: LemmaDomain) -> bool:
    """Every solution of the ceiling inequality with y >= 2 makes the trinomial
    negative, and every solution has y <= 4 with a nonnegative discriminant factor."""
    for x, y in dom.points():
        if not lemma2_holds(x, y):
            continue
        if y >= 2 and not trinomial(x, y) < 0:
            return False
        if y > 4 or discriminant_factor(y) < 0:
            return False
    return True
