"""
Binary codec for integer genes and the crossover/mutation operators.

Integer genes are written as minimal-length big-endian bit strings
(``"0"`` for zero). Crossover joins the left half of one parent with the
right half of the other, where the left half of an ``L``-bit string is its
first ``L // 2`` bits. Mutation flips exactly one eligible bit.
"""

from __future__ import annotations

from typing import Optional, Sequence

import numpy as np

from .core import InvalidInputError

__all__ = [
    "NoEligibleBitError",
    "ZERO_TO_ONE",
    "ONE_TO_ZERO",
    "ANY_FLIP",
    "encode",
    "decode",
    "split_halves",
    "crossover_binary",
    "eligible_positions",
    "mutate_binary",
    "crossover_real",
    "mutate_real",
]

ZERO_TO_ONE = "zero_to_one"
ONE_TO_ZERO = "one_to_zero"
ANY_FLIP = "any"
_DIRECTIONS = (ZERO_TO_ONE, ONE_TO_ZERO, ANY_FLIP)

# resolution of the fixed-point fallback used by 1-D real crossover
_FIXED_POINT_BITS = 32


class NoEligibleBitError(ValueError):
    """No bit position can be flipped in the requested direction."""


def encode(n: int) -> str:
    """
    Minimal-length binary representation of a non-negative integer.

    >>> encode(5201)
    '1010001010001'
    """
    n = int(n)
    if n < 0:
        raise InvalidInputError(f"cannot encode negative value {n}")
    return format(n, "b")


def decode(bits: str) -> int:
    """Inverse of :func:`encode`. Leading zeros are accepted."""
    if not bits:
        raise InvalidInputError("cannot decode an empty bit string")
    if set(bits) - {"0", "1"}:
        raise InvalidInputError(f"not a bit string: {bits!r}")
    return int(bits, 2)


def split_halves(bits: str) -> tuple[str, str]:
    """Split into the first ``floor(L/2)`` and last ``ceil(L/2)`` bits."""
    k = len(bits) // 2
    return bits[:k], bits[k:]


def crossover_binary(p1: str, p2: str) -> tuple[str, str]:
    """
    Half-swap crossover.

    Returns ``(left(p1) + right(p2), left(p2) + right(p1))``; each half is
    cut from its own parent, so parents may differ in length.
    """
    if not p1 or not p2:
        raise InvalidInputError("crossover parents must be non-empty")
    l1, r1 = split_halves(p1)
    l2, r2 = split_halves(p2)
    return l1 + r2, l2 + r1


def eligible_positions(bits: str, direction: str) -> list[int]:
    if direction not in _DIRECTIONS:
        raise InvalidInputError(f"unknown mutation direction {direction!r}")
    if direction == ZERO_TO_ONE:
        return [i for i, b in enumerate(bits) if b == "0"]
    if direction == ONE_TO_ZERO:
        return [i for i, b in enumerate(bits) if b == "1"]
    return list(range(len(bits)))


def mutate_binary(
    bits: str,
    direction: str,
    rng: Optional[np.random.Generator] = None,
    position: Optional[int] = None,
) -> tuple[str, int]:
    """
    Flip one bit chosen uniformly among the eligible positions.

    Parameters
    ----------
    bits : str
        Bit string, most significant bit first.
    direction : str
        ``ZERO_TO_ONE``, ``ONE_TO_ZERO`` or ``ANY_FLIP``.
    rng : numpy.random.Generator, optional
        Stream used to pick the position. Not needed when ``position`` is
        given.
    position : int, optional
        Scripted position (index 0 is the most significant bit). Must be
        eligible.

    Returns
    -------
    mutated : str
    position : int
        Index of the flipped bit.

    Raises
    ------
    NoEligibleBitError
        If no bit can be flipped in ``direction``.
    """
    if not bits:
        raise InvalidInputError("cannot mutate an empty bit string")
    eligible = eligible_positions(bits, direction)
    if not eligible:
        raise NoEligibleBitError(f"{bits} has no bit eligible for {direction}")
    if position is None:
        if rng is None:
            raise InvalidInputError("either rng or position is required")
        position = eligible[int(rng.integers(len(eligible)))]
    elif position not in eligible:
        raise InvalidInputError(f"bit {position} of {bits} is not eligible for {direction}")
    flipped = "1" if bits[position] == "0" else "0"
    return bits[:position] + flipped + bits[position + 1:], position


def _to_fixed(x: float, lo: float, hi: float) -> int:
    if hi == lo:
        return 0
    scale = (1 << _FIXED_POINT_BITS) - 1
    return int(round((x - lo) / (hi - lo) * scale))


def _from_fixed(q: int, lo: float, hi: float) -> float:
    scale = (1 << _FIXED_POINT_BITS) - 1
    return min(max(lo + (hi - lo) * q / scale, lo), hi)


def crossover_real(
    p1: Sequence[float],
    p2: Sequence[float],
    rng: Optional[np.random.Generator] = None,
    cut: Optional[int] = None,
    bounds: Optional[Sequence] = None,
) -> tuple[tuple, tuple]:
    """
    Single cut-point crossover for real vectors.

    The cut ``k`` is drawn uniformly from ``1..d-1`` unless given; the
    children are ``p1[:k] + p2[k:]`` and ``p2[:k] + p1[k:]``. One-dimensional
    vectors have no cut point, so they are mapped to 32-bit fixed point
    inside ``bounds`` and recombined with :func:`crossover_binary`.
    """
    p1, p2 = tuple(p1), tuple(p2)
    if len(p1) != len(p2):
        raise InvalidInputError(f"parent dimensions differ: {len(p1)} vs {len(p2)}")
    d = len(p1)
    if d == 0:
        raise InvalidInputError("parents must be non-empty")
    if d == 1:
        if bounds is None:
            raise InvalidInputError("1-D crossover needs bounds for the fixed-point encoding")
        lo, hi = bounds[0]
        c1, c2 = crossover_binary(encode(_to_fixed(p1[0], lo, hi)), encode(_to_fixed(p2[0], lo, hi)))
        return (_from_fixed(decode(c1), lo, hi),), (_from_fixed(decode(c2), lo, hi),)
    if cut is None:
        if rng is None:
            raise InvalidInputError("either rng or cut is required")
        cut = int(rng.integers(1, d))
    elif not 1 <= cut <= d - 1:
        raise InvalidInputError(f"cut point {cut} outside 1..{d - 1}")
    return p1[:cut] + p2[cut:], p2[:cut] + p1[cut:]


def mutate_real(
    v: Sequence[float],
    sigma: float,
    rng: np.random.Generator,
    bounds: Sequence,
) -> tuple:
    """
    Perturb one uniformly chosen coordinate by ``N(0, sigma * width)``.

    The coordinate is clamped back into its bounds afterwards; the others
    are left untouched.
    """
    v = list(v)
    i = int(rng.integers(len(v)))
    lo, hi = bounds[i]
    step = rng.normal(0.0, 1.0) * sigma * (hi - lo)
    v[i] = float(min(max(v[i] + step, lo), hi))
    return tuple(v)
