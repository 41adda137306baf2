"""Set partitions of mode indices.

Partitions into exactly ``k`` unlabeled nonempty blocks are generated as
restricted growth strings in lexicographic order, which lists blocks by their
smallest element and gives every partition one canonical form.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from math import comb, factorial
from typing import Iterator, Sequence

from .errors import InvalidArgumentError

__all__ = [
    "ModePartition",
    "enumerate_k_partitions",
    "joint_partitions",
    "stirling2",
]


@dataclass(frozen=True)
class ModePartition:
    """Disjoint nonempty blocks covering the modes ``0..N-1``.

    Blocks are stored sorted internally and ordered by smallest element, so
    two equal partitions always compare equal.
    """

    blocks: tuple

    def __post_init__(self):
        blocks = tuple(sorted((tuple(sorted(int(m) for m in b)) for b in self.blocks), key=lambda b: b[:1]))
        if not blocks:
            raise InvalidArgumentError("a partition needs at least one block")
        seen = []
        for b in blocks:
            if not b:
                raise InvalidArgumentError("partition blocks must be nonempty")
            if len(set(b)) != len(b):
                raise InvalidArgumentError(f"block {b} repeats a mode")
            seen.extend(b)
        if sorted(seen) != list(range(len(seen))):
            raise InvalidArgumentError(f"blocks {blocks} are not a partition of 0..{len(seen) - 1}")
        object.__setattr__(self, "blocks", blocks)

    @property
    def n_modes(self) -> int:
        return sum(len(b) for b in self.blocks)

    @property
    def k(self) -> int:
        return len(self.blocks)

    def complement(self, j: int) -> tuple:
        """Modes outside block ``j``."""
        block = set(self.blocks[j])
        return tuple(m for m in range(self.n_modes) if m not in block)

    @classmethod
    def parse(cls, text: str) -> "ModePartition":
        """Parse the text form ``"0,2|1|3"``."""
        try:
            blocks = [tuple(int(tok) for tok in part.split(",")) for part in text.strip().split("|")]
        except ValueError:
            raise InvalidArgumentError(f"cannot parse partition {text!r}") from None
        return cls(tuple(blocks))

    @classmethod
    def from_labels(cls, labels: Sequence[int]) -> "ModePartition":
        """Partition whose block of mode ``i`` is labelled ``labels[i]``."""
        groups: dict = {}
        for mode, lab in enumerate(labels):
            groups.setdefault(lab, []).append(mode)
        return cls(tuple(groups.values()))

    def __str__(self) -> str:
        return "|".join(",".join(map(str, b)) for b in self.blocks)


def stirling2(n: int, k: int) -> int:
    """Stirling number of the second kind from the alternating sum.

    ``S(n, k) = (1/k!) sum_j (-1)^j C(k, j) (k - j)^n`` evaluated in exact
    integer arithmetic.
    """
    if int(n) != n or n < 1:
        raise InvalidArgumentError(f"n must be a positive integer, got {n!r}")
    if int(k) != k or not 0 <= k <= n:
        raise InvalidArgumentError(f"k must satisfy 0 <= k <= n, got k={k!r}, n={n}")
    n, k = int(n), int(k)
    total = sum((-1) ** j * comb(k, j) * (k - j) ** n for j in range(k + 1))
    return total // factorial(k)


def _growth_strings(n: int, k: int) -> Iterator[list]:
    labels = [0] * n

    def fill(i: int, blocks_used: int):
        if i == n:
            if blocks_used == k:
                yield labels
            return
        # every still-unopened block needs at least one later position
        remaining = n - i
        top = min(blocks_used, k - 1)
        for lab in range(top + 1):
            opened = blocks_used + (lab == blocks_used)
            if k - opened > remaining - 1:
                continue
            labels[i] = lab
            yield from fill(i + 1, opened)

    labels[0] = 0
    yield from fill(1, 1)


def enumerate_k_partitions(n_modes: int, k: int) -> Iterator[ModePartition]:
    """Yield every partition of ``0..n_modes-1`` into exactly ``k`` blocks.

    Order is lexicographic in the restricted growth string, so for
    ``(3, 2)`` the stream is ``0,1|2``, ``0,2|1``, ``0|1,2``. The stream has
    ``stirling2(n_modes, k)`` items.
    """
    if int(n_modes) != n_modes or n_modes < 1:
        raise InvalidArgumentError(f"n_modes must be a positive integer, got {n_modes!r}")
    if int(k) != k or not 1 <= k <= n_modes:
        raise InvalidArgumentError(f"k must lie in [1, {n_modes}], got {k!r}")
    for labels in _growth_strings(int(n_modes), int(k)):
        yield ModePartition.from_labels(labels)


def joint_partitions(first: ModePartition, second: ModePartition) -> Iterator[ModePartition]:
    """Partitions of two systems side by side that keep each party's blocks together.

    ``second``'s modes are shifted by ``first.n_modes``. Block ``i`` of the
    result is block ``i`` of ``first`` joined with block ``sigma(i)`` of
    ``second``, for every bijection ``sigma``. Both partitions need the same
    number of blocks.
    """
    if first.k != second.k:
        raise InvalidArgumentError(f"cannot pair a {first.k}-partition with a {second.k}-partition")
    shift = first.n_modes
    seen = set()
    for perm in itertools.permutations(range(second.k)):
        joint = ModePartition(
            tuple(a + tuple(m + shift for m in second.blocks[j]) for a, j in zip(first.blocks, perm))
        )
        if joint not in seen:
            seen.add(joint)
            yield joint
