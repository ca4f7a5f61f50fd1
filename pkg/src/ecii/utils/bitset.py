"""
Individual sets as Python ints: bit i is set when individual i is a member.

Set algebra is plain ``&``, ``|`` and ``& ~``; the helpers below cover the rest.
"""

from typing import Generic, Hashable, Iterable, Iterator, Sequence, TypeVar

T = TypeVar("T", bound=Hashable)


def from_indices(indices: Iterable[int]) -> int:
    mask = 0
    for i in indices:
        mask |= 1 << i
    return mask


def iter_bits(mask: int) -> Iterator[int]:
    """Indices of the set bits, lowest first."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def popcount(mask: int) -> int:
    return mask.bit_count()


def is_subset(a: int, b: int) -> bool:
    return a & ~b == 0


class Indexer(Generic[T]):
    """Stable bijection between items and bit positions."""

    def __init__(self, items: Sequence[T]):
        self.items: tuple[T, ...] = tuple(items)
        self.positions: dict[T, int] = {item: i for i, item in enumerate(self.items)}
        if len(self.positions) != len(self.items):
            raise ValueError("indexed items must be distinct")

    def __len__(self) -> int:
        return len(self.items)

    def __contains__(self, item: object) -> bool:
        return item in self.positions

    def index(self, item: T) -> int:
        return self.positions[item]

    def mask(self, items: Iterable[T]) -> int:
        positions = self.positions
        return from_indices(positions[item] for item in items if item in positions)

    def members(self, mask: int) -> list[T]:
        return [self.items[i] for i in iter_bits(mask)]

    @property
    def full(self) -> int:
        return (1 << len(self.items)) - 1
