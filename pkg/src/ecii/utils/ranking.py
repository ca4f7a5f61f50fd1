"""
Top-k selection with a lazily computed textual tie-break.

Candidates are ordered by a cheap sort key first; the text (usually a rendered
expression) is only computed for items whose key group reaches the output.
"""

from itertools import groupby
from typing import Callable, Hashable, Iterable, TypeVar

T = TypeVar("T")


def select_top(
    items: Iterable[T],
    k: int,
    key: Callable[[T], tuple],
    text: Callable[[T], str],
) -> list[T]:
    """The first ``k`` items by (key, text)."""
    if k <= 0:
        return []
    out: list[T] = []
    for _, group in groupby(sorted(items, key=key), key=key):
        members = list(group)
        if len(members) > 1:
            members.sort(key=text)
        out.extend(members[: k - len(out)])
        if len(out) >= k:
            break
    return out


def best_per_signature(
    items: Iterable[T],
    signature: Callable[[T], Hashable],
    key: Callable[[T], tuple],
    text: Callable[[T], str],
    keep: int = 1,
) -> list[T]:
    """Up to ``keep`` representatives per signature, chosen by (key, text)."""
    groups: dict[Hashable, list[T]] = {}
    for item in items:
        groups.setdefault(signature(item), []).append(item)
    out: list[T] = []
    for members in groups.values():
        if len(members) > keep:
            members = select_top(members, keep, key, text)
        out.extend(members)
    return out
