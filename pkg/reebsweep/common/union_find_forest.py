"""Union-find forest (union by rank, path compression) over a subset of the point ids of A."""

from dataclasses import dataclass, field
from typing import TYPE_CHECKING, Dict, FrozenSet, Iterable, List, Optional, Tuple

from reebsweep.common.errors import InvariantViolationError

if TYPE_CHECKING:
    from reebsweep.algorithms.sweep import OpCounters

Partition = FrozenSet[FrozenSet[int]]


@dataclass
class UnionFindForest:
    """Rooted forest storing a partition of a subset of A.

    Attributes:
        parent: map from point id to its parent id. Roots are their own parents.
        rank: map from point id to its rank. Only meaningful for roots.
        counters: optional operation tallies, shared by every forest of one sweep.
    """

    parent: Dict[int, int] = field(default_factory=dict)
    rank: Dict[int, int] = field(default_factory=dict)
    counters: Optional["OpCounters"] = field(default=None, repr=False, compare=False)

    def __contains__(self, p: int) -> bool:
        return p in self.parent

    def __len__(self) -> int:
        return len(self.parent)

    def make_set(self, p: int) -> None:
        """Add p as a singleton set."""
        if p in self.parent:
            raise InvariantViolationError(f"make-set({p}) on a forest that already stores {p}.")
        if self.counters is not None:
            self.counters.make_set += 1
        self.parent[p] = p
        self.rank[p] = 0

    def find_set(self, p: int) -> int:
        """Return the root of the tree containing p, compressing the path on the way."""
        if self.counters is not None:
            self.counters.find_set += 1
        root = p
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[p] != root:
            self.parent[p], p = root, self.parent[p]
        return root

    def union(self, p: int, q: int) -> Tuple[int, int]:
        """Merge the sets of p and q, which must be different.

        Returns:
            (survivor, dead): the root of the merged tree and the root that became its child.
        """
        r = self.find_set(p)
        r_prime = self.find_set(q)
        if r == r_prime:
            raise InvariantViolationError(f"union({p}, {q}) of two points in the same set.")
        if self.counters is not None:
            self.counters.union += 1

        if (self.rank[r], -r) < (self.rank[r_prime], -r_prime):
            r, r_prime = r_prime, r
        self.parent[r_prime] = r
        if self.rank[r] == self.rank[r_prime]:
            self.rank[r] += 1
        return r, r_prime

    def points(self) -> List[int]:
        """Stored point ids, ascending."""
        return sorted(self.parent)

    def roots(self) -> List[int]:
        """Roots of all trees, ascending. Does not compress paths."""
        return sorted(p for p, parent in self.parent.items() if p == parent)

    def flatten(self) -> None:
        """Run find-set on every stored point, so every tree has height at most one."""
        for p in list(self.parent):
            self.find_set(p)

    def copy(self) -> "UnionFindForest":
        """Independent copy sharing the same counters."""
        return UnionFindForest(parent=dict(self.parent), rank=dict(self.rank), counters=self.counters)

    def classes(self) -> Dict[int, List[int]]:
        """Map from root to sorted member ids. Does not compress paths or touch the counters."""
        members: Dict[int, List[int]] = {}
        for p in sorted(self.parent):
            root = p
            while self.parent[root] != root:
                root = self.parent[root]
            members.setdefault(root, []).append(p)
        return members

    def partition(self) -> Partition:
        """The stored partition as a set family."""
        return partition_from_classes(self.classes().values())


def partition_from_classes(classes: Iterable[Iterable[int]]) -> Partition:
    """Build a hashable set family from an iterable of classes."""
    return frozenset(frozenset(c) for c in classes)


def sorted_classes(partition: Partition) -> List[List[int]]:
    """Canonical ordering of a set family: members ascending, classes by smallest member."""
    return sorted(sorted(c) for c in partition)
