"""Dynamic witness tree: names a multiset of equal-length strings.

Internal nodes hold a 1-based mismatch position and children keyed by the
character at that position; leaves hold a name, a reference count and one
representative string.  Two strings share a name iff they are equal, and
the position stored at the LCA of two leaves is a genuine mismatch between
their strings.
"""

from __future__ import annotations


class _Internal:
    __slots__ = ("pos", "children", "parent", "key")

    def __init__(self, pos: int):
        self.pos = pos
        self.children: dict[int, _Internal | _Leaf] = {}
        self.parent: _Internal | None = None
        self.key: int | None = None  # edge label into this node


class _Leaf:
    __slots__ = ("name", "count", "rep", "parent", "key")

    def __init__(self, name: int, rep: bytes):
        self.name = name
        self.count = 1
        self.rep = rep
        self.parent: _Internal | None = None
        self.key: int | None = None


def _depth(node) -> int:
    d = 0
    while node.parent is not None:
        node, d = node.parent, d + 1
    return d


class WitnessTree:
    def __init__(self, m: int | None = None):
        self.m = m
        self._fixed_width = m is not None
        self.root: _Internal | _Leaf | None = None
        self.leaves: dict[int, _Leaf] = {}
        self.inspections = 0  # characters examined by insert/lookup
        self._next_name = 1

    def __len__(self) -> int:
        return len(self.leaves)

    def _check(self, s: bytes) -> None:
        if self.m is None:
            if not s:
                raise ValueError("strings must be non-empty")
            self.m = len(s)
        elif len(s) != self.m:
            raise ValueError(f"string length {len(s)} != tree width {self.m}")

    def _descend(self, s: bytes):
        """Walk from the root; returns (node reached, positions inspected)."""
        node = self.root
        seen = []
        while isinstance(node, _Internal):
            c = s[node.pos - 1]
            seen.append(node.pos)
            nxt = node.children.get(c)
            if nxt is None:
                break
            node = nxt
        self.inspections += len(seen)
        return node, seen

    def _first_mismatch(self, s: bytes, rep: bytes, skip: list[int]) -> int | None:
        # positions checked on the way down are already known to agree
        skipped = set(skip)
        for i in range(self.m):
            if i + 1 in skipped:
                continue
            self.inspections += 1
            if s[i] != rep[i]:
                return i + 1
        return None

    def lookup(self, s: bytes) -> int | None:
        """Name of ``s`` if present, never modifying the tree."""
        if self.root is None or len(s) != self.m:
            return None
        node, seen = self._descend(s)
        if isinstance(node, _Leaf) and self._first_mismatch(s, node.rep, seen) is None:
            return node.name
        return None

    def _new_leaf(self, s: bytes) -> _Leaf:
        leaf = _Leaf(self._next_name, bytes(s))
        self._next_name += 1
        self.leaves[leaf.name] = leaf
        return leaf

    def insert_string(self, s: bytes) -> int:
        self._check(s)
        if self.root is None:
            self.root = self._new_leaf(s)
            return self.root.name
        node, seen = self._descend(s)
        if isinstance(node, _Internal):
            leaf = self._new_leaf(s)
            c = s[node.pos - 1]
            leaf.parent, leaf.key = node, c
            node.children[c] = leaf
            return leaf.name
        q = self._first_mismatch(s, node.rep, seen)
        if q is None:
            node.count += 1
            return node.name
        # split: a new internal node takes the old leaf's place
        inner = _Internal(q)
        parent, key = node.parent, node.key
        inner.parent, inner.key = parent, key
        if parent is None:
            self.root = inner
        else:
            parent.children[key] = inner
        leaf = self._new_leaf(s)
        for child, c in ((node, node.rep[q - 1]), (leaf, s[q - 1])):
            child.parent, child.key = inner, c
            inner.children[c] = child
        return leaf.name

    def remove_string(self, name: int) -> None:
        leaf = self.leaves.get(name)
        if leaf is None:
            raise KeyError(f"name {name} is not live")
        leaf.count -= 1
        if leaf.count:
            return
        del self.leaves[name]
        parent = leaf.parent
        if parent is None:
            self.root = None
            if not self._fixed_width:
                self.m = None
            return
        del parent.children[leaf.key]
        if len(parent.children) == 1:
            # splice: the sibling takes the parent's place under the grandparent
            (sibling,) = parent.children.values()
            grand, key = parent.parent, parent.key
            sibling.parent, sibling.key = grand, key
            if grand is None:
                self.root = sibling
            else:
                grand.children[key] = sibling

    def count(self, name: int) -> int:
        leaf = self.leaves.get(name)
        return leaf.count if leaf else 0

    def representative(self, name: int) -> bytes:
        return self.leaves[name].rep

    def witness_query(self, a: int, b: int) -> int:
        """Mismatch position between the strings named ``a`` and ``b``, or m+1."""
        la, lb = self.leaves.get(a), self.leaves.get(b)
        if la is None or lb is None:
            raise KeyError("witness query on a dead name")
        if a == b:
            return self.m + 1
        # depths are recomputed per query: splits and splices shift whole subtrees
        u, v = la.parent, lb.parent
        du, dv = _depth(u), _depth(v)
        while du > dv:
            u, du = u.parent, du - 1
        while dv > du:
            v, dv = v.parent, dv - 1
        while u is not v:
            u, v = u.parent, v.parent
        return u.pos

    def node_count(self) -> int:
        if self.root is None:
            return 0
        total, stack = 0, [self.root]
        while stack:
            node = stack.pop()
            total += 1
            if isinstance(node, _Internal):
                stack.extend(node.children.values())
        return total

    def internal_positions(self) -> list[int]:
        out, stack = [], [self.root] if self.root is not None else []
        while stack:
            node = stack.pop()
            if isinstance(node, _Internal):
                out.append(node.pos)
                stack.extend(node.children.values())
        return sorted(out)
