"""Sparse suffix tree over sampled suffixes, built with few comparisons.

Suffixes run from a sample position to a window end ``end`` followed by a
virtual terminator that matches nothing.  A node stores its string depth
and a representative leaf below it, so the symbol at depth d on the way
to the node is T[rep + d].

Suffixes go in from right to left.  An LCE between two positions is then
answered by scanning at most an offset h < Delta and reading the rest off
the LCA of two sampled suffixes already in the tree (the sample is a
difference cover, so such an offset always exists).

Insertion walks heavy paths.  On each path one LCE against the
representative leaf of the path's deepest node tells how far the new
suffix follows the path, and a binary search over the path's node depths
finds where it leaves.  Light children are then probed largest subtree
first.  Heavy paths are recomputed for a subtree once the insertions
below its root reach a sixth of its size.
"""

from __future__ import annotations

from bisect import bisect_right
from typing import Dict, Iterator, List, Optional, Sequence, Tuple

from .diffcover import offset
from .oracle import EqString, InputError


class CapExceeded(Exception):
    """A node got more real-symbol children than the degree cap allows."""


class BudgetExceeded(Exception):
    """The negative-comparison budget ran out during the build."""


class _Node:
    __slots__ = ("depth", "rep", "parent", "children", "leaf", "size",
                 "heavy", "path", "real_deg", "label")

    def __init__(self, depth: int, rep: int, parent: Optional["_Node"], leaf: int = 0):
        self.depth = depth
        self.rep = rep
        self.parent = parent
        self.children: List[_Node] = []
        self.leaf = leaf
        self.size = 1 if leaf else 0
        self.heavy: Optional[_Node] = None
        self.path: Optional[_Path] = None
        self.real_deg = 0
        self.label = 0


class _Path:
    __slots__ = ("nodes", "depths", "ins", "base")

    def __init__(self, nodes: List[_Node], base: int):
        self.nodes = nodes
        self.depths = [x.depth for x in nodes]
        self.ins = 0
        self.base = base

    def root_size(self) -> int:
        return self.base + self.ins


class SparseSuffixTree:
    def __init__(self, s: EqString, end: int, sigma_cap: Optional[int] = None,
                 neg_budget: Optional[int] = None, check: bool = False,
                 cover_r: Optional[int] = None):
        self.s = s
        self.cover_r = cover_r
        self.end = end
        self.sigma_cap = sigma_cap
        self.neg_budget = neg_budget
        self.check_each = check
        self.root = _Node(0, 0, None)
        self.root.path = _Path([self.root], 0)
        self.leaves: Dict[int, _Node] = {}
        self.samples: List[int] = []
        self.crossings: List[int] = []
        self.negatives = 0
        self._neg0 = s.negative

    # -- building ---------------------------------------------------------

    def _scan(self, a: int, b: int, limit: int) -> int:
        eq = self.s.eq
        k = 0
        while k < limit and eq(a + k, b + k):
            k += 1
        return k

    def _lce(self, a: int, b: int, limit: int) -> int:
        end = self.end
        limit = min(limit, end - a + 1, end - b + 1)
        r = self.cover_r
        if r is None or limit <= 0:
            return self._scan(a, b, limit)
        leaves = self.leaves
        d = offset(r, a, b)
        if (a + d) not in leaves or (b + d) not in leaves:
            d = 1 + offset(r, a + 1, b + 1)
            if (a + d) not in leaves or (b + d) not in leaves:
                return self._scan(a, b, limit)
        if d >= limit:
            return self._scan(a, b, limit)
        k = self._scan(a, b, d)
        if k < d:
            return k
        return min(limit, d + self._lca(leaves[a + d], leaves[b + d]).depth)

    def _lca(self, x: _Node, y: _Node) -> _Node:
        while x.path is not y.path:
            hx, hy = x.path.nodes[0], y.path.nodes[0]
            # jump the head that cannot be an ancestor of the other
            if hx.depth > hy.depth or (hx.depth == hy.depth and hx.leaf):
                x = hx.parent
            else:
                y = hy.parent
        return x if x.depth < y.depth or (x.depth == y.depth and not x.leaf) else y

    def _probe_order(self, v: _Node) -> List[_Node]:
        d, end = v.depth, self.end
        cands = [u for u in v.children if u is not v.heavy and u.rep + d <= end]
        cands.sort(key=lambda u: (-u.path.root_size(), u.rep + d))
        return cands

    def insert(self, i: int) -> None:
        if i in self.leaves:
            raise InputError(f"duplicate sample {i}")
        if self.samples and i > self.samples[-1]:
            raise InputError("samples must be inserted in decreasing order")
        end, eq = self.end, self.s.eq
        paths: List[_Path] = []
        p = self.root.path
        md = 0
        while True:
            paths.append(p)
            e = p.nodes[-1]
            l = md + self._lce(i + md, e.rep + md, e.depth - md)
            k = bisect_right(p.depths, l) - 1
            if k < 0:
                leaf = self._split(p.nodes[0], l, i)
                break
            w = p.nodes[k]
            if l > w.depth:
                leaf = self._split(w.heavy, l, i)
                break
            if w.leaf:
                if k > 0 and p.depths[k - 1] == l:
                    # w hangs off a node of the same depth by its terminator
                    w = p.nodes[k - 1]
                else:
                    # the new, longer suffix runs past the end of leaf w
                    leaf = self._split(w, l, i)
                    break
            c = i + w.depth
            if c > end:
                leaf = self._attach(w, i, real=False)
                break
            found = None
            for u in self._probe_order(w):
                if eq(c, u.rep + w.depth):
                    found = u
                    break
            if found is None:
                leaf = self._attach(w, i, real=True)
                break
            p = found.path
            md = w.depth + 1
        self.leaves[i] = leaf
        self.samples.append(i)
        self.crossings.append(len(paths))
        for q in paths:
            q.ins += 1
        for q in paths:
            if 6 * q.ins >= q.root_size():
                self._rebuild(q.nodes[0])
                break
        self.negatives = self.s.negative - self._neg0
        if self.neg_budget is not None and self.negatives > self.neg_budget:
            raise BudgetExceeded(self.negatives)
        if self.check_each:
            self.check_heavy_paths()

    def _attach(self, v: _Node, i: int, real: bool) -> _Node:
        leaf = _Node(self.end - i + 1, i, v, leaf=i)
        leaf.path = _Path([leaf], 1)
        v.children.append(leaf)
        if real:
            v.real_deg += 1
            if self.sigma_cap is not None and v.real_deg > self.sigma_cap:
                raise CapExceeded(v.real_deg)
        return leaf

    def _split(self, u: _Node, l: int, i: int) -> _Node:
        """Create a node at depth l on the edge into u and hang leaf i off it."""
        w = u.parent
        m = _Node(l, u.rep, w)
        w.children[w.children.index(u)] = m
        m.children.append(u)
        m.real_deg = 1 if u.rep + l <= self.end else 0
        u.parent = m
        p = u.path
        idx = p.nodes.index(u)
        p.nodes.insert(idx, m)
        p.depths.insert(idx, l)
        m.path = p
        m.heavy = u
        if w.heavy is u:
            w.heavy = m
        return self._attach(m, i, real=i + l <= self.end)

    def _rebuild(self, top: _Node) -> None:
        order = []
        stack = [top]
        while stack:
            x = stack.pop()
            order.append(x)
            stack.extend(x.children)
        for x in reversed(order):
            if x.children:
                x.size = sum(c.size for c in x.children)
        roots = [top]
        while roots:
            r = roots.pop()
            nodes = [r]
            x = r
            while True:
                nxt = None
                for c in x.children:
                    if 6 * c.size >= 5 * r.size:
                        nxt = c
                        break
                for c in x.children:
                    if c is not nxt:
                        roots.append(c)
                x.heavy = nxt
                if nxt is None:
                    break
                nodes.append(nxt)
                x = nxt
            path = _Path(nodes, r.size)
            for x in nodes:
                x.path = path

    # -- queries ----------------------------------------------------------

    def nodes(self) -> Iterator[_Node]:
        stack = [self.root]
        while stack:
            x = stack.pop()
            yield x
            stack.extend(x.children)

    def max_degree(self) -> int:
        return max(len(x.children) for x in self.nodes())

    def edges(self) -> Iterator[Tuple[_Node, _Node, int]]:
        """(parent, child, first position of the edge label); terminator edges get 0."""
        for x in self.nodes():
            for c in x.children:
                first = c.rep + x.depth
                yield x, c, first if first <= self.end else 0

    def exact_sizes(self) -> Dict[int, int]:
        sizes: Dict[int, int] = {}
        order = list(self.nodes())
        for x in reversed(order):
            sizes[id(x)] = 1 if x.leaf else sum(sizes[id(c)] for c in x.children)
        return sizes

    def check_heavy_paths(self) -> None:
        """Deepest node of each heavy path keeps >= 2/3 of the root's leaves."""
        sizes = self.exact_sizes()
        seen = set()
        for x in self.nodes():
            p = x.path
            if id(p) in seen:
                continue
            seen.add(id(p))
            r, e = p.nodes[0], p.nodes[-1]
            if 3 * sizes[id(e)] < 2 * sizes[id(r)]:
                raise AssertionError(f"heavy path at depth {r.depth} lost its weight")
            for a, b in zip(p.nodes, p.nodes[1:]):
                if b.parent is not a or a.heavy is not b:
                    raise AssertionError("heavy path links broken")

    def lca_depth(self, i: int, j: int) -> int:
        if i not in self.leaves or j not in self.leaves:
            raise InputError("not a sample leaf")
        return self._lca(self.leaves[i], self.leaves[j]).depth


def build_sparse(s: EqString, samples: Sequence[int], sigma_cap: Optional[int] = None,
                 end: Optional[int] = None, neg_budget: Optional[int] = None,
                 check: bool = False, cover_r: Optional[int] = None) -> SparseSuffixTree:
    """Insert the sampled suffixes T[i..end] one by one, right to left.

    ``cover_r`` declares the samples to be a difference cover with that
    root (1 for every position), which enables the cheap LCE path.

    Raises CapExceeded when a node would get more than ``sigma_cap``
    real-symbol children, BudgetExceeded when more than ``neg_budget``
    negative comparisons were spent.
    """
    if not samples:
        raise InputError("no samples")
    end = s.n if end is None else end
    if len(set(samples)) != len(samples):
        raise InputError("duplicate sample positions")
    ordered = sorted(samples, reverse=True)
    if ordered[-1] < 1 or ordered[0] > end or end > s.n:
        raise InputError("sample outside 1..end")
    tree = SparseSuffixTree(s, end, sigma_cap, neg_budget, check, cover_r)
    for i in ordered:
        tree.insert(i)
    return tree


def tree_lce(tree: SparseSuffixTree, i: int, j: int) -> int:
    return tree.lca_depth(i, j)


def src_len_labels(tree: SparseSuffixTree, samples: Optional[Sequence[int]] = None
                   ) -> Dict[int, Tuple[int, int]]:
    """For each sample after the first: the earlier sample sharing the
    longest prefix with it, and that prefix length."""
    order = sorted(tree.samples if samples is None else samples)
    for x in tree.nodes():
        x.label = 0
    out: Dict[int, Tuple[int, int]] = {}
    for i in order:
        x = tree.leaves[i]
        while x is not None and not x.label:
            x.label = i
            x = x.parent
        if x is not None:
            out[i] = (x.label, x.depth)
    return out
