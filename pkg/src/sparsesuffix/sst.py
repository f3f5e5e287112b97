"""Sparse suffix tree from a sparse suffix array.

Suffixes are inserted in sorted order. Only the rightmost root-to-leaf path
of the tree built so far can change, so it is kept as a stack: insertion of
the next suffix pops every node deeper than the LCP with the previous
suffix, then either hangs the new leaf under the node of exactly that depth
or splits the edge just popped. Each node is pushed and popped at most once.

A virtual terminator, smaller than every byte, ends every suffix so that a
chosen suffix that is a prefix of another still gets its own leaf. Edges
refer to the text by ``(start, end)`` (1-based, inclusive; ``end < start``
is an empty range) and leaf edges additionally carry the terminator.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Any, Iterator

from .errors import InputError
from .memory import charge
from .suffix_sort import SparseSuffixArray
from .text import Text, TextLike, as_text

TERMINATOR = -1
# length, leaf_pos, start, end, terminal, child-list header
NODE_WORDS = 6


class SstNode:
    __slots__ = ("length", "children", "leaf_pos", "start", "end", "terminal")

    def __init__(
        self,
        length: int,
        leaf_pos: int | None = None,
        start: int = 1,
        end: int = 0,
        terminal: bool = False,
    ) -> None:
        self.length = length
        self.children: list[SstNode] = []
        self.leaf_pos = leaf_pos
        self.start = start
        self.end = end
        self.terminal = terminal

    @property
    def is_leaf(self) -> bool:
        return self.leaf_pos is not None

    @property
    def edge_length(self) -> int:
        return max(0, self.end - self.start + 1) + (1 if self.terminal else 0)

    def first_symbol(self, text: Text) -> int:
        if self.start <= self.end:
            return int(text.data[self.start - 1])
        return TERMINATOR

    def __repr__(self) -> str:
        kind = f"leaf {self.leaf_pos}" if self.is_leaf else f"{len(self.children)} children"
        return f"SstNode(length={self.length}, edge=[{self.start},{self.end}], {kind})"


@dataclass
class SparseSuffixTree:
    root: SstNode
    b: int
    text: Text

    def nodes(self) -> Iterator[tuple[SstNode, SstNode | None]]:
        """Pre-order ``(node, parent)`` pairs, children in order."""
        stack: list[tuple[SstNode, SstNode | None]] = [(self.root, None)]
        while stack:
            node, parent = stack.pop()
            yield node, parent
            for child in reversed(node.children):
                stack.append((child, node))

    def leaves(self) -> list[int]:
        return [node.leaf_pos for node, _ in self.nodes() if node.is_leaf]

    @property
    def node_count(self) -> int:
        return sum(1 for _ in self.nodes())


def build_tree(text: TextLike, ssa: SparseSuffixArray) -> SparseSuffixTree:
    """Build the sparse suffix tree for the suffixes listed in ``ssa``."""
    text = as_text(text)
    n = text.n
    sa, adj = ssa.sa, ssa.adj_lcp
    if len(adj) != max(0, len(sa) - 1):
        raise InputError("adj_lcp must have len(sa) - 1 entries")
    root = SstNode(length=0)
    if not sa:
        return SparseSuffixTree(root=root, b=0, text=text)

    def leaf(q: int, depth: int) -> SstNode:
        return SstNode(length=n - q + 2, leaf_pos=q, start=q + depth, end=n, terminal=True)

    first = leaf(sa[0], 0)
    root.children.append(first)
    stack = [root, first]
    charge(NODE_WORDS * 2)
    for t in range(1, len(sa)):
        q, lcp = sa[t], adj[t - 1]
        if not 0 <= lcp <= n - max(q, sa[t - 1]) + 1:
            raise InputError(f"adj_lcp[{t - 1}] = {lcp} impossible for positions {sa[t - 1]}, {q}")
        popped = None
        while stack[-1].length > lcp:
            popped = stack.pop()
        top = stack[-1]
        if top.length < lcp:
            # split the edge top -> popped at depth lcp
            cut = popped.start + (lcp - top.length)
            mid = SstNode(length=lcp, start=popped.start, end=cut - 1)
            popped.start = cut
            mid.children.append(popped)
            top.children[-1] = mid
            stack.append(mid)
            top = mid
            charge(NODE_WORDS)
        new = leaf(q, top.length)
        top.children.append(new)
        stack.append(new)
        charge(NODE_WORDS)
    return SparseSuffixTree(root=root, b=len(sa), text=text)


def validate_tree(tree: SparseSuffixTree, text: TextLike, ssa: SparseSuffixArray | None = None) -> list[str]:
    """Every violated tree invariant as a message; an empty list means valid."""
    text = as_text(text)
    n = text.n
    raw = text.data
    problems: list[str] = []
    if tree.root.length != 0:
        problems.append(f"root length {tree.root.length} != 0")
    leaves: list[int] = []
    for node, parent in tree.nodes():
        if parent is not None:
            if node.length <= parent.length:
                problems.append(f"{node!r}: length not above parent {parent.length}")
            if node.edge_length != node.length - parent.length:
                problems.append(
                    f"{node!r}: edge spells {node.edge_length} symbols, depth step {node.length - parent.length}"
                )
            if node.terminal and not node.is_leaf:
                problems.append(f"{node!r}: terminator on an internal edge")
        if node.children:
            if node.is_leaf:
                problems.append(f"{node!r}: leaf with children")
            if parent is not None and len(node.children) < 2:
                problems.append(f"{node!r}: unary internal node")
            firsts = [c.first_symbol(text) for c in node.children]
            if any(a >= b for a, b in zip(firsts, firsts[1:])):
                problems.append(f"{node!r}: children unordered or sharing a first symbol {firsts}")
        elif parent is not None and not node.is_leaf:
            problems.append(f"{node!r}: childless internal node")
        if node.is_leaf:
            q = node.leaf_pos
            leaves.append(q)
            if node.length != n - q + 2:
                problems.append(f"leaf {q}: length {node.length} != {n - q + 2}")

    # every root-to-leaf path must spell T_q followed by the terminator
    stack: list[tuple[SstNode, list[SstNode]]] = [(tree.root, [])]
    while stack:
        node, path = stack.pop()
        if node.is_leaf:
            q = node.leaf_pos
            depth = 0
            for k, step in enumerate(path):
                lo, hi = step.start, step.end
                span = max(0, hi - lo + 1)
                if span and (lo < 1 or hi > n):
                    problems.append(f"leaf {q}: edge [{lo},{hi}] outside the text")
                    break
                expect_lo = q + depth
                if span and (
                    expect_lo + span - 1 > n
                    or not (raw[lo - 1 : hi] == raw[expect_lo - 1 : expect_lo - 1 + span]).all()
                ):
                    problems.append(f"leaf {q}: edge [{lo},{hi}] does not spell T_{q}[{depth}:]")
                    break
                depth += span
                if step.terminal and k != len(path) - 1:
                    problems.append(f"leaf {q}: terminator before the leaf")
            else:
                if depth != n - q + 1:
                    problems.append(f"leaf {q}: path spells {depth} symbols, suffix has {n - q + 1}")
            continue
        for child in node.children:
            stack.append((child, path + [child]))

    if len(leaves) != tree.b:
        problems.append(f"{len(leaves)} leaves, expected {tree.b}")
    if ssa is not None and leaves != list(ssa.sa):
        problems.append("DFS leaf order differs from the suffix array")
    return problems


def leaf_order_and_lcas(tree: SparseSuffixTree) -> tuple[list[int], list[int]]:
    """Leaves in DFS order and the depth of the LCA of each consecutive pair."""
    order: list[int] = []
    lcas: list[int] = []
    stack: list[tuple[SstNode, int]] = [(tree.root, 0)]
    branch = None
    while stack:
        node, k = stack.pop()
        if node.is_leaf:
            if order:
                lcas.append(branch)
            order.append(node.leaf_pos)
            continue
        if k < len(node.children):
            stack.append((node, k + 1))
            if k > 0:
                # the only non-first descent between two consecutive leaves is at their LCA
                branch = node.length
            stack.append((node.children[k], 0))
    return order, lcas


def tree_shape(tree: SparseSuffixTree) -> tuple:
    """Canonical nested tuple: ``(edge label, length, leaf_pos, children)``.

    Edge labels are spelled out (terminator as ``b"$"`` suffix marker) so trees
    built with different text references compare equal when they denote the
    same compacted trie.
    """
    data = tree.text.data

    def label(node: SstNode) -> bytes:
        body = data[node.start - 1 : node.end].tobytes() if node.start <= node.end else b""
        return body + (b"\x00$" if node.terminal else b"")

    def walk(node: SstNode) -> tuple:
        return (label(node) if node is not tree.root else b"", node.length, node.leaf_pos,
                tuple(walk(c) for c in node.children))

    return walk(tree.root)


def to_dict(tree: SparseSuffixTree, zero_based: bool = False) -> dict[str, Any]:
    shift = 1 if zero_based else 0

    def walk(node: SstNode, is_root: bool) -> dict[str, Any]:
        out: dict[str, Any] = {"length": node.length}
        if not is_root:
            out["edge"] = {
                "start": node.start - shift,
                "end": node.end - shift,
                "terminator": node.terminal,
            }
        if node.is_leaf:
            out["leaf_pos"] = node.leaf_pos - shift
        if node.children:
            out["children"] = [walk(c, False) for c in node.children]
        return out

    return {"n": tree.text.n, "b": tree.b, "root": walk(tree.root, True)}


def to_json(tree: SparseSuffixTree, zero_based: bool = False) -> str:
    return json.dumps(to_dict(tree, zero_based), separators=(",", ":"))


def _dot_label(data: bytes, node: SstNode) -> str:
    body = data[node.start - 1 : node.end] if node.start <= node.end else b""
    if len(body) > 12:
        body = body[:12] + b"..."
    text = body.decode("latin-1").encode("unicode_escape").decode("ascii")
    text = text.replace("\\", "\\\\").replace('"', '\\"')
    return text + ("$" if node.terminal else "")


def to_dot(tree: SparseSuffixTree, zero_based: bool = False) -> str:
    shift = 1 if zero_based else 0
    data = tree.text.tobytes()
    lines = ["digraph sst {", '  node [shape=circle, label=""];']
    ids: dict[int, int] = {}
    for node, parent in tree.nodes():
        nid = ids.setdefault(id(node), len(ids))
        if node.is_leaf:
            lines.append(f'  n{nid} [shape=box, label="{node.leaf_pos - shift}"];')
        else:
            lines.append(f'  n{nid} [label="{node.length}"];')
        if parent is not None:
            lines.append(f'  n{ids[id(parent)]} -> n{nid} [label="{_dot_label(data, node)}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"
