"""Labelled plane forests: parsing, printing, cuts, and grafting surgery.

An ordered forest of degree n is a finite sequence of plane rooted trees whose
vertices carry each label 1..n exactly once.  Text form: a leaf prints as its
label, an inner vertex as ``label[child child ...]``, sibling trees are
separated by single spaces, and the empty forest prints as ``()``.

Everything in this module is plain tree surgery; linear combinations live in
:mod:`graftwood.algebra`.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import cached_property
from typing import Iterator, Sequence


class ForestSyntaxError(ValueError):
    """Raised when a forest string does not match the grammar."""


class BothUnitsError(ValueError):
    """Raised when a graft gets the empty forest on both sides."""


@dataclass(frozen=True)
class OrderedTree:
    """A rooted plane tree with integer vertex labels."""

    label: int
    children: tuple["OrderedTree", ...] = ()

    @cached_property
    def degree(self) -> int:
        return 1 + sum(c.degree for c in self.children)

    def labels(self) -> Iterator[int]:
        """Yield all vertex labels in preorder."""
        yield self.label
        for c in self.children:
            yield from c.labels()

    def __str__(self) -> str:
        if not self.children:
            return str(self.label)
        return "%d[%s]" % (self.label, " ".join(str(c) for c in self.children))


@dataclass(frozen=True)
class OrderedForest:
    """A sequence of ordered trees; the labels are expected to be 1..degree."""

    trees: tuple[OrderedTree, ...] = ()

    @cached_property
    def degree(self) -> int:
        return sum(t.degree for t in self.trees)

    @property
    def is_empty(self) -> bool:
        return not self.trees

    @property
    def is_tree(self) -> bool:
        return len(self.trees) == 1

    @cached_property
    def text(self) -> str:
        return format_forest(self)

    def labels(self) -> Iterator[int]:
        for t in self.trees:
            yield from t.labels()

    def __str__(self) -> str:
        return self.text


@dataclass(frozen=True)
class PlaneTree:
    """An unlabelled plane rooted tree (a shape)."""

    children: tuple["PlaneTree", ...] = ()

    @cached_property
    def degree(self) -> int:
        return 1 + sum(c.degree for c in self.children)

    def __str__(self) -> str:
        if not self.children:
            return "0"
        return "0[%s]" % " ".join(str(c) for c in self.children)


EMPTY_FOREST = OrderedForest(())
SINGLE_VERTEX = OrderedForest((OrderedTree(1),))

_TOKEN = re.compile(r"\d+|\[|\]|\s+")


def _tokenize(text: str) -> list[str]:
    tokens = []
    pos = 0
    for m in _TOKEN.finditer(text):
        if m.start() != pos:
            raise ForestSyntaxError(
                "unexpected character %r at position %d" % (text[pos], pos)
            )
        pos = m.end()
        tok = m.group()
        if not tok.isspace():
            tokens.append(tok)
    if pos != len(text):
        raise ForestSyntaxError(
            "unexpected character %r at position %d" % (text[pos], pos)
        )
    return tokens


class _Parser:
    def __init__(self, tokens: list[str]):
        self.tokens = tokens
        self.pos = 0

    def peek(self) -> str | None:
        return self.tokens[self.pos] if self.pos < len(self.tokens) else None

    def take(self) -> str:
        tok = self.peek()
        if tok is None:
            raise ForestSyntaxError("unexpected end of input")
        self.pos += 1
        return tok

    def parse_tree(self) -> OrderedTree:
        tok = self.take()
        if not tok.isdigit():
            raise ForestSyntaxError("expected a label, got %r" % tok)
        label = int(tok)
        children: tuple[OrderedTree, ...] = ()
        if self.peek() == "[":
            self.take()
            kids = [self.parse_tree()]
            while self.peek() is not None and self.peek() != "]":
                kids.append(self.parse_tree())
            if self.take() != "]":
                raise ForestSyntaxError("missing closing bracket")
            children = tuple(kids)
        return OrderedTree(label, children)

    def parse_forest(self) -> tuple[OrderedTree, ...]:
        trees = [self.parse_tree()]
        while self.peek() is not None and self.peek() != "]":
            trees.append(self.parse_tree())
        if self.peek() is not None:
            raise ForestSyntaxError("unbalanced closing bracket")
        return tuple(trees)


def parse_forest(text: str) -> OrderedForest:
    """Parse the text form of an ordered forest.

    The labels must be exactly 1..n for some n; ``()`` is the empty forest.
    """
    stripped = text.strip()
    if stripped == "()":
        return EMPTY_FOREST
    if not stripped:
        raise ForestSyntaxError("empty input (the empty forest is written '()')")
    trees = _Parser(_tokenize(stripped)).parse_forest()
    forest = OrderedForest(trees)
    seen = sorted(forest.labels())
    if seen != list(range(1, forest.degree + 1)):
        raise ForestSyntaxError(
            "labels must be exactly 1..%d, got %s" % (forest.degree, seen)
        )
    return forest


def format_forest(forest: OrderedForest) -> str:
    """Inverse of :func:`parse_forest`."""
    if forest.is_empty:
        return "()"
    return " ".join(str(t) for t in forest.trees)


def parse_plane_tree(text: str) -> PlaneTree:
    """Parse a shape written in the forest grammar; label values are ignored."""
    stripped = text.strip()
    if not stripped or stripped == "()":
        raise ForestSyntaxError("a plane tree needs at least one vertex")
    trees = _Parser(_tokenize(stripped)).parse_forest()
    if len(trees) != 1:
        raise ForestSyntaxError("expected a single tree, got %d" % len(trees))

    def strip_labels(t: OrderedTree) -> PlaneTree:
        return PlaneTree(tuple(strip_labels(c) for c in t.children))

    return strip_labels(trees[0])


def shape_of(forest: OrderedForest) -> tuple[PlaneTree, ...]:
    """Forget the labels."""

    def go(t: OrderedTree) -> PlaneTree:
        return PlaneTree(tuple(go(c) for c in t.children))

    return tuple(go(t) for t in forest.trees)


def _shift_tree(t: OrderedTree, k: int) -> OrderedTree:
    if k == 0:
        return t
    return OrderedTree(t.label + k, tuple(_shift_tree(c, k) for c in t.children))


def shift_forest(forest: OrderedForest, k: int) -> OrderedForest:
    """Add k to every label."""
    if k == 0:
        return forest
    return OrderedForest(tuple(_shift_tree(t, k) for t in forest.trees))


def standardize(vertices: Sequence[OrderedTree] | OrderedForest) -> OrderedForest:
    """Relabel a sub-forest order-preservingly onto 1..k."""
    trees = vertices.trees if isinstance(vertices, OrderedForest) else tuple(vertices)
    labels = sorted(l for t in trees for l in t.labels())
    remap = {old: new for new, old in enumerate(labels, start=1)}

    def go(t: OrderedTree) -> OrderedTree:
        return OrderedTree(remap[t.label], tuple(go(c) for c in t.children))

    return OrderedForest(tuple(go(t) for t in trees))


def concat(left: OrderedForest, right: OrderedForest) -> OrderedForest:
    """Concatenate, shifting the right factor's labels up by the left degree."""
    if left.is_empty:
        return right
    if right.is_empty:
        return left
    return OrderedForest(left.trees + shift_forest(right, left.degree).trees)


def block_factors(forest: OrderedForest) -> list[OrderedTree] | None:
    """Split into standardized tree factors if the labels come in blocks.

    Returns None unless the i-th tree carries exactly the labels
    ``offset+1 .. offset+degree`` (consecutive blocks left to right).
    """
    out = []
    offset = 0
    for t in forest.trees:
        d = t.degree
        labels = list(t.labels())
        if min(labels) != offset + 1 or max(labels) != offset + d:
            return None
        out.append(_shift_tree(t, -offset))
        offset += d
    return out


def root_labels(forest: OrderedForest) -> tuple[int, ...]:
    return tuple(t.label for t in forest.trees)


def rightmost_leaf_label(forest: OrderedForest) -> int:
    """Label of the leaf reached by always taking the last child of the last tree."""
    if forest.is_empty:
        raise ValueError("the empty forest has no leaves")
    node = forest.trees[-1]
    while node.children:
        node = node.children[-1]
    return node.label


_ANCESTOR_CACHE: dict[OrderedForest, dict[int, frozenset[int]]] = {}


def ancestor_map(forest: OrderedForest) -> dict[int, frozenset[int]]:
    """Map each label to the set of labels of its strict ancestors."""
    cached = _ANCESTOR_CACHE.get(forest)
    if cached is not None:
        return cached
    out: dict[int, frozenset[int]] = {}

    def walk(t: OrderedTree, above: frozenset[int]) -> None:
        out[t.label] = above
        below = above | {t.label}
        for c in t.children:
            walk(c, below)

    for t in forest.trees:
        walk(t, frozenset())
    _ANCESTOR_CACHE[forest] = out
    return out


AdmissibleCut = frozenset[int]

_CUT_CACHE: dict[OrderedForest, tuple[AdmissibleCut, ...]] = {}


def admissible_cuts(forest: OrderedForest) -> tuple[AdmissibleCut, ...]:
    """All antichains of the ancestry order, as label sets.

    Includes the empty cut and the total cut (all roots).  Deterministic
    order: depth-first lexicographic on the sorted label tuples, so () comes
    first, then (1), (1,2), ..., (2), ...
    """
    cached = _CUT_CACHE.get(forest)
    if cached is not None:
        return cached
    anc = ancestor_map(forest)
    labels = sorted(anc)
    out: list[AdmissibleCut] = []

    def extend(start: int, chosen: tuple[int, ...]) -> None:
        out.append(frozenset(chosen))
        for j in range(start, len(labels)):
            v = labels[j]
            va = anc[v]
            if any(u in va or v in anc[u] for u in chosen):
                continue
            extend(j + 1, chosen + (v,))

    extend(0, ())
    result = tuple(out)
    _CUT_CACHE[forest] = result
    return result


def cut_split(
    forest: OrderedForest, cut: AdmissibleCut
) -> tuple[OrderedForest, OrderedForest]:
    """Split along a cut: (extracted sub-forest, remainder), both standardized.

    The extracted part lists the subtrees rooted at cut vertices in planar
    encounter order; the remainder is what is left after removing them.
    """
    cut = frozenset(cut)
    anc = ancestor_map(forest)
    if not cut <= anc.keys():
        raise ValueError("cut contains labels outside the forest")
    for v in cut:
        if anc[v] & cut:
            raise ValueError("cut is not an antichain: %s" % sorted(cut))

    extracted: list[OrderedTree] = []

    def prune(t: OrderedTree) -> OrderedTree | None:
        if t.label in cut:
            extracted.append(t)
            return None
        kept = tuple(k for k in (prune(c) for c in t.children) if k is not None)
        return t if kept == t.children else OrderedTree(t.label, kept)

    remainder = tuple(r for r in (prune(t) for t in forest.trees) if r is not None)
    return standardize(extracted), standardize(remainder)


# ---------------------------------------------------------------------------
# Grafting surgery on plain forests.  The linear wrappers are in grafts.py.


def nwarrow(left: OrderedForest, right: OrderedForest) -> OrderedForest:
    """Hang the right forest below the rightmost leaf of the left one.

    The host leaf keeps its position; the grafted vertices take the labels
    just below it, so the host labels at or above the leaf's label shift up.
    The empty forest is a two-sided unit.
    """
    if left.is_empty:
        return right
    if right.is_empty:
        return left
    leaf = rightmost_leaf_label(left)
    gsize = right.degree
    grafted = shift_forest(right, leaf - 1).trees

    def remap(label: int) -> int:
        return label if label < leaf else label + gsize

    def go(t: OrderedTree, on_path: bool) -> OrderedTree:
        if not t.children:
            kids = grafted if on_path else ()
            return OrderedTree(remap(t.label), kids)
        last = len(t.children) - 1
        kids = tuple(
            go(c, on_path and i == last) for i, c in enumerate(t.children)
        )
        return OrderedTree(remap(t.label), kids)

    last = len(left.trees) - 1
    return OrderedForest(
        tuple(go(t, i == last) for i, t in enumerate(left.trees))
    )


def lgraft_basis(left: OrderedForest, right: OrderedForest) -> OrderedForest | None:
    """Left graft on basis forests: the left forest becomes the leftmost
    children of the first tree of the right forest.

    Returns None for the vanishing case (nonempty ``left``, empty ``right``).
    Both arguments empty is undefined and raises.
    """
    if left.is_empty and right.is_empty:
        raise BothUnitsError("left graft of two empty forests is undefined")
    if left.is_empty:
        return right
    if right.is_empty:
        return None
    shifted = shift_forest(right, left.degree)
    first = shifted.trees[0]
    merged = OrderedTree(first.label, left.trees + first.children)
    return OrderedForest((merged,) + shifted.trees[1:])


def rgraft_basis(left: OrderedForest, right: OrderedForest) -> OrderedForest | None:
    """Right graft on basis forests: each tree of the right forest is hung,
    in order, as a new rightmost child of the root of the left forest's last
    tree.  Per grafted tree the root takes the largest fresh label and the
    other vertices keep their relative order.

    Returns None for the vanishing case (empty ``left``, nonempty ``right``).
    Both arguments empty is undefined and raises.
    """
    if left.is_empty and right.is_empty:
        raise BothUnitsError("right graft of two empty forests is undefined")
    if right.is_empty:
        return left
    if left.is_empty:
        return None
    host = left.trees[-1]
    offset = left.degree
    new_children = list(host.children)
    for t in right.trees:
        std = standardize((t,)).trees[0]
        d = std.degree
        root = std.label

        def remap(label: int, offset=offset, root=root, d=d) -> int:
            if label == root:
                return offset + d
            return offset + label if label < root else offset + label - 1

        def rebuild(node: OrderedTree) -> OrderedTree:
            return OrderedTree(
                remap(node.label), tuple(rebuild(c) for c in node.children)
            )

        new_children.append(rebuild(std))
        offset += d
    merged = OrderedTree(host.label, tuple(new_children))
    return OrderedForest(left.trees[:-1] + (merged,))
