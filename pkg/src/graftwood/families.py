"""Families of labelled forests generated by the two vertex-append moves.

A forest of degree n is reached from the single vertex by a sequence of
moves, one per added vertex.  At step k the move is either

* "-": wrap the whole forest under a new root labelled k, or
* "+": append the new vertex k as a bare tree, or hang it as the new
  rightmost child of the root of some tree while the trees to its right
  become the new vertex's children.

Reading the moves as letters gives the signature of the forest.  The first
letter is conventionally "+" (both moves agree on a single vertex).  Several
families are carved out of this picture:

* ``G``      every forest reachable by some signature,
* ``G0``     the all-plus signature only,
* ``G<i>``   signatures whose minus letters sit in the last i positions,
* ``T``      trees built from sequences of whole-forest moves applied to
             products of smaller such trees (two orientations, ``Tplus`` and
             ``Tminus``),
* ``Bl``     trees built with the wrap move only,
* ``Br``     trees arising in the closure of the single vertex under
             concatenation and the right graft,
* ``B``      forests whose label-block factors are all ``T`` trees (the
             word basis the coproduct lives on).
"""

from __future__ import annotations

import itertools
import math
import re
from functools import lru_cache

from .forest import (
    EMPTY_FOREST,
    OrderedForest,
    OrderedTree,
    PlaneTree,
    SINGLE_VERTEX,
    _shift_tree,
    concat,
    rgraft_basis,
)

__all__ = [
    "NotInFamilyError",
    "b_minus",
    "b_plus",
    "canonical_signature",
    "signature_of",
    "generate_set",
    "generate_words",
    "membership",
    "count_indexings",
    "oracle_count_indexings",
    "canonical_indexing",
    "ladders",
    "is_basis_forest",
]

ENUMERATION_MAX_DEGREE = 8
CLOSURE_MAX_DEGREE = 7


class NotInFamilyError(ValueError):
    """Raised when a forest cannot be produced by the requested moves."""


def b_minus(forest: OrderedForest) -> OrderedTree:
    """Wrap the forest under a new maximal root (single vertex if empty)."""
    if forest.is_empty:
        return OrderedTree(1)
    return OrderedTree(forest.degree + 1, forest.trees)


def b_plus(forest: OrderedForest) -> OrderedTree:
    """Hang a new maximal vertex as the rightmost child of the first tree's
    root; the remaining trees become the new vertex's children."""
    if forest.is_empty:
        return OrderedTree(1)
    first = forest.trees[0]
    new = OrderedTree(forest.degree + 1, forest.trees[1:])
    return OrderedTree(first.label, first.children + (new,))


# --- signatures -------------------------------------------------------------


def canonical_signature(signature: str) -> str:
    """Normalize a signature string: commas and spaces are dropped, a unicode
    minus is accepted, and the first letter is forced to '+'."""
    cleaned = signature.replace(",", "").replace(" ", "").replace("−", "-")
    if not cleaned or any(ch not in "+-" for ch in cleaned):
        raise ValueError("signature must be a nonempty word over '+'/'-': %r" % signature)
    return "+" + cleaned[1:]


def signature_of(forest: OrderedForest) -> str:
    """Recover the move sequence, canonicalized to start with '+'.

    The peel is deterministic: at most one removal shape matches the maximal
    label at each step.  Raises NotInFamilyError when none does.
    """
    if forest.is_empty:
        raise NotInFamilyError("the empty forest has no signature")
    letters = []
    trees = forest.trees
    for k in range(forest.degree, 1, -1):
        if len(trees) == 1 and trees[0].label == k:
            letters.append("-")
            trees = trees[0].children
            continue
        last = trees[-1]
        if last.label == k and not last.children:
            letters.append("+")
            trees = trees[:-1]
            continue
        kids = last.children
        if kids and kids[-1].label == k:
            letters.append("+")
            trees = trees[:-1] + (OrderedTree(last.label, kids[:-1]),) + kids[-1].children
            continue
        raise NotInFamilyError(
            "vertex %d is not removable in %s" % (k, forest.text)
        )
    return "+" + "".join(reversed(letters))


_SIG_SET_CACHE: dict[str, frozenset[OrderedForest]] = {}


def _signature_set(signature: str) -> frozenset[OrderedForest]:
    """All forests with the given canonical signature."""
    cached = _SIG_SET_CACHE.get(signature)
    if cached is not None:
        return cached
    if len(signature) == 1:
        result = frozenset({SINGLE_VERTEX})
    else:
        n = len(signature)
        out: set[OrderedForest] = set()
        for f in _signature_set(signature[:-1]):
            if signature[-1] == "-":
                out.add(OrderedForest((b_minus(f),)))
            else:
                out.add(OrderedForest(f.trees + (OrderedTree(n),)))
                for i, t in enumerate(f.trees):
                    new = OrderedTree(n, f.trees[i + 1 :])
                    grafted = OrderedTree(t.label, t.children + (new,))
                    out.add(OrderedForest(f.trees[:i] + (grafted,)))
        result = frozenset(out)
    _SIG_SET_CACHE[signature] = result
    return result


def _signatures_with_free_tail(n: int, tail: int):
    """Canonical signatures of length n whose first n - tail letters are '+'."""
    tail = min(tail, n - 1)
    head = "+" * (n - tail)
    for combo in itertools.product("+-", repeat=tail):
        yield head + "".join(combo)


# --- family selectors -------------------------------------------------------

_GI_RE = re.compile(r"G(\d+)\Z")


def _parse_selector(selector: str) -> tuple[str, int | None]:
    if selector == "G":
        return "G", None
    m = _GI_RE.match(selector)
    if m:
        return "Gi", int(m.group(1))
    if selector in ("T", "Tplus", "Tminus", "Bl", "Br", "B"):
        return selector, None
    raise ValueError("unknown family selector: %r" % selector)


def generate_set(
    selector: str, n: int, signature: str | None = None
) -> frozenset[OrderedForest]:
    """Enumerate the degree-n members of a family.

    G/G0/G<i> selectors return forests (the union over the admissible
    signatures); the tree families (T, Tplus, Tminus, Bl, Br) return their
    trees as single-tree forests.  A signature narrows the G selector to one
    signature set and is rejected for every other selector.
    """
    kind, i = _parse_selector(selector)
    limit = CLOSURE_MAX_DEGREE if kind == "Br" else ENUMERATION_MAX_DEGREE
    if not 1 <= n <= limit:
        raise ValueError("degree must be in 1..%d for %s, got %d" % (limit, selector, n))
    if signature is not None:
        if kind != "G":
            raise ValueError("a signature can only narrow the G selector")
        sig = canonical_signature(signature)
        if len(sig) != n:
            raise ValueError("signature length %d does not match degree %d" % (len(sig), n))
        return _signature_set(sig)
    if kind == "G":
        tail = n - 1
    elif kind == "Gi":
        tail = i
    else:
        tail = None
    if tail is not None:
        out: set[OrderedForest] = set()
        for sig in _signatures_with_free_tail(n, tail):
            out |= _signature_set(sig)
        return frozenset(out)
    if kind == "T":
        return frozenset(OrderedForest((t,)) for t in _t_trees(n))
    if kind == "Tplus":
        return frozenset(OrderedForest((t,)) for t in _t_trees_oriented(n, "+"))
    if kind == "Tminus":
        return frozenset(OrderedForest((t,)) for t in _t_trees_oriented(n, "-"))
    if kind == "Bl":
        return frozenset(OrderedForest((t,)) for t in _bl_trees(n))
    if kind == "Br":
        return frozenset(f for f in _br_layer(n) if f.is_tree)
    raise ValueError("selector %r cannot be enumerated by degree" % selector)


# --- the T family (and its one-sided halves) --------------------------------


@lru_cache(maxsize=None)
def _t_words(n: int) -> frozenset[OrderedForest]:
    if n == 0:
        return frozenset({EMPTY_FOREST})
    out: set[OrderedForest] = set()
    for k in range(1, n + 1):
        for tree in _t_trees(k):
            head = OrderedForest((tree,))
            for tail in _t_words(n - k):
                out.add(concat(head, tail))
    return frozenset(out)


@lru_cache(maxsize=None)
def _t_trees(n: int) -> frozenset[OrderedTree]:
    return _t_trees_oriented(n, "+") | _t_trees_oriented(n, "-")


@lru_cache(maxsize=None)
def _t_trees_oriented(n: int, side: str) -> frozenset[OrderedTree]:
    if n == 1:
        return frozenset({OrderedTree(1)})
    build = b_plus if side == "+" else b_minus
    return frozenset(build(w) for w in _t_words(n - 1))


@lru_cache(maxsize=None)
def _bl_words(n: int) -> frozenset[OrderedForest]:
    if n == 0:
        return frozenset({EMPTY_FOREST})
    out: set[OrderedForest] = set()
    for k in range(1, n + 1):
        for tree in _bl_trees(k):
            head = OrderedForest((tree,))
            for tail in _bl_words(n - k):
                out.add(concat(head, tail))
    return frozenset(out)


@lru_cache(maxsize=None)
def _bl_trees(n: int) -> frozenset[OrderedTree]:
    if n == 1:
        return frozenset({OrderedTree(1)})
    return frozenset(b_minus(w) for w in _bl_words(n - 1))


@lru_cache(maxsize=None)
def _br_layer(n: int) -> frozenset[OrderedForest]:
    """Degree-n layer of the closure of the single vertex under concatenation
    and the right graft."""
    if n == 1:
        return frozenset({SINGLE_VERTEX})
    out: set[OrderedForest] = set()
    for k in range(1, n):
        for a in _br_layer(k):
            for b in _br_layer(n - k):
                out.add(concat(a, b))
                out.add(rgraft_basis(a, b))
    return frozenset(out)


def generate_words(selector: str, n: int) -> frozenset[OrderedForest]:
    """All degree-n words (block concatenations) over a family's trees."""
    if n == 0:
        return frozenset({EMPTY_FOREST})
    return _words_over(selector, n)


@lru_cache(maxsize=None)
def _words_over(selector: str, n: int) -> frozenset[OrderedForest]:
    if n == 0:
        return frozenset({EMPTY_FOREST})
    out: set[OrderedForest] = set()
    for k in range(1, n + 1):
        for f in generate_set(selector, k):
            if not f.is_tree:
                continue
            for tail in _words_over(selector, n - k):
                out.add(concat(f, tail))
    return frozenset(out)


# --- membership -------------------------------------------------------------

_T_MEMO: dict[OrderedTree, bool] = {}
_BL_MEMO: dict[OrderedTree, bool] = {}


def _is_t_tree(tree: OrderedTree) -> bool:
    cached = _T_MEMO.get(tree)
    if cached is not None:
        return cached
    n = tree.degree
    if n == 1:
        result = tree.label == 1
    elif tree.label == n:
        result = _blocks_all_t(tree.children)
    else:
        kids = tree.children
        if kids and kids[-1].label == n:
            head = OrderedTree(tree.label, kids[:-1])
            result = _blocks_all_t((head,) + kids[-1].children)
        else:
            result = False
    _T_MEMO[tree] = result
    return result


def _blocks_all_t(trees: tuple[OrderedTree, ...]) -> bool:
    offset = 0
    for t in trees:
        d = t.degree
        labels = list(t.labels())
        if min(labels) != offset + 1 or max(labels) != offset + d:
            return False
        if not _is_t_tree(_shift_tree(t, -offset)):
            return False
        offset += d
    return True


def _is_bl_tree(tree: OrderedTree) -> bool:
    cached = _BL_MEMO.get(tree)
    if cached is not None:
        return cached
    n = tree.degree
    if n == 1:
        result = tree.label == 1
    elif tree.label == n:
        offset = 0
        result = True
        for t in tree.children:
            d = t.degree
            labels = list(t.labels())
            if min(labels) != offset + 1 or max(labels) != offset + d:
                result = False
                break
            if not _is_bl_tree(_shift_tree(t, -offset)):
                result = False
                break
            offset += d
    else:
        result = False
    _BL_MEMO[tree] = result
    return result


def is_basis_forest(forest: OrderedForest) -> bool:
    """True when the forest is a word over T trees (the empty word counts)."""
    offset = 0
    for t in forest.trees:
        d = t.degree
        labels = list(t.labels())
        if min(labels) != offset + 1 or max(labels) != offset + d:
            return False
        if not _is_t_tree(_shift_tree(t, -offset)):
            return False
        offset += d
    return True


def membership(selector: str, forest: OrderedForest) -> bool:
    """Decide whether a forest belongs to a family.

    The G selectors accept forests; the tree selectors require a single tree.
    ``B`` accepts any word over T trees, including the empty forest.
    """
    kind, i = _parse_selector(selector)
    if kind == "B":
        return is_basis_forest(forest)
    if forest.is_empty:
        return False
    if kind in ("G", "Gi"):
        try:
            sig = signature_of(forest)
        except NotInFamilyError:
            return False
        if kind == "G":
            return True
        plus_prefix = max(0, len(sig) - i)
        return all(ch == "+" for ch in sig[:plus_prefix])
    if not forest.is_tree:
        return False
    tree = forest.trees[0]
    n = tree.degree
    if kind == "T":
        return _is_t_tree(tree)
    if kind == "Tplus":
        if n > 1 and not (tree.children and tree.children[-1].label == n):
            return False
        return _is_t_tree(tree)
    if kind == "Tminus":
        if n > 1 and tree.label != n:
            return False
        return _is_t_tree(tree)
    if kind == "Bl":
        return _is_bl_tree(tree)
    if kind == "Br":
        if n > CLOSURE_MAX_DEGREE:
            raise ValueError(
                "Br membership is decided against the generated closure, degree <= %d"
                % CLOSURE_MAX_DEGREE
            )
        return forest in _br_layer(n)
    raise ValueError("unknown family selector: %r" % selector)


# --- counting indexings of a shape ------------------------------------------


def count_indexings(shape: PlaneTree, family: str) -> int:
    """Number of ways to label a shape into the family ("G" or "T").

    For "G": one plus, for each proper depth i along the leftmost path, the
    product of the fertilities of the path vertices at depth <= i.

    For "T": the recursive count a(v); a leaf counts 1, and an inner vertex
    with children c_1..c_k counts prod a(c_j) plus, for each split point i,
    (prod of a(c_j) for j < i) times (prod over the children d of each c_j
    with j >= i of a(d)).
    """
    if family == "G":
        total, prod = 1, 1
        node = shape
        while node.children:
            prod *= len(node.children)
            total += prod
            node = node.children[0]
        return total
    if family == "T":
        memo: dict[PlaneTree, int] = {}

        def a(v: PlaneTree) -> int:
            hit = memo.get(v)
            if hit is not None:
                return hit
            if not v.children:
                memo[v] = 1
                return 1
            avals = [a(c) for c in v.children]
            gprod = [math.prod(a(d) for d in c.children) for c in v.children]
            total = math.prod(avals)
            for i in range(len(avals)):
                total += math.prod(avals[:i]) * math.prod(gprod[i:])
            memo[v] = total
            return total

        return a(shape)
    raise ValueError("count_indexings supports the families 'G' and 'T', got %r" % family)


def _labelled_tuple(shape: PlaneTree, it):
    label = next(it)
    return (label, tuple(_labelled_tuple(c, it) for c in shape.children))


def _g_accepts(trees: tuple, n: int) -> bool:
    for k in range(n, 1, -1):
        if len(trees) == 1 and trees[0][0] == k:
            trees = trees[0][1]
            continue
        label, kids = trees[-1]
        if label == k and not kids:
            trees = trees[:-1]
            continue
        if kids and kids[-1][0] == k:
            trees = trees[:-1] + ((label, kids[:-1]),) + kids[-1][1]
            continue
        return False
    return True


def _span(t) -> tuple[int, int, int]:
    size, mn, mx = 1, t[0], t[0]
    for c in t[1]:
        s, m, x = _span(c)
        size += s
        mn = min(mn, m)
        mx = max(mx, x)
    return size, mn, mx


def _t_accepts(t, offset: int, size: int) -> bool:
    # caller guarantees the labels of t are exactly offset+1..offset+size
    if size == 1:
        return True
    label, kids = t
    if label == offset + size:
        return _t_word_accepts(kids, offset)
    if kids and kids[-1][0] == offset + size:
        head = (label, kids[:-1])
        return _t_word_accepts((head,) + kids[-1][1], offset)
    return False


def _t_word_accepts(trees, offset: int) -> bool:
    for t in trees:
        size, mn, mx = _span(t)
        if mn != offset + 1 or mx != offset + size:
            return False
        if not _t_accepts(t, offset, size):
            return False
        offset += size
    return True


def oracle_count_indexings(shape: PlaneTree, family: str = "G") -> int:
    """Brute force over all n! labellings of the shape.

    Independent of the counting formulas: each labelling is tested by the
    membership peel.  Guarded to degree <= 8.
    """
    n = shape.degree
    if n > ENUMERATION_MAX_DEGREE:
        raise ValueError("oracle is limited to degree <= %d" % ENUMERATION_MAX_DEGREE)
    count = 0
    if family == "G":
        for perm in itertools.permutations(range(1, n + 1)):
            if _g_accepts((_labelled_tuple(shape, iter(perm)),), n):
                count += 1
        return count
    if family == "T":
        for perm in itertools.permutations(range(1, n + 1)):
            if _t_accepts(_labelled_tuple(shape, iter(perm)), 0, n):
                count += 1
        return count

    def to_tree(t) -> OrderedTree:
        return OrderedTree(t[0], tuple(to_tree(c) for c in t[1]))

    for perm in itertools.permutations(range(1, n + 1)):
        tree = to_tree(_labelled_tuple(shape, iter(perm)))
        if membership(family, OrderedForest((tree,))):
            count += 1
    return count


# --- canonical indexings and ladders ----------------------------------------


def canonical_indexing(shape: PlaneTree, family: str) -> OrderedTree:
    """The unique labelling of a shape inside an index-one family.

    "G0": peel the root's last child v, label the shape with v removed, then
    re-attach via the plus move (v's children ride along as new trees first).
    "Bl": label in post-order (each subtree before its root, left to right).
    """
    if family == "G0":
        return _canonical_allplus(shape)
    if family == "Bl":
        counter = itertools.count(1)

        def go(s: PlaneTree) -> OrderedTree:
            kids = tuple(go(c) for c in s.children)
            return OrderedTree(next(counter), kids)

        return go(shape)
    raise ValueError("canonical_indexing supports 'G0' and 'Bl', got %r" % family)


def _canonical_allplus(shape: PlaneTree) -> OrderedTree:
    if not shape.children:
        return OrderedTree(1)
    last = shape.children[-1]
    head = _canonical_allplus(PlaneTree(shape.children[:-1]))
    forest = OrderedForest((head,))
    for sub in last.children:
        forest = concat(forest, OrderedForest((_canonical_allplus(sub),)))
    return b_plus(forest)


def ladders(n: int) -> dict[str, OrderedTree]:
    """The n chain-shaped members of the signature families, one per
    canonical signature of length n (plus block first, then minus letters)."""
    if n < 1:
        raise ValueError("degree must be positive")
    plus: dict[int, OrderedTree] = {1: OrderedTree(1)}
    if n >= 2:
        plus[2] = OrderedTree(1, (OrderedTree(2),))
    for i in range(3, n + 1):
        grown = concat(SINGLE_VERTEX, OrderedForest((plus[i - 2],)))
        plus[i] = b_plus(grown)
    out: dict[str, OrderedTree] = {}
    for i in range(1, n + 1):
        tree = plus[i]
        for _ in range(n - i):
            tree = b_minus(OrderedForest((tree,)))
        out["+" * i + "-" * (n - i)] = tree
    return out
