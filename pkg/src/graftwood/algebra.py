"""Linear spans of forests, the cut coproduct and its variants, the antipode.

Elements are finite rational combinations of ordered forests; tensors are
combinations of forest pairs.  The coproduct of a forest sums, over its
admissible cuts, the extracted sub-forest tensor the remainder.  Variants
restrict which cuts contribute:

* ``full``      all cuts,
* ``reduced``   neither the empty cut nor the total one,
* ``leftRoot``  cuts avoiding the root of the leftmost tree,
* ``rightRoot`` cuts avoiding the root of the rightmost tree,
* ``precRed``   nontrivial cuts extracting the rightmost leaf,
* ``succRed``   nontrivial cuts keeping the rightmost leaf.
"""

from __future__ import annotations

from fractions import Fraction

from .families import b_minus, b_plus, generate_words
from .forest import (
    EMPTY_FOREST,
    OrderedForest,
    admissible_cuts,
    ancestor_map,
    concat,
    cut_split,
    rightmost_leaf_label,
    root_labels,
    standardize,
)

__all__ = [
    "AlgebraElement",
    "Tensor2Element",
    "COPRODUCT_VARIANTS",
    "product",
    "coproduct",
    "counit",
    "antipode",
    "prim_tot_dimension",
    "check_b_operator_coproduct",
    "expand_left",
    "expand_right",
    "as_element",
]


def _clean(terms: dict) -> dict:
    out = {}
    for key, coeff in terms.items():
        coeff = Fraction(coeff)
        if coeff:
            out[key] = coeff
    return out


class AlgebraElement:
    """A finite rational combination of ordered forests."""

    __slots__ = ("terms",)

    def __init__(self, terms: dict[OrderedForest, Fraction] | None = None):
        self.terms: dict[OrderedForest, Fraction] = _clean(terms or {})

    @classmethod
    def zero(cls) -> "AlgebraElement":
        return cls()

    @classmethod
    def unit(cls) -> "AlgebraElement":
        return cls({EMPTY_FOREST: Fraction(1)})

    @classmethod
    def of(cls, forest: OrderedForest, coeff=1) -> "AlgebraElement":
        return cls({forest: Fraction(coeff)})

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def __add__(self, other: "AlgebraElement") -> "AlgebraElement":
        out = dict(self.terms)
        for f, c in other.terms.items():
            out[f] = out.get(f, Fraction(0)) + c
        return AlgebraElement(out)

    def __neg__(self) -> "AlgebraElement":
        return AlgebraElement({f: -c for f, c in self.terms.items()})

    def __sub__(self, other: "AlgebraElement") -> "AlgebraElement":
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, AlgebraElement):
            return product(self, other)
        return AlgebraElement({f: c * other for f, c in self.terms.items()})

    def __rmul__(self, scalar):
        return self * scalar

    def __eq__(self, other) -> bool:
        return isinstance(other, AlgebraElement) and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def sorted_terms(self) -> list[tuple[OrderedForest, Fraction]]:
        return sorted(self.terms.items(), key=lambda item: item[0].text)

    def __repr__(self) -> str:
        if self.is_zero:
            return "0"
        bits = []
        for f, c in self.sorted_terms():
            bits.append("%s*%s" % (c, f.text))
        return " + ".join(bits)


class Tensor2Element:
    """A finite rational combination of forest pairs."""

    __slots__ = ("terms",)

    def __init__(
        self,
        terms: dict[tuple[OrderedForest, OrderedForest], Fraction] | None = None,
    ):
        self.terms = _clean(terms or {})

    @classmethod
    def zero(cls) -> "Tensor2Element":
        return cls()

    @classmethod
    def of(cls, left: OrderedForest, right: OrderedForest, coeff=1) -> "Tensor2Element":
        return cls({(left, right): Fraction(coeff)})

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def __add__(self, other: "Tensor2Element") -> "Tensor2Element":
        out = dict(self.terms)
        for pair, c in other.terms.items():
            out[pair] = out.get(pair, Fraction(0)) + c
        return Tensor2Element(out)

    def __neg__(self) -> "Tensor2Element":
        return Tensor2Element({p: -c for p, c in self.terms.items()})

    def __sub__(self, other: "Tensor2Element") -> "Tensor2Element":
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, Tensor2Element):
            out: dict = {}
            for (a, b), c in self.terms.items():
                for (a2, b2), c2 in other.terms.items():
                    pair = (concat(a, a2), concat(b, b2))
                    out[pair] = out.get(pair, Fraction(0)) + c * c2
            return Tensor2Element(out)
        return Tensor2Element({p: c * other for p, c in self.terms.items()})

    def __rmul__(self, scalar):
        return self * scalar

    def __eq__(self, other) -> bool:
        return isinstance(other, Tensor2Element) and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def sorted_terms(self):
        """Terms with the whole-forest-extracted pair first, the untouched
        pair second, then lexicographic on the printed pair."""

        def key(item):
            (lea, roo), _ = item
            return (not roo.is_empty, not lea.is_empty, lea.text, roo.text)

        return sorted(self.terms.items(), key=key)

    def map_legs(self, left=None, right=None) -> "Tensor2Element":
        """Apply forest-to-forest maps to the legs of every term."""
        out: dict = {}
        for (a, b), c in self.terms.items():
            pair = (left(a) if left else a, right(b) if right else b)
            out[pair] = out.get(pair, Fraction(0)) + c
        return Tensor2Element(out)

    def __repr__(self) -> str:
        if self.is_zero:
            return "0"
        bits = []
        for (a, b), c in self.sorted_terms():
            bits.append("%s*(%s (x) %s)" % (c, a.text, b.text))
        return " + ".join(bits)


def as_element(x) -> AlgebraElement:
    if isinstance(x, AlgebraElement):
        return x
    if isinstance(x, OrderedForest):
        return AlgebraElement.of(x)
    raise TypeError("expected a forest or an algebra element, got %r" % type(x))


def product(a, b) -> AlgebraElement:
    """Bilinear extension of shifted concatenation."""
    a, b = as_element(a), as_element(b)
    out: dict = {}
    for f, c in a.terms.items():
        for g, d in b.terms.items():
            h = concat(f, g)
            out[h] = out.get(h, Fraction(0)) + c * d
    return AlgebraElement(out)


def counit(x) -> Fraction:
    """Coefficient of the empty forest."""
    return as_element(x).terms.get(EMPTY_FOREST, Fraction(0))


COPRODUCT_VARIANTS = (
    "full",
    "reduced",
    "leftRoot",
    "rightRoot",
    "precRed",
    "succRed",
)

_VARIANT_ALIASES = {
    "left-root": "leftRoot",
    "right-root": "rightRoot",
    "prec": "precRed",
    "succ": "succRed",
}

_COPRODUCT_CACHE: dict[tuple[OrderedForest, str], Tensor2Element] = {}


def _normalize_variant(variant: str) -> str:
    variant = _VARIANT_ALIASES.get(variant, variant)
    if variant not in COPRODUCT_VARIANTS:
        raise ValueError("unknown coproduct variant: %r" % variant)
    return variant


def _forest_coproduct(forest: OrderedForest, variant: str) -> Tensor2Element:
    key = (forest, variant)
    cached = _COPRODUCT_CACHE.get(key)
    if cached is not None:
        return cached
    roots = root_labels(forest)
    rootset = frozenset(roots)
    if variant in ("precRed", "succRed") and not forest.is_empty:
        leaf = rightmost_leaf_label(forest)
        above_leaf = ancestor_map(forest)[leaf] | {leaf}
    out: dict = {}
    for cut in admissible_cuts(forest):
        if variant == "reduced":
            if not cut or cut == rootset:
                continue
        elif variant == "leftRoot":
            if roots and roots[0] in cut:
                continue
        elif variant == "rightRoot":
            if roots and roots[-1] in cut:
                continue
        elif variant == "precRed":
            if not cut or cut == rootset or not (cut & above_leaf):
                continue
        elif variant == "succRed":
            if not cut or cut == rootset or (cut & above_leaf):
                continue
        pair = cut_split(forest, cut)
        out[pair] = out.get(pair, Fraction(0)) + 1
    result = Tensor2Element(out)
    _COPRODUCT_CACHE[key] = result
    return result


def coproduct(x, variant: str = "full") -> Tensor2Element:
    """Cut coproduct of a forest or an element, in the requested variant."""
    variant = _normalize_variant(variant)
    if isinstance(x, OrderedForest):
        return _forest_coproduct(x, variant)
    out = Tensor2Element.zero()
    for f, c in as_element(x).terms.items():
        out = out + _forest_coproduct(f, variant) * c
    return out


Tensor3Terms = dict


def expand_left(t2: Tensor2Element, variant: str = "full") -> Tensor3Terms:
    """Apply a coproduct variant to the left legs: terms (a', a'', b)."""
    out: Tensor3Terms = {}
    variant = _normalize_variant(variant)
    for (a, b), c in t2.terms.items():
        for (x, y), d in _forest_coproduct(a, variant).terms.items():
            key = (x, y, b)
            value = out.get(key, Fraction(0)) + c * d
            if value:
                out[key] = value
            else:
                out.pop(key, None)
    return out


def expand_right(t2: Tensor2Element, variant: str = "full") -> Tensor3Terms:
    """Apply a coproduct variant to the right legs: terms (a, b', b'')."""
    out: Tensor3Terms = {}
    variant = _normalize_variant(variant)
    for (a, b), c in t2.terms.items():
        for (x, y), d in _forest_coproduct(b, variant).terms.items():
            key = (a, x, y)
            value = out.get(key, Fraction(0)) + c * d
            if value:
                out[key] = value
            else:
                out.pop(key, None)
    return out


DEFAULT_ANTIPODE_DEGREE = 5

_ANTIPODE_CACHE: dict[OrderedForest, AlgebraElement] = {}


def antipode(x, max_degree: int = DEFAULT_ANTIPODE_DEGREE) -> AlgebraElement:
    """The antipode, computed degree-recursively from the reduced coproduct.

    The degree guard is a runtime budget only; raise it when needed.
    """
    x = as_element(x)
    for f in x.terms:
        if f.degree > max_degree:
            raise ValueError(
                "antipode guarded to degree <= %d (got %d); pass max_degree to raise"
                % (max_degree, f.degree)
            )
    out = AlgebraElement.zero()
    for f, c in x.terms.items():
        out = out + _antipode_forest(f) * c
    return out


def _antipode_forest(forest: OrderedForest) -> AlgebraElement:
    if forest.is_empty:
        return AlgebraElement.unit()
    cached = _ANTIPODE_CACHE.get(forest)
    if cached is not None:
        return cached
    acc = {forest: Fraction(-1)}
    for (lea, roo), c in _forest_coproduct(forest, "reduced").terms.items():
        for g, d in _antipode_forest(lea).terms.items():
            h = concat(g, roo)
            acc[h] = acc.get(h, Fraction(0)) - c * d
    result = AlgebraElement(acc)
    _ANTIPODE_CACHE[forest] = result
    return result


def prim_tot_dimension(n: int, max_degree: int = DEFAULT_ANTIPODE_DEGREE) -> int:
    """Dimension of the joint kernel of the two one-sided reduced coproducts
    on the degree-n span of the word basis."""
    if n < 1:
        raise ValueError("degree must be positive")
    if n > max_degree:
        raise ValueError(
            "prim_tot_dimension guarded to degree <= %d (got %d); pass max_degree to raise"
            % (max_degree, n)
        )
    basis = sorted(generate_words("T", n), key=lambda f: f.text)
    rows = []
    for f in basis:
        row: dict = {}
        for tag, variant in ((0, "precRed"), (1, "succRed")):
            for (lea, roo), c in _forest_coproduct(f, variant).terms.items():
                row[(tag, lea.text, roo.text)] = c
        rows.append(row)
    return len(basis) - _sparse_rank(rows)


def _sparse_rank(rows: list[dict]) -> int:
    pivots: dict = {}
    rank = 0
    for row in rows:
        row = dict(row)
        while row:
            col = min(row)
            pivot = pivots.get(col)
            if pivot is None:
                lead = row[col]
                pivots[col] = {k: v / lead for k, v in row.items()}
                rank += 1
                break
            factor = row[col]
            for k, v in pivot.items():
                new = row.get(k, Fraction(0)) - factor * v
                if new:
                    row[k] = new
                else:
                    row.pop(k, None)
    return rank


def check_b_operator_coproduct(forest: OrderedForest) -> bool:
    """Both compatibility identities of the vertex-append moves with the cut
    coproduct, checked on one nonempty basis forest."""
    if forest.is_empty:
        raise ValueError("needs a nonempty basis forest")

    def wrap(f: OrderedForest) -> OrderedForest:
        return OrderedForest((b_minus(f),))

    def hang(f: OrderedForest) -> OrderedForest:
        return OrderedForest((b_plus(f),))

    wrapped = wrap(forest)
    lhs_minus = _forest_coproduct(wrapped, "full")
    rhs_minus = _forest_coproduct(forest, "full").map_legs(right=wrap) + Tensor2Element.of(
        wrapped, EMPTY_FOREST
    )
    if lhs_minus != rhs_minus:
        return False

    hung = hang(forest)
    lhs_plus = _forest_coproduct(hung, "full")
    first = OrderedForest((forest.trees[0],))
    rest = standardize(forest.trees[1:])
    rhs_plus = (
        _forest_coproduct(forest, "leftRoot").map_legs(right=hang)
        + Tensor2Element.of(hung, EMPTY_FOREST)
        + _forest_coproduct(first, "leftRoot") * Tensor2Element.of(wrap(rest), EMPTY_FOREST)
    )
    return lhs_plus == rhs_plus
