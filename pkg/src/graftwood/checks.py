"""Verification suites: each runs a bundle of exhaustive small-degree checks
and reports one row per property.

A suite never raises on a mathematical failure; violations land in the row
details so the caller can print them and exit nonzero.  Degrees default to
the documented desk-scale bounds and can be lowered (or raised, within the
library guards) with ``max_degree`` or the GRAFTWOOD_MAX_DEGREE variable.
"""

from __future__ import annotations

import itertools
import os
from functools import lru_cache

from .algebra import (
    AlgebraElement,
    antipode,
    check_b_operator_coproduct,
    coproduct,
    counit,
    expand_left,
    expand_right,
    prim_tot_dimension,
    product,
)
from .families import (
    canonical_signature,
    count_indexings,
    generate_set,
    generate_words,
    is_basis_forest,
    ladders,
    membership,
    oracle_count_indexings,
    signature_of,
)
from .forest import EMPTY_FOREST, OrderedForest, PlaneTree, concat
from .grafts import check_identity, generate_closure
from .series import series_coefficients, verify_against_enumeration

__all__ = ["SUITES", "DEGREE_ENV_VAR", "resolve_degree", "run_suite"]

SUITES = (
    "hopf",
    "duplicial",
    "dendriform",
    "leftgraft",
    "rightgraft",
    "bigraft",
    "counts",
    "primtot",
    "closure",
)

DEGREE_ENV_VAR = "GRAFTWOOD_MAX_DEGREE"

_DEFAULT_DEGREE = {
    "hopf": 6,
    "duplicial": 6,
    "dendriform": 5,
    "leftgraft": 6,
    "rightgraft": 6,
    "bigraft": 6,
    "counts": 8,
    "primtot": 5,
    "closure": 6,
}


def resolve_degree(suite: str, max_degree: int | None = None) -> int:
    """Effective bound for a suite: explicit argument, then the environment
    override, then the per-suite default."""
    if suite not in _DEFAULT_DEGREE:
        raise ValueError("unknown suite %r (expected one of: %s)" % (suite, ", ".join(SUITES)))
    if max_degree is None:
        raw = os.environ.get(DEGREE_ENV_VAR)
        if raw is not None:
            try:
                max_degree = int(raw)
            except ValueError:
                raise ValueError("%s must be an integer, got %r" % (DEGREE_ENV_VAR, raw))
    if max_degree is None:
        return _DEFAULT_DEGREE[suite]
    if max_degree < 1:
        raise ValueError("max degree must be positive")
    return max_degree


# --- shared universes -----------------------------------------------------------


def _words(selector: str, max_total: int) -> list[OrderedForest]:
    out = []
    for k in range(1, max_total + 1):
        out.extend(sorted(generate_words(selector, k), key=lambda f: f.text))
    return out


def _pairs(max_total: int):
    singles = _words("T", max_total - 1)
    for x, y in itertools.product(singles, repeat=2):
        if x.degree + y.degree <= max_total:
            yield x, y


def _triples(max_total: int):
    singles = _words("T", max_total - 2)
    for x, y, z in itertools.product(singles, repeat=3):
        if x.degree + y.degree + z.degree <= max_total:
            yield x, y, z


def _identity_row(name: str, universe) -> dict:
    checked = 0
    failures = []
    for args in universe:
        checked += 1
        if not check_identity(name, list(args)):
            failures.append("(%s)" % ", ".join(f.text for f in args))
    if failures:
        detail = "%d of %d cases fail, e.g. %s" % (len(failures), checked, failures[0])
    else:
        detail = "%d cases" % checked
    return {"label": name, "ok": not failures, "detail": detail}


def _sweep(names, universe_factory) -> list[dict]:
    return [_identity_row(name, universe_factory()) for name in names]


# --- family bases for the coproduct-closure rows ---------------------------------


@lru_cache(maxsize=None)
def _product_basis_layers(n_max: int) -> tuple[frozenset, ...]:
    """Degree layers of the span generated by the signature forests under
    the shifted concatenation product."""
    layers: list[frozenset] = [frozenset({EMPTY_FOREST})]
    for d in range(1, n_max + 1):
        layer = set(generate_set("G", d))
        for k in range(1, d):
            for g in generate_set("G", k):
                for w in layers[d - k]:
                    layer.add(concat(g, w))
        layers.append(frozenset(layer))
    return tuple(layers)


@lru_cache(maxsize=None)
def _word_layers(selector: str, n_max: int) -> tuple[frozenset, ...]:
    return tuple(
        frozenset({EMPTY_FOREST}) if d == 0 else generate_words(selector, d)
        for d in range(n_max + 1)
    )


def _in_layers(layers, f: OrderedForest) -> bool:
    return f.degree < len(layers) and f in layers[f.degree]


def _closure_row(label: str, basis, member) -> dict:
    checked = 0
    failures = []
    for f in basis:
        checked += 1
        for (lea, roo), _ in coproduct(f).terms.items():
            if not (member(lea) and member(roo)):
                failures.append("%s -> (%s, %s)" % (f.text, lea.text, roo.text))
                break
    if failures:
        detail = "%d of %d forests leak, e.g. %s" % (len(failures), checked, failures[0])
    else:
        detail = "%d forests, all factors stay inside" % checked
    return {"label": label, "ok": not failures, "detail": detail}


# --- suites -----------------------------------------------------------------------


def _suite_hopf(n: int) -> list[dict]:
    rows = []
    small = min(n, 5)
    words = _words("T", small)

    bad = [f.text for f in words if expand_left(coproduct(f)) != expand_right(coproduct(f))]
    rows.append(
        {
            "label": "coassociativity",
            "ok": not bad,
            "detail": ("fails on %s" % bad[0]) if bad else "%d forests, degrees 1..%d" % (len(words), small),
        }
    )

    bad = []
    for f in words:
        lhs = AlgebraElement.zero()
        rhs = AlgebraElement.zero()
        for (a, b), c in coproduct(f).terms.items():
            lhs = lhs + AlgebraElement.of(b) * (counit(a) * c)
            rhs = rhs + AlgebraElement.of(a) * (counit(b) * c)
        if not (lhs == rhs == AlgebraElement.of(f)):
            bad.append(f.text)
    rows.append(
        {
            "label": "counit",
            "ok": not bad,
            "detail": ("fails on %s" % bad[0]) if bad else "%d forests" % len(words),
        }
    )

    bad = []
    for f in words:
        lhs = AlgebraElement.zero()
        rhs = AlgebraElement.zero()
        for (a, b), c in coproduct(f).terms.items():
            lhs = lhs + product(antipode(a, max_degree=small), b) * c
            rhs = rhs + product(a, antipode(b, max_degree=small)) * c
        expected = AlgebraElement.unit() * counit(f)
        if not (lhs == expected and rhs == expected):
            bad.append(f.text)
    rows.append(
        {
            "label": "antipode",
            "ok": not bad,
            "detail": ("fails on %s" % bad[0]) if bad else "%d forests" % len(words),
        }
    )

    move_words = _words("T", min(n, 4))
    bad = [f.text for f in move_words if not check_b_operator_coproduct(f)]
    rows.append(
        {
            "label": "append-move-compatibility",
            "ok": not bad,
            "detail": ("fails on %s" % bad[0]) if bad else "%d forests" % len(move_words),
        }
    )

    deg = min(n, 6)
    layers = _product_basis_layers(deg)
    basis = [f for d in range(1, deg + 1) for f in sorted(layers[d], key=lambda x: x.text)]
    rows.append(
        _closure_row(
            "factor-closure-signature-products",
            basis,
            lambda f: _in_layers(layers, f),
        )
    )

    rows.append(
        _closure_row(
            "factor-closure-word-basis",
            _words("T", deg),
            is_basis_forest,
        )
    )

    for i in (1, 2, 3):
        layer_i = _word_layers("G%d" % i, deg)
        rows.append(
            _closure_row(
                "factor-closure-layer-%d" % i,
                _words("G%d" % i, deg),
                lambda f, L=layer_i: _in_layers(L, f),
            )
        )

    # On single trees the branch legs of the reduced coproduct drop one
    # layer while the trunk stays put.  The first layer has no room to drop
    # (1[3[2]] sheds the branch 2[1]), and at word level the coproduct being
    # multiplicative forces whole factors into either leg, so neither of
    # those variants is asserted.
    for i in (2, 3):
        branch = _word_layers("G%d" % (i - 1), deg)
        checked = 0
        failures = []
        for d in range(1, deg + 1):
            for f in sorted(generate_set("G%d" % i, d), key=lambda x: x.text):
                if not f.is_tree:
                    continue
                checked += 1
                for (lea, roo), _ in coproduct(f, "reduced").terms.items():
                    if not (
                        _in_layers(branch, lea)
                        and roo.is_tree
                        and membership("G%d" % i, roo)
                    ):
                        failures.append("%s -> (%s, %s)" % (f.text, lea.text, roo.text))
                        break
        rows.append(
            {
                "label": "branch-refinement-layer-%d" % i,
                "ok": not failures,
                "detail": (
                    "%d of %d trees leak, e.g. %s" % (len(failures), checked, failures[0])
                )
                if failures
                else "%d trees, branches drop a layer" % checked,
            }
        )
    return rows


def _suite_duplicial(n: int) -> list[dict]:
    return _sweep(("E1a", "E1b", "E1c"), lambda: _triples(n))


def _suite_dendriform(n: int) -> list[dict]:
    rows = _sweep(("E2a", "E2b", "E2c"), lambda: ((f,) for f in _words("T", n)))
    rows += _sweep(
        ("E3prec", "E3succ", "E4prec", "E4succ", "DELTASUCC", "DELTAPREC"),
        lambda: _pairs(n),
    )
    return rows


def _suite_leftgraft(n: int) -> list[dict]:
    return _sweep(("LGa", "LGb"), lambda: _triples(n))


def _suite_rightgraft(n: int) -> list[dict]:
    return _sweep(("RGa", "RGb"), lambda: _triples(n))


def _suite_bigraft(n: int) -> list[dict]:
    return _sweep(("BIGRAFT",), lambda: _triples(n))


_COUNT_TABLES = (
    ("Binfty_trees", 8),
    ("Binfty_forests", 8),
    ("Binfty_length(1)", 8),
    ("Binfty_length(2)", 8),
    ("Binfty_length(3)", 8),
    ("B0_trees", 8),
    ("B0_forests", 8),
    ("Bi_trees(1)", 8),
    ("Bi_forests(1)", 8),
    ("Bi_trees(2)", 8),
    ("Bi_forests(2)", 8),
    ("Bi_trees(3)", 8),
    ("Bi_forests(3)", 8),
    ("Bi_trees(4)", 8),
    ("Bi_forests(4)", 8),
    ("Bi_trees(5)", 8),
    ("Bi_forests(5)", 8),
    ("Bi_trees(6)", 8),
    ("Bi_forests(6)", 8),
    ("B_trees", 7),
    ("B_forests", 7),
)


def _all_shapes(n: int) -> list[PlaneTree]:
    if n == 1:
        return [PlaneTree()]
    out = []
    for kids in _shape_forests(n - 1):
        out.append(PlaneTree(kids))
    return out


def _shape_forests(m: int):
    if m == 0:
        return [()]
    out = []
    for k in range(1, m + 1):
        for head in _all_shapes(k):
            for rest in _shape_forests(m - k):
                out.append((head,) + rest)
    return out


def _suite_counts(n: int) -> list[dict]:
    rows = []
    for series_id, cap in _COUNT_TABLES:
        deg = min(n, cap)
        report = verify_against_enumeration(series_id, deg)
        bad = [r for r in report["rows"] if not r["match"]]
        rows.append(
            {
                "label": "table-%s" % series_id,
                "ok": report["ok"],
                "detail": (
                    "degree %d expected %d, enumerated %d" % (bad[0]["degree"], bad[0]["expected"], bad[0]["enumerated"])
                )
                if bad
                else "degrees 1..%d agree" % deg,
            }
        )

    deg = min(n, 8)
    failures = []
    for k in range(1, deg + 1):
        chains = ladders(k)
        expected_sigs = {"+" * i + "-" * (k - i) for i in range(1, k + 1)}
        found = {
            f
            for f in generate_set("G", k)
            if f.is_tree and _is_chain(f.trees[0])
        }
        sigs = {canonical_signature(signature_of(f)) for f in found}
        if not (
            len(chains) == k
            and set(chains) == expected_sigs
            and found == {OrderedForest((t,)) for t in chains.values()}
            and sigs == expected_sigs
        ):
            failures.append("degree %d" % k)
    rows.append(
        {
            "label": "chain-census",
            "ok": not failures,
            "detail": failures[0] if failures else "degrees 1..%d, one chain per signature" % deg,
        }
    )

    deg = min(n, 6)
    checked = 0
    failures = []
    for k in range(1, deg + 1):
        for shape in _all_shapes(k):
            for family in ("G", "T"):
                checked += 1
                if count_indexings(shape, family) != oracle_count_indexings(shape, family):
                    failures.append("%s in %s" % (shape, family))
    rows.append(
        {
            "label": "indexing-counts",
            "ok": not failures,
            "detail": (
                "%d of %d cases disagree, e.g. %s" % (len(failures), checked, failures[0])
            )
            if failures
            else "%d shape/family cases match the oracle" % checked,
        }
    )
    return rows


def _is_chain(tree) -> bool:
    node = tree
    while node.children:
        if len(node.children) != 1:
            return False
        node = node.children[0]
    return True


def _suite_primtot(n: int) -> list[dict]:
    deg = min(n, 5)
    report = verify_against_enumeration("D_dims", deg)
    bad = [r for r in report["rows"] if not r["match"]]
    rows = [
        {
            "label": "kernel-dimensions",
            "ok": report["ok"],
            "detail": (
                "degree %d expected %d, got %d" % (bad[0]["degree"], bad[0]["expected"], bad[0]["enumerated"])
            )
            if bad
            else "degrees 1..%d match %s"
            % (deg, [r["expected"] for r in report["rows"]]),
        }
    ]

    n_max = 24
    fb = series_coefficients("B_forests", n_max)
    fb[0] = 1
    d = series_coefficients("D_dims", n_max)
    sq = [sum(fb[a] * fb[m - a] for a in range(m + 1)) for m in range(n_max + 1)]
    ok = all(
        sum(d[k] * sq[m - k] for k in range(1, m + 1)) == fb[m] for m in range(1, n_max + 1)
    )
    rows.append(
        {
            "label": "series-quotient",
            "ok": ok,
            "detail": "quotient relation holds to degree %d" % n_max if ok else "quotient relation broken",
        }
    )
    return rows


def _suite_closure(n: int) -> list[dict]:
    deg = min(n, 6)
    targets = (
        ("concat+lgraft+rgraft", ("concat", "lgraft", "rgraft"), "T"),
        ("concat+nwarrow", ("concat", "nwarrow"), "Bl"),
        ("concat+lgraft", ("concat", "lgraft"), "Bl"),
    )
    rows = []
    for label, ops, selector in targets:
        got = generate_closure(ops, deg)
        want = frozenset(_words(selector, deg))
        missing = sorted(f.text for f in want - got)[:3]
        extra = sorted(f.text for f in got - want)[:3]
        ok = got == want
        if ok:
            detail = "%d forests, degrees 1..%d" % (len(got), deg)
        else:
            detail = "missing %s / extra %s" % (missing or "-", extra or "-")
        rows.append({"label": label, "ok": ok, "detail": detail})
    return rows


_RUNNERS = {
    "hopf": _suite_hopf,
    "duplicial": _suite_duplicial,
    "dendriform": _suite_dendriform,
    "leftgraft": _suite_leftgraft,
    "rightgraft": _suite_rightgraft,
    "bigraft": _suite_bigraft,
    "counts": _suite_counts,
    "primtot": _suite_primtot,
    "closure": _suite_closure,
}


def run_suite(suite: str, max_degree: int | None = None) -> dict:
    """Run one named suite and collect its rows.

    The result is {"suite", "max_degree", "ok", "rows"} with one row per
    property; "ok" is the conjunction of the rows.
    """
    n = resolve_degree(suite, max_degree)
    rows = _RUNNERS[suite](n)
    return {
        "suite": suite,
        "max_degree": n,
        "ok": all(r["ok"] for r in rows),
        "rows": rows,
    }
