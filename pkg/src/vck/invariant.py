"""Boltzmann weights, the conjugacy-class invariant, separation and state sums."""

from __future__ import annotations

import itertools
from collections import Counter
from dataclasses import dataclass
from typing import Sequence

from . import fpgroup as fp
from .algebra import VirtualPair, flip_table, make_named, make_pair
from .cocycle import CocyclePair, UniversalPair, check_state_sum_tables, universal_presentation
from .coloring import Coloring, colorings, count_colorings
from .diagram import LinkDiagram, UNDER, VIRTUAL
from .fpgroup import FiniteGroup, Presentation, Word


@dataclass(frozen=True)
class WeightProduct:
    # per component: [(passage index, weight), ...] in traversal order
    factors: tuple[tuple[tuple[int, object], ...], ...]
    products: tuple


def _passage_factors(d: LinkDiagram, col: Coloring, vp: VirtualPair):
    """Per component, the ``(passage, kind, x, y, exponent)`` of every weighted passage."""
    colors = col.as_dict()
    S_inv = vp.S.table.inverse()
    by_cid = {x.cid: x for x in d.crossings()}
    out = []
    for c, comp in enumerate(d.components):
        facs = []
        for i, p in enumerate(comp):
            x = by_cid[p.cid]
            left, right = colors[x.left], colors[x.right]
            if p.kind == VIRTUAL:
                facs.append((i, "g", left, right, 1))
            elif p.kind == UNDER:
                if x.kind == "+":
                    facs.append((i, "f", left, right, 1))
                else:
                    u, v = S_inv(left, right)
                    facs.append((i, "f", u, v, -1))
        out.append(facs)
    return out


def _value(cp: CocyclePair, kind: str, x: int, y: int, e: int):
    v = (cp.f if kind == "f" else cp.g)[x][y]
    if cp.finite:
        return v if e > 0 else cp.target.inv[v]
    return v if e > 0 else fp.inverse(v)


def weight_product(d: LinkDiagram, col: Coloring, cp: CocyclePair) -> WeightProduct:
    factors, products = [], []
    for facs in _passage_factors(d, col, cp.vp):
        vals = tuple((i, _value(cp, k, x, y, e)) for i, k, x, y, e in facs)
        factors.append(vals)
        if cp.finite:
            products.append(cp.target.product(v for _, v in vals))
        else:
            products.append(fp.mul(*(v for _, v in vals)))
    return WeightProduct(tuple(factors), tuple(products))


# ------------------------------------------------------------ invariant values


@dataclass(frozen=True)
class Entry:
    """One coloring's value: a class representative per component."""

    coloring: int
    reps: tuple  # finite: least element of the class; words: conjugacy normal form
    abelian: tuple = ()  # abelianized exponent vectors (word targets)
    classes: tuple = ()  # battery class-index tuples (word targets)


@dataclass(frozen=True)
class InvariantValue:
    target: FiniteGroup | Presentation
    entries: tuple[Entry, ...]

    def multiset(self) -> Counter:
        return Counter(e.reps for e in self.entries)

    def abelian_multiset(self) -> Counter:
        return Counter(e.abelian for e in self.entries)

    def class_multisets(self) -> list[Counter]:
        """One multiset per battery homomorphism, in battery order."""
        if not self.entries or not self.entries[0].classes:
            return []
        k = len(self.entries[0].classes)
        return [Counter(e.classes[j] for e in self.entries) for j in range(k)]

    def show_rep(self, r) -> str:
        if isinstance(self.target, FiniteGroup):
            return self.target.label(r)
        return self.target.show(r)

    def lines(self) -> list[str]:
        """Machine-readable ``coloring-index TAB component-tuple`` lines."""
        return [
            f"{e.coloring}\t(" + ", ".join(self.show_rep(r) for r in e.reps) + ")"
            for e in self.entries
        ]

    def table(self) -> str:
        counts = Counter(tuple(self.show_rep(r) for r in e.reps) for e in self.entries)
        return "\n".join(f"{k} x ({', '.join(t)})" for t, k in sorted(counts.items()))


def battery_homs(p: Presentation, groups: Sequence[FiniteGroup] | None = None) -> list[fp.Homomorphism]:
    groups = fp.battery() if groups is None else groups
    if p.ngens > fp.MAX_HOM_GENS:
        return []
    return [h for G in groups for h in fp.find_homs(p, G)]


def invariant(
    d: LinkDiagram,
    cp: CocyclePair,
    groups: Sequence[FiniteGroup] | None = None,
    homs: Sequence[fp.Homomorphism] | None = None,
) -> InvariantValue:
    """Class tuples over all colorings in canonical order."""
    cols = colorings(d, cp.vp)
    prods = [weight_product(d, col, cp).products for col in cols]
    if cp.finite:
        G = cp.target
        entries = [Entry(k, tuple(G.class_rep(x) for x in pr)) for k, pr in enumerate(prods)]
        entries.sort(key=lambda e: e.reps)
    else:
        P = cp.target
        ab = fp.abelianize(P)
        if homs is None:
            homs = battery_homs(P, groups)
        entries = []
        for k, pr in enumerate(prods):
            entries.append(
                Entry(
                    k,
                    tuple(fp.conjugacy_normal_form(P, w) for w in pr),
                    tuple(ab.project(w) for w in pr),
                    tuple(
                        tuple(h.target.class_of[fp.evaluate(h, w)] for w in pr) for h in homs
                    ),
                )
            )
        entries.sort(key=lambda e: (e.classes, e.abelian, e.reps))
    # renumber colorings in canonical order so output is reproducible
    entries = [Entry(i, e.reps, e.abelian, e.classes) for i, e in enumerate(entries)]
    return InvariantValue(cp.target, tuple(entries))


def universal_invariant(d: LinkDiagram, vp: VirtualPair, groups=None) -> tuple[UniversalPair, InvariantValue]:
    up = universal_presentation(vp)
    return up, invariant(d, up.cocycle(), groups)


# ------------------------------------------------------------ separation


@dataclass
class Verdict:
    distinguished: bool
    reason: str
    witness: object = None


def _permuted(c: Counter, perm) -> Counter:
    return Counter({tuple(t[i] for i in perm): k for t, k in c.items()})


def separate(d1: LinkDiagram, d2: LinkDiagram, vp: VirtualPair, groups=None) -> Verdict:
    """Try to tell two diagrams apart with colorings and the universal invariant.

    Component order is not assumed to correspond: the diagrams count as
    equal when some permutation of the second one's components matches
    every comparison.
    """
    if d1.num_components != d2.num_components:
        return Verdict(True, "component count", (d1.num_components, d2.num_components))
    n1, n2 = count_colorings(d1, vp), count_colorings(d2, vp)
    if n1 != n2:
        return Verdict(True, "coloring count", (n1, n2))
    up = universal_presentation(vp)
    homs = battery_homs(up.simplified, groups)
    v1 = invariant(d1, up.cocycle(), homs=homs)
    v2 = invariant(d2, up.cocycle(), homs=homs)
    tests = [("abelianized invariant", v1.abelian_multiset(), v2.abelian_multiset())]
    for h, c1, c2 in zip(homs, v1.class_multisets(), v2.class_multisets()):
        tests.append((f"classes in {h.target.name} via {h.images}", c1, c2))
    first_failure = None
    for perm in itertools.permutations(range(d1.num_components)):
        failure = next(((name, a, b) for name, a, b in tests if a != _permuted(b, perm)), None)
        if failure is None:
            return Verdict(False, "not distinguished by these means")
        if first_failure is None:
            first_failure = failure
    name, a, b = first_failure
    return Verdict(True, name, (dict(a), dict(b)))


# ------------------------------------------------------------ state sum


def state_sum(d: LinkDiagram, vp: VirtualPair, f, g, target: FiniteGroup | None = None) -> Counter:
    """Sum over colorings of the product of all crossing weights.

    ``target=None`` means the additive integers; values are then integers
    and the result maps each total to its multiplicity.
    """
    report = check_state_sum_tables(vp, f, g, target)
    if not report.ok:
        raise ValueError(f"not a state-sum pair: {report.violations[:3]}")
    tabs = {"f": f, "g": g}
    S_inv = vp.S.table.inverse()
    out: Counter = Counter()
    for col in colorings(d, vp):
        colors = col.as_dict()
        vals = []
        for x in d.crossings():
            a, b = colors[x.left], colors[x.right]
            if x.kind == "v":
                vals.append(tabs["g"][a][b])
            elif x.kind == "+":
                vals.append(tabs["f"][a][b])
            else:
                u, v = S_inv(a, b)
                w = tabs["f"][u][v]
                vals.append(-w if target is None else target.inv[w])
        out[sum(vals) if target is None else target.product(vals)] += 1
    return out


# ------------------------------------------------------------ linking numbers


def _exponent(w: Word, P: Presentation, name: str) -> int:
    if name not in P.gens:
        return 0
    return fp.exponent_sums(w, P.ngens)[P.gens.index(name)]


def linking_numbers(d: LinkDiagram) -> tuple[int, int, int]:
    """``(lk_1/2, lk_2/1, self_style)`` of a two-component diagram.

    The first two are read off the flip/flip universal invariant of the
    coloring that gives component 1 color 1 and component 2 color 2.
    ``self_style`` is the exponent of the generator of the antiflip/flip
    universal group on component 1, taken from the coloring where its
    absolute value is largest (ties: the positive value).
    """
    if d.num_components != 2:
        raise ValueError(f"need 2 components, got {d.num_components}")
    flip = make_pair(flip_table(2), flip_table(2), "flip2-flip2")
    up = universal_presentation(flip)
    col = next(c for c in colorings(d, flip) if all(v == k for (k, _), v in c.as_dict().items()))
    prods = weight_product(d, col, up.cocycle()).products
    P = up.simplified
    lk12 = _exponent(prods[1], P, "f(2,1)")
    lk21 = _exponent(prods[0], P, "f(1,2)")
    anti = make_pair(make_named("antiflip", 2), flip_table(2), "antiflip2-flip2")
    up2 = universal_presentation(anti)
    best = 0
    for c in colorings(d, anti):
        w = weight_product(d, c, up2.cocycle()).products[0]
        e = sum(fp.exponent_sums(w, up2.simplified.ngens))
        if (abs(e), e) > (abs(best), best):
            best = e
    return lk12, lk21, best
