"""Search planar two-component virtual link codes matching invariant checksums.

Flat Gauss diagrams with ``c`` classical crossings are enumerated up to
rotation and relabeling, completed to plane diagrams with the minimum
number of virtual crossings, then every over/under choice is scored with
the flip/flip and antiflip/flip universal invariants.  Only codes whose
classical part alone is not planar are kept (otherwise the link would be
classical).
"""

import itertools
import sys
from collections import Counter

from vck.algebra import flip_table, make_named, make_pair
from vck.cocycle import universal_presentation
from vck.diagram import OVER, UNDER, VIRTUAL, LinkDiagram, Passage, surface_genus
from vck.invariant import invariant


def realize(flat, choice):
    comps = []
    for comp in flat:
        out = []
        for cid, role in comp:
            if role in "lr":
                out.append(Passage(VIRTUAL, cid, side=role))
            elif choice[cid]:
                out.append(Passage(UNDER if role == "L" else OVER, cid, 1))
            else:
                out.append(Passage(OVER if role == "L" else UNDER, cid, -1))
        comps.append(tuple(out))
    return LinkDiagram(tuple(comps))


def canon(flat):
    best = None
    for order in (flat, flat[::-1]):
        rots = [[c[i:] + c[:i] for i in range(len(c))] or [c] for c in order]
        for r in itertools.product(*rots):
            relabel = {}
            out = []
            for comp in r:
                t = []
                for cid, role in comp:
                    key = (cid, role in "lr")
                    if key not in relabel:
                        relabel[key] = len(relabel) + 1
                    t.append((relabel[key], role))
                out.append(tuple(t))
            out = tuple(out)
            if best is None or out < best:
                best = out
    return best


def genus(flat):
    return surface_genus(realize(flat, {c: True for comp in flat for c, r in comp if r in "LR"}))


def flat_gauss(c):
    toks = [(i, r) for i in range(1, c + 1) for r in "LR"]
    seen = set()
    for perm in itertools.permutations(toks):
        for k in range(1, 2 * c):
            flat = (tuple(perm[:k]), tuple(perm[k:]))
            seen.add(canon(flat))
    return sorted(seen)


def add_virtual(flat, vid):
    comps = [list(c) for c in flat]
    slots = [(ci, p) for ci, c in enumerate(comps) for p in range(len(c))]
    for (c1, p1), (c2, p2) in itertools.product(slots, repeat=2):
        for s in "lr":
            t = "r" if s == "l" else "l"
            new = [list(c) for c in comps]
            if c1 == c2:
                a, b = sorted((p1, p2))
                first, second = ((vid, s), (vid, t)) if p1 <= p2 else ((vid, t), (vid, s))
                new[c1][b:b] = [second]
                new[c1][a:a] = [first]
            else:
                new[c1][p1:p1] = [(vid, s)]
                new[c2][p2:p2] = [(vid, t)]
            yield tuple(tuple(c) for c in new)


def planar_completions(flat, max_total):
    g0 = genus(flat)
    ncl = sum(len(c) for c in flat) // 2
    if g0 == 0 or ncl + g0 > max_total:
        return []
    level = {flat}
    for step in range(g0):
        nxt = set()
        for f in level:
            g = genus(f)
            for h in add_virtual(f, 100 + step):
                if genus(h) == g - 1:
                    nxt.add(canon(h))
        level = nxt
    return sorted(level)


def profile(d, up, shows):
    v = invariant(d, up.cocycle(), homs=[])
    c = Counter(tuple(sorted(up.simplified.show(r) for r in e.reps)) for e in v.entries)
    return tuple(sorted(c.items()))


def main():
    ff = make_pair(flip_table(2), flip_table(2))
    af = make_pair(make_named("antiflip", 2), flip_table(2))
    uff, uaf = universal_presentation(ff), universal_presentation(af)
    results = []
    for c in (2, 3, 4):
        flats = flat_gauss(c)
        print(c, "classical:", len(flats), "flat gauss diagrams", file=sys.stderr)
        for flat in flats:
            for comp in planar_completions(flat, 6):
                ids = sorted({i for part in comp for i, r in part if r in "LR"})
                for choice in itertools.product((True, False), repeat=c):
                    d = realize(comp, dict(zip(ids, choice)))
                    results.append((c, str(d), profile(d, uff, None), profile(d, uaf, None)))
    for r in results:
        print(repr(r))


if __name__ == "__main__":
    main()
