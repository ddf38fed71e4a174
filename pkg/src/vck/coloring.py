"""Colorings of diagram semi-arcs by a virtual pair."""

from __future__ import annotations

from dataclasses import dataclass

from .algebra import SolutionTable, VirtualPair
from .diagram import LinkDiagram


@dataclass(frozen=True)
class Coloring:
    """Colors indexed like ``LinkDiagram.arcs()``."""

    arcs: tuple[tuple[int, int], ...]
    colors: tuple[int, ...]

    def __getitem__(self, arc: tuple[int, int]) -> int:
        return self.colors[self.arcs.index(arc)]

    def as_dict(self) -> dict:
        return dict(zip(self.arcs, self.colors))


def continuation_table(vp: VirtualPair, kind: str, S_inv: SolutionTable | None = None):
    """``M[x][y] = (left continues as, right continues as)`` for incoming ``(x, y)``."""
    n = vp.n
    if kind == "+":
        t = vp.S.table.t
        return [[(t[x][y][1], t[x][y][0]) for y in range(n)] for x in range(n)]
    if kind == "-":
        inv = (S_inv or vp.S.table.inverse()).t
        # incoming (over-left p, under-right q) = S(x, y); over leaves as y, under as x
        return [[(inv[p][q][1], inv[p][q][0]) for q in range(n)] for p in range(n)]
    t = vp.beta.table.t
    return [[(t[x][y][1], t[x][y][0]) for y in range(n)] for x in range(n)]


class _Problem:
    def __init__(self, d: LinkDiagram, vp: VirtualPair):
        self.d = d
        self.n = vp.n
        self.arcs = d.arcs()
        index = {a: k for k, a in enumerate(self.arcs)}
        S_inv = vp.S.table.inverse()
        tables = {k: continuation_table(vp, k, S_inv) for k in "+-v"}
        inverses = {}
        for k, M in tables.items():
            inv = {}
            for x in range(self.n):
                for y in range(self.n):
                    inv[M[x][y]] = (x, y)
            inverses[k] = inv
        # (left_in, right_in, left_out, right_out, table, inverse)
        self.constraints = []
        for x in d.crossings():
            li, ri = index[x.left], index[x.right]
            lo, ro = index[d.next_arc(*x.left)], index[d.next_arc(*x.right)]
            self.constraints.append((li, ri, lo, ro, tables[x.kind], inverses[x.kind]))
        self.watch = [[] for _ in self.arcs]
        for k, con in enumerate(self.constraints):
            for a in set(con[:4]):
                self.watch[a].append(k)

    def propagate(self, colors: list[int], start: int) -> list[int] | None:
        """Fix consequences of setting arc ``start``; returns the arcs set (or None on conflict)."""
        trail = [start]
        queue = [start]
        while queue:
            a = queue.pop()
            for k in self.watch[a]:
                li, ri, lo, ro, M, Minv = self.constraints[k]
                cl, cr = colors[li], colors[ri]
                if cl >= 0 and cr >= 0:
                    derived = zip((lo, ro), M[cl][cr])
                else:
                    ol, orr = colors[lo], colors[ro]
                    if ol < 0 or orr < 0:
                        continue
                    derived = zip((li, ri), Minv[(ol, orr)])
                for arc, val in derived:
                    if colors[arc] < 0:
                        colors[arc] = val
                        trail.append(arc)
                        queue.append(arc)
                    elif colors[arc] != val:
                        for t in trail:
                            colors[t] = -1
                        return None
        return trail

    def solve(self):
        colors = [-1] * len(self.arcs)
        out = []

        def rec():
            try:
                a = colors.index(-1)
            except ValueError:
                out.append(tuple(colors))
                return
            for v in range(self.n):
                colors[a] = v
                trail = self.propagate(colors, a)
                if trail is None:
                    colors[a] = -1
                    continue
                rec()
                for t in trail:
                    colors[t] = -1

        rec()
        out.sort()
        return out


def is_valid_coloring(d: LinkDiagram, vp: VirtualPair, colors) -> bool:
    p = _Problem(d, vp)
    return all(M[colors[li]][colors[ri]] == (colors[lo], colors[ro]) for li, ri, lo, ro, M, _ in p.constraints)


def colorings(d: LinkDiagram, vp: VirtualPair) -> list[Coloring]:
    """Every coloring, sorted lexicographically by the color vector."""
    p = _Problem(d, vp)
    arcs = tuple(p.arcs)
    return [Coloring(arcs, c) for c in p.solve()]


def count_colorings(d: LinkDiagram, vp: VirtualPair) -> int:
    return len(_Problem(d, vp).solve())
