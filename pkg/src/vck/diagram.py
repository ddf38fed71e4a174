"""Virtual link diagrams as signed Gauss codes.

Grammar: components separated by ``;``, tokens by whitespace.  Classical
passages are ``O<id><+|->`` (over) and ``U<id><+|->`` (under); virtual
passages are ``V<id><l|r>`` where ``l`` marks the strand entering from the
left.  An empty component is an unknotted circle without crossings.

Crossing geometry (all crossings drawn with both strands pointing down):

* positive classical: the under strand enters on the left;
* negative classical: the over strand enters on the left;
* virtual: the ``l`` passage enters on the left.

Semi-arc ``(c, i)`` is the arc entering passage ``i`` of component ``c``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from importlib import resources
from pathlib import Path
import os

OVER, UNDER, VIRTUAL = "O", "U", "V"


class DiagramError(ValueError):
    pass


class GaussSyntaxError(DiagramError):
    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (token {position})")
        self.position = position


class PairingError(DiagramError):
    def __init__(self, message: str, crossing: int):
        super().__init__(message)
        self.crossing = crossing


class SignMismatchError(PairingError):
    pass


@dataclass(frozen=True)
class Passage:
    kind: str
    cid: int
    sign: int = 0  # +1 / -1 for classical passages
    side: str = ""  # "l" / "r" for virtual passages

    def __post_init__(self):
        if self.kind in (OVER, UNDER):
            if self.sign not in (1, -1) or self.side:
                raise DiagramError(f"classical passage needs a sign and no side: {self}")
        elif self.kind == VIRTUAL:
            if self.side not in ("l", "r") or self.sign:
                raise DiagramError(f"virtual passage needs a side and no sign: {self}")
        else:
            raise DiagramError(f"unknown passage kind {self.kind!r}")

    @property
    def classical(self) -> bool:
        return self.kind != VIRTUAL

    def __str__(self) -> str:
        if self.kind == VIRTUAL:
            return f"V{self.cid}{self.side}"
        return f"{self.kind}{self.cid}{'+' if self.sign > 0 else '-'}"


@dataclass(frozen=True)
class Crossing:
    """Where the two strands of one crossing pass.

    ``left`` and ``right`` are ``(component, position)`` of the strand
    entering from the left and from the right.
    """

    cid: int
    kind: str  # "+", "-" or "v"
    left: tuple[int, int]
    right: tuple[int, int]


@dataclass(frozen=True)
class LinkDiagram:
    components: tuple[tuple[Passage, ...], ...]

    def __post_init__(self):
        _validate(self.components)

    @property
    def num_components(self) -> int:
        return len(self.components)

    def arcs(self) -> list[tuple[int, int]]:
        """All semi-arcs; an empty component contributes the single arc ``(c, 0)``."""
        out = []
        for c, comp in enumerate(self.components):
            out += [(c, i) for i in range(max(1, len(comp)))]
        return out

    def next_arc(self, c: int, i: int) -> tuple[int, int]:
        """The arc leaving passage ``i``."""
        return (c, (i + 1) % len(self.components[c]))

    def crossings(self) -> list[Crossing]:
        where: dict[int, dict[str, tuple[int, int]]] = {}
        kinds: dict[int, str] = {}
        for c, comp in enumerate(self.components):
            for i, p in enumerate(comp):
                if p.kind == VIRTUAL:
                    where.setdefault(p.cid, {})[p.side] = (c, i)
                    kinds[p.cid] = "v"
                else:
                    where.setdefault(p.cid, {})[p.kind] = (c, i)
                    kinds[p.cid] = "+" if p.sign > 0 else "-"
        out = []
        for cid in sorted(where):
            w, k = where[cid], kinds[cid]
            if k == "v":
                out.append(Crossing(cid, k, w["l"], w["r"]))
            elif k == "+":
                out.append(Crossing(cid, k, w[UNDER], w[OVER]))
            else:
                out.append(Crossing(cid, k, w[OVER], w[UNDER]))
        return out

    def is_classical(self) -> bool:
        return all(p.classical for comp in self.components for p in comp)

    def rotate(self, c: int, k: int) -> "LinkDiagram":
        """Move the base point of component ``c`` forward by ``k`` passages."""
        comps = list(self.components)
        comp = comps[c]
        if comp:
            k %= len(comp)
            comps[c] = comp[k:] + comp[:k]
        return LinkDiagram(tuple(comps))

    def __str__(self) -> str:
        return serialize(self)


def _validate(components) -> None:
    seen: dict[int, list[Passage]] = {}
    for comp in components:
        for p in comp:
            seen.setdefault(p.cid, []).append(p)
    for cid, ps in seen.items():
        if len(ps) != 2:
            raise PairingError(f"crossing {cid} occurs {len(ps)} times, expected 2", cid)
        a, b = ps
        if a.classical != b.classical:
            raise PairingError(f"crossing {cid} mixes classical and virtual passages", cid)
        if a.classical:
            if {a.kind, b.kind} != {OVER, UNDER}:
                raise PairingError(f"crossing {cid} needs one O and one U passage", cid)
            if a.sign != b.sign:
                raise SignMismatchError(f"crossing {cid} has mismatched signs", cid)
        elif {a.side, b.side} != {"l", "r"}:
            raise PairingError(f"virtual crossing {cid} needs one l and one r passage", cid)


_TOKEN = re.compile(r"^([OU])(\d+)([+-])$|^V(\d+)([lr])$")


def parse_gauss(text: str) -> LinkDiagram:
    text = "\n".join(line.split("#", 1)[0] for line in text.splitlines())
    components = []
    pos = 0
    for chunk in text.split(";"):
        comp = []
        for tok in chunk.split():
            m = _TOKEN.match(tok)
            if not m:
                raise GaussSyntaxError(f"bad token {tok!r}", pos)
            if m.group(1):
                comp.append(Passage(m.group(1), int(m.group(2)), 1 if m.group(3) == "+" else -1))
            else:
                comp.append(Passage(VIRTUAL, int(m.group(4)), side=m.group(5)))
            pos += 1
        components.append(tuple(comp))
    return LinkDiagram(tuple(components))


def serialize(d: LinkDiagram) -> str:
    return " ; ".join(" ".join(str(p) for p in comp) for comp in d.components)


# ------------------------------------------------------------ moves


def _fresh(d: LinkDiagram, k: int) -> list[int]:
    top = max((p.cid for comp in d.components for p in comp), default=0)
    return [top + 1 + i for i in range(k)]


def _insert_two(d: LinkDiagram, comp_a, pos_a, block_a, comp_b, pos_b, block_b) -> LinkDiagram:
    comps = [list(c) for c in d.components]
    for c, pos in ((comp_a, pos_a), (comp_b, pos_b)):
        if not 0 <= c < len(comps) or not 0 <= pos <= len(comps[c]):
            raise DiagramError(f"invalid position ({c}, {pos})")
    if comp_a == comp_b:
        comp = comps[comp_a]
        if pos_b >= pos_a:
            comp[pos_b:pos_b] = block_b
            comp[pos_a:pos_a] = block_a
        else:
            comp[pos_a:pos_a] = block_a
            comp[pos_b:pos_b] = block_b
    else:
        comps[comp_a][pos_a:pos_a] = block_a
        comps[comp_b][pos_b:pos_b] = block_b
    return LinkDiagram(tuple(tuple(c) for c in comps))


R2_VARIANTS = ("same+", "same-", "opp+", "opp-")
VR2_VARIANTS = ("same", "same-mirror", "opp", "opp-mirror")


def insert_r2(d: LinkDiagram, comp_a: int, pos_a: int, comp_b: int, pos_b: int, variant: str = "same+") -> LinkDiagram:
    """Push the arc at ``(comp_b, pos_b)`` under the arc at ``(comp_a, pos_a)``.

    ``variant`` picks whether the strands run the same way or opposite
    ways and the sign of the first crossing met by the over strand.
    Positions refer to semi-arcs, so ``pos == len(component)`` is the same
    arc as ``pos == 0`` but inserts at the end of the code.
    """
    if variant not in R2_VARIANTS:
        raise DiagramError(f"unknown RII variant {variant!r}")
    a, b = _fresh(d, 2)
    eps = 1 if variant.endswith("+") else -1
    over = [Passage(OVER, a, eps), Passage(OVER, b, -eps)]
    if variant.startswith("same"):
        under = [Passage(UNDER, a, eps), Passage(UNDER, b, -eps)]
    else:
        under = [Passage(UNDER, b, -eps), Passage(UNDER, a, eps)]
    return _insert_two(d, comp_a, pos_a, over, comp_b, pos_b, under)


def insert_vr2(d: LinkDiagram, comp_a: int, pos_a: int, comp_b: int, pos_b: int, variant: str = "same") -> LinkDiagram:
    """Insert a cancelling pair of virtual crossings between two semi-arcs."""
    if variant not in VR2_VARIANTS:
        raise DiagramError(f"unknown vRII variant {variant!r}")
    a, b = _fresh(d, 2)
    if variant.startswith("same"):
        first = [(a, "l"), (b, "r")]
        second = [(a, "r"), (b, "l")]
    else:
        first = [(a, "r"), (b, "l")]
        second = [(b, "r"), (a, "l")]
    if variant.endswith("mirror"):
        swap = {"l": "r", "r": "l"}
        first = [(i, swap[s]) for i, s in first]
        second = [(i, swap[s]) for i, s in second]
    block_a = [Passage(VIRTUAL, i, side=s) for i, s in first]
    block_b = [Passage(VIRTUAL, i, side=s) for i, s in second]
    return _insert_two(d, comp_a, pos_a, block_a, comp_b, pos_b, block_b)


# ------------------------------------------------------------ diagnostics


def surface_genus(d: LinkDiagram) -> int:
    """Genus of the surface on which the diagram's 4-valent graph embeds
    with the crossing rotations implied by the signs and sides.

    Zero means the code is realizable as a plane diagram whose
    virtual crossings are exactly the ``V`` passages.
    """
    crossings = d.crossings()
    if not crossings:
        return 0
    slot_of = {}  # (c, i, "in"|"out") -> (cid, slot)
    for x in crossings:
        (lc, li), (rc, ri) = x.left, x.right
        slot_of[(lc, li, "in")] = (x.cid, 0)
        slot_of[(rc, ri, "in")] = (x.cid, 1)
        slot_of[(lc, li, "out")] = (x.cid, 2)
        slot_of[(rc, ri, "out")] = (x.cid, 3)
    other = {}
    for c, comp in enumerate(d.components):
        for i in range(len(comp)):
            tail = slot_of[(c, i, "out")]
            head = slot_of[d.next_arc(c, i) + ("in",)]
            other[tail] = head
            other[head] = tail
    seen = set()
    faces = 0
    for start in other:
        if start in seen:
            continue
        faces += 1
        dart = start
        while dart not in seen:
            seen.add(dart)
            v, s = other[dart]
            dart = (v, (s + 1) % 4)
    # connected pieces of the graph
    parent = {x.cid: x.cid for x in crossings}

    def find(u):
        while parent[u] != u:
            parent[u] = parent[parent[u]]
            u = parent[u]
        return u

    for (u, _), (v, _) in other.items():
        parent[find(u)] = find(v)
    pieces = len({find(u) for u in parent})
    V = len(crossings)
    E = 2 * V
    # V - E + F = 2 * pieces - 2 * genus
    return (2 * pieces - (V - E + faces)) // 2


# ------------------------------------------------------------ catalog


def data_dir() -> Path:
    env = os.environ.get("VCK_DATA")
    if env:
        return Path(env)
    return Path(str(resources.files("vck") / "data"))


def catalog_names() -> list[str]:
    return sorted(p.stem for p in (data_dir() / "diagrams").glob("*.gauss"))


def catalog(name: str) -> LinkDiagram:
    path = data_dir() / "diagrams" / f"{name}.gauss"
    if not path.exists():
        raise KeyError(f"unknown diagram {name!r}; known: {catalog_names()}")
    return parse_gauss(path.read_text())
