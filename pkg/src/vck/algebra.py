"""Finite set-theoretic Yang-Baxter solutions, biquandles and virtual pairs.

Colors are the integers ``0..n-1``.  A solution is stored as an ``n x n``
table whose cell ``t[x][y]`` holds the output pair ``sigma(x, y)``.
All axiom checks are exhaustive scans; every failure names a witness.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Callable, Iterable, Sequence

Pair = tuple[int, int]
Perm = tuple[int, ...]


class AxiomError(ValueError):
    """An axiom failed; ``witness`` holds the offending cell or triple."""

    def __init__(self, message: str, witness=None):
        super().__init__(message)
        self.witness = witness


class TableError(AxiomError):
    pass


class BijectivityError(AxiomError):
    pass


class YBEError(AxiomError):
    pass


class LeftInvertibilityError(AxiomError):
    pass


class RightInvertibilityError(AxiomError):
    pass


class FixedPointError(AxiomError):
    pass


class UnionFind:
    """Disjoint sets over ``0..n-1`` with path halving."""

    def __init__(self, n: int):
        self.parent = list(range(n))

    def find(self, x: int) -> int:
        parent = self.parent
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(self, x: int, y: int) -> bool:
        rx, ry = self.find(x), self.find(y)
        if rx == ry:
            return False
        if rx < ry:
            self.parent[ry] = rx
        else:
            self.parent[rx] = ry
        return True


@dataclass(frozen=True)
class SolutionTable:
    """A map ``X x X -> X x X`` on ``X = {0..n-1}``."""

    n: int
    t: tuple[tuple[Pair, ...], ...]

    def __post_init__(self):
        n = self.n
        if n < 1:
            raise TableError(f"size must be positive, got {n}")
        if len(self.t) != n or any(len(row) != n for row in self.t):
            raise TableError(f"table is not {n}x{n}")
        for x, row in enumerate(self.t):
            for y, cell in enumerate(row):
                if len(cell) != 2 or not all(0 <= v < n for v in cell):
                    raise TableError(
                        f"cell ({x},{y}) = {cell} out of range for n={n}", (x, y)
                    )

    @classmethod
    def from_function(cls, n: int, fn: Callable[[int, int], Pair]) -> "SolutionTable":
        return cls(n, tuple(tuple(tuple(fn(x, y)) for y in range(n)) for x in range(n)))

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[Sequence[int]]]) -> "SolutionTable":
        return cls(len(rows), tuple(tuple(tuple(c) for c in row) for row in rows))

    def __call__(self, x: int, y: int) -> Pair:
        return self.t[x][y]

    def first(self, x: int, y: int) -> int:
        return self.t[x][y][0]

    def second(self, x: int, y: int) -> int:
        return self.t[x][y][1]

    def cells(self) -> Iterable[tuple[int, int, Pair]]:
        for x, row in enumerate(self.t):
            for y, cell in enumerate(row):
                yield x, y, cell

    def is_bijective(self) -> bool:
        return len({cell for _, _, cell in self.cells()}) == self.n * self.n

    def inverse(self) -> "SolutionTable":
        if not self.is_bijective():
            raise BijectivityError("table is not a bijection")
        inv = {cell: (x, y) for x, y, cell in self.cells()}
        return SolutionTable.from_function(self.n, lambda p, q: inv[(p, q)])

    def compose(self, other: "SolutionTable") -> "SolutionTable":
        """``self . other`` as maps on pairs."""
        return SolutionTable.from_function(self.n, lambda x, y: self(*other(x, y)))

    def is_involutive(self) -> bool:
        return all(self(*cell) == (x, y) for x, y, cell in self.cells())

    def relabel(self, phi: Sequence[int]) -> "SolutionTable":
        """Transport along the bijection ``phi``: ``T'(phi x, phi y) = (phi x phi) T(x, y)``."""
        n = self.n
        out = [[None] * n for _ in range(n)]
        for x, y, (z, w) in self.cells():
            out[phi[x]][phi[y]] = (phi[z], phi[w])
        return SolutionTable(n, tuple(tuple(r) for r in out))

    def key(self) -> bytes:
        return bytes(v for _, _, cell in self.cells() for v in cell)

    def __str__(self) -> str:
        return format_block(self, base=1)


def flip_table(n: int) -> SolutionTable:
    return SolutionTable.from_function(n, lambda x, y: (y, x))


# ---------------------------------------------------------------- axioms


def find_ybe_violation(table: SolutionTable):
    """First triple where the braid relation fails, or ``None``."""
    t = table.t
    n = table.n
    for x in range(n):
        for y in range(n):
            a1, b1 = t[x][y]
            for z in range(n):
                # (sigma x id)(id x sigma)(sigma x id)
                c, d = t[b1][z]
                u, v = t[a1][c]
                lhs = (u, v, d)
                # (id x sigma)(sigma x id)(id x sigma)
                e, g = t[y][z]
                p, q = t[x][e]
                r, s = t[q][g]
                if lhs != (p, r, s):
                    return (x, y, z)
    return None


def check_yb(table: SolutionTable) -> bool:
    """True iff ``table`` is a bijective solution of the braid relation."""
    return table.is_bijective() and find_ybe_violation(table) is None


def _validate_birack(table: SolutionTable) -> None:
    n = table.n
    seen = {}
    for x, y, cell in table.cells():
        if cell in seen:
            raise BijectivityError(
                f"sigma{seen[cell]} = sigma{(x, y)} = {cell}", (seen[cell], (x, y))
            )
        seen[cell] = (x, y)
    bad = find_ybe_violation(table)
    if bad is not None:
        raise YBEError(f"Yang-Baxter equation fails at triple {bad}", bad)
    for x in range(n):
        images = [table.first(x, y) for y in range(n)]
        if len(set(images)) != n:
            z = next(v for v in images if images.count(v) > 1)
            raise LeftInvertibilityError(
                f"sigma^1({x}, -) takes value {z} more than once", (x, z)
            )
    for y in range(n):
        images = [table.second(x, y) for x in range(n)]
        if len(set(images)) != n:
            w = next(v for v in images if images.count(v) > 1)
            raise RightInvertibilityError(
                f"sigma^2(-, {y}) takes value {w} more than once", (y, w)
            )


def fixed_partner_map(table: SolutionTable) -> Perm:
    """The map ``s`` with ``sigma(x, s(x)) = (x, s(x))``; raises if it does not exist."""
    n = table.n
    s = []
    for x in range(n):
        partners = [y for y in range(n) if table(x, y) == (x, y)]
        if len(partners) != 1:
            raise FixedPointError(
                f"color {x} has {len(partners)} fixed partners {partners}", (x, partners)
            )
        s.append(partners[0])
    if len(set(s)) != n:
        raise FixedPointError("fixed-partner map is not a bijection", tuple(s))
    return tuple(s)


@dataclass(frozen=True)
class Biquandle:
    table: SolutionTable
    s: Perm

    @property
    def n(self) -> int:
        return self.table.n

    def __call__(self, x: int, y: int) -> Pair:
        return self.table.t[x][y]


def as_biquandle(table: SolutionTable) -> Biquandle:
    """Validate the birack and biquandle axioms and attach the ``s`` map."""
    _validate_birack(table)
    return Biquandle(table, fixed_partner_map(table))


def is_biquandle(table: SolutionTable) -> bool:
    try:
        as_biquandle(table)
    except AxiomError:
        return False
    return True


def find_mixed_violation(S: SolutionTable, beta: SolutionTable):
    """First triple where ``(1xb)(Sx1)(1xb) = (bx1)(1xS)(bx1)`` fails."""
    n = S.n
    s, b = S.t, beta.t
    for x in range(n):
        for y in range(n):
            for z in range(n):
                # right side applied first: (b x 1), then (1 x S), then (b x 1)
                p, q = b[x][y]
                q2, z2 = s[q][z]
                r1, r2 = b[p][q2]
                rhs = (r1, r2, z2)
                # (1 x b), (S x 1), (1 x b)
                u, v = b[y][z]
                x2, u2 = s[x][u]
                l2, l3 = b[u2][v]
                if rhs != (x2, l2, l3):
                    return (x, y, z)
    return None


def check_virtual_pair(S: Biquandle, beta: Biquandle) -> bool:
    """True iff ``beta`` is involutive and mixed-compatible with ``S``."""
    if S.n != beta.n:
        raise ValueError(f"size mismatch: {S.n} vs {beta.n}")
    return beta.table.is_involutive() and find_mixed_violation(S.table, beta.table) is None


@dataclass(frozen=True)
class VirtualPair:
    S: Biquandle
    beta: Biquandle
    name: str = field(default="", compare=False)

    @property
    def n(self) -> int:
        return self.S.n

    def relabel(self, phi: Sequence[int]) -> "VirtualPair":
        return make_pair(self.S.table.relabel(phi), self.beta.table.relabel(phi))

    def key(self) -> bytes:
        return self.S.table.key() + self.beta.table.key()


def make_pair(
    S: SolutionTable, beta: SolutionTable, name: str = "", involutive: bool = True
) -> VirtualPair:
    """Build a validated virtual pair from two raw tables.

    ``involutive=False`` skips the ``beta^2 = 1`` requirement; the census
    convention counts such pairs too.
    """
    bS, bb = as_biquandle(S), as_biquandle(beta)
    if S.n != beta.n:
        raise ValueError(f"size mismatch: {S.n} vs {beta.n}")
    if involutive and not beta.is_involutive():
        x, y = next((x, y) for x, y, c in beta.cells() if beta(*c) != (x, y))
        raise AxiomError(f"beta is not involutive at ({x},{y})", (x, y))
    bad = find_mixed_violation(S, beta)
    if bad is not None:
        raise AxiomError(f"mixed relation fails at triple {bad}", bad)
    return VirtualPair(bS, bb, name)


# ---------------------------------------------------------- automorphisms


def is_automorphism(table: SolutionTable, a: Sequence[int]) -> bool:
    t = table.t
    return all(
        t[a[x]][a[y]] == (a[z], a[w]) for x, y, (z, w) in table.cells()
    )


def automorphisms(S: Biquandle | SolutionTable) -> list[Perm]:
    """All bijections ``a`` with ``S(a x, a y) = (a x a) S(x, y)``."""
    table = S.table if isinstance(S, Biquandle) else S
    t, n = table.t, table.n
    found = []
    for a in itertools.permutations(range(n)):
        ok = True
        for x in range(n):
            ax = a[x]
            row = t[x]
            trow = t[ax]
            for y in range(n):
                z, w = row[y]
                if trow[a[y]] != (a[z], a[w]):
                    ok = False
                    break
            if not ok:
                break
        if ok:
            found.append(a)
    return found


def invert_perm(a: Sequence[int]) -> Perm:
    inv = [0] * len(a)
    for i, v in enumerate(a):
        inv[v] = i
    return tuple(inv)


def compose_perm(a: Sequence[int], b: Sequence[int]) -> Perm:
    """``a . b`` (apply ``b`` first)."""
    return tuple(a[v] for v in b)


def beta_from_aut(S: Biquandle, a: Sequence[int]) -> SolutionTable:
    """The involutive solution ``beta(x, y) = (a^-1 y, a x)``."""
    if not is_automorphism(S.table, a):
        raise AxiomError(f"{tuple(a)} is not an automorphism", tuple(a))
    ai = invert_perm(a)
    return SolutionTable.from_function(S.n, lambda x, y: (ai[y], a[x]))


def conjugacy_classes_of_perms(group: Sequence[Perm]) -> list[list[Perm]]:
    remaining = set(group)
    classes = []
    for g in group:
        if g not in remaining:
            continue
        cls = sorted({compose_perm(compose_perm(h, g), invert_perm(h)) for h in group})
        remaining.difference_update(cls)
        classes.append(cls)
    return classes


# ----------------------------------------------------------- connectivity


@dataclass(frozen=True)
class Partition:
    class_of: tuple[int, ...]

    @property
    def num_classes(self) -> int:
        return len(set(self.class_of))

    def classes(self) -> list[list[int]]:
        out = [[] for _ in range(self.num_classes)]
        for x, c in enumerate(self.class_of):
            out[c].append(x)
        return out


def _partition(uf: UnionFind, n: int) -> Partition:
    index: dict[int, int] = {}
    return Partition(tuple(index.setdefault(uf.find(x), len(index)) for x in range(n)))


def _join_along(uf: UnionFind, table: SolutionTable) -> None:
    # a strand keeps its identity through a crossing: x -> sigma^2(x, y), y -> sigma^1(x, y)
    for x, y, (z, w) in table.cells():
        uf.union(x, w)
        uf.union(y, z)


def biquandle_components(S: Biquandle | SolutionTable) -> Partition:
    table = S.table if isinstance(S, Biquandle) else S
    uf = UnionFind(table.n)
    _join_along(uf, table)
    return _partition(uf, table.n)


def connected_components(vp: VirtualPair) -> Partition:
    uf = UnionFind(vp.n)
    _join_along(uf, vp.S.table)
    _join_along(uf, vp.beta.table)
    return _partition(uf, vp.n)


# ------------------------------------------------------------ constructors


def quandle_table(op: Sequence[Sequence[int]]) -> SolutionTable:
    """``S(x, y) = (y, x |> y)`` from an operation table ``op[x][y] = x |> y``."""
    n = len(op)
    return SolutionTable.from_function(n, lambda x, y: (y, op[x][y]))


def _z4_two_case_beta(x: int, y: int) -> Pair:
    if x % 2 == 0 and y % 2 == 0:
        return ((y + 2) % 4, (x + 2) % 4)
    return (y, x)


def _swap4_op(x: int, y: int) -> int:
    # right multiplication by 1 or 2 swaps 3,4; by 3 or 4 swaps 1,2 (1-based)
    if y < 2:
        return {2: 3, 3: 2}.get(x, x)
    return {0: 1, 1: 0}.get(x, x)


def _swap4_beta(x: int, y: int) -> Pair:
    def act(a: int, z: int) -> int:
        swap = {0: 1, 1: 0} if a < 2 else {0: 1, 1: 0, 2: 3, 3: 2}
        return swap.get(z, z)

    return (act(x, y), act(y, x))


NAMED = {
    "flip": lambda n: flip_table(n),
    "antiflip": lambda n: SolutionTable.from_function(n, lambda x, y: ((y + 1) % n, (x + 1) % n)),
    "dihedral": lambda n: SolutionTable.from_function(n, lambda x, y: (y, (2 * y - x) % n)),
    "selflink": lambda n: SolutionTable.from_function(n, lambda x, y: ((y - 1) % n, (x + 1) % n)),
    "paper-z4": lambda n: SolutionTable.from_function(4, lambda x, y: ((-y) % 4, (x + 2 * y) % 4)),
    "paper-z4-beta": lambda n: SolutionTable.from_function(4, _z4_two_case_beta),
    "swap4": lambda n: quandle_table([[_swap4_op(x, y) for y in range(4)] for x in range(4)]),
    "swap4-beta": lambda n: SolutionTable.from_function(4, _swap4_beta),
}

FIXED_SIZE = {"paper-z4": 4, "paper-z4-beta": 4, "swap4": 4, "swap4-beta": 4}


def make_named(name: str, n: int) -> SolutionTable:
    """Named constructors; see ``NAMED``.  Some only exist for one size."""
    try:
        build = NAMED[name]
    except KeyError:
        raise KeyError(f"unknown solution {name!r}; known: {sorted(NAMED)}") from None
    if FIXED_SIZE.get(name, n) != n:
        raise ValueError(f"{name} is only defined for n={FIXED_SIZE[name]}")
    return build(n)


# ------------------------------------------------------------- file format


def format_block(table: SolutionTable, base: int = 1) -> str:
    return "\n".join(
        " ".join(f"{z + base},{w + base}" for z, w in row) for row in table.t
    )


def format_solution(tables: Sequence[SolutionTable], base: int = 1) -> str:
    """Serialize one table (a solution) or two tables (``S`` then ``beta``)."""
    n = tables[0].n
    blocks = [format_block(t, base) for t in tables]
    return f"n={n} base={base}\n" + "\n\n".join(blocks) + "\n"


def parse_solution(text: str) -> list[SolutionTable]:
    """Parse the text format written by :func:`format_solution`."""
    lines = [ln.split("#", 1)[0].rstrip() for ln in text.splitlines()]
    while lines and not lines[0].strip():
        lines.pop(0)
    if not lines:
        raise TableError("empty solution file")
    try:
        header = dict(tok.split("=", 1) for tok in lines[0].split())
        n = int(header["n"])
        base = int(header.get("base", 1))
    except (KeyError, ValueError):
        raise TableError(f"bad header line {lines[0]!r}") from None
    if base not in (0, 1):
        raise TableError(f"base must be 0 or 1, got {base}")
    blocks, current = [], []
    for ln in lines[1:]:
        if ln.strip():
            current.append(ln)
        elif current:
            blocks.append(current)
            current = []
    if current:
        blocks.append(current)
    tables = []
    for block in blocks:
        if len(block) != n:
            raise TableError(f"block has {len(block)} rows, expected {n}")
        rows = []
        for x, ln in enumerate(block):
            cells = ln.split()
            if len(cells) != n:
                raise TableError(f"row {x + base} has {len(cells)} cells, expected {n}", (x,))
            row = []
            for y, cell in enumerate(cells):
                try:
                    z, w = (int(v) - base for v in cell.split(","))
                except ValueError:
                    raise TableError(f"cell ({x + base},{y + base}) malformed: {cell!r}", (x, y)) from None
                if not (0 <= z < n and 0 <= w < n):
                    raise TableError(f"cell ({x + base},{y + base}) = {cell} out of range", (x, y))
                row.append((z, w))
            rows.append(row)
        tables.append(SolutionTable.from_rows(rows))
    if not 1 <= len(tables) <= 2:
        raise TableError(f"expected 1 or 2 tables, found {len(tables)}")
    return tables
