"""Words, finitely presented groups and finite target groups.

A word is a tuple of nonzero integers: letter ``+(i+1)`` is generator ``i``
and ``-(i+1)`` its inverse.  Every function returning a word returns it
freely reduced.
"""

from __future__ import annotations

import functools
import itertools
from dataclasses import dataclass, field
from typing import Iterable, Sequence

Word = tuple[int, ...]

EMPTY: Word = ()


class GuardError(ValueError):
    """Too many generators for an exhaustive homomorphism search."""


class GroupTableError(ValueError):
    pass


# ------------------------------------------------------------------- words


def gen(i: int, exp: int = 1) -> Word:
    return ((i + 1) * exp,)


def letters(w: Word) -> list[tuple[int, int]]:
    """``w`` as ``(generator id, exponent)`` pairs."""
    return [(abs(c) - 1, 1 if c > 0 else -1) for c in w]


def reduce(w: Iterable[int]) -> Word:
    out: list[int] = []
    for c in w:
        if out and out[-1] == -c:
            out.pop()
        else:
            out.append(c)
    return tuple(out)


def inverse(w: Word) -> Word:
    return tuple(-c for c in reversed(w))


def mul(*words: Word) -> Word:
    return reduce(itertools.chain.from_iterable(words))


def power(w: Word, k: int) -> Word:
    if k < 0:
        w, k = inverse(w), -k
    return reduce(w * k)


def commutator(x: Word, y: Word) -> Word:
    """``x y x^-1 y^-1``."""
    return mul(x, y, inverse(x), inverse(y))


def cyclic_reduce(w: Word) -> Word:
    w = reduce(w)
    i, j = 0, len(w)
    while j - i >= 2 and w[i] == -w[j - 1]:
        i += 1
        j -= 1
    return w[i:j]


def min_rotation(w: Word) -> Word:
    if not w:
        return w
    return min(w[i:] + w[:i] for i in range(len(w)))


def conjugacy_form(w: Word) -> Word:
    """Canonical representative of the free-group conjugacy class of ``w``."""
    return min_rotation(cyclic_reduce(w))


def relator_form(w: Word) -> Word:
    """Canonical form up to conjugation and inversion (same normal closure)."""
    c = cyclic_reduce(w)
    if not c:
        return c
    return min(min_rotation(c), min_rotation(inverse(c)))


def substitute(w: Word, table: dict[int, Word]) -> Word:
    """Replace generator ``i`` by ``table[i]`` wherever it occurs."""
    out: list[int] = []
    for c in w:
        g = abs(c) - 1
        if g in table:
            rep = table[g]
            out.extend(rep if c > 0 else inverse(rep))
        else:
            out.append(c)
    return reduce(out)


def exponent_sums(w: Word, ngens: int) -> list[int]:
    v = [0] * ngens
    for c in w:
        v[abs(c) - 1] += 1 if c > 0 else -1
    return v


def word_to_str(w: Word, names: Sequence[str]) -> str:
    if not w:
        return "1"
    parts = []
    for g, e in letters(w):
        parts.append(names[g] if e > 0 else names[g] + "^-1")
    return " ".join(parts)


def parse_word(text: str, names: Sequence[str]) -> Word:
    index = {name: i for i, name in enumerate(names)}
    out = []
    for tok in text.split():
        if tok == "1":
            continue
        exp = 1
        if tok.endswith("^-1"):
            tok, exp = tok[:-3], -1
        if tok not in index:
            raise ValueError(f"unknown generator {tok!r}")
        out.append((index[tok] + 1) * exp)
    return reduce(out)


# ------------------------------------------------------------ presentations


@dataclass(frozen=True)
class Presentation:
    gens: tuple[str, ...]
    relators: tuple[Word, ...]
    # original generator name -> word in the current generators
    aliases: dict = field(default_factory=dict, compare=False)
    exhausted: bool = False

    def __post_init__(self):
        k = len(self.gens)
        for r in self.relators:
            for c in r:
                if not 1 <= abs(c) <= k:
                    raise ValueError(f"relator letter {c} out of range for {k} generators")

    @property
    def ngens(self) -> int:
        return len(self.gens)

    def word(self, text: str) -> Word:
        return parse_word(text, self.gens)

    def show(self, w: Word) -> str:
        return word_to_str(w, self.gens)

    def alias(self, name: str) -> Word:
        """Word for an original generator (itself when never eliminated)."""
        if name in self.aliases:
            return self.aliases[name]
        return gen(self.gens.index(name))

    def __str__(self) -> str:
        return format_presentation(self)


def format_presentation(p: Presentation, with_aliases: bool = False) -> str:
    lines = ["gens: " + " ".join(p.gens)]
    lines += [p.show(r) for r in p.relators]
    if with_aliases:
        for name, w in p.aliases.items():
            lines.append(f"alias {name} = {p.show(w)}")
    return "\n".join(lines) + "\n"


def parse_presentation(text: str) -> Presentation:
    gens: tuple[str, ...] | None = None
    rels: list[str] = []
    alias_lines = []
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("gens:"):
            gens = tuple(line[5:].split())
        elif line.startswith("alias "):
            name, _, rhs = line[6:].partition("=")
            alias_lines.append((name.strip(), rhs))
        else:
            rels.append(line)
    if gens is None:
        raise ValueError("missing 'gens:' line")
    relators = tuple(parse_word(r, gens) for r in rels)
    aliases = {name: parse_word(rhs, gens) for name, rhs in alias_lines}
    return Presentation(gens, relators, aliases)


def _dedupe(relators: Iterable[Word]) -> list[Word]:
    seen = set()
    out = []
    for r in relators:
        key = relator_form(r)
        if not key or key in seen:
            continue
        seen.add(key)
        out.append(key)
    return out


def _elimination_candidate(relators: Sequence[Word]):
    """(relator index, generator) for the preferred single-occurrence elimination."""
    best = None
    for idx, r in enumerate(relators):
        counts: dict[int, int] = {}
        for c in r:
            g = abs(c) - 1
            counts[g] = counts.get(g, 0) + 1
        singles = [g for g, k in counts.items() if k == 1]
        if not singles:
            continue
        cand = (len(r), min(singles), idx)
        if best is None or cand < best:
            best = cand
    if best is None:
        return None
    return best[2], best[1]


def _solve_for(r: Word, g: int) -> Word:
    """Given relator ``r`` with a single occurrence of ``g``, the word equal to ``g``."""
    i = next(k for k, c in enumerate(r) if abs(c) - 1 == g)
    rest = r[i + 1:] + r[:i]  # r is conjugate to g^e * rest
    return inverse(rest) if r[i] > 0 else rest


def tietze_simplify(p: Presentation, budget: int = 100_000) -> Presentation:
    """Eliminate generators and redundant relators until nothing changes.

    Each elimination picks the shortest relator containing some generator
    exactly once (ties: lowest generator id) and substitutes the solved
    word everywhere.  ``budget`` bounds the number of letters processed;
    on exhaustion the partial result is returned with ``exhausted=True``.
    """
    names = list(p.gens)
    active = list(range(len(names)))
    # every original name -> word over original ids
    defs: dict[str, Word] = {}
    for name, w in p.aliases.items():
        defs[name] = w
    for i, name in enumerate(names):
        defs.setdefault(name, gen(i))
    relators = _dedupe(p.relators)
    work = 0
    exhausted = False
    while True:
        cand = _elimination_candidate(relators)
        if cand is None:
            break
        idx, g = cand
        sol = _solve_for(relators[idx], g)
        table = {g: sol}
        new_rels = []
        for j, r in enumerate(relators):
            if j == idx:
                continue
            new_rels.append(substitute(r, table) if any(abs(c) - 1 == g for c in r) else r)
            work += len(r)
        relators = _dedupe(new_rels)
        defs = {k: substitute(w, table) for k, w in defs.items()}
        active.remove(g)
        work += len(defs)
        if work > budget:
            exhausted = True
            break
    # renumber surviving generators
    renum = {old: new for new, old in enumerate(active)}

    def remap(w: Word) -> Word:
        return tuple((renum[abs(c) - 1] + 1) * (1 if c > 0 else -1) for c in w)

    gens = tuple(names[i] for i in active)
    rels = tuple(sorted((remap(r) for r in relators), key=lambda w: (len(w), w)))
    aliases = {k: remap(w) for k, w in defs.items() if k not in gens}
    return Presentation(gens, rels, aliases, exhausted)


def find_renaming(source: Presentation, target: Presentation) -> dict[int, Word] | None:
    """A generator bijection with signs under which every relator of
    ``source`` appears among the relators of ``target`` (up to cyclic
    rotation and inversion), or ``None``.

    Together with a check that the target relators hold in the source
    group, this certifies an isomorphism.
    """
    if source.ngens != target.ngens:
        return None
    forms = {relator_form(r) for r in target.relators}
    k = source.ngens
    for perm in itertools.permutations(range(k)):
        for signs in itertools.product((1, -1), repeat=k):
            table = {i: ((perm[i] + 1) * signs[i],) for i in range(k)}
            if all(relator_form(substitute(r, table)) in forms for r in source.relators):
                return table
    return None


# ------------------------------------------------------------ exact conjugacy


@functools.lru_cache(maxsize=64)
def central_generators(p: Presentation) -> frozenset[int]:
    """Generators ``z`` such that the group is ``Free(rest) x Z^k``.

    Nonempty only when every relator is a commutator ``[z, x]`` with ``z``
    in the returned set and every such commutator is present.
    """
    forms = {relator_form(r) for r in p.relators}
    forms.discard(EMPTY)
    k = p.ngens

    def comm(z, x):
        return relator_form(commutator(gen(z), gen(x)))

    central = {z for z in range(k) if all(comm(z, x) in forms for x in range(k) if x != z)}
    covered = {comm(z, x) for z in central for x in range(k) if x != z}
    if central and forms <= covered:
        return frozenset(central)
    return frozenset()


def conjugacy_decidable(p: Presentation) -> bool:
    """True when :func:`conjugacy_normal_form` is exact for ``p``."""
    return not any(p.relators) or bool(central_generators(p))


def conjugacy_normal_form(p: Presentation, w: Word) -> Word:
    """Conjugacy-class representative of ``w`` in ``p``.

    Exact for free groups and for free-times-central presentations (the
    central letters are collected at the end); otherwise the free-group
    form, which may split one class into several.
    """
    central = central_generators(p)
    if not central:
        return conjugacy_form(w)
    rest = conjugacy_form(tuple(c for c in w if abs(c) - 1 not in central))
    sums = exponent_sums(w, p.ngens)
    tail: list[int] = []
    for z in sorted(central):
        tail += power(gen(z), sums[z])
    return rest + tuple(tail)


# ------------------------------------------------------------ abelianization


def smith_normal_form(matrix: Sequence[Sequence[int]], ncols: int):
    """Return ``(diag, V)`` with ``U A V = D`` for some unimodular ``U``.

    ``diag`` lists the nonzero diagonal entries (positive, each dividing
    the next); ``V`` is the ``ncols x ncols`` column transform.
    """
    A = [list(row) for row in matrix]
    m = len(A)
    V = [[int(i == j) for j in range(ncols)] for i in range(ncols)]

    def swap_cols(i, j):
        for row in A:
            row[i], row[j] = row[j], row[i]
        for row in V:
            row[i], row[j] = row[j], row[i]

    def add_col(src, dst, k):  # col dst += k * col src
        for row in A:
            row[dst] += k * row[src]
        for row in V:
            row[dst] += k * row[src]

    def add_row(src, dst, k):
        A[dst] = [a + k * b for a, b in zip(A[dst], A[src])]

    t = 0
    while t < min(m, ncols):
        # pivot: smallest nonzero absolute value in the remaining block
        best = None
        for i in range(t, m):
            for j in range(t, ncols):
                if A[i][j] and (best is None or abs(A[i][j]) < abs(A[best[0]][best[1]])):
                    best = (i, j)
        if best is None:
            break
        i, j = best
        A[t], A[i] = A[i], A[t]
        swap_cols(t, j)
        done = False
        while not done:
            done = True
            p = A[t][t]
            for i in range(t + 1, m):
                q = A[i][t] // p
                if q:
                    add_row(t, i, -q)
                if A[i][t]:
                    done = False
            for j in range(t + 1, ncols):
                q = A[t][j] // p
                if q:
                    add_col(t, j, -q)
                if A[t][j]:
                    done = False
            if not done:
                # move the smallest nonzero entry of row/col t to the pivot
                best = (t, t)
                for i in range(t + 1, m):
                    if A[i][t] and abs(A[i][t]) < abs(A[best[0]][best[1]]):
                        best = (i, t)
                for j in range(t + 1, ncols):
                    if A[t][j] and abs(A[t][j]) < abs(A[best[0]][best[1]]):
                        best = (t, j)
                i, j = best
                A[t], A[i] = A[i], A[t]
                swap_cols(t, j)
                continue
            # divisibility: the pivot must divide the rest of the block
            bad = next(
                ((i, j) for i in range(t + 1, m) for j in range(t + 1, ncols) if A[i][j] % p),
                None,
            )
            if bad is not None:
                add_row(bad[0], t, 1)
                done = False
        if A[t][t] < 0:
            A[t] = [-a for a in A[t]]
        t += 1
    diag = [A[i][i] for i in range(t)]
    return diag, V


@dataclass(frozen=True)
class Abelianization:
    """``Z^k / rowspace(relator matrix)`` in Smith coordinates."""

    factors: tuple[int, ...]  # 0 = free factor; trivial factors dropped
    transform: tuple[tuple[int, ...], ...]
    columns: tuple[int, ...]  # which Smith coordinates survive
    moduli: tuple[int, ...]

    def project(self, w: Word) -> tuple[int, ...]:
        v = exponent_sums(w, len(self.transform))
        out = []
        for col, mod in zip(self.columns, self.moduli):
            x = sum(v[i] * self.transform[i][col] for i in range(len(v)))
            out.append(x % mod if mod else x)
        return tuple(out)


def abelianize(p: Presentation) -> Abelianization:
    k = p.ngens
    rows = [exponent_sums(r, k) for r in p.relators]
    diag, V = smith_normal_form(rows, k)
    d = diag + [0] * (k - len(diag))
    columns = tuple(i for i in range(k) if d[i] != 1)
    moduli = tuple(d[i] for i in columns)
    torsion = sorted(m for m in moduli if m)
    factors = tuple(torsion + [0] * sum(1 for m in moduli if m == 0))
    return Abelianization(factors, tuple(map(tuple, V)), columns, moduli)


# ------------------------------------------------------------ finite groups


@dataclass(frozen=True)
class FiniteGroup:
    name: str
    mul: tuple[tuple[int, ...], ...]
    inv: tuple[int, ...]
    class_of: tuple[int, ...]
    labels: tuple[str, ...] = ()

    @property
    def order(self) -> int:
        return len(self.mul)

    identity = 0

    def label(self, x: int) -> str:
        return self.labels[x] if self.labels else str(x)

    def is_abelian(self) -> bool:
        n = self.order
        return all(self.mul[a][b] == self.mul[b][a] for a in range(n) for b in range(n))

    def product(self, xs: Iterable[int]) -> int:
        acc = 0
        for x in xs:
            acc = self.mul[acc][x]
        return acc

    def power(self, x: int, k: int) -> int:
        if k < 0:
            x, k = self.inv[x], -k
        acc = 0
        for _ in range(k):
            acc = self.mul[acc][x]
        return acc

    def class_rep(self, x: int) -> int:
        """Least element of the conjugacy class of ``x``."""
        c = self.class_of[x]
        return self.class_of.index(c)


def group_from_table(table: Sequence[Sequence[int]], name: str = "", labels=()) -> FiniteGroup:
    n = len(table)
    mul = tuple(tuple(int(v) for v in row) for row in table)
    if any(len(row) != n for row in mul):
        raise GroupTableError("multiplication table is not square")
    if any(not 0 <= v < n for row in mul for v in row):
        raise GroupTableError("entry out of range")
    for a in range(n):
        if mul[0][a] != a or mul[a][0] != a:
            raise GroupTableError(f"element 0 is not the identity (fails at {a})")
    for a, b, c in itertools.product(range(n), repeat=3):
        if mul[mul[a][b]][c] != mul[a][mul[b][c]]:
            raise GroupTableError(f"associativity fails at {(a, b, c)}")
    inv = []
    for a in range(n):
        found = [b for b in range(n) if mul[a][b] == 0]
        if len(found) != 1 or mul[found[0]][a] != 0:
            raise GroupTableError(f"element {a} has no two-sided inverse")
        inv.append(found[0])
    class_of = [-1] * n
    k = 0
    for a in range(n):
        if class_of[a] >= 0:
            continue
        for g in range(n):
            class_of[mul[mul[g][a]][inv[g]]] = k
        k += 1
    return FiniteGroup(name, mul, tuple(inv), tuple(class_of), tuple(labels))


def group_from_generators(gens, compose, identity, name: str = "", label=None) -> FiniteGroup:
    """Close ``gens`` under ``compose``; identity gets index 0."""
    elems = [identity]
    index = {identity: 0}
    frontier = [identity]
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = compose(x, g)
                if y not in index:
                    index[y] = len(elems)
                    elems.append(y)
                    nxt.append(y)
        frontier = nxt
    table = [[index[compose(x, y)] for y in elems] for x in elems]
    labels = tuple(label(x) for x in elems) if label else ()
    return group_from_table(table, name, labels)


def cyclic_group(k: int) -> FiniteGroup:
    return group_from_table([[(a + b) % k for b in range(k)] for a in range(k)], f"Z{k}")


def _perm_compose(p, q):
    # apply p first, then q
    return tuple(q[p[i]] for i in range(len(p)))


def symmetric3() -> FiniteGroup:
    return group_from_generators([(1, 0, 2), (1, 2, 0)], _perm_compose, (0, 1, 2), "S3")


def dihedral4() -> FiniteGroup:
    return group_from_generators([(1, 2, 3, 0), (0, 3, 2, 1)], _perm_compose, (0, 1, 2, 3), "D4")


# quaternion units: 0=1, 1=i, 2=j, 3=k; product of units = (sign, unit)
_UNIT_MUL = {
    (0, 0): (1, 0), (0, 1): (1, 1), (0, 2): (1, 2), (0, 3): (1, 3),
    (1, 0): (1, 1), (1, 1): (-1, 0), (1, 2): (1, 3), (1, 3): (-1, 2),
    (2, 0): (1, 2), (2, 1): (-1, 3), (2, 2): (-1, 0), (2, 3): (1, 1),
    (3, 0): (1, 3), (3, 1): (1, 2), (3, 2): (-1, 1), (3, 3): (-1, 0),
}


def _quat_mul(p, q):
    s, u = _UNIT_MUL[(p[1], q[1])]
    return (p[0] * q[0] * s, u)


def _quat_label(x):
    return ("" if x[0] > 0 else "-") + "1ijk"[x[1]]


def quaternion() -> FiniteGroup:
    return group_from_generators([(1, 1), (1, 2)], _quat_mul, (1, 0), "Q8", _quat_label)


def battery() -> list[FiniteGroup]:
    """Default comparison groups."""
    return [cyclic_group(k) for k in range(2, 7)] + [symmetric3(), dihedral4(), quaternion()]


def format_group(G: FiniteGroup) -> str:
    lines = [f"order={G.order}"]
    lines += [" ".join(map(str, row)) for row in G.mul]
    lines.append("inv: " + " ".join(map(str, G.inv)))
    return "\n".join(lines) + "\n"


def parse_group(text: str, name: str = "") -> FiniteGroup:
    lines = [ln.split("#", 1)[0].strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln]
    if not lines or not lines[0].startswith("order="):
        raise GroupTableError("missing 'order=' header")
    k = int(lines[0][6:])
    rows = [list(map(int, ln.split())) for ln in lines[1 : k + 1]]
    if len(rows) != k:
        raise GroupTableError(f"expected {k} table rows, got {len(rows)}")
    G = group_from_table(rows, name)
    for ln in lines[k + 1 :]:
        if ln.startswith("inv:"):
            given = tuple(map(int, ln[4:].split()))
            if given != G.inv:
                raise GroupTableError("inv line disagrees with the table")
    return G


# ------------------------------------------------------------ homomorphisms


@dataclass(frozen=True)
class Homomorphism:
    target: FiniteGroup
    images: tuple[int, ...]


def evaluate(hom: Homomorphism, w: Word) -> int:
    G = hom.target
    acc = 0
    for c in w:
        g = abs(c) - 1
        if g >= len(hom.images):
            raise ValueError(f"generator {g} outside the homomorphism's domain")
        x = hom.images[g]
        acc = G.mul[acc][x if c > 0 else G.inv[x]]
    return acc


MAX_HOM_GENS = 8


def find_homs(p: Presentation, G: FiniteGroup, max_gens: int = MAX_HOM_GENS) -> list[Homomorphism]:
    """Every homomorphism from ``p`` to ``G``, sorted by image tuple.

    Generators are assigned in order; a relator is tested as soon as all
    of its generators have images.
    """
    k = p.ngens
    if k > max_gens:
        raise GuardError(f"{k} generators exceeds the limit of {max_gens}")
    due: list[list[Word]] = [[] for _ in range(k)]
    for r in p.relators:
        if r:
            due[max(abs(c) - 1 for c in r)].append(r)
    images = [0] * k
    out = []
    mul_t, inv_t = G.mul, G.inv

    def ok(r: Word) -> bool:
        acc = 0
        for c in r:
            x = images[abs(c) - 1]
            acc = mul_t[acc][x if c > 0 else inv_t[x]]
        return acc == 0

    def rec(i: int):
        if i == k:
            out.append(Homomorphism(G, tuple(images)))
            return
        for x in range(G.order):
            images[i] = x
            if all(ok(r) for r in due[i]):
                rec(i + 1)

    rec(0)
    return out
