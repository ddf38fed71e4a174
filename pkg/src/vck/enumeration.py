"""Enumeration of biquandles, involutive solutions and virtual pairs up to isomorphism.

Labeled objects are produced by backtracking over table cells, then
deduplicated by a canonical key: the lexicographically least serialized
table over all relabelings of ``{0..n-1}``.
"""

from __future__ import annotations

import itertools
import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Iterator, Sequence

from .algebra import (
    SolutionTable,
    VirtualPair,
    as_biquandle,
    automorphisms,
    beta_from_aut,
    biquandle_components,
    conjugacy_classes_of_perms,
    connected_components,
    find_mixed_violation,
    flip_table,
    invert_perm,
    make_pair,
)

log = logging.getLogger(__name__)

BIQUANDLE_MAX_N = 5
INVOLUTIVE_MAX_N = 7
PAIRS_MAX_N = 4
PAIRS_LONG_MAX_N = 5

# reported values from the census table; used only to flag discrepancies
REPORTED_CENSUS = {
    2: (4, 4, 3, 0),
    3: (90, 38, 26, 0),
    4: (3517, 325, 167, 10),
    5: (46658, 41278, 138, 0),
}
REPORTED_INVOLUTIVE = {7: (3456, 1959)}


class SizeError(ValueError):
    pass


@dataclass(frozen=True)
class IsoClass:
    representative: VirtualPair | SolutionTable
    canonical_key: bytes

    @property
    def hex(self) -> str:
        return self.canonical_key.hex()


@dataclass(frozen=True)
class CensusRow:
    n: int
    all_pairs: int
    aut_induced_pairs: int
    connected_pairs: int
    connected_with_both_disconnected: int

    def as_tuple(self) -> tuple[int, int, int, int]:
        return (
            self.all_pairs,
            self.aut_induced_pairs,
            self.connected_pairs,
            self.connected_with_both_disconnected,
        )

    def discrepancies(self) -> list[str]:
        """Fields that disagree with the published census (empty if none or unknown)."""
        ref = REPORTED_CENSUS.get(self.n)
        if ref is None:
            return []
        names = ("all", "aut-induced", "connected", "both-disconnected")
        return [
            f"{name}: computed {got}, reported {want}"
            for name, got, want in zip(names, self.as_tuple(), ref)
            if got != want
        ]


# ---------------------------------------------------------------- canonical


def _relabel_key(key: Sequence[int], n: int, phi: Sequence[int]) -> bytes:
    """Relabel a serialized sequence of ``n x n`` pair tables along ``phi``."""
    cells = n * n
    out = bytearray(len(key))
    for block in range(len(key) // (2 * cells)):
        base = block * 2 * cells
        for x in range(n):
            for y in range(n):
                i = base + 2 * (x * n + y)
                j = base + 2 * (phi[x] * n + phi[y])
                out[j] = phi[key[i]]
                out[j + 1] = phi[key[i + 1]]
    return bytes(out)


def canonical_key(obj: VirtualPair | SolutionTable, group: Iterable[Sequence[int]] | None = None) -> bytes:
    """Least serialized form over all relabelings (or over ``group`` if given)."""
    key = obj.key()
    n = obj.n
    perms = itertools.permutations(range(n)) if group is None else group
    return min(_relabel_key(key, n, phi) for phi in perms)


def relabel(obj, phi):
    return obj.relabel(phi)


def are_isomorphic(p: VirtualPair, q: VirtualPair):
    """A bijection ``phi`` carrying ``p`` onto ``q``, or ``None``."""
    if p.n != q.n:
        raise ValueError(f"size mismatch: {p.n} vs {q.n}")
    target = q.key()
    for phi in itertools.permutations(range(p.n)):
        if _relabel_key(p.key(), p.n, phi) == target:
            return phi
    return None


def _tables_from_key(key: bytes, n: int) -> list[SolutionTable]:
    cells = n * n
    tables = []
    for block in range(len(key) // (2 * cells)):
        base = block * 2 * cells
        tables.append(
            SolutionTable.from_function(
                n, lambda x, y: (key[base + 2 * (x * n + y)], key[base + 2 * (x * n + y) + 1])
            )
        )
    return tables


def pair_from_key(key: bytes, n: int, involutive: bool = True) -> VirtualPair:
    S, beta = _tables_from_key(key, n)
    return make_pair(S, beta, involutive=involutive)


# --------------------------------------------------------------- biquandles


def _biquandle_search(n: int, prefix: tuple[tuple[int, int], ...] = ()) -> Iterator[tuple]:
    """Yield flat cell tuples of every labeled biquandle extending ``prefix``.

    Cells are filled in row-major order.  Row values of ``sigma^1`` and
    column values of ``sigma^2`` must stay injective (Latin-style
    constraints), the whole map must stay injective, and every braid
    triple whose cells are all known is checked after each assignment.
    """
    N = n * n
    L = [-1] * N
    R = [-1] * N
    used_pair = set()
    row_used = [set() for _ in range(n)]
    col_used = [set() for _ in range(n)]
    fixed_count = [0] * n
    triples = [(x, y, z) for x in range(n) for y in range(n) for z in range(n)]

    def consistent() -> bool:
        for x, y, z in triples:
            i = x * n + y
            a1 = L[i]
            if a1 < 0:
                continue
            e_i = y * n + z
            e = L[e_i]
            if e < 0:
                continue
            b1 = R[i]
            j = b1 * n + z
            c = L[j]
            d = R[j]
            g = R[e_i]
            k = x * n + e
            p = L[k]
            q = R[k]
            if p >= 0 and c >= 0:
                m = a1 * n + c
                u = L[m]
                if u >= 0 and u != p:
                    return False
            if d >= 0 and q >= 0:
                m2 = q * n + g
                s = R[m2]
                if s >= 0 and s != d:
                    return False
                r = L[m2]
                if r >= 0 and c >= 0:
                    v = R[a1 * n + c]
                    if v >= 0 and v != r:
                        return False
        return True

    def assign(i, z, w):
        x, y = divmod(i, n)
        L[i], R[i] = z, w
        used_pair.add((z, w))
        row_used[x].add(z)
        col_used[y].add(w)
        if (z, w) == (x, y):
            fixed_count[x] += 1

    def unassign(i):
        x, y = divmod(i, n)
        z, w = L[i], R[i]
        used_pair.discard((z, w))
        row_used[x].discard(z)
        col_used[y].discard(w)
        if (z, w) == (x, y):
            fixed_count[x] -= 1
        L[i] = R[i] = -1

    for i, (z, w) in enumerate(prefix):
        assign(i, z, w)
    if prefix and not consistent():
        return

    def rec(i):
        if i == N:
            if all(c == 1 for c in fixed_count):
                yield tuple(zip(L, R))
            return
        x, y = divmod(i, n)
        for z in range(n):
            if z in row_used[x]:
                continue
            for w in range(n):
                if w in col_used[y] or (z, w) in used_pair:
                    continue
                if (z, w) == (x, y) and fixed_count[x]:
                    continue
                assign(i, z, w)
                if consistent():
                    yield from rec(i + 1)
                unassign(i)

    yield from rec(len(prefix))


def _table_from_cells(n: int, cells: Sequence[tuple[int, int]]) -> SolutionTable:
    return SolutionTable(n, tuple(tuple(cells[x * n: (x + 1) * n]) for x in range(n)))


def _biquandle_task(args):
    n, prefix = args
    out = {}
    for cells in _biquandle_search(n, prefix):
        table = _table_from_cells(n, cells)
        key = canonical_key(table)
        out.setdefault(key, None)
    return sorted(out)


def _first_cell_prefixes(n: int) -> list[tuple[tuple[int, int], ...]]:
    return [((z, w),) for z in range(n) for w in range(n)]


def _run_tasks(func, tasks, workers: int):
    if workers > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            return list(pool.map(func, tasks))
    return [func(t) for t in tasks]


def enumerate_biquandles(n: int, workers: int = 1) -> list[IsoClass]:
    """All biquandles of size ``n`` up to isomorphism, sorted by canonical key."""
    if not 1 <= n <= BIQUANDLE_MAX_N:
        raise SizeError(f"biquandle enumeration supports 1 <= n <= {BIQUANDLE_MAX_N}, got {n}")
    tasks = [(n, p) for p in _first_cell_prefixes(n)]
    keys = set()
    for part in _run_tasks(_biquandle_task, tasks, workers):
        keys.update(part)
    return [IsoClass(_tables_from_key(k, n)[0], k) for k in sorted(keys)]


# --------------------------------------------------------- involutive solutions


def _involutive_search(n: int) -> Iterator[tuple[tuple[int, ...], ...]]:
    """Labeled involutive non-degenerate solutions, as tuples of left actions.

    ``r(x, y) = (L_x(y), L_{L_x(y)}^{-1}(x))`` is a solution exactly when
    ``L_x L_{L_x^{-1}(y)} = L_y L_{L_y^{-1}(x)}`` for all ``x, y``.
    """
    perms = list(itertools.permutations(range(n)))
    invs = [invert_perm(p) for p in perms]
    L: list = [None] * n
    Linv: list = [None] * n

    def ok_upto(k):
        # check every (x, y) whose four actions are known
        for x in range(k + 1):
            for y in range(k + 1):
                if x != k and y != k:
                    continue
                a = Linv[x][y]
                b = Linv[y][x]
                if L[a] is None or L[b] is None:
                    continue
                lx, ly, la, lb = L[x], L[y], L[a], L[b]
                for z in range(n):
                    if lx[la[z]] != ly[lb[z]]:
                        return False
        # pairs involving earlier rows that now became checkable
        for x in range(k):
            for y in range(k):
                a = Linv[x][y]
                b = Linv[y][x]
                if k not in (a, b) or L[a] is None or L[b] is None:
                    continue
                lx, ly, la, lb = L[x], L[y], L[a], L[b]
                for z in range(n):
                    if lx[la[z]] != ly[lb[z]]:
                        return False
        return True

    def rec(k):
        if k == n:
            yield tuple(L)
            return
        for p, pi in zip(perms, invs):
            L[k], Linv[k] = p, pi
            if ok_upto(k):
                yield from rec(k + 1)
            L[k] = Linv[k] = None

    yield from rec(0)


def involutive_table(left: Sequence[Sequence[int]]) -> SolutionTable:
    n = len(left)
    inv = [invert_perm(p) for p in left]
    return SolutionTable.from_function(n, lambda x, y: (left[x][y], inv[left[x][y]][x]))


def labeled_involutive(n: int) -> list[SolutionTable]:
    """Every labeled involutive solution of size ``n`` that is a biquandle."""
    out = []
    for left in _involutive_search(n):
        table = involutive_table(left)
        if not table.is_involutive():
            continue
        try:
            as_biquandle(table)
        except ValueError:
            continue
        out.append(table)
    return out


def enumerate_involutive(n: int, compatible_with_flip: bool = False, long: bool = False) -> list[IsoClass]:
    """Involutive non-degenerate solutions of size ``n`` up to isomorphism."""
    if not 1 <= n <= INVOLUTIVE_MAX_N:
        raise SizeError(f"involutive enumeration supports 1 <= n <= {INVOLUTIVE_MAX_N}, got {n}")
    if n >= 6 and not long:
        raise SizeError(f"n={n} is long-running; pass long=True")
    flip = flip_table(n)
    keys = set()
    for table in labeled_involutive(n):
        if compatible_with_flip and find_mixed_violation(flip, table) is not None:
            continue
        keys.add(canonical_key(table))
    return [IsoClass(_tables_from_key(k, n)[0], k) for k in sorted(keys)]


# ------------------------------------------------------------- virtual pairs


def _check_pair_size(n: int, long: bool) -> None:
    if n == 1:
        return
    limit = PAIRS_LONG_MAX_N if long else PAIRS_MAX_N
    if not 2 <= n <= limit:
        hint = " (n=5 needs long=True)" if n == PAIRS_LONG_MAX_N else ""
        raise SizeError(f"virtual-pair enumeration supports 2 <= n <= {limit}, got {n}{hint}")


def _pairs_for_S(args) -> list[bytes]:
    """Canonical keys of all pairs ``(S, beta)`` for one biquandle ``S``."""
    S_key, n, betas = args
    S = _tables_from_key(S_key, n)[0]
    auts = automorphisms(S)
    seen = set()
    for beta in betas:
        if find_mixed_violation(S, beta) is not None:
            continue
        pair_key = S.key() + beta.key()
        seen.add(min(_relabel_key(pair_key, n, a) for a in auts))
    return sorted(seen)


def labeled_biquandles(n: int) -> list[SolutionTable]:
    return [_table_from_cells(n, cells) for cells in _biquandle_search(n)]


def enumerate_virtual_pairs(
    n: int, mode: str = "all", long: bool = False, strict: bool = False, workers: int = 1
) -> list[IsoClass]:
    """Virtual pairs of size ``n`` up to simultaneous relabeling.

    ``mode="all"`` returns every pair; ``mode="aut_induced"`` only the
    pairs ``(S, i_a)``, one per conjugacy class of ``Aut(S)``.

    By default ``beta`` ranges over every biquandle satisfying the mixed
    relation with ``S``; this is the convention behind the published
    census counts.  ``strict=True`` also demands ``beta^2 = 1``.
    """
    _check_pair_size(n, long)
    if mode not in ("all", "aut_induced"):
        raise ValueError(f"unknown mode {mode!r}")
    biquandles = enumerate_biquandles(n, workers=workers)
    results = []
    if mode == "aut_induced":
        for cls in biquandles:
            S = as_biquandle(cls.representative)
            for conj in conjugacy_classes_of_perms(automorphisms(S)):
                vp = make_pair(S.table, beta_from_aut(S, conj[0]))
                results.append(vp)
    else:
        betas = labeled_involutive(n) if strict else labeled_biquandles(n)
        tasks = [(cls.canonical_key, n, betas) for cls in biquandles]
        for keys in _run_tasks(_pairs_for_S, tasks, workers):
            results.extend(pair_from_key(k, n, involutive=strict) for k in keys)
    classes = [IsoClass(vp, canonical_key(vp)) for vp in results]
    classes.sort(key=lambda c: c.canonical_key)
    return classes


def census(n: int, long: bool = False, strict: bool = False, workers: int = 1) -> CensusRow:
    """Counts of the census table for size ``n``."""
    all_pairs = enumerate_virtual_pairs(n, "all", long=long, strict=strict, workers=workers)
    aut = enumerate_virtual_pairs(n, "aut_induced", long=long, workers=workers)
    connected = both = 0
    for cls in all_pairs:
        vp = cls.representative
        if connected_components(vp).num_classes != 1:
            continue
        connected += 1
        if (
            biquandle_components(vp.S).num_classes > 1
            and biquandle_components(vp.beta).num_classes > 1
        ):
            both += 1
    row = CensusRow(n, len(all_pairs), len(aut), connected, both)
    if not strict:
        for msg in row.discrepancies():
            log.warning("census n=%d disagrees with reported table: %s", n, msg)
    return row


# ------------------------------------------------------------- persistence


def write_keys(path: str | Path, classes: Iterable[IsoClass]) -> None:
    """One hex-encoded canonical key per line, sorted."""
    lines = sorted(c.hex for c in classes)
    Path(path).write_text("\n".join(lines) + ("\n" if lines else ""))


def read_keys(path: str | Path) -> list[bytes]:
    return [bytes.fromhex(ln) for ln in Path(path).read_text().split()]
