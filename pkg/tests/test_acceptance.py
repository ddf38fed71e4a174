"""Acceptance criteria, one test each.

Every test prints a single ``ACCEPT <n> PASS/FAIL`` line (visible even
without ``-s``) and then fails normally if the criterion does not hold.
"""

import contextlib
import io
import itertools
import random
import time
from collections import Counter

import pytest

from vck import amalgam
from vck import fpgroup as fp
from vck.algebra import AxiomError, SolutionTable, flip_table, format_solution, make_pair
from vck.cli import EXIT_INVALID, EXIT_OK, run
from vck.cocycle import check_pair, cohomologous_pair, lambda_transform, specialize, universal_presentation
from vck.coloring import colorings, count_colorings
from vck.diagram import OVER, UNDER, VIRTUAL, LinkDiagram, Passage, catalog, catalog_names
from vck.enumeration import census
from vck.invariant import invariant, weight_product
from vck.reproduce import (
    KISHINO_PAIRS,
    SWAP4_ROLES,
    named_pair,
    swap4_certificate,
    swap4_q8_hom,
    swap4_reference,
)

from conftest import involutive_pairs


@contextlib.contextmanager
def criterion(capsys, label, budget=None):
    """Print one PASS/FAIL line for ``label``; re-raise any failure."""
    start = time.perf_counter()
    status, detail = "PASS", ""
    try:
        yield
        took = time.perf_counter() - start
        if budget is not None and took > budget:
            status, detail = "FAIL", f" (over the {budget:g}s budget)"
            raise AssertionError(f"{label}: {took:.2f}s exceeds {budget:g}s")
    except BaseException as exc:
        status = "FAIL"
        detail = detail or f" ({type(exc).__name__}: {str(exc).splitlines()[0][:100] if str(exc) else ''})"
        raise
    finally:
        took = time.perf_counter() - start
        with capsys.disabled():
            print(f"\nACCEPT {label}: {status} [{took:.2f}s]{detail}")


def cli(*argv):
    buf = io.StringIO()
    code = run(list(argv), buf)
    return code, buf.getvalue()


# ------------------------------------------------------------ 1. axioms


def ybe_fails(T):
    n = T.n
    for x, y, z in itertools.product(range(n), repeat=3):
        # (T x 1)(1 x T)(T x 1) versus (1 x T)(T x 1)(1 x T)
        a, b = T(x, y)
        b, c = T(b, z)
        a, b = T(a, b)
        q, r = T(y, z)
        p, q = T(x, q)
        q, r = T(q, r)
        if (a, b, c) != (p, q, r):
            return True
    return False


def obviously_invalid(S, B):
    n = S.n
    bij = all(len({T(x, y) for x in range(n) for y in range(n)}) == n * n for T in (S, B))
    invol = all(B(*B(x, y)) == (x, y) for x in range(n) for y in range(n))
    return not bij or not invol or ybe_fails(S) or ybe_fails(B)


def mutate(table, rng, swap):
    n = table.n
    rows = [list(r) for r in table.t]
    x, y = rng.randrange(n), rng.randrange(n)
    if swap:
        u, v = rng.randrange(n), rng.randrange(n)
        rows[x][y], rows[u][v] = rows[u][v], rows[x][y]
    else:
        old = rows[x][y]
        rows[x][y] = rng.choice([c for c in itertools.product(range(n), repeat=2) if c != old])
    return SolutionTable.from_rows(rows)


def test_criterion_1_axioms(capsys, tmp_path):
    with criterion(capsys, "1 axioms", budget=1.0):
        code, out = cli("check", "--pair", "paper-z4")
        assert code == EXIT_OK and "OK" in out, out
        accepted = [named_pair("paper-z4")]
        for n in (2, 3, 4):
            path = tmp_path / f"flip{n}.sol"
            path.write_text(format_solution([flip_table(n), flip_table(n)]))
            code, out = cli("check", "--pair", str(path))
            assert code == EXIT_OK and "OK" in out, out
            accepted.append(make_pair(flip_table(n), flip_table(n)))

        rng = random.Random(20)
        rejected = 0
        while rejected < 20:
            vp = rng.choice(accepted)
            S, B = vp.S.table, vp.beta.table
            swap = rejected % 2 == 1
            if rng.random() < 0.5:
                S = mutate(S, rng, swap)
            else:
                B = mutate(B, rng, swap)
            if not obviously_invalid(S, B):
                continue
            with pytest.raises(AxiomError) as info:
                make_pair(S, B)
            assert info.value.witness is not None
            assert type(info.value) is not AxiomError
            path = tmp_path / f"mut{rejected}.sol"
            path.write_text(format_solution([S, B]))
            code, out = cli("check", "--pair", str(path))
            assert code == EXIT_INVALID and type(info.value).__name__ in out, out
            rejected += 1


# ------------------------------------------------------------ 2. census

CENSUS_WANT = {2: {"all": 4, "connected": 3}, 3: {"all": 90, "aut": 38, "connected": 26}}
CENSUS4_WANT = {"all": 3517, "aut": 325, "connected": 167, "both": 10}


def census_fields(n):
    a, b, c, d = census(n).as_tuple()
    return {"all": a, "aut": b, "connected": c, "both": d}


def test_criterion_2_census_small(capsys):
    with criterion(capsys, "2 census n<=3", budget=10.0):
        got = {n: census_fields(n) for n in CENSUS_WANT}
        for n, want in CENSUS_WANT.items():
            for key, value in want.items():
                assert got[n][key] == value, f"n={n} {key}: got {got[n][key]}, reported {value}"


def test_criterion_2_census_n4(capsys):
    with criterion(capsys, "2 census n=4", budget=1800.0):
        got = census_fields(4)
        assert {k: got[k] for k in CENSUS4_WANT} == CENSUS4_WANT


# ------------------------------------------------------------ 3. universal groups


def test_criterion_3_universal_groups(capsys):
    with criterion(capsys, "3 universal groups"):
        t = time.perf_counter()
        p = universal_presentation(named_pair("flip2-flip2")).simplified
        assert p.ngens == 3 and len(p.relators) == 2
        g = p.gens.index("g(2,1)")
        want = {fp.relator_form(fp.commutator(fp.gen(g), fp.gen(k))) for k in range(3) if k != g}
        assert {fp.relator_form(r) for r in p.relators} == want
        assert time.perf_counter() - t < 10

        t = time.perf_counter()
        up = universal_presentation(named_pair("antiflip2-flip2"))
        assert up.simplified.ngens == 1 and not up.simplified.relators
        assert all(w == () for row in up.pi_g for w in row)
        assert time.perf_counter() - t < 10

        t = time.perf_counter()
        p = universal_presentation(named_pair("swap4")).simplified
        renaming, trivial = swap4_certificate(p)
        assert renaming is not None, "reference relators not found under any renaming"
        assert trivial, "some relator is nontrivial in the reference group"
        assert p.ngens == swap4_reference().ngens

        hom = swap4_q8_hom(p)
        Q8 = hom.target
        i = {role: p.gens.index(name) for role, name in SWAP4_ROLES.items()}
        a = fp.commutator(fp.gen(i["h"]), fp.gen(i["c"]))
        assert Q8.label(fp.evaluate(hom, a)) == "-1"
        assert time.perf_counter() - t < 10


# ------------------------------------------------------------ 4. colorings


def test_criterion_4_colorings(capsys):
    with criterion(capsys, "4 colorings", budget=5.0):
        pairs = [named_pair(name) for name in KISHINO_PAIRS]
        want = {"k1": (9, 3, 9), "k2": (3, 9, 3), "k3": (3, 3, 3)}
        got = {k: tuple(count_colorings(catalog(k), vp) for vp in pairs) for k in want}
        assert got == want
        assert count_colorings(catalog("k3"), named_pair("four-flip")) == 16


# ------------------------------------------------------------ 5. invariants


def unordered(value):
    """Per-coloring component values as sorted tuples of their printed form."""
    return Counter(tuple(sorted(value.show_rep(r) for r in e.reps)) for e in value.entries)


def test_criterion_5_invariants(capsys):
    with criterion(capsys, "5 invariants", budget=30.0):
        code, out = cli("invariant", "--diagram", "paper-2comp", "--cocycle", "flip2-h")
        assert code == EXIT_OK
        lines = sorted(ln.strip() for ln in out.splitlines() if " x (" in ln)
        assert lines == ["1 x (h, h)", "1 x (h^-1, h^-1)", "2 x (1, 1)"], out

        up = universal_presentation(named_pair("flip2-flip2"))
        a, b = "f(1,2)^-1", "f(2,1)^-1"
        v22 = invariant(catalog("v2.2"), up.cocycle(), homs=[])
        v23 = invariant(catalog("v2.3"), up.cocycle(), homs=[])
        assert unordered(v22) == Counter({("1", "1"): 4})
        assert unordered(v23) == Counter({("1", "1"): 2, tuple(sorted((a, b))): 2})

        up = universal_presentation(named_pair("antiflip2-flip2"))
        c = up.simplified.gens[0]
        one, minus_one, minus_two = "1", f"{c}^-1", f"{c}^-1 {c}^-1"
        vals = {k: unordered(invariant(catalog(k), up.cocycle(), homs=[])) for k in ("v2.3", "v3.4")}
        assert vals["v2.3"] != vals["v3.4"]
        type_two = tuple(sorted((minus_two, one)))
        type_one = (minus_one, minus_one)
        carriers = [k for k, v in vals.items() if v[type_two] == 2]
        assert len(carriers) == 1
        assert any(v[type_one] == 2 for v in vals.values())
        allowed = {type_two, type_one, (one, one)}
        assert all(set(v) <= allowed and sum(v.values()) == 4 for v in vals.values())

        up = universal_presentation(named_pair("swap4"))
        p = up.simplified
        i = {role: p.gens.index(name) for role, name in SWAP4_ROLES.items()}
        h, others = i["h"], [i["c"], i["e"]]
        value = lambda w: amalgam.word_value(w, h, others)  # noqa: E731
        named = {
            "a": value(fp.commutator(fp.gen(i["h"]), fp.gen(i["c"]))),
            "f": value(fp.commutator(fp.gen(i["h"]), fp.gen(i["e"]))),
            "1": value(()),
        }
        by_value = {v: k for k, v in named.items()}
        d, cp = catalog("v2.3"), up.cocycle()
        seen = Counter(
            tuple(by_value.get(value(w), "?") for w in weight_product(d, col, cp).products)
            for col in colorings(d, cp.vp)
        )
        assert seen == Counter({("a", "a"): 2, ("f", "f"): 2, ("1", "1"): 4})

        cpq = specialize(up, swap4_q8_hom(p))
        q8 = invariant(d, cpq)
        assert Counter(tuple(q8.show_rep(r) for r in e.reps) for e in q8.entries) == Counter(
            {("-1", "-1"): 2, ("1", "1"): 6}
        )


# ------------------------------------------------------------ 6. property suites


def random_small_diagram(rng):
    passages = []
    for cid in range(1, rng.randint(1, 3) + 1):
        if rng.random() < 0.5:
            passages += [Passage(VIRTUAL, cid, side="l"), Passage(VIRTUAL, cid, side="r")]
        else:
            s = rng.choice([1, -1])
            passages += [Passage(OVER, cid, s), Passage(UNDER, cid, s)]
    rng.shuffle(passages)
    cut = rng.randint(1, len(passages))
    return LinkDiagram((tuple(passages[:cut]), tuple(passages[cut:])) if cut < len(passages) else (tuple(passages),))


def test_criterion_6_property_suites(capsys):
    from test_coloring import oracle_colorings
    from test_invariant import battery_signature, random_rewrite

    with criterion(capsys, "6 property suites"):
        pairs = involutive_pairs(3)
        names = catalog_names()
        rng = random.Random(6)

        # move invariance: counts on every pair, battery invariants round-robin
        base_counts = {k: [count_colorings(catalog(k), vp) for vp in pairs] for k in names}
        base_sigs = {}
        for trial in range(100):
            name = names[trial % len(names)]
            d = random_rewrite(catalog(name), rng, rng.randint(1, 2))
            assert [count_colorings(d, vp) for vp in pairs] == base_counts[name]
            for k in (trial % len(pairs), (trial * 7 + 3) % len(pairs)):
                if (name, k) not in base_sigs:
                    base_sigs[name, k] = battery_signature(catalog(name), k)
                assert battery_signature(d, k) == base_sigs[name, k], (name, k, str(d))

        # base-point rotation
        for name in ("k2", "v2.3", "paper-2comp"):
            d = catalog(name)
            for k in range(0, len(pairs), 7):
                want = battery_signature(d, k)
                for c, comp in enumerate(d.components):
                    for shift in range(1, len(comp)):
                        assert battery_signature(d.rotate(c, shift), k) == want

        # universal pair satisfies every axiom instance; lambda transforms stay cocycles
        lam_checked = 0
        for vp in pairs:
            up = universal_presentation(vp)
            assert check_pair(up.cocycle()).ok
            if up.simplified.ngens > fp.MAX_HOM_GENS:
                continue
            homs = [h for G in fp.battery() if G.order <= 8 for h in fp.find_homs(up.simplified, G)]
            for h in rng.sample(homs, min(3, len(homs))):
                cp = specialize(up, h)
                for _ in range(3):
                    lam = [rng.randrange(cp.target.order) for _ in range(vp.n)]
                    if not lambda_transform(cp, lam)[1].cohomologous:
                        lam = [lam[0]] * vp.n
                    if lambda_transform(cp, lam)[1].cohomologous:
                        assert check_pair(cohomologous_pair(cp, lam)).ok
                        lam_checked += 1
        assert lam_checked > 0

        # maximum cycle automorphism forces g = 1
        from vck.algebra import as_biquandle, beta_from_aut, make_named

        for n in (3, 5):
            D = make_named("dihedral", n)
            cycle = tuple((x + 1) % n for x in range(n))
            up = universal_presentation(make_pair(D, beta_from_aut(as_biquandle(D), cycle)))
            assert all(w == () for row in up.pi_g for w in row)

        # DFS equals brute force on small diagrams
        for _ in range(60):
            d = random_small_diagram(rng)
            vp = pairs[rng.randrange(len(pairs))]
            assert [c.colors for c in colorings(d, vp)] == oracle_colorings(d, vp)
