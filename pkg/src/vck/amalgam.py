"""Exact word problem for a family of amalgamated products.

The group is generated by ``h`` and ``x_1 .. x_m`` with, for every ``t``,
``a_t = [h, x_t]`` subject to ``a_t^2 = [a_t, x_t] = [a_t, h] = 1``.
Each factor ``K_t = <h, x_t>`` is faithfully modelled by triples
``(i, j, eps)`` standing for ``h^i x_t^j a_t^eps`` with product

    (i, j, e)(k, l, s) = (i + k, j + l, e + s + j*k mod 2)

and the whole group is the free product of the ``K_t`` amalgamated over
the infinite cyclic subgroup ``<h>``.  Elements are kept in the normal
form ``h^k r_1 ... r_p`` where each ``r`` is a nontrivial right coset
representative ``(0, j, eps)`` of ``<h>`` in its factor and consecutive
representatives come from different factors.
"""

from __future__ import annotations

from typing import Sequence

from .fpgroup import Word

Triple = tuple[int, int, int]


def _mul(p: Triple, q: Triple) -> Triple:
    return (p[0] + q[0], p[1] + q[1], (p[2] + q[2] + p[1] * q[0]) % 2)


def _inv(p: Triple) -> Triple:
    i, j, e = p
    # (i,j,e)(-i,-j,s) = (0,0, e + s - j*i) -> s = e + i*j mod 2
    return (-i, -j, (e + i * j) % 2)


class AmalgamElement:
    __slots__ = ("k", "syllables")

    def __init__(self):
        self.k = 0
        self.syllables: list[tuple[int, int, int]] = []  # (factor, j, eps)

    def _push_h_left(self, p: int, upto: int) -> int:
        """Move ``h^p`` from position ``upto`` to the front; return leftover power."""
        for idx in range(upto - 1, -1, -1):
            t, j, e = self.syllables[idx]
            # (0,j,e)(p,0,0) = (p, j, e + j p) = h^p (0, j, e + j p)
            self.syllables[idx] = (t, j, (e + j * p) % 2)
        return p

    def mul_factor(self, t: int | None, elem: Triple) -> None:
        """Right-multiply by ``elem`` of factor ``t`` (``t=None`` for powers of h)."""
        i, j, e = elem
        if t is not None and self.syllables and self.syllables[-1][0] == t:
            _, j0, e0 = self.syllables.pop()
            i, j, e = _mul((0, j0, e0), (i, j, e))
        # now multiply by h^i (0, j, e) placed after the current syllables
        self.k += self._push_h_left(i, len(self.syllables))
        if j or e:
            self.syllables.append((t, j, e))

    def is_identity(self) -> bool:
        return self.k == 0 and not self.syllables

    def key(self):
        return (self.k, tuple(self.syllables))


def word_value(word: Word, h: int, others: Sequence[int]):
    """Normal form of ``word``; ``h`` and ``others`` are generator ids."""
    factor_of = {g: t for t, g in enumerate(others)}
    el = AmalgamElement()
    for c in word:
        g, sgn = abs(c) - 1, (1 if c > 0 else -1)
        if g == h:
            el.mul_factor(None, (sgn, 0, 0))
        elif g in factor_of:
            el.mul_factor(factor_of[g], (0, 1, 0) if sgn > 0 else _inv((0, 1, 0)))
        else:
            raise ValueError(f"generator {g} not in the model")
    return el.key()


def is_trivial(word: Word, h: int, others: Sequence[int]) -> bool:
    return word_value(word, h, others) == (0, ())
