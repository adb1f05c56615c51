"""Brute-force ground truth for small watermelons.

Nothing here uses determinants or reflection: paths are built one time step
at a time and rejected as soon as two neighbours touch.  It exists to check
:mod:`melonlab.counting`.
"""
from __future__ import annotations

import itertools
from collections import Counter
from dataclasses import dataclass

from .counting import ExactDistribution, MelonConfig
from .errors import CapacityError

MAX_CELLS = 40


@dataclass(frozen=True)
class MelonPath:
    """Step matrix of a watermelon: ``steps[i][t]`` is the +-1 step of path i at time t."""

    steps: tuple

    @property
    def p(self) -> int:
        return len(self.steps)

    def ordinates(self) -> list:
        out = []
        for i, row in enumerate(self.steps):
            y, ys = 2 * i, [2 * i]
            for s in row:
                y += s
                ys.append(y)
            out.append(ys)
        return out

    @property
    def height(self) -> int:
        return max(self.ordinates()[-1])

    @property
    def depth(self) -> int:
        return min(self.ordinates()[0])

    @property
    def range(self) -> int:
        return self.height - self.depth

    def flipped(self) -> "MelonPath":
        """Mirror image under y -> 2p-2-y (path order reverses, steps negate)."""
        return MelonPath(tuple(tuple(-s for s in row) for row in reversed(self.steps)))


def _guard(cfg: MelonConfig):
    if cfg.p * 2 * cfg.n > MAX_CELLS:
        raise CapacityError(
            f"exhaustive search limited to p*2n <= {MAX_CELLS}, got {cfg.p * 2 * cfg.n}")


def _moves(p: int):
    # Lexicographic, down before up, path 0 varying slowest.
    return list(itertools.product((-1, 1), repeat=p))


def _admissible(ords, remaining, p):
    for i in range(p):
        if abs(ords[i] - 2 * i) > remaining:
            return False
        if i and ords[i - 1] >= ords[i]:
            return False
    return True


def enumerate_melons(cfg: MelonConfig, visitor=None) -> int:
    """Depth-first enumeration of every watermelon; returns the number found.

    ``visitor`` (optional) is called with a :class:`MelonPath` for each one,
    in lexicographic order of the step columns.
    """
    _guard(cfg)
    p, length = cfg.p, 2 * cfg.n
    moves = _moves(p)
    columns: list = []
    count = 0

    def dfs(t, ords):
        nonlocal count
        if t == length:
            count += 1
            if visitor is not None:
                visitor(MelonPath(tuple(zip(*columns)) if columns else ((),) * p))
            return
        remaining = length - t - 1
        for mv in moves:
            nxt = tuple(y + s for y, s in zip(ords, mv))
            if _admissible(nxt, remaining, p):
                columns.append(mv)
                dfs(t + 1, nxt)
                columns.pop()

    dfs(0, tuple(2 * i for i in range(p)))
    return count


@dataclass(frozen=True)
class MelonStats:
    """Joint (height, depth) counts over all watermelons of one configuration."""

    cfg: MelonConfig
    joint: dict

    @property
    def total(self) -> int:
        return sum(self.joint.values())

    def _marginal(self, key) -> dict:
        out: Counter = Counter()
        for (h, d), c in self.joint.items():
            out[key(h, d)] += c
        return dict(sorted(out.items()))

    def height_counts(self) -> dict:
        return self._marginal(lambda h, d: h)

    def depth_counts(self) -> dict:
        return self._marginal(lambda h, d: d)

    def range_counts(self) -> dict:
        return self._marginal(lambda h, d: h - d)

    def _dist(self, counts: dict) -> ExactDistribution:
        lo, hi = min(counts), max(counts)
        support = tuple(range(lo, hi + 1))
        return ExactDistribution(support, tuple(counts.get(v, 0) for v in support), self.total)

    def height_distribution(self) -> ExactDistribution:
        return self._dist(self.height_counts())

    def range_distribution(self) -> ExactDistribution:
        return self._dist(self.range_counts())


def stats(cfg: MelonConfig) -> MelonStats:
    """Joint (height, depth) counts.

    Runs the same step-by-step search as :func:`enumerate_melons` but merges
    partial families that share (ordinates, running max, running min), so
    p=3, n=6 (about 2.4e7 watermelons) finishes in well under a second.
    """
    _guard(cfg)
    p, length = cfg.p, 2 * cfg.n
    moves = _moves(p)
    start = tuple(2 * i for i in range(p))
    layer = {(start, start[-1], start[0]): 1}
    for t in range(length):
        remaining = length - t - 1
        nxt_layer: dict = {}
        for (ords, top, bot), mult in layer.items():
            for mv in moves:
                nxt = tuple(y + s for y, s in zip(ords, mv))
                if not _admissible(nxt, remaining, p):
                    continue
                key = (nxt, max(top, nxt[-1]), min(bot, nxt[0]))
                nxt_layer[key] = nxt_layer.get(key, 0) + mult
        layer = nxt_layer
    joint: Counter = Counter()
    for (ords, top, bot), mult in layer.items():
        assert ords == start
        joint[(top, bot)] += mult
    return MelonStats(cfg, dict(sorted(joint.items())))
