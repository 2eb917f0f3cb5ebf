"""Exact HOMFLYPT polynomials by skein recursion over oriented PD codes.

Convention: ``a*P(L+) - a^-1*P(L-) = z*P(L0)`` and ``P(unknot) = 1``, so a
split unknot contributes the loop value ``delta = (a - a^-1)/z``.

A PD crossing is a 5-tuple ``(e0, e1, e2, e3, sign)``: edge labels listed
counterclockwise starting at the incoming under-strand, so the under-strand
runs ``e0 -> e2``; the over-strand runs ``e3 -> e1`` when ``sign = +1`` and
``e1 -> e3`` when ``sign = -1``.
"""

from __future__ import annotations

import cmath
import hashlib
import itertools
import json
import logging
import math
import os
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Sequence

from .laurent import DELTA, ONE, ZERO, LaurentPoly

log = logging.getLogger(__name__)

Crossing = tuple  # (e0, e1, e2, e3, sign)


class OpenDiagramError(ValueError):
    """HOMFLYPT was requested for a diagram with boundary points."""


# --------------------------------------------------------------------------
# local operations on PD lists


def switch_crossing(x: Crossing) -> Crossing:
    a, b, c, d, s = x
    if s > 0:
        return (d, a, b, c, -1)
    return (b, c, d, a, 1)


def _occurrences(xs: Sequence[Crossing]) -> dict[int, list[tuple[int, int]]]:
    occ: dict[int, list[tuple[int, int]]] = {}
    for ci, x in enumerate(xs):
        for p in range(4):
            occ.setdefault(x[p], []).append((ci, p))
    return occ


def _remove(xs: Sequence[Crossing], dead: Iterable[int], merges: Sequence[tuple[int, int]]):
    """Delete crossings and glue edge labels; returns (crossings, free loops created)."""
    dead = set(dead)
    parent: dict[int, int] = {}

    def find(u: int) -> int:
        while parent.get(u, u) != u:
            u = parent[u]
        return u

    touched: set[int] = set()
    for u, v in merges:
        touched.update((u, v))
        ru, rv = find(u), find(v)
        if ru != rv:
            parent[rv] = ru
    rest = [x for ci, x in enumerate(xs) if ci not in dead]
    if parent:
        rest = [
            (find(x[0]), find(x[1]), find(x[2]), find(x[3]), x[4]) for x in rest
        ]
    alive = {e for x in rest for e in x[:4]}
    loops = len({find(u) for u in touched} - alive)
    return rest, loops


def smooth_crossing(xs: Sequence[Crossing], ci: int):
    """Oriented smoothing at crossing ``ci``; returns (crossings, free loops created)."""
    a, b, c, d, s = xs[ci]
    merges = [(a, b), (d, c)] if s > 0 else [(a, d), (b, c)]
    return _remove(xs, [ci], merges)


def _find_r1(xs):
    for ci, x in enumerate(xs):
        for p in range(4):
            if x[p] == x[(p + 1) % 4]:
                u, v = x[(p + 2) % 4], x[(p + 3) % 4]
                if u == v:
                    return _remove(xs, [ci], [])[0], 1
                return _remove(xs, [ci], [(u, v)])
    return None


def _bigons(xs, occ):
    """Yield (c1, p, c2, q, side) for every bigon face; side is +-1."""
    for e, places in occ.items():
        if len(places) != 2:
            continue
        (c1, p), (c2, q) = places
        if c1 == c2:
            continue
        for side in (1, -1):
            f = xs[c1][(p + side) % 4]
            if f != e and f == xs[c2][(q - side) % 4]:
                yield c1, p, c2, q, side


def _find_r2(xs, occ):
    for c1, p, c2, q, side in _bigons(xs, occ):
        if p % 2 != q % 2:
            continue
        pf, qf = (p + side) % 4, (q - side) % 4
        x1, y1 = xs[c1][(p + 2) % 4], xs[c2][(q + 2) % 4]
        x2, y2 = xs[c1][(pf + 2) % 4], xs[c2][(qf + 2) % 4]
        return _remove(xs, [c1, c2], [(x1, y1), (x2, y2)])
    return None


def simplify(xs: Sequence[Crossing]) -> tuple[list[Crossing], int]:
    """Greedy Reidemeister I/II reductions; returns (crossings, free loops split off)."""
    xs = list(xs)
    loops = 0
    while xs:
        hit = _find_r1(xs)
        if hit is None:
            hit = _find_r2(xs, _occurrences(xs))
        if hit is None:
            break
        xs, extra = hit
        loops += extra
    return xs, loops


def split_components(xs: Sequence[Crossing]) -> list[list[Crossing]]:
    """Group crossings into connected pieces of the diagram."""
    parent = list(range(len(xs)))

    def find(u):
        while parent[u] != u:
            parent[u] = parent[parent[u]]
            u = parent[u]
        return u

    for places in _occurrences(xs).values():
        if len(places) == 2:
            ra, rb = find(places[0][0]), find(places[1][0])
            if ra != rb:
                parent[rb] = ra
    groups: dict[int, list[Crossing]] = {}
    for ci, x in enumerate(xs):
        groups.setdefault(find(ci), []).append(x)
    return list(groups.values())


def _reverse(xs: Sequence[Crossing]) -> list[Crossing]:
    return [(c, d, a, b, s) for a, b, c, d, s in xs]


def _bfs_code(xs, occ, start_ci) -> tuple:
    order = [start_ci]
    seen = {start_ci}
    lab: dict[int, int] = {}
    out: list[int] = []
    i = 0
    while i < len(order):
        x = xs[order[i]]
        i += 1
        out.append(x[4])
        for p in range(4):
            e = x[p]
            if e not in lab:
                lab[e] = len(lab)
                for cj, _ in occ[e]:
                    if cj not in seen:
                        seen.add(cj)
                        order.append(cj)
            out.append(lab[e])
    return tuple(out)


def canonical_code(xs: Sequence[Crossing], *, use_reversal: bool = True) -> tuple:
    """Relabelling-invariant code of a connected oriented diagram.

    The minimum over every crossing as BFS root (each crossing's slot 0 is a
    distinguished dart) and, optionally, over global orientation reversal.
    """
    variants = [list(xs)]
    if use_reversal:
        variants.append(_reverse(xs))
    best = None
    for v in variants:
        occ = _occurrences(v)
        for ci in range(len(v)):
            code = _bfs_code(v, occ, ci)
            if best is None or code < best:
                best = code
    return best


# --------------------------------------------------------------------------
# descending-diagram bookkeeping


def _traversal(xs):
    """Components as lists of (edge, arriving crossing, arriving slot)."""
    head: dict[int, tuple[int, int]] = {}
    for ci, x in enumerate(xs):
        head[x[0]] = (ci, 0)
        head[x[3] if x[4] > 0 else x[1]] = (ci, 3 if x[4] > 0 else 1)
    comps = []
    done: set[int] = set()
    for ci, x in enumerate(xs):
        for e0 in (x[0], x[1]):
            if e0 in done:
                continue
            comp = []
            e = e0
            while e not in done:
                done.add(e)
                cj, p = head[e]
                comp.append((e, cj, p))
                e = xs[cj][(p + 2) % 4]
            comps.append(comp)
    return comps


def _best_descending_order(xs):
    """Choose basepoints and component order with few bad crossings.

    Returns the bad crossings (first met as under-crossing) in traversal order.
    """
    comps = _traversal(xs)
    owner: dict[int, set[int]] = {}
    for k, comp in enumerate(comps):
        for _, ci, _ in comp:
            owner.setdefault(ci, set()).add(k)
    starts = []
    for k, comp in enumerate(comps):
        n = len(comp)
        best = None
        for t in range(n):
            seen: set[int] = set()
            bad = 0
            for m in range(n):
                _, ci, p = comp[(t + m) % n]
                if len(owner[ci]) == 1 and ci not in seen:
                    seen.add(ci)
                    bad += p == 0
            if best is None or bad < best[0]:
                best = (bad, t)
        starts.append(best[1])
    # between components: k before l is bad at crossings where l is over
    under_of: dict[tuple[int, int], int] = {}
    for k, comp in enumerate(comps):
        for _, ci, p in comp:
            if len(owner[ci]) == 2 and p == 0:
                (other,) = owner[ci] - {k}
                under_of[(k, other)] = under_of.get((k, other), 0) + 1
    idx = list(range(len(comps)))
    if len(comps) <= 6:
        def cost(order):
            pos = {k: i for i, k in enumerate(order)}
            return sum(c for (k, l), c in under_of.items() if pos[k] < pos[l])

        order = min(itertools.permutations(idx), key=cost)
    else:
        order = sorted(idx, key=lambda k: -sum(c for (u, _), c in under_of.items() if u == k))
        order = order[::-1]
    bads: list[int] = []
    seen: set[int] = set()
    for k in order:
        comp = comps[k]
        n = len(comp)
        for m in range(n):
            _, ci, p = comp[(starts[k] + m) % n]
            if ci in seen:
                continue
            seen.add(ci)
            if p == 0:
                bads.append(ci)
    return bads, len(comps)


def _delta_power(n: int) -> LaurentPoly:
    return DELTA**n if n >= 0 else ONE


class HomflyEngine:
    """Skein recursion with a memo table keyed by canonical diagram codes.

    ``cache_dir`` (or the ``THL_CACHE_DIR`` environment variable) names a
    directory holding a content-addressed spill file of computed values.
    """

    def __init__(self, memoize: bool = True, cache_dir: str | os.PathLike | None = None):
        self.memoize = memoize
        self.memo: dict[tuple, LaurentPoly] = {}
        self.calls = 0
        self.hits = 0
        if cache_dir is None:
            cache_dir = os.environ.get("THL_CACHE_DIR") or None
        self.cache_dir = Path(cache_dir) if cache_dir else None
        self._spilled: set[str] = set()
        if self.cache_dir is not None and memoize:
            self._load_spill()

    # disk spill -----------------------------------------------------------

    def _spill_path(self) -> Path:
        return self.cache_dir / "homfly-memo.jsonl"

    @staticmethod
    def _digest(code: tuple) -> str:
        return hashlib.sha256(repr(code).encode()).hexdigest()

    def _load_spill(self) -> None:
        path = self._spill_path()
        if not path.exists():
            return
        with path.open() as fh:
            for line in fh:
                try:
                    rec = json.loads(line)
                except json.JSONDecodeError:
                    log.warning("skipping corrupt cache line in %s", path)
                    continue
                code = tuple(rec["code"])
                if self._digest(code) != rec["key"]:
                    continue
                self.memo[code] = LaurentPoly.from_dict(rec["poly"])
                self._spilled.add(rec["key"])

    def flush(self) -> None:
        """Append memo entries not yet on disk to the spill file."""
        if self.cache_dir is None:
            return
        self.cache_dir.mkdir(parents=True, exist_ok=True)
        with self._spill_path().open("a") as fh:
            for code, poly in self.memo.items():
                key = self._digest(code)
                if key in self._spilled:
                    continue
                fh.write(json.dumps({"key": key, "code": list(code), "poly": poly.to_dict()}) + "\n")
                self._spilled.add(key)

    # recursion ----------------------------------------------------------------

    def polynomial(self, xs: Sequence[Crossing], loops: int = 0) -> LaurentPoly:
        """HOMFLYPT of a closed PD with ``loops`` extra crossingless circles."""
        xs, extra = simplify(xs)
        loops += extra
        if not xs:
            if loops == 0:
                raise ValueError("empty diagram has no HOMFLYPT polynomial")
            return _delta_power(loops - 1)
        pieces = split_components(xs)
        out = _delta_power(len(pieces) + loops - 1)
        for piece in pieces:
            out = out * self._connected(piece)
        return out

    def _connected(self, xs: list[Crossing]) -> LaurentPoly:
        self.calls += 1
        key = None
        if self.memoize:
            key = canonical_code(xs)
            hit = self.memo.get(key)
            if hit is not None:
                self.hits += 1
                return hit
        value = self._expand(xs)
        if key is not None:
            self.memo[key] = value
        return value

    def _skein_terms(self, sign: int):
        # P(D) = shift_switch * P(switched) + shift_smooth * P(smoothed)
        if sign > 0:
            return (-2, 0, 1), (-1, 1, 1)
        return (2, 0, 1), (1, 1, -1)

    def _expand(self, xs: list[Crossing]) -> LaurentPoly:
        bads, ncomp = _best_descending_order(xs)
        if len(bads) > 1:
            bigon = next((b for b in _bigons(xs, _occurrences(xs)) if b[1] % 2 != b[3] % 2), None)
            if bigon is not None:
                ci = bigon[0]
                (si, sj, sc), (mi, mj, mc) = self._skein_terms(xs[ci][4])
                switched = list(xs)
                switched[ci] = switch_crossing(xs[ci])
                smoothed, loops = smooth_crossing(xs, ci)
                return self.polynomial(switched).shift(si, sj, sc) + self.polynomial(
                    smoothed, loops
                ).shift(mi, mj, mc)
        out = ZERO
        ci_shift = [0, 0, 1]
        cur = list(xs)
        for ci in bads:
            (si, sj, sc), (mi, mj, mc) = self._skein_terms(cur[ci][4])
            smoothed, loops = smooth_crossing(cur, ci)
            out = out + self.polynomial(smoothed, loops).shift(
                ci_shift[0] + mi, ci_shift[1] + mj, ci_shift[2] * mc
            )
            ci_shift = [ci_shift[0] + si, ci_shift[1] + sj, ci_shift[2] * sc]
            cur[ci] = switch_crossing(cur[ci])
        return out + _delta_power(ncomp - 1).shift(*ci_shift)


_DEFAULT_ENGINE: HomflyEngine | None = None


def default_engine() -> HomflyEngine:
    global _DEFAULT_ENGINE
    if _DEFAULT_ENGINE is None:
        _DEFAULT_ENGINE = HomflyEngine()
    return _DEFAULT_ENGINE


def homfly_pd(xs: Sequence[Crossing], loops: int = 0, engine: HomflyEngine | None = None) -> LaurentPoly:
    return (engine or default_engine()).polynomial(list(xs), loops)


def homfly(diagram, engine: HomflyEngine | None = None, convention: str = "standard") -> LaurentPoly:
    """HOMFLYPT polynomial of a closed oriented diagram (``unknot -> 1``).

    ``convention="mirror"`` evaluates the mirror image instead, i.e. applies
    ``(a, z) -> (1/a, -z)`` to the result.
    """
    if diagram.bottom or diagram.top:
        raise OpenDiagramError("HOMFLYPT needs a closed diagram; this one has boundary points")
    xs, loops = diagram.to_pd()
    p = homfly_pd(xs, loops, engine)
    return p.substitute_mirror() if convention == "mirror" else p


def pd_from_knot_atlas(pd: Sequence[Sequence[int]], signs: Sequence[int] | None = None) -> list[Crossing]:
    """Orient a Knot-Atlas style PD ``[[i, j, k, l], ...]`` (``i`` = incoming under).

    Over-strand directions are propagated from the under-strands; components
    that only ever pass over fall back to the consecutive-label convention.
    """
    pd = [tuple(int(v) for v in x) for x in pd]
    for x in pd:
        if len(x) != 4:
            raise ValueError(f"PD crossing needs 4 labels: {x}")
    occ: dict[int, list[tuple[int, int]]] = {}
    for ci, x in enumerate(pd):
        for p in range(4):
            occ.setdefault(x[p], []).append((ci, p))
    for e, places in occ.items():
        if len(places) != 2:
            raise ValueError(f"edge label {e} appears {len(places)} times")
    # direction of each slot: True when the strand leaves the crossing there
    out_slot: dict[tuple[int, int], bool] = {}
    for ci in range(len(pd)):
        out_slot[(ci, 0)] = False
        out_slot[(ci, 2)] = True
    if signs is not None:
        for ci, s in enumerate(signs):
            out_slot[(ci, 1)] = s > 0
            out_slot[(ci, 3)] = s < 0

    def propagate() -> None:
        changed = True
        while changed:
            changed = False
            for ci, x in enumerate(pd):
                for p in range(4):
                    if (ci, p) not in out_slot:
                        continue
                    d = out_slot[(ci, p)]
                    opp = (ci, (p + 2) % 4)
                    if opp not in out_slot:
                        out_slot[opp] = not d
                        changed = True
                    for place in occ[x[p]]:
                        if place != (ci, p) and place not in out_slot:
                            out_slot[place] = not d
                            changed = True

    propagate()
    for ci, x in enumerate(pd):
        if (ci, 1) not in out_slot:
            j, l = x[1], x[3]
            positive = j - l == 1 or l - j > 1
            out_slot[(ci, 1)] = positive
            out_slot[(ci, 3)] = not positive
            propagate()
    xs = []
    for ci, x in enumerate(pd):
        for p in range(4):
            for place in occ[x[p]]:
                if place != (ci, p) and out_slot[place] == out_slot[(ci, p)]:
                    raise ValueError(f"inconsistent orientation on edge {x[p]}")
        xs.append((*x, 1 if out_slot[(ci, 1)] else -1))
    return xs


# --------------------------------------------------------------------------
# evaluation at roots of unity


@dataclass(frozen=True)
class EvalParams:
    """``s = exp(i*pi/r)``, ``a = s**(-2k)``, ``z = s - 1/s``."""

    r: int
    k: int

    def __post_init__(self):
        if int(self.r) != self.r or self.r < 3:
            raise ValueError(f"r must be an integer >= 3, got {self.r}")
        if int(self.k) != self.k or self.k < 1:
            raise ValueError(f"k must be a positive integer, got {self.k}")

    @property
    def s(self) -> complex:
        return cmath.exp(1j * math.pi / self.r)

    @property
    def a(self) -> complex:
        return cmath.exp(-2j * math.pi * self.k / self.r)

    @property
    def z(self) -> complex:
        return complex(0.0, 2.0 * math.sin(math.pi / self.r))

    @property
    def in_stated_range(self) -> bool:
        """The range ``r >= k + 2`` quoted for the positivity statement."""
        return self.r >= self.k + 2

    @property
    def positive_loop(self) -> bool:
        """Whether ``r > 2k``, where the evaluation is a unitary specialisation."""
        return self.r > 2 * self.k

    def to_dict(self) -> dict:
        return {"r": self.r, "k": self.k}


def delta_sym() -> LaurentPoly:
    return DELTA


def delta_num(p: EvalParams) -> float:
    return -math.sin(2 * math.pi * p.k / p.r) / math.sin(math.pi / p.r)


def evaluate(q: LaurentPoly, p: EvalParams) -> complex:
    return q.evaluate(p.a, p.z)


# --------------------------------------------------------------------------
# normalised coefficients and the tangle pairing

NORMALIZATIONS = ("std", "loop")


def _check_normalization(normalization: str) -> None:
    if normalization not in NORMALIZATIONS:
        raise ValueError(f"unknown normalization {normalization!r}; use one of {NORMALIZATIONS}")


def normalize(p: LaurentPoly, normalization: str = "std") -> LaurentPoly:
    """``std`` keeps unknot -> 1; ``loop`` rescales so the unknot is worth delta."""
    _check_normalization(normalization)
    return p * DELTA if normalization == "loop" else p


def phi_parts(g, convention: str = "standard", engine: HomflyEngine | None = None) -> tuple[LaurentPoly, int]:
    """``(P(L(g)), n - 1)`` so that ``phi = P / delta**(n - 1)``; ``n`` = leaves of ``g`` as given."""
    from .tangles import build_link

    p = homfly(build_link(g, convention), engine)
    return p, g.leaves - 1


class DegenerateParameters(ValueError):
    """delta vanishes at these parameters, so phi is undefined."""


def phi(g, p: EvalParams, convention: str = "standard", engine: HomflyEngine | None = None) -> complex:
    """``evaluate(P(L(g))) / delta**(n-1)``; ``phi(identity) = 1``."""
    if 2 * p.k % p.r == 0:
        raise DegenerateParameters(f"delta = 0 at r={p.r}, k={p.k}")
    poly, m = phi_parts(g, convention, engine)
    return evaluate(poly, p) / delta_num(p) ** m


def tangle_inner(
    t1,
    t2,
    normalization: str = "std",
    engine: HomflyEngine | None = None,
    convention: str = "standard",
) -> LaurentPoly:
    """``<t1, t2>``: HOMFLYPT of the closure of ``t1`` followed by ``star(t2)``."""
    from .tangles import BoundaryMismatch, close, stack, star

    _check_normalization(normalization)
    if t1.bottom != t2.bottom or t1.top != t2.top:
        idx = next(
            (i for i, (x, y) in enumerate(zip(t1.bottom + "|" + t1.top, t2.bottom + "|" + t2.top)) if x != y),
            min(len(t1.bottom + t1.top), len(t2.bottom + t2.top)),
        )
        raise BoundaryMismatch("tangles live in different spaces", idx)
    d = close(stack(star(t2), t1))
    return normalize(homfly(d, engine, convention), normalization)
