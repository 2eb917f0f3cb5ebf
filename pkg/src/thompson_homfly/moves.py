"""Reidemeister moves on closed oriented diagrams, for testing invariance.

A dart is named by the crossing slot it leaves; faces come from the rotation
system (see ``tangles.faces``).  Every move returns a new diagram and keeps
planarity and orientations; ``MoveError`` means the site does not admit it.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from .tangles import _GLUE, DiagramError, Slot, Tangle, _contract, _orient, faces

MOVES = ("R1+", "R1-", "R2+", "R2-", "R3")


class MoveError(ValueError):
    """The requested move is not applicable at the given site."""


@dataclass(frozen=True)
class Move:
    kind: str
    site: tuple


def _require_closed(d: Tangle) -> None:
    if not d.closed or not d.oriented:
        raise MoveError("moves act on closed oriented diagrams")


def _ports(d: Tangle) -> dict[int, list[Slot]]:
    return {c: [d.adj[(c, p)] for p in range(4)] for c in range(d.crossings)}


def _rebuild(ports: dict[int, list[Slot]], d: Tangle) -> Tangle:
    """Renumber crossings and re-derive orientation from the crossings of ``d``."""
    ids = sorted(ports)
    new = {c: i for i, c in enumerate(ids)}
    lst = [[(new[s[0]], s[1]) for s in ports[c]] for c in ids]
    hints = {}
    for c in range(d.crossings):
        hints[(new[c], 0)] = False
        hints[(new[c], 1)] = d.signs[c] > 0
    adj, signs = _orient({}, lst, "", "", hints)
    return Tangle(adj, signs, "", "", d.loops)


def _compass(order: str, nb: dict[str, Slot]) -> list[Slot]:
    return [nb[ch] for ch in order]


# --------------------------------------------------------------------------
# R1


def r1_add(d: Tangle, dart: Slot, left: bool = True, over_first: bool = False) -> Tangle:
    """Put a kink on the edge leaving ``dart``; the loop sits on the given side."""
    _require_closed(d)
    if dart not in d.adj or dart[0] < 0:
        raise MoveError(f"no dart leaves {dart}")
    s, t = dart, d.adj[dart]
    ports = _ports(d)
    x = d.crossings
    order = "ENWS" if over_first else "SENW"
    idx = {ch: (x, order.index(ch)) for ch in "NESW"}
    loop_end, exit_ch = ("W", "E") if left else ("E", "W")
    nb = {"S": s, "N": idx[loop_end], loop_end: idx["N"], exit_ch: t}
    if s == t:
        raise MoveError("degenerate dart")
    ports[x] = _compass(order, nb)
    _redirect(ports, s, idx["S"])
    _redirect(ports, t, idx[exit_ch])
    return _rebuild(ports, d)


def _redirect(ports: dict[int, list[Slot]], s: Slot, new: Slot) -> None:
    ports[s[0]][s[1]] = new


def _delete(d: Tangle, dead: set[int]) -> Tangle:
    """Replace crossings by their two straight passages and contract."""
    raw: dict[Slot, Slot] = {}

    def m(s: Slot) -> Slot:
        c, p = s
        if c in dead:
            return (_GLUE, 2 * (2 * c + p % 2) + (p >> 1))
        return s

    for s, u in d.adj.items():
        raw[m(s)] = m(u)
    adj, loops = _contract(raw)
    ids = [c for c in range(d.crossings) if c not in dead]
    new = {c: i for i, c in enumerate(ids)}
    adj = {(new[s[0]], s[1]): (new[u[0]], u[1]) for s, u in adj.items()}
    signs = tuple(d.signs[c] for c in ids)
    return Tangle(adj, signs, "", "", d.loops + loops)


def kinks(d: Tangle) -> list[int]:
    return [c for c in range(d.crossings) if any(d.adj[(c, p)] == (c, (p + 1) % 4) for p in range(4))]


def r1_remove(d: Tangle, c: int) -> Tangle:
    _require_closed(d)
    if c not in kinks(d):
        raise MoveError(f"crossing {c} is not a kink")
    return _delete(d, {c})


# --------------------------------------------------------------------------
# R2


def r2_add(d: Tangle, dart1: Slot, dart2: Slot, first_over: bool = True) -> Tangle:
    """Push the edge of ``dart1`` across the edge of ``dart2``.

    Both darts must have the same face on their left.
    """
    _require_closed(d)
    face_of = {s: i for i, f in enumerate(faces(d)) for s in f}
    if dart1 not in face_of or dart2 not in face_of or face_of[dart1] != face_of[dart2]:
        raise MoveError("the darts do not share a face")
    u1, v1 = dart1, d.adj[dart1]
    u2, v2 = dart2, d.adj[dart2]
    if {u1, v1} == {u2, v2}:
        raise MoveError("the darts lie on the same edge")
    ports = _ports(d)
    x, y = d.crossings, d.crossings + 1
    order = "ENWS" if first_over else "NWSE"
    X = {ch: (x, order.index(ch)) for ch in "NESW"}
    Y = {ch: (y, order.index(ch)) for ch in "NESW"}
    ports[x] = _compass(order, {"S": u1, "N": Y["N"], "E": Y["W"], "W": v2})
    ports[y] = _compass(order, {"N": X["N"], "S": v1, "E": u2, "W": X["E"]})
    _redirect(ports, u1, X["S"])
    _redirect(ports, v1, Y["S"])
    _redirect(ports, u2, Y["E"])
    _redirect(ports, v2, X["W"])
    return _rebuild(ports, d)


def removable_bigons(d: Tangle) -> list[tuple[int, int]]:
    out = []
    for f in faces(d):
        if len(f) != 2:
            continue
        (c1, p1), (c2, p2) = f
        if c1 == c2:
            continue
        q1 = d.adj[(c1, p1)][1]
        if p1 % 2 == q1 % 2:
            out.append((min(c1, c2), max(c1, c2)))
    return sorted(set(out))


def r2_remove(d: Tangle, c1: int, c2: int) -> Tangle:
    _require_closed(d)
    if (min(c1, c2), max(c1, c2)) not in removable_bigons(d):
        raise MoveError(f"crossings {c1}, {c2} do not bound a removable bigon")
    return _delete(d, {c1, c2})


# --------------------------------------------------------------------------
# R3


def r3_sites(d: Tangle) -> list[tuple[Slot, Slot, Slot]]:
    """Triangular faces (as their three darts) where a strand lies over both others."""
    out = []
    for f in faces(d):
        if len(f) != 3:
            continue
        cs = [s[0] for s in f]
        if len(set(cs)) != 3:
            continue
        over_both = False
        for k in range(3):
            p = f[k][1]
            q = d.adj[f[k]][1]
            if p % 2 == 1 and q % 2 == 1:
                over_both = True
        if not over_both:
            continue
        ext_ok = all(d.adj[(c, (p + j) % 4)][0] not in cs for c, p in f for j in (2, 3))
        if ext_ok:
            out.append(tuple(f))
    return out


def r3(d: Tangle, site: tuple[Slot, Slot, Slot]) -> Tangle:
    """Move the strand that lies over (or under) both others across their crossing."""
    _require_closed(d)
    if tuple(site) not in r3_sites(d):
        raise MoveError("not an R3 triangle")
    ports = _ports(d)
    (a, pa), (b, pb), (c, pc) = site
    tri = [(a, pa), (b, pb), (c, pc)]
    new = {k: list(v) for k, v in ports.items()}
    for k in range(3):
        x, px = tri[k]
        nx, pn = tri[(k + 1) % 3]
        vx, pv = tri[(k - 1) % 3]
        new[x][px] = d.adj[(nx, (pn + 3) % 4)]
        new[x][(px + 1) % 4] = d.adj[(vx, (pv + 2) % 4)]
        new[x][(px + 2) % 4] = (nx, (pn + 3) % 4)
        new[x][(px + 3) % 4] = (vx, (pv + 2) % 4)
    # outside neighbours now point at the moved crossings
    for k in range(3):
        x, px = tri[k]
        nx, pn = tri[(k + 1) % 3]
        vx, pv = tri[(k - 1) % 3]
        _redirect(new, d.adj[(nx, (pn + 3) % 4)], (x, px))
        _redirect(new, d.adj[(vx, (pv + 2) % 4)], (x, (px + 1) % 4))
    return _rebuild(new, d)


# --------------------------------------------------------------------------
# random sequences


def apply_move(d: Tangle, move: Move) -> Tangle:
    k, site = move.kind, move.site
    if k == "R1+":
        return r1_add(d, *site)
    if k == "R1-":
        return r1_remove(d, *site)
    if k == "R2+":
        return r2_add(d, *site)
    if k == "R2-":
        return r2_remove(d, *site)
    if k == "R3":
        return r3(d, site)
    raise MoveError(f"unknown move {k!r}")


def random_move(d: Tangle, rng: random.Random, max_crossings: int = 16) -> Move:
    """A uniformly chosen move kind among those applicable, then a random site."""
    _require_closed(d)
    if d.crossings == 0:
        raise MoveError("no sites on a crossingless diagram")
    options: dict[str, list] = {}
    grow = d.crossings + 2 <= max_crossings
    if grow:
        options["R1+"] = [
            (dart, rng.random() < 0.5, rng.random() < 0.5) for dart in sorted(d.adj)
        ]
        r2 = []
        for f in faces(d):
            if len(f) >= 2:
                for _ in range(3):
                    a, b = rng.sample(f, 2)
                    if {a, d.adj[a]} != {b, d.adj[b]}:
                        r2.append((a, b, rng.random() < 0.5))
        if r2:
            options["R2+"] = r2
    if d.crossings > 1 or not grow:
        ks = kinks(d)
        if ks:
            options["R1-"] = [(c,) for c in ks]
        bs = removable_bigons(d)
        if bs:
            options["R2-"] = bs
    t3 = r3_sites(d)
    if t3:
        options["R3"] = t3
    if not options:
        raise MoveError("no applicable move")
    kind = rng.choice(sorted(options))
    return Move(kind, rng.choice(options[kind]))


def random_sequence(d: Tangle, rng: random.Random, length: int, max_crossings: int = 16):
    """Apply ``length`` random moves; returns the final diagram and the moves used."""
    used = []
    for _ in range(length):
        if d.crossings == 0:
            break
        m = random_move(d, rng, max_crossings)
        try:
            d = apply_move(d, m)
        except DiagramError as exc:  # pragma: no cover - a bug, surfaced with context
            raise DiagramError(f"move {m} failed: {exc}") from exc
        used.append(m)
    return d, used
