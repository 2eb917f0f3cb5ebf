"""Oriented tangle diagrams: caret pieces, stacking, star, closure and L(g).

A tangle is stored as a symmetric slot adjacency.  A slot is a pair
``(c, p)``: ``c >= 0`` is a crossing and ``p`` one of its four ports in
counterclockwise order, ``(BOTTOM, i)`` and ``(TOP, i)`` are boundary points
numbered left to right.  Ports 0 and 2 carry the under-strand.  In an
oriented diagram port 0 is where the under-strand comes in, and the crossing
sign is +1 exactly when the over-strand comes in at port 3 (so the list of
ports is a PD crossing).

Boundary signs: ``'+'`` means the strand points upward at that point, at the
bottom as well as at the top; ``'.'`` marks an unoriented point.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

from .forest import Forest, GroupElement, Tree
from .signs import check_sign, insert_caret, negate, propagate, require_oriented

BOTTOM = -1
TOP = -2
_GLUE = -3

Slot = tuple  # (int, int)

CONVENTIONS = ("standard", "mirror")


class BoundaryMismatch(ValueError):
    """Two tangles cannot be glued; ``index`` is the first offending boundary point."""

    def __init__(self, message: str, index: int):
        super().__init__(f"{message} (boundary index {index})")
        self.index = index


class DiagramError(ValueError):
    """A structural invariant of a diagram is violated."""


@dataclass(frozen=True, eq=False)
class Tangle:
    """A diagram in a rectangle; bottom and top boundary signs, free loops.

    ``outer`` is only meaningful for closed diagrams: the dart leaving that
    slot has the unbounded face on its left.
    """

    adj: Mapping[Slot, Slot]
    signs: tuple[int, ...]
    bottom: str = ""
    top: str = ""
    loops: int = 0
    outer: Slot | None = field(default=None)

    @property
    def crossings(self) -> int:
        return len(self.signs)

    @property
    def oriented(self) -> bool:
        return all(s != 0 for s in self.signs) and "." not in self.bottom + self.top

    @property
    def closed(self) -> bool:
        return not self.bottom and not self.top

    @property
    def basepoint(self) -> Slot | None:
        """The distinguished boundary point: the leftmost bottom point."""
        if self.bottom:
            return (BOTTOM, 0)
        if self.top:
            return (TOP, 0)
        return None

    @property
    def writhe(self) -> int:
        return sum(self.signs)

    def slot_is_out(self, s: Slot) -> bool:
        """Whether the strand leaves the node at slot ``s``."""
        c, p = s
        if c == BOTTOM:
            return self.bottom[p] == "+"
        if c == TOP:
            return self.top[p] == "-"
        if p == 0:
            return False
        if p == 2:
            return True
        sign = self.signs[c]
        if sign == 0:
            raise DiagramError("unoriented crossing has no strand directions")
        return (p == 1) == (sign > 0)

    def to_pd(self) -> tuple[list[tuple], int]:
        """PD crossings ``(e0, e1, e2, e3, sign)`` and the number of free loops."""
        if not self.closed:
            raise DiagramError("only closed diagrams have a PD code")
        if not self.oriented:
            raise DiagramError("PD code needs an oriented diagram")
        labels: dict[Slot, int] = {}
        nxt = 1
        for c in range(self.crossings):
            for p in range(4):
                s = (c, p)
                if s not in labels:
                    labels[s] = labels[self.adj[s]] = nxt
                    nxt += 1
        xs = [
            (labels[(c, 0)], labels[(c, 1)], labels[(c, 2)], labels[(c, 3)], self.signs[c])
            for c in range(self.crossings)
        ]
        return xs, self.loops

    def __repr__(self) -> str:
        return (
            f"Tangle(crossings={self.crossings}, bottom={self.bottom!r}, "
            f"top={self.top!r}, loops={self.loops})"
        )


# LinkDiagram is a tangle with empty boundary; kept as a name for readability.
LinkDiagram = Tangle


# --------------------------------------------------------------------------
# construction helpers


def _symmetric(pairs: Iterable[tuple[Slot, Slot]]) -> dict[Slot, Slot]:
    adj: dict[Slot, Slot] = {}
    for u, v in pairs:
        if u in adj or v in adj or u == v:
            raise DiagramError(f"slot used twice while joining {u} and {v}")
        adj[u] = v
        adj[v] = u
    return adj


def _contract(raw: Mapping[Slot, Slot]) -> tuple[dict[Slot, Slot], int]:
    """Remove glue nodes ``(_GLUE, 2k)``/``(_GLUE, 2k+1)`` (two sides of one point).

    Returns the adjacency on real slots and the number of closed loops made
    only of glue.
    """
    out: dict[Slot, Slot] = {}
    used: set[int] = set()
    for s, t in raw.items():
        if s[0] == _GLUE or s in out:
            continue
        cur = t
        while cur[0] == _GLUE:
            used.add(cur[1] >> 1)
            cur = raw[(_GLUE, cur[1] ^ 1)]
        out[s] = cur
        out[cur] = s
    loops = 0
    glue_ids = {s[1] >> 1 for s in raw if s[0] == _GLUE}
    for k in sorted(glue_ids - used):
        if k in used:
            continue
        loops += 1
        cur = (_GLUE, 2 * k)
        while True:
            used.add(cur[1] >> 1)
            nxt = raw[cur]
            cur = (_GLUE, nxt[1] ^ 1)
            if cur[1] >> 1 == k:
                break
    return out, loops


def _orient(
    adj: Mapping[Slot, Slot],
    ports: Sequence[Sequence[Slot]],
    bottom: str,
    top: str,
    hints: Mapping[Slot, bool] | None = None,
) -> tuple[dict[Slot, Slot], tuple[int, ...]]:
    """Attach orientations to crossings given by raw port lists.

    ``ports[c]`` lists the neighbours of crossing ``c`` counterclockwise with
    the under-strand on positions 0 and 2.  Directions come from the boundary
    signs (and ``hints``: slot -> leaves-here for closed components).  Each
    crossing is rotated so the under-strand enters at port 0.
    """
    n = len(ports)
    # provisional slots (c, q) use the raw positions
    raw_adj: dict[Slot, Slot] = {}
    for c, lst in enumerate(ports):
        for q, nb in enumerate(lst):
            raw_adj[(c, q)] = nb
    for (c, p), t in adj.items():
        if c < 0:
            raw_adj[(c, p)] = t
    out_at: dict[Slot, bool] = {}
    for i, ch in enumerate(bottom):
        if ch != ".":
            out_at[(BOTTOM, i)] = ch == "+"
    for i, ch in enumerate(top):
        if ch != ".":
            out_at[(TOP, i)] = ch == "-"
    for s, v in (hints or {}).items():
        out_at[s] = v
    stack = list(out_at)
    while stack:
        s = stack.pop()
        d = out_at[s]
        t = raw_adj[s]
        if t not in out_at:
            out_at[t] = not d
            stack.append(t)
        elif out_at[t] == d:
            raise DiagramError(f"orientation clash along the edge {s} - {t}")
        if s[0] >= 0:
            o = (s[0], (s[1] + 2) % 4)
            if o not in out_at:
                out_at[o] = not d
                stack.append(o)
            elif out_at[o] == d:
                raise DiagramError(f"orientation clash through crossing {s[0]}")
    rot = []
    signs = []
    for c in range(n):
        if (c, 0) not in out_at or (c, 1) not in out_at:
            raise DiagramError(f"crossing {c} lies on a strand with no orientation")
        r = 2 if out_at[(c, 0)] else 0
        rot.append(r)
        incoming3 = not out_at[(c, (3 + r) % 4)]
        signs.append(1 if incoming3 else -1)
    final: dict[Slot, Slot] = {}

    def rename(s: Slot) -> Slot:
        if s[0] < 0:
            return s
        return (s[0], (s[1] - rot[s[0]]) % 4)

    for s, t in raw_adj.items():
        final[rename(s)] = rename(t)
    return final, tuple(signs)


def _unoriented(adj: Mapping[Slot, Slot], ports: Sequence[Sequence[Slot]]) -> dict[Slot, Slot]:
    final = {s: t for s, t in adj.items() if s[0] < 0}
    for c, lst in enumerate(ports):
        for q, nb in enumerate(lst):
            final[(c, q)] = nb
    return final


# --------------------------------------------------------------------------
# basic tangles


def identity(signs: str | int) -> Tangle:
    """Vertical strands; an integer gives that many unoriented strands."""
    if isinstance(signs, int):
        signs = "." * signs
    adj = _symmetric(((BOTTOM, i), (TOP, i)) for i in range(len(signs)))
    return Tangle(adj, (), signs, signs)


def object_signs(sigma: str) -> str:
    """The boundary sign string ``s1 (-s2 s2) (-s3 s3) ...`` of odd length."""
    check_sign(sigma)
    out = [sigma[0]]
    for ch in sigma[1:]:
        out.append(negate(ch))
        out.append(ch)
    return "".join(out)


def _check_convention(convention: str) -> None:
    if convention not in CONVENTIONS:
        raise ValueError(f"unknown convention {convention!r}; use one of {CONVENTIONS}")


def caret_piece(m: int, i: int, sigma: str | None = None, convention: str = "standard") -> Tangle:
    """The tangle of one caret at leaf ``i`` (1-based) of ``m`` leaves.

    Bottom has ``2m-1`` points, top ``2m+1``.  The point ``P = 2i-2`` carries
    the through-strand to top ``P+1``; the turn-back joins tops ``P`` and
    ``P+2`` and crosses it once.  With the standard convention the turn-back
    passes over.  ``sigma`` (the leaf sign below the caret) orients it.
    """
    if not 1 <= i <= m:
        raise IndexError(f"caret position {i} outside 1..{m}")
    if sigma is not None and len(sigma) != m:
        raise ValueError(f"sign of length {len(sigma)} for {m} leaves")
    _check_convention(convention)
    nb, nt = 2 * m - 1, 2 * m + 1
    P = 2 * i - 2
    pairs = []
    for q in range(nb):
        if q != P:
            pairs.append(((BOTTOM, q), (TOP, q if q < P else q + 2)))
    adj = _symmetric(pairs)
    # neighbours of the crossing by compass position
    SW, SE, NE, NW = (BOTTOM, P), (TOP, P + 2), (TOP, P + 1), (TOP, P)
    lst = [SW, SE, NE, NW] if convention == "standard" else [SE, NE, NW, SW]
    for q, nbr in enumerate(lst):
        adj[nbr] = (0, q)
    if sigma is None:
        return Tangle(_unoriented(adj, [lst]), (0,), "." * nb, "." * nt)
    bottom = object_signs(sigma)
    top = object_signs(insert_caret(sigma, i))
    final, signs = _orient(adj, [lst], bottom, top)
    return Tangle(final, signs, bottom, top)


def crossing_tangle(top_signs: str, i: int, inverse: bool = False) -> Tangle:
    """A single crossing exchanging points ``i`` and ``i+1`` (0-based).

    The strand from bottom ``i`` to top ``i+1`` passes over, or under when
    ``inverse`` is set.  ``top_signs`` are the bottom signs of this piece.
    """
    m = len(top_signs)
    if not 0 <= i < m - 1:
        raise IndexError(f"crossing position {i} needs points {i} and {i + 1} of {m}")
    pairs = [((BOTTOM, q), (TOP, q)) for q in range(m) if q not in (i, i + 1)]
    adj = _symmetric(pairs)
    SW, SE, NE, NW = (BOTTOM, i), (BOTTOM, i + 1), (TOP, i + 1), (TOP, i)
    lst = [SW, SE, NE, NW] if inverse else [SE, NE, NW, SW]
    for q, nbr in enumerate(lst):
        adj[nbr] = (0, q)
    out_top = top_signs[:i] + top_signs[i + 1] + top_signs[i] + top_signs[i + 2 :]
    if "." in top_signs:
        return Tangle(_unoriented(adj, [lst]), (0,), top_signs, out_top)
    final, signs = _orient(adj, [lst], top_signs, out_top)
    return Tangle(final, signs, top_signs, out_top)


def cap_tangle(top_signs: str, matching: Sequence[tuple[int, int]]) -> Tangle:
    """No bottom points; caps joining the given pairs of top points."""
    used = sorted(x for pair in matching for x in pair)
    if used != list(range(len(top_signs))):
        raise ValueError("matching must cover every top point exactly once")
    for a, b in matching:
        for c, d in matching:
            if a < c < b < d:
                raise DiagramError("caps must not cross")
        if "." not in top_signs and top_signs[a] == top_signs[b]:
            raise BoundaryMismatch("a cap joins two points of the same sign", min(a, b))
    adj = _symmetric(((TOP, a), (TOP, b)) for a, b in matching)
    return Tangle(adj, (), "", top_signs)


# --------------------------------------------------------------------------
# stacking, star, closure


def _shift(s: Slot, k: int) -> Slot:
    return s if s[0] < 0 else (s[0] + k, s[1])


def stack(upper: Tangle, lower: Tangle) -> Tangle:
    """``upper`` placed on top of ``lower``; the lower top meets the upper bottom."""
    if len(lower.top) != len(upper.bottom):
        raise BoundaryMismatch(
            f"lower tangle has {len(lower.top)} top points, upper has {len(upper.bottom)} bottom points",
            min(len(lower.top), len(upper.bottom)),
        )
    for i, (x, y) in enumerate(zip(lower.top, upper.bottom)):
        if x != y:
            raise BoundaryMismatch(f"sign {x!r} meets sign {y!r}", i)
    k = lower.crossings
    raw: dict[Slot, Slot] = {}
    for s, t in lower.adj.items():
        raw[_lower_map(s)] = _lower_map(t)
    for s, t in upper.adj.items():
        raw[_upper_map(s, k)] = _upper_map(t, k)
    adj, loops = _contract(raw)
    outer = None
    if not lower.bottom and not upper.top:
        if lower.top:
            first = lower.adj[(TOP, 0)]
            outer = _lower_map(first) if first[0] >= 0 else None
        elif lower.outer is not None:
            outer = lower.outer
    return Tangle(
        adj,
        lower.signs + upper.signs,
        lower.bottom,
        upper.top,
        lower.loops + upper.loops + loops,
        outer,
    )


def _lower_map(s: Slot) -> Slot:
    return (_GLUE, 2 * s[1]) if s[0] == TOP else s


def _upper_map(s: Slot, k: int) -> Slot:
    if s[0] == BOTTOM:
        return (_GLUE, 2 * s[1] + 1)
    return _shift(s, k)


_STAR_PORT = (2, 1, 0, 3)


def star(t: Tangle) -> Tangle:
    """Reflect top to bottom and reverse every orientation."""

    def m(s: Slot) -> Slot:
        c, p = s
        if c == BOTTOM:
            return (TOP, p)
        if c == TOP:
            return (BOTTOM, p)
        return (c, _STAR_PORT[p])

    adj = {m(s): m(u) for s, u in t.adj.items()}
    outer = m(t.adj[t.outer]) if t.outer is not None else None
    return Tangle(adj, tuple(-s for s in t.signs), t.top, t.bottom, t.loops, outer)


def close(t: Tangle) -> Tangle:
    """Join top ``j`` to bottom ``j`` by nested arcs running around the left side."""
    if len(t.bottom) != len(t.top):
        raise BoundaryMismatch(
            f"closure needs as many top points ({len(t.top)}) as bottom points ({len(t.bottom)})",
            min(len(t.top), len(t.bottom)),
        )
    for i, (x, y) in enumerate(zip(t.bottom, t.top)):
        if x != y:
            raise BoundaryMismatch(f"closure arc joins sign {y!r} to sign {x!r}", i)
    raw: dict[Slot, Slot] = {}

    def m(s: Slot) -> Slot:
        if s[0] == TOP:
            return (_GLUE, 2 * s[1])
        if s[0] == BOTTOM:
            return (_GLUE, 2 * s[1] + 1)
        return s

    for s, u in t.adj.items():
        raw[m(s)] = m(u)
    adj, loops = _contract(raw)
    outer = t.outer
    if t.bottom:
        first = t.adj[(BOTTOM, len(t.bottom) - 1)]
        outer = first if first[0] >= 0 else None
    return Tangle(adj, t.signs, "", "", t.loops + loops, outer)


trace_close = close


def disjoint_union(d1: Tangle, d2: Tangle) -> Tangle:
    """Two closed diagrams side by side."""
    if not (d1.closed and d2.closed):
        raise DiagramError("disjoint union is defined for closed diagrams")
    k = d1.crossings
    adj = dict(d1.adj)
    adj.update({_shift(s, k): _shift(u, k) for s, u in d2.adj.items()})
    outer = d1.outer if d1.outer is not None else (_shift(d2.outer, k) if d2.outer else None)
    return Tangle(adj, d1.signs + d2.signs, "", "", d1.loops + d2.loops, outer)


def mirror(d: Tangle) -> Tangle:
    """Switch every crossing (the mirror image in the projection plane)."""
    if not d.oriented:
        raise DiagramError("mirror is implemented for oriented diagrams")

    # switching: ports (a, b, c, d) with sign s become (d, a, b, c) for s > 0
    # and (b, c, d, a) for s < 0, sign negated
    def new_port(c: int, p: int) -> int:
        return (p + 1) % 4 if d.signs[c] > 0 else (p - 1) % 4

    def m(s: Slot) -> Slot:
        return s if s[0] < 0 else (s[0], new_port(*s))

    adj = {m(s): m(u) for s, u in d.adj.items()}
    outer = m(d.outer) if d.outer is not None else None
    return Tangle(adj, tuple(-s for s in d.signs), d.bottom, d.top, d.loops, outer)


def reverse(d: Tangle) -> Tangle:
    """Reverse the orientation of every strand (crossing signs are unchanged)."""

    def m(s: Slot) -> Slot:
        return s if s[0] < 0 else (s[0], (s[1] + 2) % 4)

    flip = str.maketrans("+-", "-+")
    adj = {m(s): m(u) for s, u in d.adj.items()}
    outer = m(d.outer) if d.outer is not None else None
    return Tangle(adj, d.signs, d.bottom.translate(flip), d.top.translate(flip), d.loops, outer)


# --------------------------------------------------------------------------
# the functor on forests and the links L(g)


def phi_of_forest(
    f: Forest | Tree,
    sigma: str | None = None,
    insertions: Sequence[int] | None = None,
    convention: str = "standard",
) -> Tangle:
    """Stack one caret piece per caret of ``f``, in the order of ``insertions``.

    ``sigma=None`` builds the unoriented diagram.  The default insertion
    order is the canonical preorder; any valid order gives the same diagram.
    """
    if isinstance(f, Tree):
        f = Forest.of(f)
    if sigma is not None and len(sigma) != f.roots:
        raise ValueError(f"sign of length {len(sigma)} on a forest with {f.roots} roots")
    order = list(f.insertions() if insertions is None else insertions)
    if len(order) != f.carets:
        raise ValueError("insertion list does not match the caret count")
    m = f.roots
    cur = identity(object_signs(sigma) if sigma is not None else 2 * m - 1)
    s = sigma
    for pos in order:
        piece = caret_piece(m, pos, s, convention)
        cur = stack(piece, cur)
        if s is not None:
            s = insert_caret(s, pos)
        m += 1
    if Forest.from_insertions(f.roots, order) != f:
        raise ValueError("insertion list does not build the given forest")
    return cur


def build_link(g: GroupElement, convention: str = "standard") -> Tangle:
    """The closed oriented diagram L(g); raises NotOriented outside the subgroup."""
    require_oriented(g)
    lower = phi_of_forest(g.plus, "+", convention=convention)
    upper = star(phi_of_forest(g.minus, "+", convention=convention))
    return close(stack(upper, lower))


def build_unoriented_link(g: GroupElement, convention: str = "standard") -> Tangle:
    """The same closed diagram for any element, with no orientation data."""
    lower = phi_of_forest(g.plus, None, convention=convention)
    upper = star(phi_of_forest(g.minus, None, convention=convention))
    return close(stack(upper, lower))


def conjugate_by_crossing(t: Tangle, i: int, inverse: bool = False) -> Tangle:
    """Put a crossing exchanging top points ``i`` and ``i+1`` (0-based) on ``t``."""
    return stack(crossing_tangle(t.top, i, inverse), t)


# --------------------------------------------------------------------------
# invariants


def _face_next(adj: Mapping[Slot, Slot], cyc: Mapping[int, list[Slot]], s: Slot) -> Slot:
    """Next dart (given by its starting slot) along the left face of dart ``s``."""
    t = adj[s]
    c, q = t
    if c >= 0:
        return (c, (q - 1) % 4)
    ring = cyc[0]
    return ring[(ring.index(t) - 1) % len(ring)]


def faces(t: Tangle) -> list[list[Slot]]:
    """Faces as lists of darts (a dart is named by the slot it leaves).

    The boundary points of an open tangle are treated as ports of one extra
    vertex standing for the outside of the rectangle.
    """
    cyc = {0: _boundary_ring(t)}
    darts = [s for s in t.adj]
    seen: set[Slot] = set()
    out = []
    for s in darts:
        if s in seen:
            continue
        face = []
        cur = s
        while cur not in seen:
            seen.add(cur)
            face.append(cur)
            cur = _face_next(t.adj, cyc, cur)
        out.append(face)
    return out


def _boundary_ring(t: Tangle) -> list[Slot]:
    # counterclockwise as seen from outside the rectangle
    return [(BOTTOM, i) for i in reversed(range(len(t.bottom)))] + [
        (TOP, i) for i in range(len(t.top))
    ]


def graph_pieces(t: Tangle) -> int:
    """Connected pieces of the underlying 4-valent graph (boundary vertex included)."""
    parent: dict = {}

    def node(s: Slot):
        return "B" if s[0] < 0 else s[0]

    def find(u):
        while parent.setdefault(u, u) != u:
            parent[u] = parent[parent[u]]
            u = parent[u]
        return u

    for s, u in t.adj.items():
        a, b = find(node(s)), find(node(u))
        if a != b:
            parent[b] = a
    return len({find(x) for x in list(parent)})


def euler_ok(t: Tangle) -> bool:
    """Planarity of the rotation system: ``V - E + F = 2`` on every piece."""
    if not t.adj:
        return True
    v = t.crossings + (1 if t.bottom or t.top else 0)
    e = len(t.adj) // 2
    f = len(faces(t))
    return v - e + f == 2 * graph_pieces(t)


def component_count(t: Tangle) -> int:
    """Closed components by strand following, plus free loops."""
    if not t.closed:
        raise DiagramError("component count is defined for closed diagrams")
    seen: set[Slot] = set()
    count = t.loops
    for s in t.adj:
        if s in seen:
            continue
        count += 1
        cur = s
        while cur not in seen:
            seen.add(cur)
            u = t.adj[cur]
            seen.add(u)
            cur = (u[0], (u[1] + 2) % 4)
    return count


def component_count_unionfind(t: Tangle) -> int:
    parent: dict[Slot, Slot] = {}

    def find(u):
        while parent.setdefault(u, u) != u:
            parent[u] = parent[parent[u]]
            u = parent[u]
        return u

    def union(a, b):
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[rb] = ra

    for s, u in t.adj.items():
        union(s, u)
        if s[0] >= 0:
            union(s, (s[0], (s[1] + 2) % 4))
    return len({find(s) for s in t.adj}) + t.loops


def check_diagram(t: Tangle) -> None:
    """Raise DiagramError unless every structural invariant holds."""
    for s, u in t.adj.items():
        if t.adj.get(u) != s or s == u:
            raise DiagramError(f"adjacency is not an involution at {s}")
    for c in range(t.crossings):
        for p in range(4):
            if (c, p) not in t.adj:
                raise DiagramError(f"port {(c, p)} is unused")
    for side, n in ((BOTTOM, len(t.bottom)), (TOP, len(t.top))):
        for i in range(n):
            if (side, i) not in t.adj:
                raise DiagramError(f"boundary point {(side, i)} is unused")
    if len(t.adj) != 4 * t.crossings + len(t.bottom) + len(t.top):
        raise DiagramError("stray slots in adjacency")
    if not euler_ok(t):
        raise DiagramError("rotation system is not planar")
    if t.oriented:
        for s, u in t.adj.items():
            if t.slot_is_out(s) == t.slot_is_out(u):
                raise DiagramError(f"edge {s} - {u} is not consistently oriented")
    if t.closed and component_count(t) != component_count_unionfind(t):
        raise DiagramError("component counts disagree")


# --------------------------------------------------------------------------
# codes and serialisation


def unoriented_code(t: Tangle) -> tuple:
    """Relabelling-invariant code of a closed diagram, ignoring orientation.

    Each crossing may be entered at port 0 or port 2 (both are under-ports);
    the code is the least BFS serialisation over all such roots.
    """
    if not t.closed:
        raise DiagramError("codes are defined for closed diagrams")
    best = None
    for c in range(t.crossings):
        for r in (0, 2):
            code = _bfs(t, c, r)
            if best is None or code < best:
                best = code
    return (t.loops,) + (best or ())


def _bfs(t: Tangle, root: int, rot: int) -> tuple:
    num = {root: 0}
    rots = {root: rot}
    order = [root]
    out = []
    i = 0
    while i < len(order):
        c = order[i]
        i += 1
        for k in range(4):
            p = (k + rots[c]) % 4
            u = t.adj[(c, p)]
            d = u[0]
            if d not in num:
                num[d] = len(order)
                order.append(d)
                rots[d] = _rot_for(u[1])
            out.append((num[d], (u[1] - rots[d]) % 4))
    return tuple(out)


def _rot_for(port: int) -> int:
    # fix the neighbour's rotation so the arriving port maps into {0,1}
    return 0 if port in (0, 1) else 2


def oriented_code(t: Tangle) -> tuple:
    from .homfly import canonical_code

    xs, loops = t.to_pd()
    return (loops,) + (canonical_code(xs, use_reversal=False) if xs else ())


def to_dict(t: Tangle) -> dict:
    """PD-style JSON object; edge labels are 1-based."""
    labels: dict[Slot, int] = {}
    nxt = 1
    for s in sorted(t.adj):
        if s not in labels:
            labels[s] = labels[t.adj[s]] = nxt
            nxt += 1
    crossings = []
    for c in range(t.crossings):
        ports = [labels[(c, p)] for p in range(4)]
        crossings.append(
            {"id": c, "ports": ports, "over": [ports[1], ports[3]], "sign": t.signs[c]}
        )
    orient = {}
    if t.oriented:
        for s in sorted(t.adj):
            e = labels[s]
            if str(e) not in orient:
                # +1 when the edge runs from this (smaller) slot to its partner
                orient[str(e)] = 1 if t.slot_is_out(s) else -1
    return {
        "crossings": crossings,
        "closures": [],
        "loops": t.loops,
        "orient": orient,
        "boundary": {
            "bottom": t.bottom,
            "top": t.top,
            "bottom_edges": [labels[(BOTTOM, i)] for i in range(len(t.bottom))],
            "top_edges": [labels[(TOP, i)] for i in range(len(t.top))],
        },
        "outer": list(t.outer) if t.outer is not None else None,
    }


def from_dict(d: dict) -> Tangle:
    ends: dict[int, list[Slot]] = {}
    signs = []
    for x in sorted(d["crossings"], key=lambda x: x["id"]):
        for p, e in enumerate(x["ports"]):
            ends.setdefault(int(e), []).append((int(x["id"]), p))
        signs.append(int(x.get("sign", 0)))
    b = d.get("boundary", {})
    for i, e in enumerate(b.get("bottom_edges", [])):
        ends.setdefault(int(e), []).append((BOTTOM, i))
    for i, e in enumerate(b.get("top_edges", [])):
        ends.setdefault(int(e), []).append((TOP, i))
    pairs = []
    for e, lst in ends.items():
        if len(lst) != 2:
            raise DiagramError(f"edge {e} has {len(lst)} ends")
        pairs.append((lst[0], lst[1]))
    outer = d.get("outer")
    t = Tangle(
        _symmetric(pairs),
        tuple(signs),
        b.get("bottom", ""),
        b.get("top", ""),
        int(d.get("loops", 0)),
        tuple(outer) if outer is not None else None,
    )
    check_diagram(t)
    return t


def same_diagram(t1: Tangle, t2: Tangle) -> bool:
    """Equality up to relabelling (closed oriented diagrams)."""
    return oriented_code(t1) == oriented_code(t2)


def random_tangle_family(
    rng: random.Random,
    top: str = "+++---",
    size: int = 4,
    max_crossings: int = 4,
    attempts: int = 10000,
) -> list[Tangle]:
    """Tangles with no bottom points and the given top signs.

    Each is a planar cap system followed by up to ``max_crossings`` random
    crossings whose sign swaps end at ``top``.
    """
    out: list[Tangle] = []
    for _ in range(attempts):
        if len(out) == size:
            break
        n = rng.randint(0, max_crossings)
        # walk backwards from the target sign string
        cur = top
        steps = []
        for _ in range(n):
            i = rng.randrange(len(cur) - 1)
            steps.append((i, rng.random() < 0.5))
            cur = cur[:i] + cur[i + 1] + cur[i] + cur[i + 2 :]
        matching = _random_matching(cur, rng)
        if matching is None:
            continue
        t = cap_tangle(cur, matching)
        for i, inv in reversed(steps):
            t = conjugate_by_crossing(t, i, inv)
        out.append(t)
    if len(out) < size:
        raise RuntimeError("could not sample enough tangles")
    return out


def _random_matching(signs: str, rng: random.Random) -> list[tuple[int, int]] | None:
    """A random non-crossing matching pairing opposite signs, if one exists."""
    cands = _all_matchings(signs)
    return rng.choice(cands) if cands else None


def _all_matchings(signs: str) -> list[list[tuple[int, int]]]:
    def rec(idx: tuple[int, ...]) -> list[list[tuple[int, int]]]:
        if not idx:
            return [[]]
        first = idx[0]
        res = []
        for k in range(1, len(idx), 2):
            if signs[idx[k]] == signs[first]:
                continue
            for inner in rec(idx[1:k]):
                for outer in rec(idx[k + 1 :]):
                    res.append([(first, idx[k])] + inner + outer)
        return res

    return rec(tuple(range(len(signs))))
