"""Chequerboard shading of closed diagrams and orientability of the shaded surface."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass

from .tangles import DiagramError, Tangle, faces, graph_pieces


@dataclass(frozen=True)
class Shading:
    """Faces (lists of darts), which are shaded, and +-1 labels on shaded faces.

    ``orientable`` is False when the labels cannot be made consistent; the
    labels then hold whatever the propagation reached before the clash.
    """

    faces: tuple[tuple, ...]
    shaded: tuple[bool, ...]
    labels: dict
    orientable: bool
    outer_face: int | None
    leftmost_face: int | None
    conflict: tuple | None = None

    def face_of_dart(self, s) -> int:
        for i, f in enumerate(self.faces):
            if s in f:
                return i
        raise KeyError(s)


def shade(d: Tangle) -> Shading:
    """Shade with the unbounded face unshaded and the leftmost face labelled +.

    Across each crossing the two shaded corners must carry opposite labels
    (the band joining them has a half twist).
    """
    if not d.closed:
        raise DiagramError("shading is defined for closed diagrams")
    if d.crossings == 0:
        # free circles: each bounds its own shaded disc
        return Shading((), (), {}, True, None, None)
    if d.loops:
        raise DiagramError("cannot place free loops relative to the crossings")
    if graph_pieces(d) != 1:
        raise DiagramError("shading needs a connected diagram")
    if d.outer is None:
        raise DiagramError("the diagram does not record its unbounded face")
    fs = faces(d)
    face_of = {s: i for i, f in enumerate(fs) for s in f}
    outer = face_of[d.outer]
    leftmost = face_of[d.adj[d.outer]]

    colour: dict[int, bool] = {outer: False}
    queue = deque([outer])
    while queue:
        f = queue.popleft()
        for s in fs[f]:
            g = face_of[d.adj[s]]
            if g not in colour:
                colour[g] = not colour[f]
                queue.append(g)
            elif colour[g] == colour[f]:
                raise DiagramError("faces do not admit a chequerboard colouring")
    shaded = tuple(colour[i] for i in range(len(fs)))
    if not shaded[leftmost]:
        raise DiagramError("the leftmost face came out unshaded")

    # constraints between shaded corners at each crossing
    links: dict[int, list[tuple[int, int]]] = {}
    for c in range(d.crossings):
        for p in (0, 1):
            f1, f2 = face_of[(c, p)], face_of[(c, p + 2)]
            if shaded[f1]:
                links.setdefault(f1, []).append((f2, c))
                links.setdefault(f2, []).append((f1, c))
    labels = {leftmost: 1}
    queue = deque([leftmost])
    conflict = None
    while queue and conflict is None:
        f = queue.popleft()
        for g, c in links.get(f, []):
            want = -labels[f]
            if g not in labels:
                labels[g] = want
                queue.append(g)
            elif labels[g] != want:
                conflict = (f, g, c)
                break
    return Shading(tuple(tuple(f) for f in fs), shaded, labels, conflict is None, outer, leftmost, conflict)


def induced_orientation_agrees(d: Tangle, s: Shading | None = None) -> bool:
    """Whether the strand directions of ``d`` run with + faces on their left."""
    if not d.oriented:
        raise DiagramError("the diagram carries no orientation")
    s = s or shade(d)
    if not s.orientable:
        return False
    face_of = {dart: i for i, f in enumerate(s.faces) for dart in f}
    for dart, f in face_of.items():
        if s.shaded[f]:
            along = 1 if d.slot_is_out(dart) else -1
            if s.labels.get(f) != along:
                return False
    return True
