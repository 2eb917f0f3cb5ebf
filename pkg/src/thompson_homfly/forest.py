"""Planar binary trees and forests, and Thompson's group F as reduced tree pairs.

Trees are written in the text grammar ``TREE := "l" | "(" TREE TREE ")"``.
A group element is a pair ``(plus, minus)`` of trees with equal leaf counts,
read as the fraction plus/minus.  Multiplication ``(A+, A-) * (B+, B-)``
aligns ``A-`` with ``B+`` through their common refinement.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, Iterator, Sequence


class ParseError(ValueError):
    """Malformed tree, element or word text; ``position`` is 0-based."""

    def __init__(self, message: str, position: int = 0):
        super().__init__(f"{message} (at position {position})")
        self.position = position


@dataclass(frozen=True)
class Tree:
    """A planar rooted binary tree: a leaf, or a caret over two subtrees."""

    left: Tree | None = None
    right: Tree | None = None
    leaves: int = field(default=1, init=False, repr=False, compare=False)

    def __post_init__(self):
        if (self.left is None) != (self.right is None):
            raise ValueError("a caret needs both subtrees")
        if self.left is not None:
            object.__setattr__(self, "leaves", self.left.leaves + self.right.leaves)

    @property
    def is_leaf(self) -> bool:
        return self.left is None

    @property
    def carets(self) -> int:
        return self.leaves - 1

    def __str__(self) -> str:
        return to_text(self)

    def caret_paths(self) -> frozenset[str]:
        """Binary root-to-node addresses ('0' = left, '1' = right) of all carets."""
        out: set[str] = set()
        stack = [(self, "")]
        while stack:
            t, path = stack.pop()
            if not t.is_leaf:
                out.add(path)
                stack.append((t.left, path + "0"))
                stack.append((t.right, path + "1"))
        return frozenset(out)

    def leaf_paths(self) -> list[str]:
        """Addresses of the leaves, left to right."""
        if self.is_leaf:
            return [""]
        return ["0" + p for p in self.left.leaf_paths()] + ["1" + p for p in self.right.leaf_paths()]

    def subtree(self, path: str) -> Tree:
        t = self
        for ch in path:
            if t.is_leaf:
                return LEAF
            t = t.left if ch == "0" else t.right
        return t


LEAF = Tree()


def caret(left: Tree = LEAF, right: Tree = LEAF) -> Tree:
    return Tree(left, right)


def to_text(t: Tree) -> str:
    parts: list[str] = []
    stack: list[Tree | str] = [t]
    while stack:
        item = stack.pop()
        if isinstance(item, str):
            parts.append(item)
        elif item.is_leaf:
            parts.append("l")
        else:
            stack.extend([")", item.right, item.left])
            parts.append("(")
    return "".join(parts)


def parse_tree(text: str) -> Tree:
    s = "".join(text.split())
    pos = 0

    def parse() -> Tree:
        nonlocal pos
        if pos >= len(s):
            raise ParseError("unexpected end of tree", pos)
        ch = s[pos]
        if ch == "l":
            pos += 1
            return LEAF
        if ch != "(":
            raise ParseError(f"unexpected character {ch!r} in tree", pos)
        pos += 1
        left = parse()
        right = parse()
        if pos >= len(s) or s[pos] != ")":
            raise ParseError("expected ')'", pos)
        pos += 1
        return Tree(left, right)

    tree = parse()
    if pos != len(s):
        raise ParseError("trailing characters after tree", pos)
    return tree


def tree_from_paths(paths: Iterable[str]) -> Tree:
    """Inverse of :meth:`Tree.caret_paths`; the path set must be prefix closed."""
    paths = set(paths)

    def build(prefix: str) -> Tree:
        if prefix not in paths:
            return LEAF
        return Tree(build(prefix + "0"), build(prefix + "1"))

    for p in paths:
        if p and p[:-1] not in paths:
            raise ValueError(f"caret path set not prefix closed at {p!r}")
    return build("")


@lru_cache(maxsize=None)
def all_trees(n: int) -> tuple[Tree, ...]:
    """Every tree with ``n`` leaves, in lexicographic order of text form."""
    if n < 1:
        return ()
    if n == 1:
        return (LEAF,)
    out = [Tree(l, r) for i in range(1, n) for l in all_trees(i) for r in all_trees(n - i)]
    return tuple(sorted(out, key=to_text))


def random_tree(n: int, rng: random.Random) -> Tree:
    """Random tree with ``n`` leaves built by random caret insertions."""
    f = Forest.from_insertions(1, [rng.randint(1, i + 1) for i in range(n - 1)])
    return f.trees[0]


# --------------------------------------------------------------------------
# forests


@dataclass(frozen=True)
class Forest:
    """An ordered sequence of trees, one per root; a morphism roots -> leaves."""

    trees: tuple[Tree, ...]

    def __post_init__(self):
        if not self.trees:
            raise ValueError("a forest needs at least one root")

    @classmethod
    def identity(cls, n: int) -> Forest:
        return cls((LEAF,) * n)

    @classmethod
    def of(cls, *trees: Tree) -> Forest:
        return cls(tuple(trees))

    @classmethod
    def from_insertions(cls, roots: int, positions: Sequence[int]) -> Forest:
        """Grow a forest from caret insertions at 1-based leaf positions, in time order."""
        # each leaf of the current row is (root index, path within that root's tree)
        row = [(r, "") for r in range(roots)]
        paths: list[set[str]] = [set() for _ in range(roots)]
        for pos in positions:
            if not 1 <= pos <= len(row):
                raise IndexError(f"caret position {pos} outside leaf row of length {len(row)}")
            r, p = row[pos - 1]
            paths[r].add(p)
            row[pos - 1 : pos] = [(r, p + "0"), (r, p + "1")]
        return cls(tuple(tree_from_paths(ps) for ps in paths))

    @property
    def roots(self) -> int:
        return len(self.trees)

    @property
    def leaves(self) -> int:
        return sum(t.leaves for t in self.trees)

    @property
    def carets(self) -> int:
        return self.leaves - self.roots

    def insertions(self) -> list[int]:
        """Canonical insertion list: carets in depth-first, left-to-right order."""
        out: list[int] = []
        offset = 0
        for t in self.trees:
            # preorder: a caret at the leaf currently at position offset+k+1
            stack = [(t, offset)]
            while stack:
                node, pos = stack.pop()
                if node.is_leaf:
                    continue
                out.append(pos + 1)
                stack.append((node.right, pos + node.left.leaves))
                stack.append((node.left, pos))
            offset += t.leaves
        return out

    def random_insertions(self, rng: random.Random) -> list[int]:
        """A uniformly chosen valid time order of the carets, as an insertion list."""
        # frontier of carets whose parent is already inserted, keyed by (root, path)
        frontier = [(r, "") for r, t in enumerate(self.trees) if not t.is_leaf]
        row = [(r, "") for r in range(self.roots)]
        out: list[int] = []
        while frontier:
            r, p = frontier.pop(rng.randrange(len(frontier)))
            idx = row.index((r, p))
            out.append(idx + 1)
            row[idx : idx + 1] = [(r, p + "0"), (r, p + "1")]
            t = self.trees[r].subtree(p)
            for child, suffix in ((t.left, "0"), (t.right, "1")):
                if not child.is_leaf:
                    frontier.append((r, p + suffix))
        return out

    def __str__(self) -> str:
        return " ".join(to_text(t) for t in self.trees)


def compose_forests(f: Forest, g: Forest) -> Forest:
    """``f o g``: ``g`` is applied first and ``f`` grows on the leaves of ``g``."""
    if f.roots != g.leaves:
        raise ValueError(f"cannot compose: f has {f.roots} roots but g has {g.leaves} leaves")
    it = iter(f.trees)

    def graft(t: Tree) -> Tree:
        if t.is_leaf:
            return next(it)
        left = graft(t.left)
        return Tree(left, graft(t.right))

    return Forest(tuple(graft(t) for t in g.trees))


def grow(f: Forest, t: Tree) -> Tree:
    """Apply forest ``f`` on the leaves of a single tree."""
    return compose_forests(f, Forest.of(t)).trees[0]


def common_refinement(s: Tree, t: Tree) -> tuple[Forest, Forest]:
    """Minimal forests ``p, q`` with ``p o s == q o t`` (the caret-set union)."""
    union = tree_from_paths(s.caret_paths() | t.caret_paths())
    p = Forest(tuple(union.subtree(w) for w in s.leaf_paths()))
    q = Forest(tuple(union.subtree(w) for w in t.leaf_paths()))
    return p, q


# --------------------------------------------------------------------------
# group elements


def _leaf_carets(t: Tree) -> set[int]:
    """1-based positions i such that leaves i, i+1 hang from a common caret."""
    out: set[int] = set()
    stack = [(t, 1)]
    while stack:
        node, pos = stack.pop()
        if node.is_leaf:
            continue
        if node.left.is_leaf and node.right.is_leaf:
            out.add(pos)
            continue
        stack.append((node.left, pos))
        stack.append((node.right, pos + node.left.leaves))
    return out


def _remove_leaf_caret(t: Tree, pos: int) -> Tree:
    if t.is_leaf:
        raise ValueError("no caret to remove")
    if t.left.is_leaf and t.right.is_leaf and pos == 1:
        return LEAF
    if pos < t.left.leaves:
        return Tree(_remove_leaf_caret(t.left, pos), t.right)
    if pos > t.left.leaves:
        return Tree(t.left, _remove_leaf_caret(t.right, pos - t.left.leaves))
    raise ValueError(f"leaves {pos}, {pos + 1} are not siblings")


def add_caret(t: Tree, pos: int) -> Tree:
    """Split leaf ``pos`` (1-based) of ``t`` into a caret."""
    return grow(Forest.from_insertions(t.leaves, [pos]), t)


@dataclass(frozen=True)
class GroupElement:
    """A tree pair ``(plus, minus)``; equality is structural on the stored pair."""

    plus: Tree
    minus: Tree

    def __post_init__(self):
        if self.plus.leaves != self.minus.leaves:
            raise ValueError(
                f"tree pair leaf counts differ: {self.plus.leaves} != {self.minus.leaves}"
            )

    @property
    def leaves(self) -> int:
        return self.plus.leaves

    @property
    def carets(self) -> int:
        return self.plus.carets + self.minus.carets

    @property
    def reduced(self) -> bool:
        return not (_leaf_carets(self.plus) & _leaf_carets(self.minus))

    def __mul__(self, other: GroupElement) -> GroupElement:
        return multiply(self, other)

    def __invert__(self) -> GroupElement:
        return invert(self)

    def __str__(self) -> str:
        return f"({to_text(self.plus)}, {to_text(self.minus)})"

    def to_dict(self) -> dict:
        return {"plus": to_text(self.plus), "minus": to_text(self.minus)}

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    @classmethod
    def from_dict(cls, d: dict) -> GroupElement:
        try:
            return cls(parse_tree(d["plus"]), parse_tree(d["minus"]))
        except KeyError as exc:
            raise ParseError(f"element JSON lacks field {exc.args[0]!r}") from None

    @classmethod
    def from_text(cls, plus: str, minus: str) -> GroupElement:
        return cls(parse_tree(plus), parse_tree(minus))

    def sort_key(self) -> tuple:
        return (self.leaves, to_text(self.plus), to_text(self.minus))


IDENTITY = GroupElement(LEAF, LEAF)
X0 = GroupElement.from_text("((ll)l)", "(l(ll))")
X1 = GroupElement.from_text("(l((ll)l))", "(l(l(ll)))")


def reduce(g: GroupElement, rng: random.Random | None = None) -> GroupElement:
    """Cancel common leaf carets until none is left.

    ``rng`` picks the removal order at random; the fixpoint does not depend on it.
    """
    plus, minus = g.plus, g.minus
    while True:
        common = _leaf_carets(plus) & _leaf_carets(minus)
        if not common:
            return GroupElement(plus, minus)
        pos = rng.choice(sorted(common)) if rng is not None else min(common)
        plus = _remove_leaf_caret(plus, pos)
        minus = _remove_leaf_caret(minus, pos)


def stabilize(g: GroupElement, pos: int) -> GroupElement:
    """Add an opposing caret pair at leaf ``pos`` of both trees."""
    return GroupElement(add_caret(g.plus, pos), add_caret(g.minus, pos))


def multiply(g1: GroupElement, g2: GroupElement, *, reduced: bool = True) -> GroupElement:
    p, q = common_refinement(g1.minus, g2.plus)
    out = GroupElement(grow(p, g1.plus), grow(q, g2.minus))
    return reduce(out) if reduced else out


def invert(g: GroupElement) -> GroupElement:
    return GroupElement(g.minus, g.plus)


# --------------------------------------------------------------------------
# words in the generators

_GENERATORS = {"x0": X0, "x1": X1}


def parse_word(text: str) -> list[tuple[str, int]]:
    """Parse ``"x0 x1^-1"`` into ``[("x0", 1), ("x1", -1)]``."""
    out: list[tuple[str, int]] = []
    pos = 0
    for token in text.replace("⁻¹", "^-1").split():
        start = text.find(token, pos)
        pos = start + len(token)
        name, _, exp = token.partition("^")
        if name not in _GENERATORS:
            raise ParseError(f"unknown generator {name!r}", max(start, 0))
        if exp in ("", "1", "+1"):
            out.append((name, 1))
        elif exp == "-1":
            out.append((name, -1))
        else:
            raise ParseError(f"unsupported exponent {exp!r}", max(start, 0))
    return out


def word_to_text(word: Sequence[tuple[str, int]]) -> str:
    return " ".join(name if e == 1 else f"{name}^-1" for name, e in word)


def eval_word(word: str | Sequence[tuple[str, int]]) -> GroupElement:
    if isinstance(word, str):
        word = parse_word(word)
    g = IDENTITY
    for name, e in word:
        gen = _GENERATORS[name]
        g = multiply(g, gen if e == 1 else invert(gen))
    return g


def random_word(rng: random.Random, max_len: int = 10) -> list[tuple[str, int]]:
    n = rng.randint(0, max_len)
    return [(rng.choice(("x0", "x1")), rng.choice((1, -1))) for _ in range(n)]


def iter_reduced_pairs(max_leaves: int) -> Iterator[GroupElement]:
    """All reduced tree pairs with at most ``max_leaves`` leaves."""
    for n in range(1, max_leaves + 1):
        trees = all_trees(n)
        carets = [_leaf_carets(t) for t in trees]
        for i, s in enumerate(trees):
            for j, t in enumerate(trees):
                if not (carets[i] & carets[j]):
                    yield GroupElement(s, t)
