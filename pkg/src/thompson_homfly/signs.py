"""n-signs, colour propagation through forests, and the oriented subgroup.

An n-sign is a string over ``+-`` that starts ``+-`` (or is just ``+``).
A caret at leaf ``i`` rewrites entry ``a`` to the pair ``(a, -a)``: the new
region opened by the caret gets the colour opposite to the region on its left.
"""

from __future__ import annotations

from .forest import (
    Forest,
    GroupElement,
    Tree,
    all_trees,
    iter_reduced_pairs,
    reduce,
    to_text,
)

MAX_ENUMERATION_LEAVES = 8

# A six-caret forest on four roots taking +-+- to +--+-+--++, recovered by
# exhaustive search over insertion schedules; positions are 1-based.
WORKED_EXAMPLE_SIGMA = "+-+-"
WORKED_EXAMPLE_IMAGE = "+--+-+--++"
WORKED_EXAMPLE_INSERTIONS = (4, 5, 6, 6, 5, 1)
WORKED_EXAMPLE_FOREST = Forest.from_insertions(4, WORKED_EXAMPLE_INSERTIONS)


class NotOriented(ValueError):
    """The element does not lie in the oriented subgroup."""


def negate(sign: str) -> str:
    return "-" if sign == "+" else "+"


def check_sign(sigma: str) -> str:
    """Validate an n-sign and return it unchanged."""
    if not sigma or any(ch not in "+-" for ch in sigma):
        raise ValueError(f"not a sign sequence: {sigma!r}")
    if sigma[0] != "+" or (len(sigma) >= 2 and sigma[1] != "-"):
        raise ValueError(f"an n-sign must start with '+-': {sigma!r}")
    return sigma


def insert_caret(sigma: str, pos: int) -> str:
    """Leaf-row rewrite for one caret at 1-based position ``pos``."""
    if not 1 <= pos <= len(sigma):
        raise IndexError(f"caret position {pos} outside sign of length {len(sigma)}")
    a = sigma[pos - 1]
    return sigma[:pos] + negate(a) + sigma[pos:]


def propagate_insertions(insertions, sigma: str) -> str:
    for pos in insertions:
        sigma = insert_caret(sigma, pos)
    return sigma


def propagate(f: Forest | Tree, sigma: str) -> str:
    """The sign ``f(sigma)`` read off the leaves of ``f``."""
    if isinstance(f, Tree):
        f = Forest.of(f)
    if len(sigma) != f.roots:
        raise ValueError(f"sign of length {len(sigma)} on a forest with {f.roots} roots")
    return propagate_insertions(f.insertions(), sigma)


def check_functorial(f: Forest, g: Forest, sigma: str) -> bool:
    from .forest import compose_forests

    return propagate(f, propagate(g, sigma)) == propagate(compose_forests(f, g), sigma)


def leaf_signs(t: Tree) -> str:
    return propagate(t, "+")


def is_oriented(g: GroupElement) -> bool:
    return leaf_signs(g.plus) == leaf_signs(g.minus)


def first_sign_mismatch(g: GroupElement) -> int | None:
    """0-based index of the first differing leaf sign, or None for members."""
    a, b = leaf_signs(g.plus), leaf_signs(g.minus)
    for i, (x, y) in enumerate(zip(a, b)):
        if x != y:
            return i
    return None


def require_oriented(g: GroupElement) -> None:
    if not is_oriented(g):
        raise NotOriented(
            f"{g} is not in the oriented subgroup: leaf signs "
            f"{leaf_signs(g.plus)} != {leaf_signs(g.minus)}"
        )


def enumerate_oriented(max_leaves: int) -> list[GroupElement]:
    """All reduced oriented tree pairs with at most ``max_leaves`` leaves.

    Ordered by leaf count, then by the text forms of plus and minus.
    """
    if max_leaves > MAX_ENUMERATION_LEAVES:
        raise ValueError(f"max_leaves={max_leaves} exceeds the guard of {MAX_ENUMERATION_LEAVES}")
    if max_leaves < 1:
        return []
    out: list[GroupElement] = []
    for n in range(1, max_leaves + 1):
        by_sign: dict[str, list[Tree]] = {}
        for t in all_trees(n):
            by_sign.setdefault(leaf_signs(t), []).append(t)
        for trees in by_sign.values():
            for s in trees:
                for t in trees:
                    g = GroupElement(s, t)
                    if g.reduced:
                        out.append(g)
    out.sort(key=GroupElement.sort_key)
    return out


def enumerate_oriented_bruteforce(max_leaves: int) -> list[GroupElement]:
    """Independent route: test every pair unreduced, then deduplicate by reduction."""
    seen: set[GroupElement] = set()
    for n in range(1, max_leaves + 1):
        trees = all_trees(n)
        for s in trees:
            for t in trees:
                if propagate(s, "+") == propagate(t, "+"):
                    seen.add(reduce(GroupElement(s, t)))
    return sorted(seen, key=GroupElement.sort_key)


def random_non_members(count: int, max_leaves: int, rng) -> list[GroupElement]:
    pool = [g for g in iter_reduced_pairs(max_leaves) if not is_oriented(g)]
    pool.sort(key=lambda g: (g.leaves, to_text(g.plus), to_text(g.minus)))
    return rng.sample(pool, min(count, len(pool)))
