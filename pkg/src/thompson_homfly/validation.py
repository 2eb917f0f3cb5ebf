"""Input validation helpers shared by the estimators and the command line."""

from __future__ import annotations

import json
import math
from typing import Iterable

from .forest import IDENTITY, GroupElement, ParseError, eval_word, parse_tree, reduce
from .homfly import NORMALIZATIONS, EvalParams
from .signs import MAX_ENUMERATION_LEAVES, require_oriented
from .tangles import CONVENTIONS


def check_params(r, k) -> EvalParams:
    """Integer parameters ``r >= 3``, ``k >= 1``."""
    for name, v in (("r", r), ("k", k)):
        if isinstance(v, bool) or not isinstance(v, (int, float)) or int(v) != v:
            raise ValueError(f"{name} must be an integer, got {v!r}")
    return EvalParams(int(r), int(k))


def check_params_list(pairs: Iterable) -> list[EvalParams]:
    out = []
    for item in pairs:
        if isinstance(item, EvalParams):
            out.append(item)
        elif isinstance(item, str):
            r, _, k = item.partition(",")
            try:
                out.append(check_params(int(r), int(k)))
            except ValueError:
                raise ValueError(f"parameter pair must look like 'r,k', got {item!r}") from None
        else:
            r, k = item
            out.append(check_params(r, k))
    if not out:
        raise ValueError("need at least one parameter pair")
    return out


def check_tolerance(tol) -> float:
    tol = float(tol)
    if not math.isfinite(tol) or tol <= 0:
        raise ValueError(f"tolerance must be a positive finite number, got {tol}")
    return tol


def check_convention(convention: str) -> str:
    if convention not in CONVENTIONS:
        raise ValueError(f"convention must be one of {CONVENTIONS}, got {convention!r}")
    return convention


def check_normalization(normalization: str) -> str:
    if normalization not in NORMALIZATIONS:
        raise ValueError(f"normalization must be one of {NORMALIZATIONS}, got {normalization!r}")
    return normalization


def check_leaves(n) -> int:
    if isinstance(n, bool) or int(n) != n or n < 1:
        raise ValueError(f"leaf count must be a positive integer, got {n!r}")
    if n > MAX_ENUMERATION_LEAVES:
        raise ValueError(f"leaf count {n} exceeds the enumeration guard of {MAX_ENUMERATION_LEAVES}")
    return int(n)


def parse_element(text: str) -> GroupElement:
    """Read an element from a word, ``plus/minus`` trees, ``(plus, minus)`` or JSON."""
    s = text.strip()
    if s in ("", "e", "id", "identity", "1"):
        return IDENTITY
    if s.startswith("{"):
        try:
            return GroupElement.from_dict(json.loads(s))
        except json.JSONDecodeError as exc:
            raise ParseError(f"bad element JSON: {exc.msg}", exc.pos) from None
    if "/" in s:
        plus, _, minus = s.partition("/")
        return _pair(plus, minus, offset=len(plus) + 1)
    if "," in s:
        body = s[1:-1] if s.startswith("(") and s.endswith(")") else s
        plus, _, minus = body.partition(",")
        return _pair(plus, minus, offset=len(plus) + 2)
    if s.startswith("x"):
        return eval_word(s)
    if s.startswith("(") or s == "l":
        raise ParseError("a lone tree is not an element; write plus/minus", 0)
    raise ParseError(f"cannot read an element from {s[:20]!r}", 0)


def _pair(plus: str, minus: str, offset: int) -> GroupElement:
    p = parse_tree(plus.strip())
    try:
        m = parse_tree(minus.strip())
    except ParseError as exc:
        raise ParseError(str(exc).split(" (at")[0], exc.position + offset) from None
    try:
        return GroupElement(p, m)
    except ValueError as exc:
        raise ParseError(str(exc), 0) from None


def check_element(x, oriented: bool = False) -> GroupElement:
    """Accept a GroupElement, its dict form or any text form."""
    if isinstance(x, GroupElement):
        g = x
    elif isinstance(x, dict):
        g = GroupElement.from_dict(x)
    elif isinstance(x, str):
        g = parse_element(x)
    else:
        raise TypeError(f"cannot interpret {type(x).__name__} as a group element")
    if oriented:
        require_oriented(g)
    return g


def check_family(X, oriented: bool = True, max_size: int | None = None, reduced: bool = False) -> list[GroupElement]:
    """A non-empty list of elements; optionally oriented, capped and reduced."""
    if isinstance(X, (str, dict, GroupElement)):
        raise TypeError("expected a sequence of elements, got a single element")
    fam = [check_element(x, oriented) for x in X]
    if not fam:
        raise ValueError("empty family")
    if max_size is not None and len(fam) > max_size:
        raise ValueError(f"family of {len(fam)} exceeds the cap of {max_size}")
    return [reduce(g) for g in fam] if reduced else fam
