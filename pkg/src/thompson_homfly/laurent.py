"""Exact Laurent polynomials in two variables ``a`` and ``z`` with integer coefficients."""

from __future__ import annotations

import json
import math
from typing import Iterable, Mapping


class LaurentPoly:
    """Finite map ``(i, j) -> c`` standing for ``sum c * a**i * z**j``.

    Zero coefficients are never stored, so equality is dictionary equality.
    """

    __slots__ = ("terms", "_hash")

    def __init__(self, terms: Mapping[tuple[int, int], int] | None = None):
        self.terms: dict[tuple[int, int], int] = {
            k: int(c) for k, c in (terms or {}).items() if c
        }
        self._hash = None

    @classmethod
    def _raw(cls, terms: dict) -> LaurentPoly:
        # caller guarantees no zero entries
        p = cls.__new__(cls)
        p.terms = terms
        p._hash = None
        return p

    @classmethod
    def constant(cls, c: int) -> LaurentPoly:
        return cls({(0, 0): c})

    @classmethod
    def monomial(cls, i: int, j: int, c: int = 1) -> LaurentPoly:
        return cls({(i, j): c})

    # arithmetic -----------------------------------------------------------

    def __add__(self, other: LaurentPoly | int) -> LaurentPoly:
        if isinstance(other, int):
            other = LaurentPoly.constant(other)
        out = dict(self.terms)
        for k, c in other.terms.items():
            v = out.get(k, 0) + c
            if v:
                out[k] = v
            else:
                out.pop(k, None)
        return LaurentPoly._raw(out)

    __radd__ = __add__

    def __neg__(self) -> LaurentPoly:
        return LaurentPoly._raw({k: -c for k, c in self.terms.items()})

    def __sub__(self, other: LaurentPoly | int) -> LaurentPoly:
        if isinstance(other, int):
            other = LaurentPoly.constant(other)
        return self + (-other)

    def __rsub__(self, other: int) -> LaurentPoly:
        return LaurentPoly.constant(other) - self

    def __mul__(self, other: LaurentPoly | int) -> LaurentPoly:
        if isinstance(other, int):
            if other == 0:
                return LaurentPoly()
            return LaurentPoly._raw({k: c * other for k, c in self.terms.items()})
        out: dict[tuple[int, int], int] = {}
        for (i1, j1), c1 in self.terms.items():
            for (i2, j2), c2 in other.terms.items():
                k = (i1 + i2, j1 + j2)
                out[k] = out.get(k, 0) + c1 * c2
        return LaurentPoly._raw({k: c for k, c in out.items() if c})

    __rmul__ = __mul__

    def __pow__(self, n: int) -> LaurentPoly:
        if n < 0:
            if len(self.terms) != 1:
                raise ValueError("only monomials have Laurent inverses")
            ((i, j), c), = self.terms.items()
            if c not in (1, -1):
                raise ValueError("monomial with non-unit coefficient is not invertible")
            m = -n
            return LaurentPoly.monomial(-i * m, -j * m, c**m)
        out = ONE
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def shift(self, di: int, dj: int, c: int = 1) -> LaurentPoly:
        """Multiply by the monomial ``c * a**di * z**dj``."""
        return LaurentPoly._raw({(i + di, j + dj): v * c for (i, j), v in self.terms.items()})

    def substitute_mirror(self) -> LaurentPoly:
        """``(a, z) -> (1/a, -z)``."""
        return LaurentPoly._raw({(-i, j): (-c if j % 2 else c) for (i, j), c in self.terms.items()})

    # comparison -------------------------------------------------------------

    def __eq__(self, other: object) -> bool:
        if isinstance(other, int):
            other = LaurentPoly.constant(other)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self.terms.items()))
        return self._hash

    def __bool__(self) -> bool:
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    # evaluation -------------------------------------------------------------

    def evaluate(self, a: complex, z: complex) -> complex:
        """Numeric value, accumulating real and imaginary parts with ``math.fsum``."""
        re_parts, im_parts = [], []
        apow: dict[int, complex] = {}
        zpow: dict[int, complex] = {}
        for (i, j), c in self.terms.items():
            if i not in apow:
                apow[i] = a**i
            if j not in zpow:
                zpow[j] = z**j
            v = apow[i] * zpow[j] * float(c)
            re_parts.append(v.real)
            im_parts.append(v.imag)
        return complex(math.fsum(re_parts), math.fsum(im_parts))

    # text / JSON --------------------------------------------------------------

    def sorted_terms(self) -> list[tuple[int, int, int]]:
        return sorted(((i, j, c) for (i, j), c in self.terms.items()), key=lambda t: (t[1], t[0]))

    def to_dict(self) -> dict:
        return {"terms": [{"a": i, "z": j, "c": str(c)} for i, j, c in self.sorted_terms()]}

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    @classmethod
    def from_dict(cls, d: dict) -> LaurentPoly:
        out: dict[tuple[int, int], int] = {}
        for t in d["terms"]:
            k = (int(t["a"]), int(t["z"]))
            out[k] = out.get(k, 0) + int(t["c"])
        return cls(out)

    @classmethod
    def from_json(cls, text: str) -> LaurentPoly:
        return cls.from_dict(json.loads(text))

    def __repr__(self) -> str:
        return f"LaurentPoly({self})"

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        pieces = []
        for i, j, c in self.sorted_terms():
            mono = []
            if i:
                mono.append("a" if i == 1 else f"a^{i}")
            if j:
                mono.append("z" if j == 1 else f"z^{j}")
            body = "*".join(mono)
            if not body:
                pieces.append(str(c))
            elif c == 1:
                pieces.append(body)
            elif c == -1:
                pieces.append("-" + body)
            else:
                pieces.append(f"{c}*{body}")
        return " + ".join(pieces).replace("+ -", "- ")


def poly_sum(polys: Iterable[LaurentPoly]) -> LaurentPoly:
    out: dict[tuple[int, int], int] = {}
    for p in polys:
        for k, c in p.terms.items():
            out[k] = out.get(k, 0) + c
    return LaurentPoly._raw({k: c for k, c in out.items() if c})


ZERO = LaurentPoly()
ONE = LaurentPoly.constant(1)
A = LaurentPoly.monomial(1, 0)
Z = LaurentPoly.monomial(0, 1)
# loop value (a - 1/a) / z
DELTA = LaurentPoly({(1, -1): 1, (-1, -1): -1})
