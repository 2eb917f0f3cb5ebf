"""Gram matrices of phi over families of oriented elements, and of the tangle pairing.

Eigenvalues come from a cyclic complex Jacobi iteration so the positivity
verdicts do not lean on LAPACK; numpy is only used for array storage.
"""

from __future__ import annotations

import itertools
import logging
import math
import random
import warnings
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .forest import GroupElement, invert, multiply
from .homfly import (
    DegenerateParameters,
    EvalParams,
    HomflyEngine,
    default_engine,
    delta_num,
    evaluate,
    phi_parts,
    tangle_inner,
)
from .signs import require_oriented

log = logging.getLogger(__name__)

HERMITIAN_TOL = 1e-8
PSD_TOL = 1e-8
MAX_FAMILY = 12


class OutOfRangeWarning(UserWarning):
    """Parameters outside r >= k + 2; results are computed but flagged."""


class NotHermitian(ValueError):
    """The matrix is not Hermitian within tolerance."""


class NoConvergence(RuntimeError):
    """Jacobi sweeps did not reduce the off-diagonal mass far enough."""


@dataclass
class GramMatrix:
    matrix: np.ndarray
    params: EvalParams
    description: str = ""
    flags: list[str] = field(default_factory=list)

    @property
    def size(self) -> int:
        return self.matrix.shape[0]

    def hermitian_defect(self) -> float:
        m = self.matrix
        return float(np.max(np.abs(m - m.conj().T))) if m.size else 0.0


@dataclass
class SpectrumReport:
    eigenvalues: list[float]
    min_eig: float
    psd: bool
    tol: float
    sweeps: int
    rotations: int
    off_norm: float
    trace_error: float
    params: EvalParams | None = None
    flags: list[str] = field(default_factory=list)
    size: int = 0
    description: str = ""

    @property
    def verdict(self) -> str:
        return "psd" if self.psd else "indefinite"

    def to_dict(self) -> dict:
        return {
            "params": self.params.to_dict() if self.params else None,
            "min_eig": self.min_eig,
            "eigs": self.eigenvalues,
            "verdict": self.verdict,
            "flags": list(self.flags),
            "tol": self.tol,
            "size": self.size,
            "stats": {
                "sweeps": self.sweeps,
                "rotations": self.rotations,
                "off_norm": self.off_norm,
                "trace_error": self.trace_error,
            },
            "description": self.description,
        }


def param_flags(p: EvalParams) -> list[str]:
    flags = []
    if not p.in_stated_range:
        flags.append("out_of_stated_range")
    return flags


# --------------------------------------------------------------------------
# eigenvalues


def hermitian_eigenvalues(
    m, tol: float = 1e-12, max_sweeps: int = 100, herm_tol: float = HERMITIAN_TOL
) -> tuple[list[float], dict]:
    """Sorted eigenvalues of a Hermitian matrix by cyclic complex Jacobi rotations.

    Each rotation first removes the phase of the pivot, then applies a real
    Givens rotation.  Stops when the off-diagonal Frobenius norm drops below
    ``tol * max(1, ||A||_F)``.
    """
    a = np.array(m, dtype=complex)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError(f"need a square matrix, got shape {a.shape}")
    n = a.shape[0]
    scale = max(1.0, float(np.linalg.norm(a)))
    defect = float(np.max(np.abs(a - a.conj().T))) if n else 0.0
    if defect > herm_tol * scale:
        raise NotHermitian(f"matrix is not Hermitian: max |A - A*| = {defect:.3e}")
    a = (a + a.conj().T) / 2
    trace0 = float(np.trace(a).real)
    frob0 = float(np.linalg.norm(a))
    stop = tol * scale
    sweeps = rotations = 0

    def off(x) -> float:
        return float(np.linalg.norm(x - np.diag(np.diag(x))))

    cur = off(a)
    while cur >= stop and n > 1:
        if sweeps >= max_sweeps:
            raise NoConvergence(f"off-diagonal norm {cur:.3e} after {sweeps} sweeps")
        sweeps += 1
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                mag = abs(apq)
                if mag < 1e-300:
                    continue
                phase = apq / mag
                tau = (a[q, q].real - a[p, p].real) / (2 * mag)
                t = (1.0 if tau >= 0 else -1.0) / (abs(tau) + math.sqrt(1 + tau * tau))
                c = 1 / math.sqrt(1 + t * t)
                s = t * c
                # J = diag(1, conj(phase)) @ [[c, s], [-s, c]] on coordinates p, q
                jpp, jpq = c, s
                jqp, jqq = -s * phase.conjugate(), c * phase.conjugate()
                col_p = a[:, p].copy()
                col_q = a[:, q].copy()
                a[:, p] = col_p * jpp + col_q * jqp
                a[:, q] = col_p * jpq + col_q * jqq
                row_p = a[p, :].copy()
                row_q = a[q, :].copy()
                a[p, :] = row_p * jpp + row_q * np.conj(jqp)
                a[q, :] = row_p * jpq + row_q * np.conj(jqq)
                a[p, q] = a[q, p] = 0.0
                rotations += 1
        cur = off(a)
    eig = sorted(float(x.real) for x in np.diag(a))
    stats = {
        "sweeps": sweeps,
        "rotations": rotations,
        "off_norm": cur,
        "trace_error": abs(sum(eig) - trace0) / max(1.0, abs(trace0)),
        "frobenius_error": abs(float(np.linalg.norm(a)) - frob0) / max(1.0, frob0),
    }
    return eig, stats


def spectrum(
    g: GramMatrix | np.ndarray, tol: float = PSD_TOL, params: EvalParams | None = None
) -> SpectrumReport:
    """Eigenvalues plus a PSD verdict ``min_eig >= -tol * max(1, ||M||_2)``."""
    if isinstance(g, GramMatrix):
        m, params, flags, desc = g.matrix, g.params, list(g.flags), g.description
    else:
        m, flags, desc = np.asarray(g), [], ""
    eig, stats = hermitian_eigenvalues(m)
    n = len(eig)
    min_eig = eig[0] if eig else 0.0
    norm = max([abs(x) for x in eig] + [1.0])
    return SpectrumReport(
        eigenvalues=eig,
        min_eig=min_eig,
        psd=min_eig >= -tol * norm,
        tol=tol,
        sweeps=stats["sweeps"],
        rotations=stats["rotations"],
        off_norm=stats["off_norm"],
        trace_error=stats["trace_error"],
        params=params,
        flags=flags,
        size=n,
        description=desc,
    )


# --------------------------------------------------------------------------
# Gram matrices


class PhiTable:
    """Cache of ``(P(L(g)), n - 1)`` per element, shared across parameters."""

    def __init__(self, convention: str = "standard", engine: HomflyEngine | None = None):
        self.convention = convention
        self.engine = engine or default_engine()
        self.table: dict[GroupElement, tuple] = {}

    def parts(self, g: GroupElement):
        hit = self.table.get(g)
        if hit is None:
            hit = self.table[g] = phi_parts(g, self.convention, self.engine)
        return hit

    def value(self, g: GroupElement, p: EvalParams) -> complex:
        if 2 * p.k % p.r == 0:
            raise DegenerateParameters(f"delta = 0 at r={p.r}, k={p.k}")
        poly, m = self.parts(g)
        return evaluate(poly, p) / delta_num(p) ** m


def _check_family(family: Sequence[GroupElement], max_size: int | None) -> None:
    if max_size is not None and len(family) > max_size:
        raise ValueError(f"family of {len(family)} exceeds the cap of {max_size}")
    for g in family:
        require_oriented(g)


def element_gram(
    family: Sequence[GroupElement],
    p: EvalParams,
    convention: str = "standard",
    table: PhiTable | None = None,
    reduced: bool = True,
    max_size: int | None = MAX_FAMILY,
) -> GramMatrix:
    """``M[i][j] = phi(g_i^-1 g_j)``, every entry computed on its own.

    ``reduced=False`` uses the unreduced product representatives instead,
    which is an independent route to the same matrix.
    """
    _check_family(family, max_size)
    flags = param_flags(p)
    if flags:
        warnings.warn(f"r={p.r}, k={p.k} lies outside r >= k + 2", OutOfRangeWarning, stacklevel=2)
    table = table or PhiTable(convention)
    n = len(family)
    m = np.zeros((n, n), dtype=complex)
    inv = [invert(g) for g in family]
    for i in range(n):
        for j in range(n):
            m[i, j] = table.value(multiply(inv[i], family[j], reduced=reduced), p)
    desc = f"element family of size {n}" + ("" if reduced else " (unreduced representatives)")
    return GramMatrix(m, p, desc, flags)


def tangle_gram(
    tangles: Sequence, p: EvalParams, normalization: str = "std", convention: str = "standard"
) -> GramMatrix:
    """``M[i][j] = evaluate(<t_i, t_j>)`` for tangles sharing one boundary."""
    n = len(tangles)
    m = np.zeros((n, n), dtype=complex)
    for i in range(n):
        for j in range(n):
            m[i, j] = evaluate(
                tangle_inner(tangles[i], tangles[j], normalization, convention=convention), p
            )
    return GramMatrix(m, p, f"tangle family of size {n}", param_flags(p))


def sweep(
    family: Sequence[GroupElement],
    params_list: Sequence[EvalParams],
    tol: float = PSD_TOL,
    convention: str = "standard",
    table: PhiTable | None = None,
    max_size: int | None = MAX_FAMILY,
) -> list[SpectrumReport]:
    """One spectrum report per parameter pair; degenerate pairs are flagged and skipped."""
    table = table or PhiTable(convention)
    out = []
    for p in params_list:
        try:
            g = element_gram(family, p, convention, table, max_size=max_size)
        except DegenerateParameters:
            out.append(
                SpectrumReport([], float("nan"), False, tol, 0, 0, 0.0, 0.0, p, param_flags(p) + ["delta_zero"])
            )
            continue
        out.append(spectrum(g, tol))
    return out


def random_families(
    elements: Sequence[GroupElement], count: int, max_size: int, rng: random.Random
) -> list[list[GroupElement]]:
    """``count`` families of sizes 1..max_size drawn without replacement."""
    out = []
    for _ in range(count):
        k = rng.randint(1, min(max_size, len(elements)))
        out.append(rng.sample(list(elements), k))
    return out


def all_families(elements: Sequence[GroupElement], size: int):
    return itertools.combinations(elements, size)
