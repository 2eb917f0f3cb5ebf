import random
import warnings

import numpy as np
import pytest

from thompson_homfly.forest import IDENTITY, X0
from thompson_homfly.homfly import EvalParams, phi
from thompson_homfly.gram import (
    MAX_FAMILY,
    NoConvergence,
    NotHermitian,
    OutOfRangeWarning,
    PhiTable,
    element_gram,
    hermitian_eigenvalues,
    random_families,
    spectrum,
    sweep,
    tangle_gram,
)
from thompson_homfly.signs import NotOriented
from thompson_homfly.tangles import random_tangle_family


def random_hermitian(n, rng):
    x = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
    return (x + x.conj().T) / 2


@pytest.mark.parametrize("n", [1, 2, 5, 12, 30])
def test_jacobi_matches_numpy(n):
    rng = np.random.default_rng(n)
    m = random_hermitian(n, rng)
    eig, stats = hermitian_eigenvalues(m)
    assert np.allclose(eig, np.linalg.eigvalsh(m), atol=1e-10)
    assert stats["trace_error"] < 1e-12


def test_jacobi_known_spectrum():
    rng = np.random.default_rng(0)
    q, _ = np.linalg.qr(rng.normal(size=(8, 8)) + 1j * rng.normal(size=(8, 8)))
    d = np.array([-2.0, -0.5, 0, 0, 1e-9, 1, 3, 7])
    eig, _ = hermitian_eigenvalues(q @ np.diag(d) @ q.conj().T)
    assert np.allclose(eig, d, atol=1e-12)


def test_jacobi_diagonal_and_empty():
    eig, stats = hermitian_eigenvalues(np.diag([3.0, 1.0, 2.0]))
    assert eig == [1.0, 2.0, 3.0] and stats["sweeps"] == 0
    assert hermitian_eigenvalues(np.zeros((0, 0)))[0] == []


def test_not_hermitian_rejected():
    with pytest.raises(NotHermitian):
        hermitian_eigenvalues(np.array([[1, 2], [0, 1]]))
    with pytest.raises(ValueError):
        hermitian_eigenvalues(np.ones((2, 3)))


def test_no_convergence_reported():
    rng = np.random.default_rng(3)
    with pytest.raises(NoConvergence):
        hermitian_eigenvalues(random_hermitian(10, rng), tol=1e-30, max_sweeps=1)


def test_spectrum_verdict():
    assert spectrum(np.eye(3)).psd
    assert not spectrum(np.diag([1.0, -1e-3])).psd
    assert spectrum(np.diag([1.0, -1e-12])).psd


def test_gram_diagonal_is_one(oriented6):
    p = EvalParams(5, 1)
    g = element_gram(oriented6[:10], p)
    assert np.allclose(np.diag(g.matrix), 1.0, atol=1e-12)
    assert g.hermitian_defect() < 1e-12


def test_unreduced_route_agrees(oriented6):
    rng = random.Random(4)
    fam = rng.sample(oriented6, 8)
    table = PhiTable()
    for p in (EvalParams(4, 1), EvalParams(7, 2)):
        m1 = element_gram(fam, p, table=table).matrix
        m2 = element_gram(fam, p, table=table, reduced=False).matrix
        assert np.max(np.abs(m1 - m2)) < 1e-9


def test_phi_table_matches_phi(oriented6):
    table = PhiTable()
    p = EvalParams(6, 2)
    for g in oriented6[:15]:
        assert abs(table.value(g, p) - phi(g, p)) < 1e-12


def test_family_checks(oriented6):
    p = EvalParams(5, 1)
    with pytest.raises(NotOriented):
        element_gram([IDENTITY, X0], p)
    with pytest.raises(ValueError):
        element_gram(oriented6[: MAX_FAMILY + 1], p)


def test_out_of_range_warns_and_flags(oriented6):
    with pytest.warns(OutOfRangeWarning):
        g = element_gram(oriented6[:4], EvalParams(3, 2))
    assert "out_of_stated_range" in g.flags
    with warnings.catch_warnings():
        warnings.simplefilter("error")
        element_gram(oriented6[:4], EvalParams(5, 1))


def test_sweep_flags_degenerate(oriented6):
    reps = sweep(oriented6[:5], [EvalParams(5, 1), EvalParams(4, 2)])
    assert reps[0].psd
    assert "delta_zero" in reps[1].flags


def test_tangle_gram_psd():
    rng = random.Random(8)
    fam = random_tangle_family(rng, "+++---", size=4, max_crossings=4)
    rep = spectrum(tangle_gram(fam, EvalParams(5, 1)))
    assert rep.psd and rep.size == 4


def test_random_families_sizes(oriented6):
    fams = random_families(oriented6, 20, 8, random.Random(0))
    assert all(1 <= len(f) <= 8 and len(set(f)) == len(f) for f in fams)
