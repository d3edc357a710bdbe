import math
from fractions import Fraction

import numpy as np
import pytest
from scipy.linalg import expm as scipy_expm

from lie_split.matrices import (MPKit, MatrixModule, MatrixSeriesAlgebra,
                                NumpyKit, frechet_pair, kit_for,
                                load_matrix_csv, psi_standard, psi_symmetric,
                                random_matrix, save_matrix_csv,
                                splitting_error)

KITS = [NumpyKit(), MPKit()]


def test_kit_for_selects_backend():
    assert kit_for("double").name == NumpyKit().name
    assert kit_for("extended").name == MPKit().name
    with pytest.raises(ValueError):
        kit_for("quad")


@pytest.mark.parametrize("kit", KITS, ids=lambda k: k.name)
def test_kit_linear_algebra_contract(kit):
    a = kit.matrix([[1.0, 2.0], [3.0, 4.0]])
    b = kit.matrix([[0.0, 1.0], [1.0, 0.0]])
    assert kit.dim(a) == 2
    s = kit.add(a, b)
    d = kit.sub(s, b)
    assert kit.is_zero(kit.sub(d, a))
    half = kit.scale(Fraction(1, 2), kit.scale(2, a))
    assert kit.is_zero(kit.sub(half, a))
    prod = kit.matmul(a, kit.eye(2))
    assert kit.is_zero(kit.sub(prod, a))
    br = kit.bracket(a, b)
    manual = kit.sub(kit.matmul(a, b), kit.matmul(b, a))
    assert kit.is_zero(kit.sub(br, manual))


def as_numpy(kit, a):
    if isinstance(kit, MPKit):
        n = kit.dim(a)
        return np.array([[float(a[i, j]) for j in range(n)] for i in range(n)])
    return np.asarray(a)


@pytest.mark.parametrize("kit", KITS, ids=lambda k: k.name)
def test_kit_expm_matches_scipy(kit):
    rng = np.random.default_rng(3)
    m = rng.uniform(-0.5, 0.5, (4, 4))
    a = kit.from_numpy(m) if isinstance(kit, MPKit) else m
    e = as_numpy(kit, kit.expm(a))
    assert np.linalg.norm(e - scipy_expm(m)) < 1e-12


@pytest.mark.parametrize("kit", KITS, ids=lambda k: k.name)
def test_kit_norms(kit):
    a = kit.matrix([[3.0, 0.0], [0.0, 4.0]])
    assert abs(float(kit.norm2(a)) - 4.0) < 1e-12
    assert abs(float(kit.frobenius(a)) - 5.0) < 1e-12


def test_norm2_of_overflowed_matrix_is_inf():
    kit = NumpyKit()
    a = np.array([[np.inf, 0.0], [0.0, 1.0]])
    assert kit.norm2(a) == math.inf


def test_random_matrix_is_seeded_and_scaled():
    a = random_matrix(20, 0.5, 0)
    b = random_matrix(20, 0.5, 0)
    c = random_matrix(20, 0.5, 1)
    assert np.array_equal(a, b)
    assert not np.array_equal(a, c)
    assert abs(np.linalg.norm(a, 2) - 0.5) < 1e-12


def test_frechet_pair_identities():
    kit = NumpyKit()
    x, y = frechet_pair(kit, 0.2)
    minus_eye = -np.eye(2)
    assert np.linalg.norm(kit.expm(x) - minus_eye) < 1e-12
    assert np.linalg.norm(kit.expm(y) - np.eye(2)) < 1e-10
    full = kit.expm(kit.add(x, y))
    assert np.linalg.norm(full - minus_eye) < 1e-9
    prod = kit.matmul(kit.expm(x), kit.expm(y))
    assert np.linalg.norm(full - prod) / np.linalg.norm(full) < 1e-9


def test_frechet_pair_norm_values():
    kit = NumpyKit()
    x, y = frechet_pair(kit, 0.2)
    assert abs(kit.frobenius(x) - 15.7205) < 1e-3
    assert abs(kit.frobenius(y) - 12.8379) < 1e-3
    assert abs(kit.norm2(x) - 5 * math.pi) < 1e-10


def test_frechet_pair_rejects_zero_alpha():
    with pytest.raises(ValueError):
        frechet_pair(NumpyKit(), 0)


def test_psi_symmetric_even_n_equals_preceding_odd():
    kit = NumpyKit()
    x = random_matrix(5, 0.4, 21)
    y = random_matrix(5, 0.4, 22)
    p7 = psi_symmetric(kit, x, y, 1.0, 7)
    p8 = psi_symmetric(kit, x, y, 1.0, 8)
    assert np.array_equal(p7, p8)


def test_psi_validation():
    kit = NumpyKit()
    x = random_matrix(3, 0.3, 5)
    with pytest.raises(ValueError):
        psi_symmetric(kit, x, x, 1.0, 1)
    with pytest.raises(ValueError):
        psi_standard(kit, x, random_matrix(4, 0.3, 6), 1.0, 5)


def test_psi_accuracy_improves_with_degree():
    kit = NumpyKit()
    x = random_matrix(6, 0.4, 31)
    y = random_matrix(6, 0.4, 32)
    errs = [splitting_error(kit, x, y, 1.0, psi_symmetric(kit, x, y, 1.0, n))
            for n in (3, 5, 9)]
    assert errs[0] > errs[1] > errs[2]


def test_psi_on_commuting_pair_sits_at_precision_floor():
    kit = NumpyKit()
    x = np.diag([0.3, -0.2, 0.1, 0.4])
    y = np.diag([0.1, 0.5, -0.3, 0.2])
    for n in (2, 5, 9):
        assert splitting_error(kit, x, y, 1.0, psi_symmetric(kit, x, y, 1.0, n)) < 1e-14
        assert splitting_error(kit, x, y, 1.0, psi_standard(kit, x, y, 1.0, n)) < 1e-14


def test_psi_precomputed_terms_match_direct_scaling():
    kit = NumpyKit()
    x = random_matrix(4, 0.6, 41)
    y = random_matrix(4, 0.6, 42)
    from lie_split.engine import symmetric_terms
    terms = symmetric_terms(MatrixModule(kit, 4), x, y, 7)
    lam = 0.3
    via_terms = psi_symmetric(kit, x, y, lam, 7, terms=terms)
    direct = psi_symmetric(kit, x, y, lam, 7)
    assert np.linalg.norm(via_terms - direct) < 1e-13


def test_splitting_error_norm_choices():
    kit = NumpyKit()
    x = random_matrix(3, 0.2, 51)
    y = random_matrix(3, 0.2, 52)
    approx = psi_symmetric(kit, x, y, 1.0, 5)
    spec = splitting_error(kit, x, y, 1.0, approx)
    fro = splitting_error(kit, x, y, 1.0, approx, norm="frobenius")
    assert spec <= fro + 1e-18
    with pytest.raises(ValueError):
        splitting_error(kit, x, y, 1.0, approx, norm="nuclear")


def test_matrix_csv_round_trip(tmp_path):
    a = random_matrix(5, 1.3, 61)
    path = tmp_path / "m.csv"
    save_matrix_csv(path, a)
    back = load_matrix_csv(path)
    assert np.array_equal(a, back)


def test_matrix_csv_round_trip_extended(tmp_path):
    kit = MPKit()
    a = kit.from_numpy(random_matrix(3, 0.7, 62))
    path = tmp_path / "mp.csv"
    save_matrix_csv(path, a)
    back = load_matrix_csv(path)
    assert np.linalg.norm(back - as_numpy(kit, a)) < 1e-15


def test_matrix_module_and_series_algebra_contracts():
    kit = NumpyKit()
    mod = MatrixModule(kit, 3)
    alg = MatrixSeriesAlgebra(kit, 3)
    z = mod.zero()
    assert mod.is_zero(z)
    assert np.array_equal(alg.unit(), np.eye(3))
    a = random_matrix(3, 0.5, 71)
    assert np.array_equal(mod.add(a, z), a)
    assert np.array_equal(alg.mul(alg.unit(), a), a)
