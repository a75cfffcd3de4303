"""Two-component spinor modes and their angular-momentum algebra."""

from fractions import Fraction

import numpy as np
import pytest

from vortexbeams import (
    PauliBeamSpec,
    ValidationError,
    angular_momentum_closed_form,
    angular_momentum_numeric,
    make_general,
    make_jz_eigenstate,
    make_spin_eigenstate,
    quadrature_norm,
)


def spec(n, n_prime, alpha, kin):
    return PauliBeamSpec(n=n, n_prime=n_prime, alpha=alpha, kinematics=kin)


# closed-form expectation algebra -------------------------------------------


def test_closed_form_reference_case(kin74):
    rep = angular_momentum_closed_form(spec(1, 2, 1.0, kin74))
    assert rep.lz == pytest.approx(1.5)
    assert rep.sz == pytest.approx(0.0)
    assert rep.jz == pytest.approx(1.5)
    assert rep.jz_eigen == Fraction(3, 2)
    assert rep.lz_eigen is None and rep.sz_eigen is None


def test_closed_form_second_case(kin74):
    rep = angular_momentum_closed_form(spec(0, 1, 2.0, kin74))
    assert rep.lz == pytest.approx(0.8)
    assert rep.sz == pytest.approx(-0.3)
    assert rep.jz == pytest.approx(0.5)
    assert rep.jz_eigen == Fraction(1, 2)


def test_closed_form_is_exact_rational(kin74):
    # weights are 1/(1+a^2) and a^2/(1+a^2); alpha=3 gives exact tenths
    rep = angular_momentum_closed_form(spec(2, 3, 3.0, kin74))
    assert rep.lz == pytest.approx(2 * 0.1 + 3 * 0.9, rel=1e-15)
    assert rep.jz == pytest.approx(rep.lz + rep.sz, rel=1e-15)


def test_lz_eigen_flag_diagonal_cases(kin74):
    assert angular_momentum_closed_form(spec(1, 1, 1.0, kin74)).lz_eigen == Fraction(1)
    assert angular_momentum_closed_form(spec(1, 5, 0.0, kin74)).lz_eigen == Fraction(1)
    assert angular_momentum_closed_form(spec(1, 2, 1.0, kin74)).lz_eigen is None


def test_jz_eigen_iff_ladder_neighbors(kin74):
    for alpha in (0.25, 1.0, 4.0):
        assert angular_momentum_closed_form(spec(3, 4, alpha, kin74)).jz_eigen == Fraction(7, 2)
    assert angular_momentum_closed_form(spec(3, 5, 1.0, kin74)).jz_eigen is None


def test_spec_validation(kin74):
    with pytest.raises(ValidationError):
        PauliBeamSpec(n=1, n_prime=2, alpha=-0.5, kinematics=kin74)
    with pytest.raises(ValidationError):
        PauliBeamSpec(n=1.5, n_prime=2, alpha=1.0, kinematics=kin74)


# grid constructors ----------------------------------------------------------


def test_spin_eigenstate_is_one_sided(kin30, grid256):
    up = make_spin_eigenstate(2, +1, kin30, grid256)
    assert quadrature_norm(up) == pytest.approx(1.0, rel=1e-12)
    assert np.all(up.down.values == 0)
    down = make_spin_eigenstate(2, "down", kin30, grid256)
    assert np.all(down.up.values == 0)


def test_jz_eigenstate_weights(kin30, grid256):
    s = make_jz_eigenstate(1, +1, kinematics=kin30, grid=grid256)
    assert quadrature_norm(s) == pytest.approx(1.0, rel=1e-12)
    assert quadrature_norm(s.up) == pytest.approx(0.5, rel=1e-10)
    assert quadrature_norm(s.down) == pytest.approx(0.5, rel=1e-10)


def test_make_general_weights_follow_alpha(kin30, grid256):
    s = make_general(spec(0, 3, 2.0, kin30), grid256)
    assert quadrature_norm(s.up) == pytest.approx(0.2, rel=1e-9)
    assert quadrature_norm(s.down) == pytest.approx(0.8, rel=1e-9)


# quadrature vs closed form --------------------------------------------------


def test_numeric_matches_closed_form(kin30, grid256):
    for n, n_prime, alpha in [(1, 2, 1.0), (0, 1, 2.0), (-2, 3, 0.7)]:
        b = spec(n, n_prime, alpha, kin30)
        closed = angular_momentum_closed_form(b)
        num = angular_momentum_numeric(make_general(b, grid256))
        assert num.lz == pytest.approx(closed.lz, abs=5e-4)
        assert num.sz == pytest.approx(closed.sz, abs=1e-12)
        assert num.jz == pytest.approx(closed.jz, abs=5e-4)


def test_numeric_jz_eigen_flag(kin30, grid256):
    num = angular_momentum_numeric(make_general(spec(1, 2, 0.8, kin30), grid256))
    assert num.jz_eigen == Fraction(3, 2)
    num2 = angular_momentum_numeric(make_general(spec(1, 3, 0.8, kin30), grid256))
    assert num2.jz_eigen is None


def test_report_json_shape(kin74):
    d = angular_momentum_closed_form(spec(1, 2, 1.0, kin74)).to_json_dict()
    assert d["schema_version"] == 1
    assert d["Jz_eigen"] == {"fraction": "3/2", "value": 1.5}
    assert d["Lz_eigen"] is None
    assert set(d) >= {"Lz", "Sz", "Jz", "method"}
