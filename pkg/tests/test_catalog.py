import numpy as np
import pytest
from numpy.polynomial import Polynomial

from walkzeta import catalog as cat
from walkzeta.errors import DimensionMismatch

ENTRIES = cat.catalog()


def test_elementary_symmetric():
    xs = [2.0, 3.0, 5.0]
    assert cat.elementary_symmetric(0, xs) == 1
    assert cat.elementary_symmetric(1, xs) == 10
    assert cat.elementary_symmetric(2, xs) == 31
    assert cat.elementary_symmetric(3, xs) == 30
    assert abs(cat.e_cos(2, 2, [0.0, np.pi]) + 1) < 1e-15
    with pytest.raises(DimensionMismatch):
        cat.e_cos(1, 3, [0.0, 0.0])


def test_ids_unique():
    ids = [e.id for e in ENTRIES]
    assert len(ids) == len(set(ids))


def test_grover_f_2d_point():
    e = cat.get_entry("grover-2d-f")
    assert abs(cat.catalog_f(e, [0, 0], 0.3) - 0.91 * 0.49) < 1e-15


def test_oqrw_at_zero():
    e = cat.get_entry("oqrw-1d")
    u = 0.37
    ref = 1 - 8 / 3 * u + 3 * u**2 - 16 / 9 * u**3 + 4 / 9 * u**4
    assert abs(cat.catalog_f(e, [0], u) - ref) < 1e-15


def test_ps_grover_f_d3_at_zero():
    e = cat.get_entry("ps-grover-f-d3")
    u = 0.21
    assert np.abs(e.prefactor.coef - (Polynomial([1, 0, -1]) ** 2).coef).max() == 0
    assert abs(e.f_poly(np.zeros(3), u) - (1 - 6 * u + 5 * u**2)) < 1e-15


def test_catalog_f_dimension_check():
    with pytest.raises(DimensionMismatch):
        cat.catalog_f(cat.get_entry("grover-2d-m"), [0.1], 0.2)


def test_qw_m_fifty_samples():
    assert cat.catalog_verify(cat.get_entry("qw-1d-m"), samples=50).max_err < 1e-10


@pytest.mark.parametrize("entry", ENTRIES, ids=lambda e: e.id)
def test_entry_matches_determinant(entry):
    rep = cat.catalog_verify(entry)
    if entry.id == "ps-grover-3d-m":
        assert rep.matching_variants
    else:
        assert rep.passed, rep.variant_errors


def test_fourier_m_printed_variant_is_reported():
    rep = cat.catalog_verify(cat.get_entry("fourier-2d-m"))
    assert rep.primary == "sign_corrected" and rep.passed
    assert "printed" not in rep.matching_variants
    assert rep.variant_errors["printed"] > 1e-3


def test_ps_grover_3d_m_variant_report():
    rep = cat.catalog_verify(cat.get_entry("ps-grover-3d-m"))
    assert rep.primary == "printed"
    assert rep.matching_variants == ["e1_3_substitution"]
    assert not rep.passed


@pytest.mark.parametrize("entry", [e for e in ENTRIES if e.prefactor.degree() > 0], ids=lambda e: e.id)
def test_localization_prefactor_divides(entry):
    assert cat.localization_remainder(entry) < 1e-9


def test_report_dict():
    data = cat.catalog_verify(cat.get_entry("crw-1d-f"), samples=5).to_dict()
    assert set(data) == {"entry", "primary", "max_err", "variant_errors", "matching_variants", "passed"}
