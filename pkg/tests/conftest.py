"""Pytest configuration and fixtures."""

import pytest

from spectral_workbench.audit import configure_audit_logging
from spectral_workbench.config import Config, Limits
from spectral_workbench.rings import SubringPair, make_field, make_product, make_zn
from spectral_workbench.topology import antichain_poset, chain_poset, lambda_poset, v_poset


@pytest.fixture(autouse=True)
def isolated_audit_log(tmp_path, monkeypatch):
    """Send the audit log to a per-test file and hide any user config."""
    monkeypatch.delenv("SPECWB_CONFIG", raising=False)
    monkeypatch.delenv("SPECWB_REPORT", raising=False)
    monkeypatch.chdir(tmp_path)
    monkeypatch.setenv("HOME", str(tmp_path))
    log_file = tmp_path / "audit.log"
    return configure_audit_logging(enabled=True, log_file=log_file)


@pytest.fixture
def audit_log_file(tmp_path):
    """Path of the per-test audit log."""
    return tmp_path / "audit.log"


@pytest.fixture
def z4():
    return make_zn(4)


@pytest.fixture
def z6():
    return make_zn(6)


@pytest.fixture
def f4():
    return make_field(4)


@pytest.fixture
def z2xz2():
    """Z_2 x Z_2; (i, j) is element 2i + j, so 3 is the identity."""
    return make_product(make_zn(2), make_zn(2))


@pytest.fixture
def diagonal(z2xz2):
    """The diagonal {(0,0), (1,1)} inside Z_2 x Z_2, the standard non-dense pair."""
    return SubringPair(z2xz2, 0b1001)


@pytest.fixture
def whole_z6(z6):
    return SubringPair(z6, z6.full_mask)


@pytest.fixture
def v():
    """One point below two incomparable maxima."""
    return v_poset()


@pytest.fixture
def lam():
    """Two incomparable points below one maximum."""
    return lambda_poset()


@pytest.fixture
def chain3():
    return chain_poset(3)


@pytest.fixture
def antichain2():
    return antichain_poset(2)


@pytest.fixture
def small_limits():
    """Caps small enough for quick end-to-end runs."""
    return Limits(max_ring=8, max_poset=3, max_hom_ring=8, map_poset_cap=3)


@pytest.fixture
def default_config():
    """Defaults with audit logging on, as the CLI would load them."""
    return Config.load()


@pytest.fixture
def ring_file(tmp_path):
    """Write a ring in the text format and return its path."""
    from spectral_workbench.formats import write_ring

    def write(ring, name="ring.txt"):
        return write_ring(ring, tmp_path / name)

    return write
