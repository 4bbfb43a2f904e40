import pathlib

import pytest

from arithlimit.config import load_config
from arithlimit.limitsets import enumerate_elements

CONFIG_DIR = pathlib.Path(__file__).resolve().parents[1] / "src" / "arithlimit" / "configs"
CONFIG_NAMES = ["rational_diagonal", "generic_sqrt2", "mixed", "full_boundary", "quaternion"]

_elements = {}


def cfg_path(name):
    return CONFIG_DIR / f"{name}.cfg"


def elements(name, L):
    """Session-wide cache of enumerated element sets."""
    key = (name, L)
    if key not in _elements:
        bigger = [k for k in _elements if k[0] == name and k[1] > L]
        if bigger:
            _elements[key] = _elements[max(bigger)].restrict(L)
        else:
            _elements[key] = enumerate_elements(load_config(cfg_path(name)).group, L)
    return _elements[key]


@pytest.fixture(scope="session")
def configs():
    return {name: load_config(cfg_path(name)) for name in CONFIG_NAMES}
