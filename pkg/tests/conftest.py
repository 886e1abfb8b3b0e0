import sys

import pytest

from synchro.runtime import hooks


@pytest.fixture(autouse=True)
def _no_leftover_hooks():
    yield
    hooks.uninstall_hook()


@pytest.fixture
def fast_switch():
    """Shrink the interpreter switch interval to provoke interleavings."""
    old = sys.getswitchinterval()
    sys.setswitchinterval(1e-4)
    yield
    sys.setswitchinterval(old)
