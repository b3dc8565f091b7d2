import os
import sys

import pytest

sys.path.insert(0, os.path.dirname(__file__))

from sep_partitions import _backend  # noqa: E402

BACKENDS = [("python", _backend.python_tally)]
if _backend.compiled_tally is not None:
    BACKENDS.append(("compiled", _backend.compiled_tally))


@pytest.fixture(params=[name for name, _ in BACKENDS])
def tally_impl(request):
    return dict(BACKENDS)[request.param]
