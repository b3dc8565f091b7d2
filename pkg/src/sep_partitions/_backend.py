"""Picks the compiled tally kernel when it was built, else the Python one.

Set ``SEP_PARTITIONS_BACKEND=python`` to force the fallback.
"""

import os

from . import _tally_py

BACKEND_ENV = "SEP_PARTITIONS_BACKEND"

_compiled = None
if os.environ.get(BACKEND_ENV, "").lower() != "python":
    try:
        from . import _tally as _compiled
    except ImportError:
        _compiled = None

if _compiled is not None:
    tally = _compiled.tally
    BACKEND = "compiled"
else:
    tally = _tally_py.tally
    BACKEND = "python"

python_tally = _tally_py.tally
compiled_tally = _compiled.tally if _compiled is not None else None
