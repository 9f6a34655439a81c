"""Backend selection for the separation kernel.

The compiled extension is preferred when it imported cleanly and the
structure fits in one machine word (63 vertices); otherwise the pure-Python
twin runs.  Set ``BAYHG_PURE=1`` to force the fallback.
"""

from __future__ import annotations

import os

from . import _seppy

moral_separates_py = _seppy.moral_separates

try:
    if os.environ.get("BAYHG_PURE") == "1":
        raise ImportError("pure backend forced via BAYHG_PURE")
    from . import _sepcore

    moral_separates_compiled = _sepcore.moral_separates
except ImportError:
    moral_separates_compiled = None


def backend_name() -> str:
    return "compiled" if moral_separates_compiled is not None else "python"


def moral_separates(n, tails, heads, a, b, c) -> bool:
    """Dispatch one moral-separation query to the active backend.

    ``tails``/``heads`` come from a structure's cached mask form: an
    ``array('Q')`` when the vertex count fits a machine word, else plain
    lists of Python integers.
    """
    if moral_separates_compiled is not None and n <= 63:
        return moral_separates_compiled(n, tails, heads, a, b, c)
    return moral_separates_py(n, tails, heads, a, b, c)
