"""Selects the compiled transport kernel when built, else the pure-Python one."""

import os

if os.environ.get("PAINLEVE_LAB_PURE_PYTHON") == "1":
    from ._transport_py import BACKEND, transport
else:
    try:
        from ._transport import BACKEND, transport
    except ImportError:
        from ._transport_py import BACKEND, transport

__all__ = ["BACKEND", "transport"]
