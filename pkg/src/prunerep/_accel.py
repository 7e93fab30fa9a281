"""Kernel backend selection.

Hot numerical kernels are written as plain loops over NumPy arrays and
compiled with numba's ``njit`` when available. Setting the environment
variable ``PRUNEREP_BACKEND`` controls the choice:

* ``auto`` (default): compile when numba imports cleanly, else fall back.
* ``numba``: require numba, raise ImportError if it is missing.
* ``numpy``: skip compilation and run the same kernels as pure Python
  over NumPy arrays. Slow, but dependency-free and bit-identical.

The flag is read once at import time; changing it requires a fresh
interpreter.
"""

import os
import warnings

_choice = os.environ.get("PRUNEREP_BACKEND", "auto").strip().lower()
if _choice not in ("auto", "numba", "numpy"):
    raise RuntimeError(
        f"PRUNEREP_BACKEND must be one of auto|numba|numpy, got {_choice!r}"
    )

if _choice == "numpy":
    NUMBA_ENABLED = False
else:
    try:
        import numba  # noqa: F401

        NUMBA_ENABLED = True
    except ImportError:
        if _choice == "numba":
            raise
        warnings.warn(
            "numba is not importable; running pure-NumPy kernel fallback",
            RuntimeWarning,
            stacklevel=1,
        )
        NUMBA_ENABLED = False

BACKEND = "numba" if NUMBA_ENABLED else "numpy"


def maybe_njit(*args, **kwargs):
    """``numba.njit`` under the numba backend, identity otherwise.

    Usable bare (``@maybe_njit``) or with options
    (``@maybe_njit(cache=True)``).
    """
    if NUMBA_ENABLED:
        import numba

        kwargs.setdefault("cache", True)
        return numba.njit(*args, **kwargs)
    if len(args) == 1 and callable(args[0]) and not kwargs:
        return args[0]

    def _identity(fn):
        return fn

    return _identity


def python_impl(fn):
    """Return the uncompiled Python implementation behind a kernel."""
    return getattr(fn, "py_func", fn)
