"""Select the compiled kernels when the extension is built, else the fallback."""

from . import _kernels_py

try:
    from . import _kernels as _compiled
except ImportError:  # extension not built
    _compiled = None

_IMPLS = {"python": _kernels_py}
if _compiled is not None:
    _IMPLS["compiled"] = _compiled

kernels = _compiled if _compiled is not None else _kernels_py
BACKEND = "compiled" if _compiled is not None else "python"


def available_backends():
    return sorted(_IMPLS)


def use_backend(name):
    """Switch the active kernel implementation (``"compiled"`` or ``"python"``)."""
    global kernels, BACKEND
    if name not in _IMPLS:
        raise ValueError(f"backend {name!r} unavailable; have {available_backends()}")
    kernels = _IMPLS[name]
    BACKEND = name
