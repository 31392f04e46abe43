"""Kernel selection: the compiled extension when it imports, else pure Python."""
from . import _pykernels

try:
    from . import _kernels as _compiled
except ImportError:  # extension not built
    _compiled = None

IC_EXISTS = _pykernels.IC_EXISTS
IC_ALL_POSITIONS = _pykernels.IC_ALL_POSITIONS
IC_RIGHT_EXTENSION = _pykernels.IC_RIGHT_EXTENSION

_BACKENDS = {"python": _pykernels}
if _compiled is not None:
    _BACKENDS["compiled"] = _compiled

BACKEND = "compiled" if _compiled is not None else "python"
_active = _BACKENDS[BACKEND]


def available():
    return sorted(_BACKENDS)


def get(name):
    """Return the kernel module called ``name`` ("compiled" or "python")."""
    try:
        return _BACKENDS[name]
    except KeyError:
        raise ValueError(f"kernel backend {name!r} unavailable; have {available()}") from None


def use(name):
    """Switch the process-wide kernel backend; returns the previous name."""
    global BACKEND, _active
    previous = BACKEND
    _active = get(name)
    BACKEND = name
    return previous


def sst_scan(codes, k, H):
    return _active.sst_scan(codes, k, H)


def ic_scan(codes, k, H, variant):
    return _active.ic_scan(codes, k, H, variant)
