"""Kernel backend selection: compiled extension if built, pure Python otherwise.

Set QRR_PURE=1 in the environment to force the fallback.  `set_backend` exists
so the benchmark can compare both in one process; series code always calls
through this module's attributes.
"""

import os

from . import _kernel_py

try:
    from . import _ckernel
except ImportError:  # extension not built
    _ckernel = None


def available_backends():
    names = ["pure"]
    if _ckernel is not None:
        names.insert(0, "compiled")
    return names


def current_backend():
    return BACKEND


def set_backend(name):
    global conv_real, conv_complex, BACKEND
    if name == "pure":
        impl = _kernel_py
    elif name == "compiled":
        if _ckernel is None:
            raise RuntimeError("compiled kernel is not available")
        impl = _ckernel
    else:
        raise ValueError("unknown backend %r" % name)
    conv_real = impl.conv_real
    conv_complex = impl.conv_complex
    BACKEND = name


set_backend(
    "pure"
    if os.environ.get("QRR_PURE") or _ckernel is None
    else "compiled"
)
