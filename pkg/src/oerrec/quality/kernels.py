"""Split-kernel selection: compiled extension when built, pure Python otherwise.

Set OERREC_PURE_PYTHON=1 to force the fallback (used by the benchmark and the
kernel-parity tests). Both kernels return bit-identical results.
"""

import os

from oerrec.quality import _split_py

try:
    from oerrec.quality import _split_fast
except ImportError:  # extension not built
    _split_fast = None

if os.environ.get("OERREC_PURE_PYTHON"):
    ACTIVE_KERNEL = "python"
else:
    ACTIVE_KERNEL = "cython" if _split_fast is not None else "python"


def available_kernels() -> list[str]:
    names = ["python"]
    if _split_fast is not None:
        names.insert(0, "cython")
    return names


def get_kernel(name: str | None = None):
    """Resolve a best_split callable by name; None picks the active default."""
    if name is None:
        name = ACTIVE_KERNEL
    if name == "python":
        return _split_py.best_split
    if name == "cython":
        if _split_fast is None:
            raise RuntimeError("compiled kernel requested but the extension is not built")
        return _split_fast.best_split
    raise ValueError(f"unknown kernel {name!r}")


best_split = get_kernel()
