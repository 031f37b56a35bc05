"""Backend selection for the hot loops.

The compiled extension is used when it imports and ``GENUSLAB_PURE`` is
unset; otherwise the numpy fallback runs. ``BACKEND`` names the choice.
"""

import os

from . import _fallback

if os.environ.get("GENUSLAB_PURE", "") not in ("", "0"):
    _impl = _fallback
    BACKEND = "python"
else:
    try:
        from . import _kernels as _impl  # type: ignore[attr-defined]

        BACKEND = "cython"
    except ImportError:
        _impl = _fallback
        BACKEND = "python"

fill_represented = _impl.fill_represented
prime_forms = _impl.prime_forms
residue_sieve_count = _impl.residue_sieve_count

__all__ = ["BACKEND", "fill_represented", "prime_forms", "residue_sieve_count"]
