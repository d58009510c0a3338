"""Backend selection for the bivariate polynomial kernel.

Prefers the compiled ``_fastpoly`` extension and falls back to the pure
``_pypoly`` module.  ``BACKEND`` records which one is active; both expose
the identical functions, so everything above this layer is backend-agnostic.
Set ``BIRZETA_FORCE_PYPOLY=1`` to force the fallback (used by the benchmark
and by tests that compare the two).
"""

import os

from . import _pypoly

if os.environ.get("BIRZETA_FORCE_PYPOLY") == "1":
    _impl = _pypoly
else:
    try:
        from . import _fastpoly as _impl  # type: ignore[attr-defined]
    except ImportError:
        _impl = _pypoly

BACKEND = _impl.BACKEND

padd = _impl.padd
pneg = _impl.pneg
pscale = _impl.pscale
pshift = _impl.pshift
pmul = _impl.pmul
pdivmod_binomial = _impl.pdivmod_binomial
