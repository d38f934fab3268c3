"""Backend selection for the numeric kernels.

Imports the compiled extension when it has been built
(``python setup.py build_ext --inplace``), otherwise falls back to the
pure-NumPy implementation.  Set ``NHLAT_PURE_PYTHON=1`` to force the
fallback; ``nhlat.kernels.BACKEND`` reports which one is active.
"""

import os

if os.environ.get("NHLAT_PURE_PYTHON"):
    from . import _kernels_py as _impl
else:
    try:
        from . import _kernels_cy as _impl  # type: ignore[attr-defined]
    except ImportError:
        from . import _kernels_py as _impl

BACKEND = _impl.BACKEND
lu_det = _impl.lu_det
theta_phi = _impl.theta_phi
charpoly_dets = _impl.charpoly_dets
dense_charpoly_dets = _impl.dense_charpoly_dets
sylvester_resultant = _impl.sylvester_resultant
batch_disc = _impl.batch_disc
