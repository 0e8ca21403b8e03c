"""Multi-dimensional DCT/IDCT via real FFT with fused pre/postprocessing."""

from .dct1d import Algorithm, dct_1d, get_plan_1d, idct_1d
from .dct2d import (Orientation, Plan2d, dct_2d, dct_2d_rowcol, get_plan_2d, idct_2d, idct_2d_rowcol,
                    maybe_transpose_strategy)
from .errors import FormatError, PlanError, ShapeError, UsageError
from .executor import SERIAL, ExecConfig, StageCounters
from .ext import (CompositeKind, dct_3d, dct_nd_factorized, idct_3d, idct_idxst_2d, idxst_1d,
                  idxst_idct_2d)

__all__ = [
    "Algorithm", "CompositeKind", "ExecConfig", "FormatError", "Orientation", "Plan2d", "PlanError",
    "SERIAL", "ShapeError", "StageCounters", "UsageError", "dct_1d", "dct_2d", "dct_2d_rowcol",
    "dct_3d", "dct_nd_factorized", "get_plan_1d", "get_plan_2d", "idct_1d", "idct_2d",
    "idct_2d_rowcol", "idct_3d", "idct_idxst_2d", "idxst_1d", "idxst_idct_2d",
    "maybe_transpose_strategy",
]
