"""
Constructions - 函数构造族

AND∘OR、k-SUM 族、BKK、Deutsch-Jozsa、Forrelation、指针追踪、COR/ANA、
作弊表与 2-Adaptive-F。导入本包即注册全部生成器。
"""

from .families import (
    make_and_or,
    make_block_ksum,
    make_bkk,
    make_dj,
    make_ksum,
    ksum_holds,
)
from .forrelation import forrelation_value, fwht, make_forrelation
from .pointer import make_pointer, encode_pointers
from .cor import make_ana, make_cor
from .certificates import Bicertificate, Certificate
from .cheatsheet import (
    CheatSheetLayout,
    build_block_sensitivity_witness,
    make_canonical_cheatsheet,
    make_cheatsheet,
)
from .two_adaptive import (
    TwoAdaptiveLayout,
    build_two_adaptive_instance,
    make_two_adaptive,
)

__all__ = [
    "make_and_or",
    "make_block_ksum",
    "make_bkk",
    "make_dj",
    "make_ksum",
    "ksum_holds",
    "forrelation_value",
    "fwht",
    "make_forrelation",
    "make_pointer",
    "encode_pointers",
    "make_ana",
    "make_cor",
    "Bicertificate",
    "Certificate",
    "CheatSheetLayout",
    "build_block_sensitivity_witness",
    "make_canonical_cheatsheet",
    "make_cheatsheet",
    "TwoAdaptiveLayout",
    "build_two_adaptive_instance",
    "make_two_adaptive",
]
