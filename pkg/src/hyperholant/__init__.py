"""Exact evaluation, classification and reduction of parameterised Holant problems on hypergraphs."""

from __future__ import annotations

from .evaluate import (BudgetExceeded, HolantResult, holant_auto, holant_bruteforce, holant_definition,
                       holant_fpt_t1, holant_fpt_zeros, uniformize)
from .fingerprint import UNDEFINED, SignatureType, classify, fingerprint, fingerprint_fast
from .grid import SignatureGrid, build_grid
from .hombasis import (count_aut, count_emb, count_hom, count_sub, dedekind_interpolate, hom_expansion, quotient,
                       tensor_product, zeta_coefficient)
from .hypergraph import Hypergraph
from .kernels import BACKEND
from .scalar import ExactScalar, S
from .signature import Signature, SignatureSet, geometric, hw_ge1, hw_le1, indicator, mod_p, one

__version__ = "0.1.0"

__all__ = [
    "BACKEND", "BudgetExceeded", "ExactScalar", "HolantResult", "Hypergraph", "S", "Signature", "SignatureGrid",
    "SignatureSet", "SignatureType", "UNDEFINED", "build_grid", "classify", "count_aut", "count_emb", "count_hom",
    "count_sub", "dedekind_interpolate", "fingerprint", "fingerprint_fast", "geometric", "hom_expansion",
    "holant_auto", "holant_bruteforce", "holant_definition", "holant_fpt_t1", "holant_fpt_zeros", "hw_ge1",
    "hw_le1", "indicator", "mod_p", "one", "quotient", "tensor_product", "uniformize", "zeta_coefficient",
]
