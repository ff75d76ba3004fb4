"""Exact arithmetic in B_n/Gamma_k(P_n) for k = 2, 3 and embeddings of finite groups into it."""
from __future__ import annotations

__version__ = "0.1.0"
