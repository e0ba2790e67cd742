"""Translate pure GK theories (and logics embedded in GK) to disjunctive logic programs."""

from .errors import GK2DLPError
from .gk import GKModelDescriptor, GKTheory, gk_models_oracle
from .translator import decode, gk_models, tr_lp

__version__ = "0.1.0"

__all__ = [
    "GK2DLPError",
    "GKTheory",
    "GKModelDescriptor",
    "gk_models_oracle",
    "tr_lp",
    "decode",
    "gk_models",
]
