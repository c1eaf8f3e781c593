"""内置实验模块"""

from typing import List

from ..base import Experiment
from .identities import IdentitiesExperiment
from .lemma import LemmaExperiment
from .decay import DecayExperiment
from .counterexample import CounterexampleExperiment
from .cotlar import CotlarExperiment
from .theorem_b import TheoremBExperiment
from .spectral import SpectralValidateExperiment


def builtin_experiments() -> List[Experiment]:
    """按 `all` 子命令的执行顺序返回新的实验实例"""
    return [
        IdentitiesExperiment(),
        LemmaExperiment(),
        DecayExperiment(),
        CounterexampleExperiment(),
        CotlarExperiment(),
        TheoremBExperiment(),
        SpectralValidateExperiment(),
    ]


__all__ = [
    "builtin_experiments",
    "IdentitiesExperiment",
    "LemmaExperiment",
    "DecayExperiment",
    "CounterexampleExperiment",
    "CotlarExperiment",
    "TheoremBExperiment",
    "SpectralValidateExperiment",
]
