"""Beurling 核与乘子"""

from .beurling import KernelSpec, eval_kernel, eval_multiplier, inverse_multiplier, circle_mean

__all__ = ["KernelSpec", "eval_kernel", "eval_multiplier", "inverse_multiplier", "circle_mean"]
