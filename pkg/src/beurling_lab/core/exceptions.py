"""异常体系"""

from typing import Optional


class LabException(Exception):
    """beurling_lab 基础异常类"""
    pass


class DomainError(LabException, ValueError):
    """参数超出运算的定义域（例如在核的奇点处求值）"""
    pass


class ConvergenceError(LabException):
    """自适应求积在最大深度内未达到容差

    Attributes:
        estimate: 当前最好的近似值
        error_bound: 对应的误差估计
    """

    def __init__(self, message: str, estimate: complex = 0j, error_bound: Optional[float] = None):
        super().__init__(message)
        self.estimate = estimate
        self.error_bound = error_bound


class ConfigException(LabException):
    """配置相关异常（CLI 退出码 2）"""
    pass


class CheckFailure(LabException):
    """实验校验未通过（CLI 退出码 1）"""
    pass


class FormatError(LabException):
    """二进制网格文件格式错误"""
    pass
