"""核心框架模块 - 延迟导入以避免循环依赖"""

__all__ = [
    "LabConfig",
    "QuadratureConfig",
    "LabException",
    "DomainError",
    "ConvergenceError",
    "ConfigException",
    "CheckFailure",
    "FormatError",
    "Verdict",
    "RunManifest",
]


def __getattr__(name):
    if name in ("LabConfig", "QuadratureConfig"):
        from . import config
        return getattr(config, name)
    if name in ("LabException", "DomainError", "ConvergenceError", "ConfigException",
                "CheckFailure", "FormatError"):
        from . import exceptions
        return getattr(exceptions, name)
    if name in ("Verdict", "RunManifest"):
        from . import manifest
        return getattr(manifest, name)
    raise AttributeError(f"module {__name__!r} has no attribute {name!r}")


def __dir__():
    return __all__
