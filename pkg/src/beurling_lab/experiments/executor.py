"""参数点的并行求值

线程池 + asyncio 的 run_in_executor；每个任务记录成功或失败，结果总是按任务键排序返回，
因此输出与调度顺序无关。
"""

import asyncio
import concurrent.futures
import logging
from dataclasses import dataclass
from typing import Any, Callable, Generic, List, Optional, Sequence, TypeVar

logger = logging.getLogger(__name__)

K = TypeVar("K")
V = TypeVar("V")


@dataclass(frozen=True)
class TaskOutcome(Generic[K, V]):
    """单个参数点的结果"""

    key: K
    value: Optional[V] = None
    error: Optional[BaseException] = None

    @property
    def status(self) -> str:
        return "success" if self.error is None else "error"


class ParallelEvaluator:
    """对一组参数点并行调用同一个函数"""

    def __init__(self, max_workers: int = 4):
        self.max_workers = max_workers
        self.executor = concurrent.futures.ThreadPoolExecutor(max_workers=max_workers)

    async def evaluate_async(self, func: Callable[[K], V], key: K) -> TaskOutcome:
        loop = asyncio.get_running_loop()
        try:
            value = await loop.run_in_executor(self.executor, func, key)
            return TaskOutcome(key, value)
        except Exception as exc:
            logger.warning("参数点 %r 求值失败: %s", key, exc)
            return TaskOutcome(key, error=exc)

    async def map_async(self, func: Callable[[K], V], keys: Sequence[K]) -> List[TaskOutcome]:
        """并行求值，返回按键排序的结果"""
        logger.debug("并行求值 %d 个参数点，线程数 %d", len(keys), self.max_workers)
        outcomes = await asyncio.gather(*(self.evaluate_async(func, key) for key in keys))
        ordered = sorted(outcomes, key=lambda o: o.key)
        failed = sum(1 for o in ordered if o.error is not None)
        logger.debug("并行求值完成，成功 %d/%d", len(ordered) - failed, len(ordered))
        return ordered

    def map(self, func: Callable[[K], V], keys: Sequence[K]) -> List[TaskOutcome]:
        """map_async 的同步版本"""
        return asyncio.run(self.map_async(func, keys))

    def values(self, func: Callable[[K], V], keys: Sequence[K]) -> List[Any]:
        """按键排序的值；任一参数点失败时抛出键最小的那个异常"""
        outcomes = self.map(func, keys)
        for outcome in outcomes:
            if outcome.error is not None:
                raise outcome.error
        return [outcome.value for outcome in outcomes]

    def close(self):
        self.executor.shutdown(wait=True)

    def __enter__(self):
        return self

    def __exit__(self, exc_type, exc_val, exc_tb):
        self.close()
