"""
Model for U-statistic kernels
"""

from typing import Callable, Sequence

from pydantic import BaseModel, ConfigDict, PositiveInt

# a kernel receives m points; a point is (u, v) for projected kernels
# or (x, y) vectors for lifted kernels
Kernel = Callable[[Sequence[tuple]], float]


class KernelSpec(BaseModel):
    """
    Symmetric kernel of a U-statistic.

    Attributes:
        order (int): Number of points the kernel takes.
        h (Kernel): Symmetric function of `order` points.
        name (str): Label used in reports.
    """
    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    order: PositiveInt
    h: Kernel
    name: str = "kernel"

    def __call__(self, points: Sequence[tuple]) -> float:
        return self.h(points)
