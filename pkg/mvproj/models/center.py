"""
Models for center points and center sampling strategies
"""

from __future__ import annotations

from typing import Annotated, List, Literal, Tuple, Union

from pydantic import BaseModel, ConfigDict, Field, NonNegativeInt, PositiveInt


class TwoSampleCenter(BaseModel):
    """
    Center for the K-sample problem.

    Attributes:
        z (Tuple[float, ...]): A q-vector.
    """
    model_config = ConfigDict(frozen=True)

    kind: Literal["two-sample"] = "two-sample"
    z: Tuple[float, ...]


class IndepCenter(BaseModel):
    """
    Center for the independence problem.

    Attributes:
        z_x (Tuple[float, ...]): A p-vector for the x block.
        z_y (Tuple[float, ...]): A q-vector for the y block.
    """
    model_config = ConfigDict(frozen=True)

    kind: Literal["independence"] = "independence"
    z_x: Tuple[float, ...]
    z_y: Tuple[float, ...]


class FixedOrigin(BaseModel):
    """Center supplied by the user."""
    model_config = ConfigDict(frozen=True)

    kind: Literal["fixed"] = "fixed"


class SampledOrigin(BaseModel):
    """
    Center drawn at random.

    Attributes:
        strategy (str): Identifier of the sampling distribution.
    """
    model_config = ConfigDict(frozen=True)

    kind: Literal["sampled"] = "sampled"
    strategy: str


class SamplePointOrigin(BaseModel):
    """
    Center equal to a sample row; projection then leaves that row out.

    Attributes:
        index (int): Zero-based row index.
    """
    model_config = ConfigDict(frozen=True)

    kind: Literal["sample-point"] = "sample-point"
    index: NonNegativeInt


CenterKind = Annotated[Union[TwoSampleCenter, IndepCenter], Field(discriminator="kind")]
CenterOrigin = Annotated[
    Union[FixedOrigin, SampledOrigin, SamplePointOrigin], Field(discriminator="kind")
]


class CenterSpec(BaseModel):
    """
    One center point plus its provenance.

    Attributes:
        center (CenterKind): The location(s) distances are measured from.
        origin (CenterOrigin): Fixed, sampled, or a sample point.
    """
    model_config = ConfigDict(frozen=True)

    center: CenterKind
    origin: CenterOrigin = FixedOrigin()

    @classmethod
    def fixed(cls, z: Tuple[float, ...] | List[float]) -> CenterSpec:
        """Shortcut for a user-supplied K-sample center."""
        return cls(center=TwoSampleCenter(z=tuple(float(v) for v in z)))

    @classmethod
    def fixed_pair(cls, z_x: Tuple[float, ...] | List[float],
                   z_y: Tuple[float, ...] | List[float]) -> CenterSpec:
        """Shortcut for a user-supplied independence center."""
        return cls(center=IndepCenter(
            z_x=tuple(float(v) for v in z_x), z_y=tuple(float(v) for v in z_y)))

    @property
    def leave_out(self) -> int | None:
        """Row excluded from the projection, if the center is a sample point."""
        if isinstance(self.origin, SamplePointOrigin):
            return self.origin.index
        return None


class FixedList(BaseModel):
    """
    Use the given centers as they are.

    Attributes:
        centers (List[CenterSpec]): At least one center.
    """
    model_config = ConfigDict(frozen=True)

    kind: Literal["fixed"] = "fixed"
    centers: List[CenterSpec] = Field(min_length=1)


class UniformBoundingBox(BaseModel):
    """
    Draw centers uniformly from the bounding box of the pooled sample,
    each side widened by `expansion` times its length (half on each end).

    Attributes:
        m (int): Number of centers.
        expansion (float): Relative widening, at least 0.
    """
    model_config = ConfigDict(frozen=True)

    kind: Literal["bbox"] = "bbox"
    m: PositiveInt
    expansion: float = Field(default=0.1, ge=0.0)


class GaussianMomentFit(BaseModel):
    """
    Draw centers from a normal with the sample mean and diagonal sample covariance.

    Attributes:
        m (int): Number of centers.
    """
    model_config = ConfigDict(frozen=True)

    kind: Literal["gauss"] = "gauss"
    m: PositiveInt


class SamplePoints(BaseModel):
    """Every sample row is a center, with leave-one-out projection."""
    model_config = ConfigDict(frozen=True)

    kind: Literal["sample-points"] = "sample-points"


CenterStrategy = Annotated[
    Union[FixedList, UniformBoundingBox, GaussianMomentFit, SamplePoints],
    Field(discriminator="kind"),
]
