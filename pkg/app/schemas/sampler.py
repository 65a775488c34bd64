from typing import List, Optional, Tuple

from pydantic import BaseModel, Field

from app.config import settings

U64_LIMIT = 2**64


class SamplerConfig(BaseModel):
    p: float = Field(default=0.9, ge=0.0, le=1.0)
    steps: int = Field(default=1000, ge=1)
    seed: Optional[int] = Field(default=None, ge=0, lt=U64_LIMIT)
    thin: Optional[int] = Field(default=None, ge=1)
    burn_in: Optional[int] = Field(default=None, ge=0)
    check_every: int = Field(default_factory=lambda: settings.check_every, ge=1)

    def resolved(self, n: int, seed: int) -> "SamplerConfig":
        """Copy with the seed fixed and burn-in / thinning defaults applied"""
        return self.model_copy(
            update={
                "seed": seed,
                "thin": self.thin if self.thin is not None else n * n,
                "burn_in": self.burn_in if self.burn_in is not None else 10 * n * n,
            }
        )


class AnchorRecord(BaseModel):
    coordinates: List[int]
    k: int
    l: int  # noqa: E741


class SampleHeader(BaseModel):
    type: str = "header"
    chain: str
    seed: int
    p: float
    steps: int
    thin: int
    burn_in: int
    rng_algorithm: str
    anchor_triples: List[AnchorRecord]


class GraphRecord(BaseModel):
    type: str = "graph"
    n: int
    arcs: List[Tuple[int, int]]
