from typing import Annotated, List, Tuple

from pydantic import BaseModel, Field, TypeAdapter

# degrees are stored as signed 64-bit integers
DEGREE_LIMIT = 2**63

Degree = Annotated[int, Field(ge=0, lt=DEGREE_LIMIT)]

DegreeSequencePayload = TypeAdapter(List[Tuple[Degree, Degree]])


class ArcListPayload(BaseModel):
    n: int = Field(..., ge=1)
    arcs: List[Tuple[int, int]] = []
