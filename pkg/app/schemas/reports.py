from typing import List, Literal, Tuple

from pydantic import BaseModel, Field


class CheckReport(BaseModel):
    digraphic: bool
    n: int
    sum_out: int
    sum_in: int
    slack_bar: List[int]
    slack_ubar: List[int]


class MetagraphReport(BaseModel):
    """Meta-graph summary; realizations are numbered 1..R in canonical order"""

    num_realizations: int
    e2_edges: List[Tuple[int, int]] = []
    e3_edges: List[Tuple[int, int]] = []
    e2_components: List[List[int]] = []
    e3_joint_components: List[List[int]] = []
    anchors_bruteforce: List[List[int]] = []
    anchors_general: List[int] = []
    anchors_degseq: List[List[int]] = []
    corollary_check: Literal["pass", "fail"]
    isomorphism_test: str = (
        "order, E2 size, size and sorted degree profile per component"
    )
    details: List[str] = []


class PropertyResult(BaseModel):
    name: str
    checked: int = 0
    failed: int = 0
    failures: List[str] = Field(default_factory=list)

    @property
    def passed(self) -> bool:
        return self.failed == 0


class SweepReport(BaseModel):
    max_n: int
    sequences: int = 0
    canonical_forms: int = 0
    properties: List[PropertyResult] = []

    @property
    def passed(self) -> bool:
        return all(p.passed for p in self.properties)
