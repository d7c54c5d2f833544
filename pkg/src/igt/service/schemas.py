from typing import Literal, Optional

from pydantic import BaseModel, Field

from ..group import DEFAULT_ORDER_BOUND
from ..iso import DEFAULT_ISO_BOUND
from ..lattice import DEFAULT_SUBGROUP_BOUND


class Limits(BaseModel):
    order_bound: int = Field(DEFAULT_ORDER_BOUND, gt=0)
    subgroup_bound: int = Field(DEFAULT_SUBGROUP_BOUND, gt=0)
    iso_bound: int = Field(DEFAULT_ISO_BOUND, gt=0)


class SpecRequest(BaseModel):
    spec: str
    limits: Limits = Field(default_factory=Limits)


class GroupResponse(BaseModel):
    spec: str
    order: int
    identity: int = 0
    labels: list[str]
    inverse: list[int]
    element_orders: list[int]
    mul: list[list[int]]


class SubgroupModel(BaseModel):
    id: int
    order: int
    members: list[int]
    normal: bool
    maximal: bool


class LatticeResponse(BaseModel):
    group: str
    order: int
    counts_by_order: dict[str, int]
    subgroups: list[SubgroupModel]


class GraphRequest(SpecRequest):
    format: Literal["dot", "json"] = "json"


class VertexModel(BaseModel):
    id: int
    order: Optional[int]
    members: list[int]


class GraphModel(BaseModel):
    group: str
    order: int
    vertices: list[VertexModel]
    edges: list[tuple[int, int]]


class GraphResponse(BaseModel):
    format: Literal["dot", "json"]
    content: str


class CheckRequest(SpecRequest):
    pattern: str = "K3,3"


class CheckResponse(BaseModel):
    spec: str
    pattern: str
    found: bool
    witness: Optional[dict] = None


class ClassifyResponse(BaseModel):
    spec: str
    order: int
    verdict: Literal["K33Free", "ContainsK33"]
    witness: Optional[dict] = None
    subgroups: int
    vertices: int
    edges: int
    counts_by_order: dict[str, int]
    seconds: float


class CorpusEntryModel(BaseModel):
    spec: str
    expected: Literal["K33Free", "ContainsK33"]
    note: str = ""


class VerifyRequest(BaseModel):
    max_order: int = Field(100, ge=1)
    corpus: Optional[list[CorpusEntryModel]] = None
    jobs: int = Field(1, ge=1)
    extended: bool = False
    limits: Limits = Field(default_factory=Limits)


class MatchResponse(BaseModel):
    spec: str
    order: int
    item: Optional[int]


class ErrorResponse(BaseModel):
    kind: Literal["input", "resource"]
    detail: str
