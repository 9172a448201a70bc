from pydantic import BaseModel, Field, field_validator, ConfigDict
from typing import Optional, List, Dict, Any
from enum import Enum


# ========== Enums ==========
class OutputFormat(str, Enum):
    JSON = "json"
    TABLE = "table"

class VerifyScope(str, Enum):
    ALL = "all"
    MILNOR = "milnor"
    HODGE = "hodge"
    CHERN = "chern"
    FERMAT = "fermat"
    PSI = "psi"


# ========== Гиперповерхности ==========
class HypersurfaceRequest(BaseModel):
    f: str = Field(..., min_length=1, description="Однородный многочлен от x0..x{n+1}")
    n: int = Field(..., ge=0)
    max_degree: Optional[int] = Field(None, ge=0)

    @field_validator('n')
    @classmethod
    def validate_n(cls, v):
        if v % 2:
            raise ValueError('Размерность n должна быть чётной')
        return v

class MilnorResponse(BaseModel):
    e: int
    socle_degree: int
    hilbert: List[int]
    total: int
    isolated: bool

class HodgeResponse(BaseModel):
    hp0_dim: int
    nc_filtration: Dict[str, int]
    classical: Dict[str, int]
    hn: Dict[str, int]


# ========== Элементы ψ ==========
class PsiRequest(HypersurfaceRequest):
    q: str = Field(..., min_length=1)
    j: int = Field(..., ge=1)
    m: int = 0
    check: bool = True

class PsiResponse(BaseModel):
    element: str
    terms: int
    homological_degree: List[int]
    gamma_degree: List[int]
    cycle: Optional[bool] = None


# ========== Матричные факторизации ==========
class MatrixFactorizationInput(BaseModel):
    f: str
    A: List[List[str]]
    B: List[List[str]]
    nvars: Optional[int] = Field(None, ge=1)

    model_config = ConfigDict(extra="ignore")

class ChernRequest(HypersurfaceRequest):
    mf: MatrixFactorizationInput

class ChernResponse(BaseModel):
    raw: str
    reduced: Dict[str, str]

class TensorRequest(BaseModel):
    mf1: MatrixFactorizationInput
    mf2: MatrixFactorizationInput

class QRankRequest(HypersurfaceRequest):
    mfs: List[MatrixFactorizationInput] = Field(default_factory=list)

class QRankResponse(BaseModel):
    rank: int
    count: int


# ========== Ферма ==========
class FermatResponse(BaseModel):
    count: int
    classes: List[List[int]] = []


# ========== Проверка ==========
class CheckResponse(BaseModel):
    identifier: str
    expected: str
    actual: str
    passed: bool

class VerifyResponse(BaseModel):
    suite: str
    passed: bool
    checks: List[CheckResponse]

class ServiceInfo(BaseModel):
    message: str
    version: str
    features: List[str]
    settings: Dict[str, Any]
