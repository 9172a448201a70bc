from fastapi import APIRouter, Depends

from dependencies import get_registry, http_error, resolve_algebra
from schemas import (
    ChernRequest, ChernResponse, MatrixFactorizationInput, QRankRequest, QRankResponse, TensorRequest
)
from services.mf_service import MatrixFactorizationService, mf_from_payload
from services.milnor_service import MilnorService
from settings import Settings, get_settings

router = APIRouter()
mf_service = MatrixFactorizationService()


@router.post("/chern", response_model=ChernResponse)
def chern(
        request: ChernRequest,
        registry: MilnorService = Depends(get_registry),
        settings: Settings = Depends(get_settings)
):
    """Характер Черна факторизации в алгебре Милнора"""
    M = resolve_algebra(request, registry, settings)
    try:
        F = mf_from_payload(request.mf, M.nvars)
        return mf_service.chern_report(F, M)
    except ValueError as e:
        raise http_error(e)


@router.post("/tensor", response_model=MatrixFactorizationInput)
def tensor(request: TensorRequest):
    """F ⊗ G; переменные G переименовываются в свободные индексы"""
    try:
        F = mf_from_payload(request.mf1)
        G = mf_from_payload(request.mf2)
        return mf_service.tensor_files(F, G).to_payload()
    except ValueError as e:
        raise http_error(e)


@router.post("/qrank", response_model=QRankResponse)
def qrank(
        request: QRankRequest,
        registry: MilnorService = Depends(get_registry),
        settings: Settings = Depends(get_settings)
):
    """Ранг над ℚ семейства классов Черна"""
    M = resolve_algebra(request, registry, settings)
    try:
        factorizations = [mf_from_payload(item, M.nvars) for item in request.mfs]
        return mf_service.qrank_report(factorizations, M)
    except ValueError as e:
        raise http_error(e)
