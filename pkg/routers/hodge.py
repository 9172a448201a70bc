from fastapi import APIRouter, Depends

from algebra.polyforms import poly_parse
from dependencies import get_registry, http_error, resolve_algebra
from schemas import HodgeResponse, HypersurfaceRequest, PsiRequest, PsiResponse
from services.hodge_service import HodgeService
from services.milnor_service import MilnorService
from settings import Settings, get_settings

router = APIRouter()
hodge_service = HodgeService()


@router.post("/hodge", response_model=HodgeResponse)
def hodge(
        request: HypersurfaceRequest,
        registry: MilnorService = Depends(get_registry),
        settings: Settings = Depends(get_settings)
):
    """HP₀, nc-фильтрация, числа Ходжа и размерности HN"""
    M = resolve_algebra(request, registry, settings)
    try:
        return hodge_service.describe(M)
    except ValueError as e:
        raise http_error(e)


@router.post("/psi", response_model=PsiResponse, response_model_exclude_none=True)
def psi(
        request: PsiRequest,
        registry: MilnorService = Depends(get_registry),
        settings: Settings = Depends(get_settings)
):
    """Цикл ψ_{m,j}(q·vol) и, по запросу, проверка искривлённого дифференциала"""
    M = resolve_algebra(request, registry, settings)
    try:
        q = poly_parse(request.q, M.nvars)
        return hodge_service.psi_report(M, q, request.j, request.m, check=request.check)
    except ValueError as e:
        raise http_error(e)
