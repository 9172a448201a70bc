from fastapi import APIRouter, Depends

from dependencies import get_registry, resolve_algebra
from schemas import HypersurfaceRequest, MilnorResponse
from services.milnor_service import MilnorService
from settings import Settings, get_settings

router = APIRouter()


@router.post("/milnor", response_model=MilnorResponse)
def milnor(
        request: HypersurfaceRequest,
        registry: MilnorService = Depends(get_registry),
        settings: Settings = Depends(get_settings)
):
    """Функция Гильберта алгебры Милнора"""
    M = resolve_algebra(request, registry, settings)
    return registry.describe(M)
