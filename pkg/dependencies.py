# dependencies.py
from fastapi import HTTPException, status

from algebra.errors import InputError, ResourceBoundError
from schemas import HypersurfaceRequest
from services.milnor_service import MilnorAlgebra, MilnorService
from settings import Settings, get_settings


def get_registry() -> MilnorService:
    """Зависимость: общий реестр алгебр Милнора"""
    return MilnorService()


def http_error(error: Exception) -> HTTPException:
    """Ошибки ядра → HTTP: 400 для входных данных, 422 для пределов"""
    if isinstance(error, ResourceBoundError):
        return HTTPException(status_code=status.HTTP_422_UNPROCESSABLE_ENTITY, detail=str(error))
    if isinstance(error, InputError):
        return HTTPException(status_code=status.HTTP_400_BAD_REQUEST, detail=str(error))
    return HTTPException(
        status_code=status.HTTP_500_INTERNAL_SERVER_ERROR,
        detail=f"Ошибка вычисления: {str(error)}"
    )


def resolve_algebra(
        request: HypersurfaceRequest,
        registry: MilnorService,
        settings: Settings
) -> MilnorAlgebra:
    """Алгебра Милнора запроса; предел степени берётся из запроса или настроек"""
    max_degree = request.max_degree if request.max_degree is not None else settings.max_degree
    try:
        return registry.get_algebra(request.f, request.n, max_degree)
    except ValueError as e:
        raise http_error(e)
