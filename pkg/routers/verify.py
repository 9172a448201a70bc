from fastapi import APIRouter, Depends

from schemas import VerifyResponse, VerifyScope
from services.verify_service import run_verify
from settings import Settings, get_settings

router = APIRouter()


@router.get("/verify/{scope}", response_model=VerifyResponse)
def verify(scope: VerifyScope, settings: Settings = Depends(get_settings)):
    """Контрольный набор; провалы возвращаются в отчёте, а не кодом ошибки"""
    return run_verify(scope, settings=settings).to_dict()
