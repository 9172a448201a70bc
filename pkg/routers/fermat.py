from fastapi import APIRouter, Query

from dependencies import http_error
from schemas import FermatResponse
from services.fermat_service import FermatService

router = APIRouter()
fermat_service = FermatService()


@router.get("/fermat", response_model=FermatResponse, response_model_exclude_unset=True)
def fermat(
        m: int = Query(..., ge=2),
        n: int = Query(..., ge=2),
        count_only: bool = False
):
    """Множество B Сиоды и dim Hdg(X^n_m)"""
    try:
        return fermat_service.report(m, n, count_only=count_only)
    except ValueError as e:
        raise http_error(e)
