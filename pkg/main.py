# main.py
import logging
from contextlib import asynccontextmanager

from fastapi import FastAPI
from fastapi.middleware.cors import CORSMiddleware

from middleware.timing import ComputeTimingMiddleware
from routers import fermat, hodge, mfcat, milnor, verify
from services.milnor_service import MilnorService
from settings import configure_logging, get_settings

VERSION = "1.0.0"

logger = logging.getLogger(__name__)


@asynccontextmanager
async def lifespan(app: FastAPI):
    """Управление жизненным циклом приложения"""
    settings = get_settings()
    configure_logging(settings)
    logger.info("🚀 Запуск nchodge API (max_cyclo_order=%d)", settings.max_cyclo_order)
    yield
    # Очистка кэша алгебр при завершении
    MilnorService().clear()
    logger.info("🛑 Остановка приложения...")


app = FastAPI(
    title="nchodge API",
    description="Точные вычисления nc-инвариантов Ходжа изолированных однородных особенностей",
    version=VERSION,
    lifespan=lifespan
)

app.add_middleware(
    CORSMiddleware,
    allow_origins=["*"],
    allow_credentials=True,
    allow_methods=["*"],
    allow_headers=["*"],
)
app.add_middleware(ComputeTimingMiddleware)

# Подключаем роутеры
app.include_router(milnor.router, prefix="/api", tags=["Milnor"])
app.include_router(hodge.router, prefix="/api", tags=["Hodge"])
app.include_router(mfcat.router, prefix="/api", tags=["Matrix factorizations"])
app.include_router(fermat.router, prefix="/api", tags=["Fermat"])
app.include_router(verify.router, prefix="/api", tags=["Verification"])


@app.get("/")
async def root():
    settings = get_settings()
    return {
        "message": "nchodge API",
        "version": VERSION,
        "features": [
            "Алгебра Милнора и функция Гильберта",
            "nc-фильтрация Ходжа, HP₀ и HN",
            "Циклы ψ и искривлённый дифференциал",
            "Характеры Черна матричных факторизаций",
            "Множества B Сиоды для гиперповерхностей Ферма",
            "Контрольный набор вычислений"
        ],
        "settings": {
            "max_cyclo_order": settings.max_cyclo_order,
            "max_degree": settings.max_degree,
        }
    }


@app.get("/health")
async def health_check():
    """Проверка здоровья приложения"""
    return {"status": "healthy", "version": VERSION}
