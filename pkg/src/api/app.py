# api/app.py
from __future__ import annotations

from contextlib import asynccontextmanager

from fastapi import FastAPI
from fastapi.middleware.cors import CORSMiddleware

from src.api.endpoints import analysis_router, census_router
from src.config import get_settings
from src.utils.logger import get_logger

logger = get_logger(__name__)

@asynccontextmanager
async def lifespan(app: FastAPI):
    # ---- startup ----
    settings = get_settings()
    logger.info(f"API starting up ({settings.environment}, {settings.census.threads} census threads)")
    yield
    # ---- shutdown ----
    logger.info("API shutting down")

def create_app() -> FastAPI:
    app = FastAPI(
        title="Elliptic Curve Census API",
        description="Count and list elliptic curves of bounded degree in E^2 and E^3.",
        version="1.0.0",
        lifespan=lifespan
    )

    app.add_middleware(
        CORSMiddleware,
        allow_origins=["*"],
        allow_credentials=True,
        allow_methods=["*"],
        allow_headers=["*"],
    )

    # Include routers
    app.include_router(census_router)
    app.include_router(analysis_router)

    # Health check endpoints
    @app.get("/healthz", tags=["Health"])
    def healthz():
        return {"status": "ok"}

    return app
