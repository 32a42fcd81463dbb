from contextlib import asynccontextmanager
import logging

from fastapi import FastAPI
from fastapi.middleware.cors import CORSMiddleware
import uvicorn

from .config.settings import settings
from .api.health import router as health_router
from .api.suites import SERIES, router as suites_router
from .core.suites import COMMANDS

logging.basicConfig(
    level=getattr(logging, settings.log_level.upper()),
    format='%(asctime)s - %(name)s - %(levelname)s - %(message)s'
)
logger = logging.getLogger(__name__)

API_PREFIX = "/api/v1"


@asynccontextmanager
async def lifespan(app: FastAPI):
    logger.info(f"{settings.app_name} v{settings.app_version} serving suites: {', '.join(COMMANDS)}")
    logger.info(
        f"Suite defaults: ell={settings.default_ell}, max_weight={settings.default_max_weight}, "
        f"bound={settings.default_bound}, max_fock_dimension={settings.max_fock_dimension}"
    )
    yield
    logger.info(f"{settings.app_name} stopped")


def create_app() -> FastAPI:
    """
    Build the verification service: health and suite routers under /api/v1
    """
    service = FastAPI(
        title=settings.app_name,
        version=settings.app_version,
        description="Exact verification suites for free-field realizations of affine vertex algebras in the Weyl vertex algebra",
        lifespan=lifespan,
    )
    # Suites are read-only computations
    service.add_middleware(CORSMiddleware, allow_origins=["*"], allow_methods=["GET", "POST"], allow_headers=["*"])
    service.include_router(health_router, prefix=API_PREFIX, tags=["health"])
    service.include_router(suites_router, prefix=API_PREFIX, tags=["suites"])

    @service.get("/")
    async def root():
        return {
            "service": settings.app_name,
            "version": settings.app_version,
            "status": "running",
            "suites": list(COMMANDS),
            "series": sorted(SERIES),
            "docs_url": "/docs",
            "health_url": f"{API_PREFIX}/health",
        }

    return service


app = create_app()


if __name__ == "__main__":
    uvicorn.run("src.main:app", host=settings.host, port=settings.port, reload=settings.debug, log_level=settings.log_level.lower())
