from fastapi import APIRouter, HTTPException
from pydantic import BaseModel
from typing import Dict, Any
from datetime import datetime
import logging
import time

from ..config.settings import settings
from ..core.opcalc import central_charge, free_virasoro
from ..core.weylfock import Mode, weyl_commutator

logger = logging.getLogger(__name__)

router = APIRouter()

STARTED_AT = time.monotonic()


class HealthResponse(BaseModel):
    status: str
    timestamp: datetime
    version: str
    service: str
    uptime: float
    components: Dict[str, Any]


@router.get("/health", response_model=HealthResponse)
async def health_check():
    """
    Service status with the result of the engine self-check
    """
    try:
        check_started = time.perf_counter()
        engine_status = await check_engine_health()
        components = {
            "engine": engine_status,
            "response_time_seconds": round(time.perf_counter() - check_started, 6),
        }
        return HealthResponse(
            status=engine_status["status"],
            timestamp=datetime.now(),
            version=settings.app_version,
            service="voa-verification-service",
            uptime=round(time.monotonic() - STARTED_AT, 3),
            components=components
        )
    except Exception as e:
        logger.error(f"Health check failed: {str(e)}")
        raise HTTPException(status_code=500, detail="Health check failed")


async def check_engine_health() -> Dict[str, Any]:
    """
    Two exact identities: [a+(1/2), a-(-1/2)] = 1, and the free Virasoro
    vector of M_1 has central charge -1
    """
    check_started = time.perf_counter()

    def elapsed_ms() -> int:
        return int((time.perf_counter() - check_started) * 1000)

    try:
        failures = []
        bracket = weyl_commutator(Mode(1, 1, 1), Mode(1, -1, -1))
        if bracket != 1:
            failures.append(f"[a1+(1/2), a1-(-1/2)] = {bracket}, expected 1")
        c = central_charge(free_virasoro(1))
        if c != -1:
            failures.append(f"free Virasoro vector has central charge {c}, expected -1")
    except Exception as e:
        logger.error(f"Engine self-check raised: {str(e)}")
        return {"status": "unhealthy", "message": f"Engine self-check failed: {str(e)}", "response_time_ms": elapsed_ms()}

    if failures:
        logger.warning(f"Engine self-check failed: {'; '.join(failures)}")
        return {"status": "unhealthy", "message": "; ".join(failures), "response_time_ms": elapsed_ms()}
    return {"status": "healthy", "message": "Weyl relations and central charge exact", "response_time_ms": elapsed_ms()}
