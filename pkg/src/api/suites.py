from fastapi import APIRouter, HTTPException, status
import logging

from .models import ErrorResponse, Report, SeriesResponse, SuiteRequest
from ..config.settings import settings
from ..core.exact import fock_series, heisenberg_plus_series, heisenberg_series
from ..core.suite_runner import optional_param
from ..core.suites import COMMANDS, SuiteParams, run_suite

logger = logging.getLogger(__name__)
router = APIRouter()

SERIES = {
    "heisenberg": heisenberg_series,
    "heisenberg-plus": heisenberg_plus_series,
    "fock": fock_series,
}


@router.post("/suites/{command}",
             response_model=Report,
             responses={
                 404: {"model": ErrorResponse, "description": "Unknown suite"},
                 422: {"model": ErrorResponse, "description": "Validation error"},
                 500: {"model": ErrorResponse, "description": "Internal server error"}
             })
async def run_suite_endpoint(command: str, request: SuiteRequest) -> Report:
    """
    Run one verification suite (or ``all``) and return its report.

    Omitted parameters fall back to the service settings, exactly as the
    command line does.
    """
    if command not in COMMANDS:
        raise HTTPException(status_code=status.HTTP_404_NOT_FOUND, detail=f"Unknown suite '{command}'")
    try:
        params = SuiteParams(
            ell=optional_param(request.ell, settings.default_ell),
            max_weight=optional_param(request.max_weight, settings.default_max_weight),
            bound=optional_param(request.bound, settings.default_bound),
            type=request.type,
            rank=request.rank,
            lhs=request.lhs,
            rhs=request.rhs,
            coset=request.coset,
            max_columns=settings.max_fock_dimension,
        )
        logger.info(f"Running suite {command} via API")
        runner = run_suite(command, params, record_timings=settings.record_timings)
        return runner.report()

    except ValueError as e:
        logger.warning(f"Rejected suite request: {str(e)}")
        raise HTTPException(status_code=status.HTTP_422_UNPROCESSABLE_ENTITY, detail=str(e))
    except Exception as e:
        logger.error(f"Suite {command} failed: {str(e)}")
        raise HTTPException(status_code=status.HTTP_500_INTERNAL_SERVER_ERROR, detail=f"Suite failed: {str(e)}")


@router.get("/series/{kind}",
            response_model=SeriesResponse,
            responses={
                404: {"model": ErrorResponse, "description": "Unknown series"},
                422: {"model": ErrorResponse, "description": "Validation error"}
            })
async def get_series(kind: str, rank: int = 1, order: str = "6") -> SeriesResponse:
    """
    Truncated graded dimensions of a reference character
    """
    if kind not in SERIES:
        raise HTTPException(status_code=status.HTTP_404_NOT_FOUND, detail=f"Unknown series '{kind}'")
    try:
        series = SERIES[kind](rank, order)
    except ValueError as e:
        raise HTTPException(status_code=status.HTTP_422_UNPROCESSABLE_ENTITY, detail=str(e))
    return SeriesResponse(kind=kind, rank=rank, order=str(series.order), coefficients=series.as_dict())
