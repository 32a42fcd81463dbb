import pytest
from fastapi.testclient import TestClient

from ..main import app

client = TestClient(app)


def test_root_endpoint():
    """Test the root endpoint returns service information"""
    response = client.get("/")
    assert response.status_code == 200

    data = response.json()
    assert data["service"] == "Free-Field VOA Verification Service"
    assert data["version"] == "1.0.0"
    assert data["status"] == "running"
    assert "commutant" in data["suites"]
    assert data["series"] == ["fock", "heisenberg", "heisenberg-plus"]
    assert "docs_url" in data
    assert "health_url" in data


def test_health_endpoint():
    """Test the health endpoint returns proper health status"""
    response = client.get("/api/v1/health")
    assert response.status_code == 200

    data = response.json()
    assert "status" in data
    assert "timestamp" in data
    assert "version" in data
    assert "service" in data
    assert "uptime" in data
    assert "components" in data

    # Verify the structure
    assert data["service"] == "voa-verification-service"
    assert data["version"] == "1.0.0"
    assert data["status"] == "healthy"

    components = data["components"]
    assert "engine" in components
    assert "response_time_seconds" in components

    assert "status" in components["engine"]
    assert "message" in components["engine"]
    assert "response_time_ms" in components["engine"]


@pytest.mark.asyncio
async def test_engine_self_check():
    """The engine self-check computes a central charge exactly"""
    from ..api.health import check_engine_health

    engine_health = await check_engine_health()
    assert isinstance(engine_health, dict)
    assert engine_health["status"] == "healthy"
    assert "message" in engine_health
    assert "response_time_ms" in engine_health


@pytest.mark.asyncio
async def test_engine_self_check_reports_failures(monkeypatch):
    from ..api import health

    monkeypatch.setattr(health, "central_charge", lambda omega: 0)
    engine_health = await health.check_engine_health()
    assert engine_health["status"] == "unhealthy"
    assert "expected -1" in engine_health["message"]


@pytest.mark.asyncio
async def test_engine_self_check_reports_every_failure(monkeypatch):
    from ..api import health

    monkeypatch.setattr(health, "weyl_commutator", lambda first, second: 0)
    monkeypatch.setattr(health, "central_charge", lambda omega: 0)
    engine_health = await health.check_engine_health()
    assert engine_health["status"] == "unhealthy"
    assert "expected 1" in engine_health["message"]
    assert "expected -1" in engine_health["message"]


def test_uptime_counts_from_startup():
    first = client.get("/api/v1/health").json()["uptime"]
    second = client.get("/api/v1/health").json()["uptime"]
    assert 0 <= first <= second


def test_openapi_docs():
    """Test that OpenAPI documentation is available"""
    response = client.get("/docs")
    assert response.status_code == 200

    response = client.get("/openapi.json")
    assert response.status_code == 200

    openapi_data = response.json()
    assert "info" in openapi_data
    assert openapi_data["info"]["title"] == "Free-Field VOA Verification Service"
    assert openapi_data["info"]["version"] == "1.0.0"
