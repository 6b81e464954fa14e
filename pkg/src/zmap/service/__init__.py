"""Service layer: pydantic schemas, runners, FastAPI app."""

from .app import app, create_app  # noqa: F401
