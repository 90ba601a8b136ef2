"""HTTP facade package: FastAPI app plus its request/response models."""

from .app import app, create_app

__all__ = ["app", "create_app"]
