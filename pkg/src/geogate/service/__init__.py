"""HTTP challenge-response service wrapping the core generator."""

from .app import create_app
from .state import ServiceConfig, ServiceState

__all__ = ["ServiceConfig", "ServiceState", "create_app"]
