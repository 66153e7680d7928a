# errors.py
from typing import Any, Dict, Optional


class QGamesError(Exception):
    """Base error. `field` is a dotted/indexed path into the offending input when one exists."""

    def __init__(self, message: str, field: Optional[str] = None, details: Optional[Dict[str, Any]] = None):
        super().__init__(message)
        self.field = field
        self.details = details or {}

    def __str__(self) -> str:
        base = super().__str__()
        if self.field:
            return f"{self.field}: {base}"
        return base


class DimensionError(QGamesError, ValueError):
    pass


class DomainError(QGamesError, ValueError):
    pass


class GameFormatError(QGamesError, ValueError):
    pass


class ResidueError(QGamesError, ArithmeticError):
    pass


class AsymmetricGameError(QGamesError, ValueError):
    pass


class ConfigError(QGamesError, ValueError):
    pass
