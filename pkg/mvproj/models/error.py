"""
Error models
"""

from pydantic import BaseModel


class ErrorReport(BaseModel):
    """
    Represents an error printed by the CLI.

    Attributes:
        detail (str): A human-readable description of the error.
        kind (str): Name of the typed error.
    """
    detail: str
    kind: str
