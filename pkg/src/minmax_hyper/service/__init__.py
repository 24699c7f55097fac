"""Service layer: request schemas, command runner, FastAPI app."""
from . import runner, schemas
from .runner import EXIT_CODES, EXIT_USAGE, HANDLERS, exit_code, jsonable, run

__all__ = ["runner", "schemas", "EXIT_CODES", "EXIT_USAGE", "HANDLERS",
           "exit_code", "jsonable", "run"]
