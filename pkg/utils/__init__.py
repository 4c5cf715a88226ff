from .validation import InputValidator
from .errors import LabError, ValidationError, handle_error
from .summation import CompensatedSum

__all__ = [
    'InputValidator',
    'LabError',
    'ValidationError',
    'handle_error',
    'CompensatedSum'
]
