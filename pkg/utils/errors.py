"""
Custom error classes and error handling utilities
"""
import logging


class LabError(Exception):
    """Base exception class for cascade laboratory errors"""

    def __init__(self, message: str, error_code: str = None, exit_code: int = 1):
        self.message = message
        self.error_code = error_code or 'LAB_ERROR'
        self.exit_code = exit_code
        super().__init__(self.message)

    def to_dict(self):
        """Convert error to dictionary for log records and summaries"""
        return {
            'success': False,
            'error': self.message,
            'error_code': self.error_code
        }


class ValidationError(LabError):
    """Exception raised for invalid parameters or inputs"""

    def __init__(self, message: str, error_code: str = None):
        super().__init__(message, error_code or 'INVALID_INPUT', 2)


class WrongRegimeError(LabError):
    """Exception raised when an operation is called for the other forcing regime"""

    def __init__(self, message: str, error_code: str = None):
        super().__init__(message, error_code or 'WRONG_REGIME', 2)


class UnsupportedError(LabError):
    """Exception raised for parameter combinations without an implementation"""

    def __init__(self, message: str, error_code: str = None):
        super().__init__(message, error_code or 'UNSUPPORTED', 2)


class EmptyWindowError(LabError):
    """Exception raised when a frequency window has no extent"""

    def __init__(self, message: str, error_code: str = None):
        super().__init__(message, error_code or 'EMPTY_WINDOW', 2)


class InsufficientDataError(LabError):
    """Exception raised when a fit window holds too few samples"""

    def __init__(self, message: str, error_code: str = None):
        super().__init__(message, error_code or 'INSUFFICIENT_DATA', 3)


class DegenerateSpectrumError(LabError):
    """Exception raised when a spectrum vanishes inside the fit window"""

    def __init__(self, message: str, error_code: str = None):
        super().__init__(message, error_code or 'DEGENERATE_SPECTRUM', 3)


class LostEllipticityError(LabError):
    """Exception raised when the linearized operator is not positive"""

    def __init__(self, message: str, min_coefficient: float = None, error_code: str = None):
        super().__init__(message, error_code or 'LOST_ELLIPTICITY', 3)
        self.min_coefficient = min_coefficient


class DivergenceError(LabError):
    """Exception raised when the fixed-point iteration leaves its guard"""

    def __init__(self, message: str, iterations: int = None, error_code: str = None):
        super().__init__(message, error_code or 'DIVERGENCE', 3)
        self.iterations = iterations


class BlowUpError(LabError):
    """Exception raised when a time step produces non-finite or runaway values"""

    def __init__(self, message: str, time: float = None, record=None, error_code: str = None):
        super().__init__(message, error_code or 'BLOW_UP', 3)
        self.time = time
        self.record = record


class OutputError(LabError):
    """Exception raised when result files cannot be written"""

    def __init__(self, message: str, path: str = None, error_code: str = None):
        super().__init__(message, error_code or 'IO_ERROR', 4)
        self.path = path


def handle_error(error):
    """
    Convert various error types to a standardized payload and exit code

    Args:
        error: The error to handle

    Returns:
        tuple: (payload_dict, exit_code)
    """
    if isinstance(error, LabError):
        return error.to_dict(), error.exit_code

    elif isinstance(error, KeyError):
        return create_error_response(f'Missing required field: {str(error)}', 'MISSING_FIELD', 2)

    elif isinstance(error, (ValueError, TypeError)):
        return create_error_response(str(error), 'INVALID_INPUT', 2)

    elif isinstance(error, OSError):
        return create_error_response(f'{error.strerror or str(error)}: {error.filename}', 'IO_ERROR', 4)

    else:
        logging.error(f"Unexpected error: {str(error)}", exc_info=True)
        return create_error_response('Internal error', 'INTERNAL_ERROR', 1)


def create_error_response(message: str, error_code: str = None, exit_code: int = 1):
    """
    Create a standardized error payload

    Args:
        message: Error message
        error_code: Machine-readable error code
        exit_code: Process exit code

    Returns:
        tuple: (payload_dict, exit_code)
    """
    return {
        'success': False,
        'error': message,
        'error_code': error_code or 'ERROR'
    }, exit_code


def create_success_response(data: dict = None, message: str = None):
    """
    Create a standardized success payload

    Args:
        data: Result data
        message: Success message

    Returns:
        dict: Success payload
    """
    response = {'success': True}

    if data:
        response.update(data)

    if message:
        response['message'] = message

    return response
