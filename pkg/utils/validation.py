"""
Input validation utilities for numerical parameters and configuration values
"""
import math
from typing import Any, List, Optional

from .errors import ValidationError

TRUE_STRINGS = {'1', 'true', 'yes', 'on'}
FALSE_STRINGS = {'0', 'false', 'no', 'off', ''}


class InputValidator:
    """Handles validation of numerical parameters and configuration values"""

    @classmethod
    def validate_real(cls, value: Any, name: str) -> float:
        """
        Validate a finite real number

        Args:
            value: The value to validate
            name: Parameter name used in error messages

        Returns:
            float: The validated value

        Raises:
            ValidationError: If value is missing, not numeric or not finite
        """
        if value is None or (isinstance(value, str) and not value.strip()):
            raise ValidationError(f"{name} is required", "MISSING_VALUE")

        if isinstance(value, bool):
            raise ValidationError(f"{name} must be a number", "INVALID_TYPE")

        try:
            value = float(value)
        except (ValueError, TypeError):
            raise ValidationError(f"{name} must be a number, got {value!r}", "INVALID_TYPE")

        if not math.isfinite(value):
            raise ValidationError(f"{name} must be finite", "NON_FINITE")

        return value

    @classmethod
    def validate_positive(cls, value: Any, name: str) -> float:
        """Validate a finite real number > 0"""
        value = cls.validate_real(value, name)
        if value <= 0:
            raise ValidationError(f"{name} must be positive, got {value}", "NOT_POSITIVE")
        return value

    @classmethod
    def validate_non_negative(cls, value: Any, name: str) -> float:
        """Validate a finite real number >= 0"""
        value = cls.validate_real(value, name)
        if value < 0:
            raise ValidationError(f"{name} must be non-negative, got {value}", "NEGATIVE")
        return value

    @classmethod
    def validate_open_unit(cls, value: Any, name: str) -> float:
        """
        Validate a real number in the open interval (0, 1)

        Args:
            value: The value to validate
            name: Parameter name used in error messages

        Returns:
            float: The validated value

        Raises:
            ValidationError: If value is outside (0, 1)
        """
        value = cls.validate_real(value, name)
        if not 0.0 < value < 1.0:
            raise ValidationError(f"{name} must lie in (0, 1), got {value}", "OUT_OF_RANGE")
        return value

    @classmethod
    def validate_positive_int(cls, value: Any, name: str) -> int:
        """
        Validate a positive integer

        Args:
            value: The value to validate
            name: Parameter name used in error messages

        Returns:
            int: The validated value

        Raises:
            ValidationError: If value is not a positive integer
        """
        if isinstance(value, bool):
            raise ValidationError(f"{name} must be an integer", "INVALID_TYPE")

        try:
            as_float = float(value)
        except (ValueError, TypeError):
            raise ValidationError(f"{name} must be an integer, got {value!r}", "INVALID_TYPE")

        if not math.isfinite(as_float) or as_float != int(as_float):
            raise ValidationError(f"{name} must be an integer, got {value!r}", "INVALID_TYPE")

        value = int(as_float)
        if value < 1:
            raise ValidationError(f"{name} must be at least 1, got {value}", "NOT_POSITIVE")

        return value

    @classmethod
    def validate_power_of_two(cls, value: Any, name: str) -> int:
        """Validate a positive integer power of two (>= 4)"""
        value = cls.validate_positive_int(value, name)
        if value < 4 or value & (value - 1):
            raise ValidationError(f"{name} must be a power of two >= 4, got {value}", "NOT_POWER_OF_TWO")
        return value

    @classmethod
    def validate_choice(cls, value: Any, name: str, choices: List[Any]) -> Any:
        """Validate membership in a fixed set of choices"""
        if value not in choices:
            raise ValidationError(
                f"{name} must be one of {', '.join(str(c) for c in choices)}, got {value!r}",
                "INVALID_CHOICE"
            )
        return value

    @classmethod
    def validate_bool(cls, value: Any, name: str) -> bool:
        """Validate a boolean flag given as bool, int or string"""
        if isinstance(value, bool):
            return value

        text = str(value).strip().lower()
        if text in TRUE_STRINGS:
            return True
        if text in FALSE_STRINGS:
            return False

        raise ValidationError(f"{name} must be a boolean flag, got {value!r}", "INVALID_TYPE")

    @classmethod
    def validate_real_list(cls, value: Any, name: str, positive: bool = False) -> List[float]:
        """
        Validate a list of reals given as a sequence or a comma separated string

        Args:
            value: The values to validate
            name: Parameter name used in error messages
            positive: Require every entry to be > 0

        Returns:
            list: The validated values, order preserved

        Raises:
            ValidationError: If the list is empty or an entry is invalid
        """
        if isinstance(value, str):
            items = [item for item in (part.strip() for part in value.split(',')) if item]
        elif isinstance(value, (int, float)):
            items = [value]
        else:
            items = list(value or [])

        if not items:
            raise ValidationError(f"{name} must contain at least one value", "EMPTY_LIST")

        check = cls.validate_positive if positive else cls.validate_real
        return [check(item, f"{name}[{index}]") for index, item in enumerate(items)]

    @classmethod
    def validate_seed(cls, value: Any) -> Optional[int]:
        """Validate an optional non-negative random seed"""
        if value is None or (isinstance(value, str) and not value.strip()):
            return None

        try:
            seed = int(value)
        except (ValueError, TypeError):
            raise ValidationError(f"seed must be an integer, got {value!r}", "INVALID_SEED")

        if seed < 0:
            raise ValidationError("seed must be non-negative", "INVALID_SEED")

        return seed

    @classmethod
    def validate_window(cls, window: Any) -> tuple:
        """Validate a (lo, hi) frequency window with 0 < lo < hi"""
        try:
            lo, hi = window
        except (ValueError, TypeError):
            raise ValidationError("window must be a (lo, hi) pair", "INVALID_WINDOW")

        lo = cls.validate_positive(lo, "window lower edge")
        hi = cls.validate_positive(hi, "window upper edge")
        if hi <= lo:
            raise ValidationError(f"window ({lo}, {hi}) is empty", "INVALID_WINDOW")

        return lo, hi
