from pathlib import Path

from django.core.exceptions import ValidationError

from .gint import GaussianInt


class InputValidator:
    @staticmethod
    def validate_gaussian(text: str) -> GaussianInt:
        try:
            return GaussianInt.parse(str(text))
        except ValueError:
            raise ValidationError(f"Not a Gaussian integer: {text!r} (expected forms like 3, -2i, 3-2i)")

    @staticmethod
    def validate_nonzero_gaussian(text: str) -> GaussianInt:
        value = InputValidator.validate_gaussian(text)
        if not value:
            raise ValidationError("Modulus must be a nonzero Gaussian integer")
        return value

    @staticmethod
    def validate_positive_int(value: int, name: str, max_value: int | None = None) -> int:
        if not isinstance(value, int) or isinstance(value, bool):
            raise ValidationError(f"{name} must be an integer")
        if value < 1:
            raise ValidationError(f"{name} must be positive")
        if max_value is not None and value > max_value:
            raise ValidationError(f"{name} must be at most {max_value}")
        return value

    @staticmethod
    def validate_positive_float(value: float, name: str) -> float:
        if not isinstance(value, (int, float)) or value != value:
            raise ValidationError(f"{name} must be a number")
        if value <= 0:
            raise ValidationError(f"{name} must be positive")
        return float(value)

    @staticmethod
    def validate_eigenvalue_path(path: str | None) -> str | None:
        if path is None:
            return None
        if not Path(path).is_file():
            raise ValidationError(f"Eigenvalue file not found: {path}")
        return path

    @staticmethod
    def validate_format(value: str) -> str:
        valid = ['json', 'csv']
        if value.lower() not in valid:
            raise ValidationError(f"Format must be one of: {', '.join(valid)}")
        return value.lower()
