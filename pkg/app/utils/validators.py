from app.utils.exceptions import ValidationException

def validate_dimension(d: int, minimum: int, name: str = "d"):
    """
    Validate a dimension parameter
    
    Raises: ValidationException if d is not an integer >= minimum
    """
    if not isinstance(d, int) or isinstance(d, bool):
        raise ValidationException("Validation failed", details={name: "must be an integer"})
    if d < minimum:
        raise ValidationException(
            "Validation failed",
            details={name: f"must be at least {minimum}, got {d}"}
        )

def validate_range(name: str, value: int, low: int, high: int):
    """Validate low <= value <= high"""
    errors = {}
    
    if not isinstance(value, int) or isinstance(value, bool):
        errors[name] = "must be an integer"
    elif value < low or value > high:
        errors[name] = f"must be between {low} and {high}, got {value}"
    
    if errors:
        raise ValidationException("Validation failed", details=errors)

def validate_format(fmt: str):
    """Validate an output format name"""
    if fmt not in ("plain", "json"):
        raise ValidationException("Validation failed", details={"format": f"unknown format '{fmt}'"})
