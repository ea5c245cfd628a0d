from fractions import Fraction


def int_param(params, name, default, errors, lo=None, hi=None):
    """Parse an integer query parameter, appending to errors on failure."""
    raw = params.get(name, default)
    if raw is None:
        errors.append(f"{name} is required")
        return None
    try:
        value = int(raw)
    except (ValueError, TypeError):
        errors.append(f"{name} must be a valid integer")
        return None
    if lo is not None and value < lo:
        errors.append(f"{name} must be at least {lo}")
    if hi is not None and value > hi:
        errors.append(f"{name} must be at most {hi}")
    return value


def fraction_param(params, name, default, errors):
    """Parse a rational query parameter such as '3/4'."""
    raw = params.get(name, default)
    if raw is None:
        return None
    try:
        return Fraction(str(raw))
    except (ValueError, ZeroDivisionError):
        errors.append(f"{name} must be a rational number like 3/4")
        return None


def choice_param(params, name, default, choices, errors):
    value = str(params.get(name, default)).strip().lower()
    if value not in choices:
        errors.append(f"{name} must be one of {', '.join(choices)}")
        return None
    return value
