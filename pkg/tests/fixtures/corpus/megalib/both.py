from ._decorators import deprecated


@deprecated("DoubleMarked is deprecated")
class DoubleMarked:
    """Deprecated in 2.0, use SingleMarked."""

    pass
