import warnings


def maybe_later():
    warnings.warn("maybe_later may go away", PendingDeprecationWarning)
    return None
