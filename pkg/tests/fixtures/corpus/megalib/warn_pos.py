import warnings


def legacy_sum(xs):
    warnings.warn("legacy_sum is deprecated; use sum", DeprecationWarning)
    return sum(xs)
