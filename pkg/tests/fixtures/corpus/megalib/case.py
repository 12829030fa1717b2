def Deprecated(fn):
    return fn


@Deprecated
def mixed_case():
    return None


class Shouting:
    """This class is DEPRECATED, use Quiet."""

    pass
