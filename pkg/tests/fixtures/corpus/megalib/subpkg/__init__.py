from .._decorators import deprecated
from .mod import K


@deprecated
def pkg_level_old():
    return None
