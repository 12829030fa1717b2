from . import util


@util.deprecate_kwarg(old_name="x", new_name="y")
def renamed_kwarg(y=None):
    return y
