def deprecate_kwarg(old_name, new_name):
    def wrap(fn):
        return fn
    return wrap
