import warnings


class K:
    def meth(self):
        warnings.warn("K.meth is deprecated; use K.new_meth", DeprecationWarning)
        return None

    def new_meth(self):
        return None
