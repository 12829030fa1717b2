import lib.a as la
from lib.a import old_fn
from lib.b import g as warn_g

la.old_fn()
warn_g()
old_fn()


def g():
    pass


g()
