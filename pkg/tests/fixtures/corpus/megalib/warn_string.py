def shouty():
    print("DeprecationWarning")
    return "DeprecationWarning"
