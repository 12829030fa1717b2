class Mean:
    """Compute the mean."""

    def value(self, xs):
        return sum(xs) / len(xs)
