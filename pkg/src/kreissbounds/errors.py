"""Exception and warning types shared across the package."""


class NonConvergence(Exception):
    """Eigenvalue iteration failed to converge."""


class SingularResolvent(Exception):
    """Resolvent requested at (or numerically indistinguishable from) a spectrum point."""


class SpectrumOnCircle(Exception):
    """Operation requires the spectrum strictly inside the open unit disk."""


class PoleHit(Exception):
    """Evaluation point collides with a pole of the expression."""


class HypothesisViolation(Exception):
    """Instance does not satisfy the hypothesis of the requested inequality."""


class ConditioningWarning(UserWarning):
    """Nearly confluent poles detected; derivative-based formulas engaged."""
