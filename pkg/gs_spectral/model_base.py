from abc import ABC, abstractmethod


class ReactionModel(ABC):
    """Common interface for the pointwise right-hand side of a two-species reaction-diffusion system.

    This is an abstract class, you must inherit from it instead of using it directly. Subclasses are **required** to define ``__call__``."""

    @abstractmethod
    def __call__(self, t, x, y, u, v):
        """Evaluate the reaction terms at time ``t`` and points ``(x, y)``.

        ``x``, ``y``, ``u`` and ``v`` are arrays of equal shape holding point coordinates and species values.

        Must return a pair ``(F1, F2)`` of arrays with the same shape."""
        pass


class NoReaction(ReactionModel):
    """Pure diffusion, both reaction terms identically zero."""

    def __call__(self, t, x, y, u, v):
        zeros = u * 0.0
        return zeros, zeros.copy()
