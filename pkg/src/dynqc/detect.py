"""Neighbourhood-thresholding extraction of a candidate quasi-clique."""

from __future__ import annotations

from dataclasses import dataclass

from .graph import InputError

# absorbs float round-off when a sketch estimate lands exactly on gamma
THRESHOLD_EPS = 1e-12


@dataclass(frozen=True)
class DetectParams:
    gamma: float = 0.9
    b: float = 0.6
    alpha: float = 0.8

    def __post_init__(self):
        for name in ("gamma", "b", "alpha"):
            val = getattr(self, name)
            if not 0.0 < val <= 1.0:
                raise InputError(f"{name} must lie in (0, 1], got {val}")

    @property
    def density_bound(self) -> float:
        """Guaranteed density of an exact-backend extraction: 1 - (1 - gamma) / b."""
        return 1.0 - (1.0 - self.gamma) / self.b

    def validate(self) -> None:
        # exact-backend output then provably has density >= alpha
        if self.density_bound < self.alpha:
            raise InputError(
                f"constraint 1 - (1 - gamma)/b >= alpha violated: "
                f"1 - (1 - {self.gamma})/{self.b} = {self.density_bound:.4f} < alpha = {self.alpha}"
            )


def detect(graph, u: int, params: DetectParams, backend) -> set[int]:
    """Members of N(u) whose containment score against ``u`` reaches gamma.

    Returns the empty set when fewer than ``b * |N(u)|`` neighbours survive.
    ``u`` itself always survives (its score is 1).
    """
    size_u = len(graph.adj[u]) + 1
    chosen = backend.select(u, params.gamma - THRESHOLD_EPS)
    if (len(chosen) - 1) / size_u < params.b:
        return set()
    return chosen
