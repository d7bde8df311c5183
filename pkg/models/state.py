from collections.abc import Iterable
from dataclasses import dataclass

import numpy as np

RED = 1
WHITE = 0
BLUE = -1


@dataclass(eq=False)
class SpinState:
    """
    Tri-state opinion vector of one realization.

    sigma holds +1 (red), -1 (blue) or 0 (white); fixed nodes keep their assigned value.
    """

    sigma: np.ndarray
    fixed_mask: np.ndarray

    @classmethod
    def white_option(
        cls, n_nodes: int, red_nodes: Iterable[int], blue_nodes: Iterable[int]
    ) -> "SpinState":
        """All non-fixed nodes start white, red/blue groups are pinned."""
        sigma = np.zeros(n_nodes, dtype=np.int8)
        fixed_mask = np.zeros(n_nodes, dtype=np.bool_)
        red = np.fromiter(red_nodes, dtype=np.int64)
        blue = np.fromiter(blue_nodes, dtype=np.int64)
        sigma[red] = RED
        sigma[blue] = BLUE
        fixed_mask[red] = True
        fixed_mask[blue] = True
        return cls(sigma=sigma, fixed_mask=fixed_mask)

    @property
    def free_nodes(self) -> np.ndarray:
        return np.flatnonzero(~self.fixed_mask)

    def copy(self) -> "SpinState":
        return SpinState(sigma=self.sigma.copy(), fixed_mask=self.fixed_mask)

    def counts(self) -> tuple[int, int, int]:
        """Return (n_red, n_blue, n_white) over the free nodes; fixed nodes are not counted."""
        free = self.sigma[~self.fixed_mask]
        n_red = int(np.count_nonzero(free == RED))
        n_blue = int(np.count_nonzero(free == BLUE))
        return n_red, n_blue, int(free.shape[0]) - n_red - n_blue
