from dataclasses import dataclass
from typing import Optional

import numpy as np

from ..core import Objective


@dataclass(frozen=True)
class ProblemEntry:
    """A catalog objective with its standard start and, when known, its solution."""

    name: str
    objective: Objective
    x0: np.ndarray
    f_star: Optional[float] = None
    x_star: Optional[np.ndarray] = None

    @property
    def n(self):
        return self.objective.n
