from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any

from .geometry import Polygon, canonical


@dataclass
class Decomposition:
    """Cells claimed to tile the hull, plus construction bookkeeping.

    ``source`` is one of baseline, pm, main, oracle, file.  Nothing here is
    trusted; the verifier decides.
    """

    cells: list[Polygon]
    source: str
    accounting: dict[str, Any] = field(default_factory=dict)
    discrepancies: list[str] = field(default_factory=list)

    def __len__(self) -> int:
        return len(self.cells)

    def canonical_cells(self) -> list[Polygon]:
        return sorted(canonical(c) for c in self.cells)

    def same_cells(self, other: Decomposition) -> bool:
        return self.canonical_cells() == other.canonical_cells()
