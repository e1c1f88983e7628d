"""Tabular experiment output and its CSV serialisation."""
from dataclasses import dataclass, field
import io

import numpy as np

__all__ = ["ExperimentResult", "format_float"]


def format_float(x):
    """17 significant digits, enough to round-trip an IEEE double."""
    return f"{float(x):.17g}"


@dataclass
class ExperimentResult:
    """A named table of numeric samples plus free-form metadata.

    ``rows`` is a 2-D float array whose column count matches ``columns``.
    """

    name: str
    columns: list
    rows: np.ndarray
    metadata: dict = field(default_factory=dict)

    def __post_init__(self):
        self.rows = np.atleast_2d(np.asarray(self.rows, dtype=float))
        if self.rows.size == 0:
            self.rows = self.rows.reshape(0, len(self.columns))
        if self.rows.shape[1] != len(self.columns):
            raise ValueError(
                f"{self.rows.shape[1]} data columns but {len(self.columns)} names")

    def __len__(self):
        return self.rows.shape[0]

    def column(self, name):
        return self.rows[:, self.columns.index(name)]

    def to_csv(self, comments=()):
        """Render as CSV text; ``comments`` become trailing ``#`` lines."""
        buf = io.StringIO()
        buf.write(",".join(self.columns) + "\n")
        for row in self.rows:
            buf.write(",".join(format_float(v) for v in row) + "\n")
        for key in sorted(self.metadata):
            buf.write(f"# {key} = {self.metadata[key]}\n")
        for line in comments:
            buf.write(f"# {line}\n")
        return buf.getvalue()
