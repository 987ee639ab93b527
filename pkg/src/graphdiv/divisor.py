"""Integer chip configurations on a model."""

from __future__ import annotations

from typing import Mapping

from .graph import GraphError, Model


class DivisorError(ValueError):
    code = "validation"


class Divisor:
    """Chips on the vertices of a :class:`Model`, stored densely in model order.

    Immutable and hashable.  ``D[name]`` returns the chip count at a vertex;
    ``D.chips`` is the sparse ``{name: count}`` view.
    """

    __slots__ = ("model", "values", "_hash")

    def __init__(self, model: Model, values):
        values = tuple(int(x) for x in values)
        if len(values) != len(model.vertices):
            raise DivisorError(f"expected {len(model.vertices)} chip counts, got {len(values)}")
        self.model = model
        self.values = values
        self._hash = None

    @classmethod
    def from_chips(cls, model: Model, chips: Mapping[str, int] | None = None) -> Divisor:
        values = [0] * len(model.vertices)
        for v, c in (chips or {}).items():
            try:
                values[model.index[v]] += int(c)
            except KeyError:
                raise DivisorError(f"unknown vertex {v!r}") from None
        return cls(model, values)

    @classmethod
    def from_points(cls, model: Model, points) -> Divisor:
        """Sum of one chip per listed vertex (repeats add up)."""
        values = [0] * len(model.vertices)
        for v in points:
            try:
                values[model.index[v]] += 1
            except KeyError:
                raise DivisorError(f"unknown vertex {v!r}") from None
        return cls(model, values)

    @classmethod
    def zero(cls, model: Model) -> Divisor:
        return cls(model, [0] * len(model.vertices))

    @property
    def chips(self) -> dict[str, int]:
        names = self.model.vertices
        return {names[i]: c for i, c in enumerate(self.values) if c}

    @property
    def degree(self) -> int:
        return sum(self.values)

    @property
    def support(self) -> tuple[str, ...]:
        names = self.model.vertices
        return tuple(names[i] for i, c in enumerate(self.values) if c)

    def is_effective(self) -> bool:
        return min(self.values) >= 0

    def __getitem__(self, vertex: str) -> int:
        return self.values[self.model.index[vertex]]

    def _check(self, other: Divisor):
        if not isinstance(other, Divisor):
            return NotImplemented
        if other.model != self.model:
            raise DivisorError("divisors live on different models")

    def __add__(self, other: Divisor) -> Divisor:
        self._check(other)
        return Divisor(self.model, [a + b for a, b in zip(self.values, other.values)])

    def __sub__(self, other: Divisor) -> Divisor:
        self._check(other)
        return Divisor(self.model, [a - b for a, b in zip(self.values, other.values)])

    def __neg__(self) -> Divisor:
        return Divisor(self.model, [-a for a in self.values])

    def __eq__(self, other):
        return isinstance(other, Divisor) and self.model == other.model and self.values == other.values

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.model, self.values))
        return self._hash

    def __repr__(self):
        terms = " + ".join(f"{c}*{v}" if c != 1 else v for v, c in self.chips.items())
        return f"Divisor({terms or '0'})"


def canonical_divisor(model: Model) -> Divisor:
    """valence(v) - 2 chips at every model vertex."""
    return Divisor(model, [model.valence(i) - 2 for i in range(len(model.vertices))])


def point(model: Model, vertex: str) -> Divisor:
    if vertex not in model.index:
        raise GraphError(f"unknown vertex {vertex!r}")
    return Divisor.from_points(model, [vertex])
