"""Positive and definite Boolean functions as extensional model sets.

A model of an n-ary Boolean function is a tuple of n truth values, read
with argument position 1 as the most significant binary digit.  Model
sets are truth tables packed into ints (see ``_kernel``).  An abstract
value carries a domain tag: ``pos`` admits every set containing the
all-ones model, ``def`` additionally requires closure under pairwise
model intersection.  The empty set is the lifted bottom in both tags.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

from . import _kernel as kern


class Domain(str, Enum):
    """Domain tag of an abstract value."""

    POS = "pos"
    DEF = "def"

    def __str__(self) -> str:  # "pos"/"def" in messages and output
        return self.value


class StructureError(ValueError):
    """Width, tag, index, or permutation misuse in a domain operation."""


@dataclass(frozen=True, order=True)
class Model:
    """One truth assignment, as an ordered bit tuple (MSB first)."""

    bits: tuple[int, ...]

    def __post_init__(self):
        if len(self.bits) == 0:
            raise StructureError("models must have width >= 1")
        if any(b not in (0, 1) for b in self.bits):
            raise StructureError(f"model bits must be 0 or 1: {self.bits!r}")

    @classmethod
    def from_value(cls, width: int, value: int) -> Model:
        if width < 1:
            raise StructureError("models must have width >= 1")
        if not 0 <= value < (1 << width):
            raise StructureError(f"model value {value} out of range for width {width}")
        return cls(tuple((value >> (width - 1 - k)) & 1 for k in range(width)))

    @property
    def width(self) -> int:
        return len(self.bits)

    @property
    def value(self) -> int:
        """The bits read as a binary number, position 1 most significant."""
        v = 0
        for b in self.bits:
            v = (v << 1) | b
        return v

    def __and__(self, other: Model) -> Model:
        return model_and(self, other)

    def __str__(self) -> str:
        return "".join(str(b) for b in self.bits)


def model_and(m1: Model, m2: Model) -> Model:
    """Componentwise conjunction of two models of equal width."""
    if m1.width != m2.width:
        raise StructureError(f"width mismatch: {m1.width} vs {m2.width}")
    return Model(tuple(a & b for a, b in zip(m1.bits, m2.bits)))


def model_value(m: Model) -> int:
    """The model's value as a binary number (MSB = position 1)."""
    return m.value


def nth_model(width: int, i: int) -> Model:
    """The width-bit model whose value is i."""
    return Model.from_value(width, i)


@dataclass(frozen=True)
class ModelSet:
    """A finite set of equal-width models, packed as a truth table."""

    width: int
    table: int

    def __post_init__(self):
        if self.width < 1:
            raise StructureError("model sets must have width >= 1")
        if not 0 <= self.table <= kern.full_mask(self.width):
            raise StructureError("table has bits outside the model space")

    @classmethod
    def from_models(cls, width: int, models) -> ModelSet:
        table = 0
        for m in models:
            if m.width != width:
                raise StructureError(f"model {m} has width {m.width}, expected {width}")
            table |= 1 << m.value
        return cls(width, table)

    @classmethod
    def from_values(cls, width: int, values) -> ModelSet:
        table = 0
        full = kern.full_mask(width)
        for v in values:
            bit = 1 << v
            if v < 0 or bit > full:
                raise StructureError(f"model value {v} out of range for width {width}")
            table |= bit
        return cls(width, table)

    def values(self) -> list[int]:
        """Member model values, ascending."""
        return kern.indices(self.table)

    def __len__(self) -> int:
        return kern.count(self.table)

    def __contains__(self, m: Model) -> bool:
        return m.width == self.width and (self.table >> m.value) & 1 == 1

    def __iter__(self):
        for v in self.values():
            yield Model.from_value(self.width, v)

    def render(self) -> str:
        """Comma-separated bit strings, sorted by value."""
        return ",".join(format(v, f"0{self.width}b") for v in self.values())


def down_set(m: Model) -> ModelSet:
    """All models of m's width with value <= value(m)."""
    return ModelSet(m.width, (1 << (m.value + 1)) - 1)


def intersection_close(s: ModelSet) -> ModelSet:
    """Least superset of s closed under pairwise model conjunction."""
    return ModelSet(s.width, kern.closure(s.table))


def is_intersection_closed(s: ModelSet) -> bool:
    return kern.is_closed(s.table)


@dataclass(frozen=True)
class AbsFun:
    """A width-tagged model set with a domain tag.

    The constructor enforces the cheap invariants (matching widths,
    positivity of non-empty sets).  Closure of def-tagged sets is
    maintained by the operations that build them and is checked by the
    test suite and the verify command, not on every construction.
    """

    width: int
    models: ModelSet
    tag: Domain

    def __post_init__(self):
        if self.models.width != self.width:
            raise StructureError(
                f"model set width {self.models.width} != function width {self.width}"
            )
        if self.models.table and not self._has_all_ones():
            raise StructureError("non-empty value lacks the all-ones model")

    def _has_all_ones(self) -> bool:
        return (self.models.table >> ((1 << self.width) - 1)) & 1 == 1

    @classmethod
    def bottom(cls, width: int, tag: Domain) -> AbsFun:
        return cls(width, ModelSet(width, 0), tag)

    @classmethod
    def top(cls, width: int, tag: Domain) -> AbsFun:
        return cls(width, ModelSet(width, kern.full_mask(width)), tag)

    @classmethod
    def from_values(cls, width: int, values, tag: Domain) -> AbsFun:
        return cls(width, ModelSet.from_values(width, values), tag)

    @property
    def table(self) -> int:
        return self.models.table

    def is_bottom(self) -> bool:
        return self.models.table == 0

    def is_top(self) -> bool:
        return self.models.table == kern.full_mask(self.width)

    def _check_binop(self, other: AbsFun) -> None:
        if self.width != other.width:
            raise StructureError(f"width mismatch: {self.width} vs {other.width}")
        if self.tag != other.tag:
            raise StructureError(f"tag mismatch: {self.tag} vs {other.tag}")

    def meet(self, other: AbsFun) -> AbsFun:
        """Conjunction: model-set intersection."""
        self._check_binop(other)
        return AbsFun(self.width, ModelSet(self.width, self.table & other.table), self.tag)

    def join(self, other: AbsFun) -> AbsFun:
        """Least upper bound: union under pos, closed union under def."""
        self._check_binop(other)
        table = self.table | other.table
        if self.tag is Domain.DEF:
            table = kern.closure(table)
        return AbsFun(self.width, ModelSet(self.width, table), self.tag)

    def exists(self, var_index: int) -> AbsFun:
        """Existentially quantify the argument position (it becomes don't-care)."""
        if not 1 <= var_index <= self.width:
            raise StructureError(f"position {var_index} out of range for width {self.width}")
        table = kern.exists_coord(self.table, self.width, self.width - var_index)
        if self.tag is Domain.DEF:
            # closed sets stay closed under elimination; re-close defensively
            table = kern.closure(table)
        return AbsFun(self.width, ModelSet(self.width, table), self.tag)

    def rename(self, perm: dict[int, int]) -> AbsFun:
        """Permute argument positions; perm maps old position to new."""
        if sorted(perm) != list(range(1, self.width + 1)) or sorted(
            perm.values()
        ) != list(range(1, self.width + 1)):
            raise StructureError(f"not a bijection on 1..{self.width}: {perm!r}")
        dest = tuple(self.width - perm[self.width - c] for c in range(self.width))
        table = kern.permute_coords(self.table, self.width, dest)
        return AbsFun(self.width, ModelSet(self.width, table), self.tag)

    def entails(self, other: AbsFun) -> bool:
        """Model-set inclusion; compares across tags."""
        if self.width != other.width:
            raise StructureError(f"width mismatch: {self.width} vs {other.width}")
        return self.table | other.table == other.table

    def equals(self, other: AbsFun) -> bool:
        """Model-set equality; compares across tags."""
        if self.width != other.width:
            raise StructureError(f"width mismatch: {self.width} vs {other.width}")
        return self.table == other.table

    def ground_positions(self) -> tuple[int, ...]:
        """Positions that are 1 in every model (all positions when bottom)."""
        acc = kern.common_ones(self.table, self.width)
        return tuple(j for j in range(1, self.width + 1) if (acc >> (self.width - j)) & 1)

    def render(self) -> str:
        return self.models.render()


def iff_conj(target: int, sources, width: int, tag: Domain = Domain.DEF) -> AbsFun:
    """The groundness constraint of one equation: bit(target) <-> AND bits(sources).

    Empty sources constrain the target to 1.  The result is definite, so
    any tag is admissible.
    """
    positions = (target, *sources)
    for p in positions:
        if not 1 <= p <= width:
            raise StructureError(f"position {p} out of range for width {width}")
    table = kern.iff_conj_mask(
        width, width - target, tuple(width - s for s in set(sources))
    )
    return AbsFun(width, ModelSet(width, table), tag)


def chain_element(width: int, index: int) -> AbsFun:
    """Element `index` of the canonical maximal def chain over `width` bits.

    Element 0 is bottom; element i (0 < i < 2^width - 1) holds the i
    smallest models plus the all-ones model; the last element is top.
    The chain climbs from bottom to top in exactly 2^width - 1 strict
    steps, all inside the def domain.
    """
    size = 1 << width
    if not 0 <= index <= size - 1:
        raise StructureError(f"chain index {index} out of range for width {width}")
    if index == 0:
        table = 0
    elif index == size - 1:
        table = kern.full_mask(width)
    else:
        table = ((1 << index) - 1) | (1 << (size - 1))
    return AbsFun(width, ModelSet(width, table), Domain.DEF)
