"""Finite products of chain rings and fields, described by their ideal lattices.

A ring ``R = R_1 x ... x R_m`` with finitely many ideals, where every ``R_i``
is a local principal ideal ring, is determined (as far as its ideal lattice
goes) by the number ``n_i`` of non-trivial ideals of each component.  The
ideals of ``R_i`` form a chain ``0 < I_1 < ... < I_{n_i} < R_i`` and an ideal
of ``R`` is a vector of levels, one per component:

    0           the zero ideal of the component
    1 .. n_i    the chain ideal I_k
    n_i + 1     the whole component

A field is a component with ``n_i = 0``.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from enum import Enum
from itertools import product

from .errors import (
    EmptySpecError,
    LengthMismatchError,
    NoComplementVertexError,
    NotAFieldError,
    OverflowingSpecError,
    SpecSyntaxError,
)

#: Largest number of non-trivial ideals accepted by default.
DEFAULT_MAX_VERTICES = 2**24

Ideal = tuple[int, ...]

_COMPONENT = re.compile(r"^(?:F|C([0-9]+))$")

GRAMMAR = 'component ("," component)*  where component is F (field) or C<k>, k >= 1'


class Family(Enum):
    """Ring shapes for which closed-form results exist."""

    FIELDS = "fields"  # n >= 3 fields, no chain rings
    PIR = "pir"  # m >= 2 chain rings, no fields
    MIXED = "mixed"  # m >= 1 chain rings and n >= 1 fields


@dataclass(frozen=True)
class RingSpec:
    chain_lengths: tuple[int, ...]

    def __post_init__(self):
        lengths = tuple(self.chain_lengths)
        object.__setattr__(self, "chain_lengths", lengths)
        if not lengths:
            raise EmptySpecError("a ring spec needs at least one component")
        for k in lengths:
            if not isinstance(k, int) or isinstance(k, bool) or k < 0:
                raise ValueError(f"chain lengths must be non-negative integers, got {k!r}")

    def __len__(self) -> int:
        return len(self.chain_lengths)

    def __str__(self) -> str:
        return ",".join("F" if k == 0 else f"C{k}" for k in self.chain_lengths)

    @property
    def tops(self) -> tuple[int, ...]:
        """Level of the whole component, per component."""
        return tuple(k + 1 for k in self.chain_lengths)

    @property
    def field_positions(self) -> tuple[int, ...]:
        return tuple(i for i, k in enumerate(self.chain_lengths) if k == 0)

    @property
    def chain_positions(self) -> tuple[int, ...]:
        return tuple(i for i, k in enumerate(self.chain_lengths) if k > 0)

    @property
    def num_chain(self) -> int:
        """``m``: number of components that are not fields."""
        return len(self.chain_positions)

    @property
    def num_fields(self) -> int:
        """``n``: number of field components."""
        return len(self.field_positions)

    @property
    def ideal_count(self) -> int:
        """Number of ideals of the product, trivial ones included."""
        return math.prod(k + 2 for k in self.chain_lengths)

    @property
    def family(self) -> Family | None:
        m, n = self.num_chain, self.num_fields
        if m == 0 and n >= 3:
            return Family.FIELDS
        if m >= 2 and n == 0:
            return Family.PIR
        if m >= 1 and n >= 1:
            return Family.MIXED
        return None


def check_vertex_bound(spec: RingSpec, max_vertices: int = DEFAULT_MAX_VERTICES) -> None:
    count = vertex_count(spec)
    if count > max_vertices:
        raise OverflowingSpecError(
            f"{spec} has {count} non-trivial ideals, above the bound {max_vertices}"
        )


def parse_ring_spec(text: str, max_vertices: int = DEFAULT_MAX_VERTICES) -> RingSpec:
    """Parse ``"C2, F, F"`` style strings.

    >>> parse_ring_spec("C2,C1").chain_lengths
    (2, 1)
    """
    if text is None or not text.strip():
        raise EmptySpecError(f"empty ring spec; expected {GRAMMAR}")
    lengths = []
    for token in text.split(","):
        token = token.strip()
        match = _COMPONENT.match(token)
        if match is None:
            raise SpecSyntaxError(f"bad component {token!r}; expected {GRAMMAR}")
        if match.group(1) is None:
            lengths.append(0)
        else:
            k = int(match.group(1))
            if k < 1:
                raise SpecSyntaxError(f"chain ring C{k} needs k >= 1; use F for a field")
            lengths.append(k)
    spec = RingSpec(tuple(lengths))
    check_vertex_bound(spec, max_vertices)
    return spec


def vertex_count(spec: RingSpec) -> int:
    """Number of non-trivial ideals, ``prod(n_i + 2) - 2``."""
    return spec.ideal_count - 2


def enumerate_ideals(spec: RingSpec) -> list[Ideal]:
    """All non-trivial ideals, in lexicographic order of their level vectors."""
    zero = tuple(0 for _ in spec.chain_lengths)
    whole = spec.tops
    return [
        levels
        for levels in product(*(range(t + 1) for t in whole))
        if levels != zero and levels != whole
    ]


def properly_contains(a: Ideal, b: Ideal) -> bool:
    """True iff ``b`` is a proper subideal of ``a``."""
    if len(a) != len(b):
        raise LengthMismatchError(f"ideals of different rings: {a} vs {b}")
    return a != b and all(y <= x for x, y in zip(a, b))


def comparable(a: Ideal, b: Ideal) -> bool:
    """Adjacency in the inclusion ideal graph."""
    return properly_contains(a, b) or properly_contains(b, a)


def complement(spec: RingSpec, ideal: Ideal) -> Ideal:
    """Whole component where ``ideal`` is zero, zero everywhere else.

    Non-zero levels that are not the whole component also map to zero, so the
    result always lies in M.
    """
    if len(ideal) != len(spec):
        raise LengthMismatchError(f"{ideal} does not have {len(spec)} components")
    result = tuple(top if level == 0 else 0 for level, top in zip(ideal, spec.tops))
    if not any(result):
        raise NoComplementVertexError(f"{ideal} has no zero component; its complement is 0")
    return result


def is_in_m(spec: RingSpec, ideal: Ideal) -> bool:
    """Every component is either zero or the whole component ring."""
    return all(level in (0, top) for level, top in zip(ideal, spec.tops))


def nzc(ideal: Ideal) -> int:
    """Number of zero components."""
    return sum(1 for level in ideal if level == 0)


def minimal_ideal(spec: RingSpec, i: int) -> Ideal:
    """``X_i``: the field in slot ``i`` (1-based) and zero elsewhere."""
    if not 1 <= i <= len(spec):
        raise IndexError(f"component index {i} outside 1..{len(spec)}")
    if spec.chain_lengths[i - 1] != 0:
        raise NotAFieldError(f"component {i} of {spec} is not a field")
    return tuple(1 if j == i - 1 else 0 for j in range(len(spec)))


def component_label(spec: RingSpec, position: int, level: int) -> str:
    if level == 0:
        return "0"
    if level == spec.tops[position]:
        return "F" if spec.chain_lengths[position] == 0 else "R"
    return f"I{level}"


def render_ideal(spec: RingSpec, ideal: Ideal, sep: str = " x ") -> str:
    """Product notation, e.g. ``0 x I2 x R``."""
    return sep.join(component_label(spec, i, level) for i, level in enumerate(ideal))


def short_label(spec: RingSpec, ideal: Ideal) -> str:
    """``X3`` / ``X3^c`` for minimal field ideals and their complements, else product notation."""
    for i in spec.field_positions:
        x = minimal_ideal(spec, i + 1)
        if ideal == x:
            return f"X{i + 1}"
        if len(spec) > 1 and ideal == complement(spec, x):
            return f"X{i + 1}^c"
    return render_ideal(spec, ideal)
