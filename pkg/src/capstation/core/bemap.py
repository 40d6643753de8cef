"""Component identities, tagged values, and the key-value map construct.

A description map behaves like a finite map with unique keys but is
semantically a conjunction of key=>value implications, which `to_term`
makes explicit.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Iterable, Optional, Tuple

from ..errors import DuplicateKeyError
from .geometry import Box3D
from .terms import Atom, BigAnd, Implies, Xor


@dataclass(frozen=True, order=True)
class ComponentId:
    """Unique name of a device or concept; equality is exact string equality."""

    id: str

    def __post_init__(self):
        if not isinstance(self.id, str) or not self.id:
            raise ValueError("component id must be a non-empty string")

    def __str__(self) -> str:
        return self.id


class ValueKind(enum.Enum):
    STRING = "string"
    INTEGER = "integer"
    BOX = "box"
    VARIATIONS = "variations"
    SIGNAL_MAP = "signal-mapping"
    STATE = "state"


@dataclass(frozen=True)
class ComponentValue:
    """Tagged scalar attached to a description key.

    The tag is derived from the payload type: string, integer, occupancy
    box, exclusive-or of values (a variation set), signal mapping, or a
    device state.  Exactly one payload is present by construction.
    """

    value: object

    def __post_init__(self):
        self.kind  # reject unsupported payloads eagerly

    @property
    def kind(self) -> ValueKind:
        v = self.value
        if isinstance(v, str):
            return ValueKind.STRING
        if isinstance(v, bool):
            raise TypeError("boolean payloads are not supported")
        if isinstance(v, int):
            return ValueKind.INTEGER
        if isinstance(v, Box3D):
            return ValueKind.BOX
        if isinstance(v, Xor):
            return ValueKind.VARIATIONS
        # device-layer payloads, matched structurally to keep this module
        # independent of the device metamodel
        if hasattr(v, "high") and hasattr(v, "low"):
            return ValueKind.SIGNAL_MAP
        if hasattr(v, "name") and hasattr(v, "signal"):
            return ValueKind.STATE
        raise TypeError(f"unsupported component value payload: {v!r}")


Entry = Tuple[ComponentId, ComponentValue]


@dataclass(frozen=True)
class BeMapKV:
    """Ordered key-value entries with pairwise-distinct keys."""

    entries: tuple = field(default=())

    def __post_init__(self):
        object.__setattr__(self, "entries", tuple(self.entries))
        seen = set()
        for key, _ in self.entries:
            if key in seen:
                raise DuplicateKeyError(key)
            seen.add(key)

    def get(self, key: ComponentId) -> Optional[ComponentValue]:
        """Value of the unique entry with a matching key, or None."""
        for k, v in self.entries:
            if k == key:
                return v
        return None

    def __contains__(self, key: ComponentId) -> bool:
        return self.get(key) is not None

    def __len__(self) -> int:
        return len(self.entries)

    def keys(self) -> tuple:
        return tuple(k for k, _ in self.entries)

    @property
    def premises(self) -> frozenset:
        return frozenset(k for k, _ in self.entries)

    @property
    def conclusions(self) -> frozenset:
        return frozenset(v for _, v in self.entries)

    @property
    def elements(self) -> frozenset:
        return self.premises | self.conclusions

    def to_term(self) -> BigAnd:
        """The map as a conjunction of key=>value implications."""
        return BigAnd(tuple(Implies(Atom(k), Atom(v)) for k, v in self.entries))


def build_bemap(entries: Iterable[Entry]) -> BeMapKV:
    """Build a map, rejecting duplicate keys and preserving entry order."""
    return BeMapKV(tuple(entries))
