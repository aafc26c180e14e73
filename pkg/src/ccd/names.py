"""Vertex names.

An atom is a plain string.  A derived name is a non-empty set of
``(name, suffix)`` pairs, where ``suffix`` is ``0`` for epsilon or a
positive integer bounded by the rule's name bound.  Derived names are
what local rules emit; the inner names are usually atoms but may be
derived names themselves when a run keeps names unflattened.
"""

from __future__ import annotations

from typing import Callable, Iterable, Tuple, Union

EPSILON = 0


class Derived(frozenset):
    """A derived vertex name, e.g. ``{u.e, v.1}``."""

    def __new__(cls, pairs: Iterable[Tuple["Name", int]] = ()):
        pairs = frozenset((a, int(s)) for a, s in pairs)
        if not pairs:
            raise ValueError("derived names must contain at least one pair")
        atoms = [a for a, _ in pairs]
        if len(set(atoms)) != len(atoms):
            raise ValueError(f"derived name repeats an atom: {sorted(pairs, key=_pair_key)}")
        return super().__new__(cls, pairs)

    def sorted_pairs(self):
        return sorted(self, key=_pair_key)

    def __repr__(self):
        return "{" + ", ".join(f"{format_name(a)}.{suffix_str(s)}" for a, s in self.sorted_pairs()) + "}"


Name = Union[str, Derived]


def dname(*pairs) -> Derived:
    """Shorthand: ``dname(("u", 0), ("v", 1))``; a bare string means ``(s, EPSILON)``."""
    return Derived((p, EPSILON) if isinstance(p, str) else p for p in pairs)


def eps(name: Name) -> Derived:
    return Derived([(name, EPSILON)])


def suffix_str(s: int) -> str:
    return "e" if s == EPSILON else str(s)


def parse_suffix(s) -> int:
    if s in ("e", "", None, 0):
        return EPSILON
    value = int(s)
    if value < 1:
        raise ValueError(f"bad suffix {s!r}")
    return value


def name_key(name: Name):
    """Total order on names; atoms sort before derived names."""
    if isinstance(name, Derived):
        return (1, tuple(_pair_key(p) for p in name.sorted_pairs()))
    return (0, name)


def _pair_key(pair):
    return (name_key(pair[0]), pair[1])


def sort_names(names: Iterable[Name]) -> list:
    return sorted(names, key=name_key)


def format_name(name: Name) -> str:
    """Canonical serialization of a name as a single string.

    ``{(u, e)}`` becomes ``u.e`` and multi-pair names are bracketed,
    ``[u.1+v.e]``.  Injective on names whose atoms are themselves
    produced by this function or contain none of ``.+[]``.
    """
    if not isinstance(name, Derived):
        return name
    parts = [f"{format_name(a)}.{suffix_str(s)}" for a, s in name.sorted_pairs()]
    if len(parts) == 1:
        return parts[0]
    return "[" + "+".join(parts) + "]"


def atoms_of(name: Name) -> set:
    """Outermost atoms referenced by a derived name (the name itself for atoms)."""
    if isinstance(name, Derived):
        return {a for a, _ in name}
    return {name}


def max_suffix(name: Name) -> int:
    if isinstance(name, Derived):
        return max(s for _, s in name)
    return EPSILON


def rename_star(name: Name, rename: Callable[[Name], Name]) -> Name:
    """R* on one name: rename the inner names of a derived name, keep suffixes."""
    if isinstance(name, Derived):
        return Derived((rename(a), s) for a, s in name)
    return rename(name)


def to_json(name: Name):
    if isinstance(name, Derived):
        return [[to_json(a), suffix_str(s)] for a, s in name.sorted_pairs()]
    return name


def from_json(obj) -> Name:
    if isinstance(obj, str):
        return obj
    if isinstance(obj, list) and obj:
        return Derived((from_json(a), parse_suffix(s)) for a, s in obj)
    raise ValueError(f"malformed vertex name: {obj!r}")
