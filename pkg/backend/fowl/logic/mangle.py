"""Turn arbitrary symbol names into TPTP lower words and variable names."""

import re
from typing import Dict, Iterable, Optional

_LOWER_WORD = re.compile(r"^[a-z][a-zA-Z0-9_]*$")
_UPPER_WORD = re.compile(r"^[A-Z][a-zA-Z0-9_]*$")
_UNSAFE = re.compile(r"[^a-zA-Z0-9_]")


def is_lower_word(name: str) -> bool:
    return bool(_LOWER_WORD.match(name))


def is_upper_word(name: str) -> bool:
    return bool(_UPPER_WORD.match(name))


def mangle_name(name: str) -> str:
    """Rewrite a symbol name into the TPTP lower-word lexical class"""
    if not name:
        return "s_"
    name = name[0].lower() + name[1:]
    name = _UNSAFE.sub("_", name)
    if not name[0].islower():
        # digits, underscores and non-ASCII lowercase letters all land here
        name = f"s_{name}"
    return name


def mangle_variable(name: str) -> str:
    """Rewrite a variable name into the TPTP upper-word lexical class"""
    name = _UNSAFE.sub("_", name)
    if name and name[0].isalpha() and name[0].isascii():
        return name[0].upper() + name[1:]
    return f"V{name}"


class Mangler:
    """Deterministic name mangling with first-seen collision suffixes.

    The same source name always maps to the same mangled name; two source
    names that mangle alike get _2, _3, ... in the order they are seen.
    """

    def __init__(self, reserved: Optional[Iterable[str]] = None):
        self._forward: Dict[str, str] = {}
        self._taken = set(reserved or ())

    def reserve(self, name: str) -> None:
        self._taken.add(name)

    def __contains__(self, name: str) -> bool:
        return name in self._forward

    def fresh(self, name: str) -> str:
        """Mangle name to a result no earlier call has produced"""
        base = mangle_name(name)
        candidate = base
        suffix = 2
        while candidate in self._taken:
            candidate = f"{base}_{suffix}"
            suffix += 1
        self._taken.add(candidate)
        return candidate

    def __call__(self, name: str) -> str:
        if name not in self._forward:
            self._forward[name] = self.fresh(name)
        return self._forward[name]
