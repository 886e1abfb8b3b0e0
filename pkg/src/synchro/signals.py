"""Out-of-band status signals.

Queue values are arbitrary 64-bit words, so emptiness and lookup misses
are reported with distinct sentinels rather than reserved values.
Compare with ``is``.
"""


class _Signal:
    __slots__ = ("_name",)

    def __init__(self, name: str):
        self._name = name

    def __repr__(self) -> str:
        return self._name


EMPTY = _Signal("EMPTY")
NOT_FOUND = _Signal("NOT_FOUND")
