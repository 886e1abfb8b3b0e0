"""Instrumentation hooks: named yield points inside the structures.

Every spin loop and every announcement/completion edge in the library
passes through :func:`fire`.  With no hook installed the cost is one
global load and a branch, so the points stay in release code paths.
Installing a hook enables stall injection (park one thread forever at a
named point) and event recording (combiner pass counts, spin-cell
identity), which is how the progress properties are tested.

Hook installation is single-threaded setup; never install or remove a
hook while worker threads are running.
"""

import threading

_hook = None


def fire(point: str, tid: int, **info) -> None:
    h = _hook
    if h is not None:
        h(point, tid, info)


def install_hook(hook) -> None:
    """Install `hook(point, tid, info)` as the active instrumentation."""
    global _hook
    _hook = hook


def uninstall_hook() -> None:
    global _hook
    _hook = None


class hooked:
    """Context manager form of install/uninstall."""

    def __init__(self, hook):
        self._hook = hook

    def __enter__(self):
        install_hook(self._hook)
        return self._hook

    def __exit__(self, *exc):
        uninstall_hook()
        return False


class HookLog:
    """Records every fired event as (point, tid, info)."""

    def __init__(self, points=None):
        self.events: list[tuple[str, int, dict]] = []
        self._points = frozenset(points) if points is not None else None
        self._lock = threading.Lock()

    def __call__(self, point, tid, info):
        if self._points is None or point in self._points:
            with self._lock:
                self.events.append((point, tid, info))

    def count(self, point: str) -> int:
        with self._lock:
            return sum(1 for p, _, _ in self.events if p == point)


class StallInjector:
    """Parks the victim thread the first time it reaches the named point.

    The victim blocks until :meth:`release` is called, which the harness
    does only after recording its verdict; from the perspective of the
    measured run the victim is halted permanently.  Other threads pass
    through unaffected.
    """

    def __init__(self, victim: int, point: str):
        self.victim = victim
        self.point = point
        self.tripped = threading.Event()
        self._gate = threading.Event()

    def __call__(self, point, tid, info):
        if tid == self.victim and point == self.point and not self._gate.is_set():
            self.tripped.set()
            self._gate.wait()

    def release(self) -> None:
        self._gate.set()
