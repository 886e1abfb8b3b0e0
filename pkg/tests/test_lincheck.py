from synchro.lincheck import (
    HistoryEvent,
    SequentialQueue,
    SequentialStack,
    all_interleavings,
    check_sequential_interleavings,
    linearizable,
)
from synchro.signals import EMPTY


def test_interleaving_counts():
    two_by_two = list(all_interleavings([[("a", 0)] * 2, [("b", 0)] * 2]))
    assert len(two_by_two) == 6
    three_by_two = list(all_interleavings([[("x", 0)] * 2] * 3))
    assert len(three_by_two) == 90
    assert len(set(three_by_two)) == 90


def test_sequential_models():
    s, rv = SequentialStack.step((), "push", 1)
    assert s == (1,) and rv is None
    s, rv = SequentialStack.step(s, "pop", 0)
    assert s == () and rv == 1
    _, rv = SequentialStack.step((), "pop", 0)
    assert rv is EMPTY
    q, rv = SequentialQueue.step((), "enqueue", 1)
    q, _ = SequentialQueue.step(q, "enqueue", 2)
    q, rv = SequentialQueue.step(q, "dequeue", 0)
    assert rv == 1


def _ev(tid, op, arg, rv, t0, t1):
    return HistoryEvent(tid, op, arg, rv, t0, t1)


def test_linearizable_accepts_valid_history():
    # pop overlaps the push and can linearize before it
    events = [
        _ev(0, "push", 1, None, 10, 100),
        _ev(1, "pop", 0, EMPTY, 20, 30),
    ]
    assert linearizable(events, SequentialStack)


def test_linearizable_rejects_lost_push():
    # the pop starts after the push completed: EMPTY is impossible
    events = [
        _ev(0, "push", 1, None, 0, 10),
        _ev(1, "pop", 0, EMPTY, 20, 30),
    ]
    assert not linearizable(events, SequentialStack)


def test_linearizable_rejects_wrong_value():
    events = [
        _ev(0, "push", 1, None, 0, 10),
        _ev(1, "pop", 0, 2, 20, 30),
    ]
    assert not linearizable(events, SequentialStack)


def test_linearizable_rejects_duplicate_pop():
    events = [
        _ev(0, "push", 1, None, 0, 10),
        _ev(0, "pop", 0, 1, 20, 30),
        _ev(1, "pop", 0, 1, 20, 30),
    ]
    assert not linearizable(events, SequentialStack)


def test_linearizable_respects_program_order():
    # same thread: push(1), push(2); a pop by another thread after both
    # completed must return 2
    events = [
        _ev(0, "push", 1, None, 0, 10),
        _ev(0, "push", 2, None, 20, 30),
        _ev(1, "pop", 0, 2, 40, 50),
    ]
    assert linearizable(events, SequentialStack)
    events[2] = _ev(1, "pop", 0, 1, 40, 50)
    assert not linearizable(events, SequentialStack)


def test_queue_model_distinguishes_order():
    events = [
        _ev(0, "enqueue", 1, None, 0, 10),
        _ev(0, "enqueue", 2, None, 20, 30),
        _ev(1, "dequeue", 0, 1, 40, 50),
    ]
    assert linearizable(events, SequentialQueue)
    events[2] = _ev(1, "dequeue", 0, 2, 40, 50)
    assert not linearizable(events, SequentialQueue)


def test_check_sequential_interleavings_catches_bad_impl():
    class NotAStack:
        def __init__(self):
            self.items = []

        def run(self, tid, op, arg):
            if op == "push":
                self.items.append(arg)
                return None
            return self.items.pop(0) if self.items else EMPTY  # FIFO, not LIFO

    programs = [[("push", 1), ("push", 2)], [("pop", 0), ("pop", 0)]]
    try:
        check_sequential_interleavings(
            programs, NotAStack, lambda s, tid, op, arg: s.run(tid, op, arg),
            SequentialStack)
    except AssertionError as exc:
        assert "sequential model" in str(exc)
    else:
        raise AssertionError("FIFO impl passed a LIFO check")


def test_empty_history_is_linearizable():
    assert linearizable([], SequentialStack)
