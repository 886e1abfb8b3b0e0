"""Announcement records threaded into combining request lists.

Fields are plain attributes on purpose: each field has a single writer
per announcement episode (announcer writes opcode/argument/next, the
serving combiner writes ret/status/wait), and CPython attribute stores
are indivisible with program-order visibility, so the handoff through
`wait`/`status` is safe without per-field locks.  `wait` is the
per-request spin cell.
"""

PENDING = 0
COMPLETED = 1

NO_NEXT = -1


class CombineRequest:
    __slots__ = ("opcode", "argument", "ret", "status", "wait", "next")

    def __init__(self):
        self.opcode = 0
        self.argument = 0
        self.ret = 0
        self.status = COMPLETED  # becomes PENDING on announcement
        self.wait = False
        self.next = NO_NEXT
