"""synchro: shared-memory concurrent data structures and a benchmark harness.

Layers:

- ``synchro.runtime``   — atomic words, barriers, thread teams, node
  pools, seeded local work, timing, instrumentation hooks
- ``synchro.combining`` — CC-Synch, DSM-Synch, H-Synch, Oyama, PSim
- ``synchro.queues``    — CC/DSM/H/Sim/CLH/MS concurrent FIFO queues
- ``synchro.stacks``    — CC/DSM/H/Sim/CLH/LF concurrent LIFO stacks
- ``synchro.locks``     — CLH and MCS queue locks
- ``synchro.hashmap``   — per-bucket CLH-locked and DSM-Synch hash tables
- ``synchro.bench``     — benchmark + correctness CLI (`synchro-bench`)

Everything targets 64-bit words; see the README for the concurrency
model this library assumes from CPython.
"""

__version__ = "0.1.0"
