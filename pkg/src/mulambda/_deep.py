"""Run recursive passes on a thread with a large stack."""

import sys
import threading

STACK_BYTES = 512 * 1024 * 1024
RECURSION_LIMIT = 200_000

_lock = threading.Lock()
_state = threading.local()


def call_deep(fn, *args, **kwargs):
    """Call ``fn(*args, **kwargs)`` with deep recursion allowed.

    Exceptions raised by `fn` propagate to the caller. Nested calls run
    inline on the already deep thread.
    """
    if getattr(_state, "deep", False):
        return fn(*args, **kwargs)
    outcome = {}

    def target():
        _state.deep = True
        try:
            outcome["value"] = fn(*args, **kwargs)
        except BaseException as exc:  # re-raised in the calling thread
            outcome["error"] = exc

    with _lock:
        old_size = threading.stack_size(STACK_BYTES)
        old_limit = sys.getrecursionlimit()
        sys.setrecursionlimit(max(old_limit, RECURSION_LIMIT))
        try:
            worker = threading.Thread(target=target)
            worker.start()
            worker.join()
        finally:
            threading.stack_size(old_size)
            sys.setrecursionlimit(old_limit)
    if "error" in outcome:
        raise outcome["error"]
    return outcome["value"]
