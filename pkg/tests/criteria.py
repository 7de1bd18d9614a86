"""Timing and reporting for the acceptance criteria.

Each criterion runs inside ``criterion(...)``; the block is timed against its
budget and a one-line verdict is kept for the terminal summary.
"""
import time
from contextlib import contextmanager

LINES: list[str] = []


@contextmanager
def criterion(number: int, title: str, budget_s: float):
    start = time.perf_counter()
    try:
        yield
    except BaseException as exc:
        elapsed = time.perf_counter() - start
        reason = str(exc).splitlines()[0] if str(exc) else type(exc).__name__
        LINES.append(f"FAIL {number:2d}  {title}  ({elapsed:.1f}s / {budget_s:g}s)  {reason}")
        raise
    elapsed = time.perf_counter() - start
    if elapsed > budget_s:
        LINES.append(f"FAIL {number:2d}  {title}  ({elapsed:.1f}s / {budget_s:g}s)  over budget")
        raise AssertionError(f"criterion {number} took {elapsed:.1f}s, budget {budget_s:g}s")
    LINES.append(f"PASS {number:2d}  {title}  ({elapsed:.1f}s / {budget_s:g}s)")
