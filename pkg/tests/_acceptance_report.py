"""Shared registry for acceptance-criterion result lines; the conftest
terminal-summary hook prints them after the run."""

LINES: list[str] = []


def record(number: int, ok: bool, label: str, elapsed: float) -> str:
    status = "PASS" if ok else "FAIL"
    line = f"[criterion {number}] {status} {label} ({elapsed:.2f}s)"
    LINES.append(line)
    return line
