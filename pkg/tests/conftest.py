import numpy as np
import pytest

from l2interp.resample import ImageBuffer

ACCEPTANCE: dict[int, tuple[str, bool, str]] = {}


def record(number: int, title: str, passed: bool, detail: str = "") -> None:
    """Store one acceptance verdict; the terminal summary prints them all."""
    ACCEPTANCE[number] = (title, bool(passed), detail)


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(ACCEPTANCE):
        title, ok, detail = ACCEPTANCE[n]
        line = f"[{'PASS' if ok else 'FAIL'}] {n:2d}. {title}"
        if detail:
            line += f"  ({detail})"
        terminalreporter.write_line(line)


BUILTIN_IDS = [
    "linear",
    "keys:a=-0.5",
    "cubic6",
    "tsinc:L=3",
    "l2opt:L=1",
    "l2opt:L=2",
    "l2opt:L=3",
    "blend:w=0.5,l2opt:L=3,cubic6",
]
INTERPOLATING_IDS = [k for k in BUILTIN_IDS if not k.startswith("tsinc")]


@pytest.fixture
def rng():
    return np.random.default_rng(20240607)


def smooth_image(h: int = 64, w: int = 64, bit_depth: int = 8) -> ImageBuffer:
    yy, xx = np.mgrid[0:h, 0:w]
    top = (1 << bit_depth) - 1
    v = 0.5 + 0.35 * np.sin(xx / 7.0) * np.cos(yy / 11.0) + 0.1 * np.cos((xx + yy) / 17.0)
    return ImageBuffer(np.round(v * top).astype(np.int64), bit_depth)


def ramp_image(h: int = 16, w: int = 16, bit_depth: int = 8) -> ImageBuffer:
    yy, xx = np.mgrid[0:h, 0:w]
    top = (1 << bit_depth) - 1
    return ImageBuffer(((xx * 7 + yy * 3) * top // (7 * (w - 1) + 3 * (h - 1))).astype(np.int64), bit_depth)
