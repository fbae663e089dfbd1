import contextlib
import time

import pytest

_results = pytest.StashKey[dict]()


def pytest_configure(config):
    config.stash[_results] = {}


@pytest.fixture
def criterion(request):
    """Context manager timing one acceptance criterion and recording its outcome."""
    results = request.config.stash[_results]

    @contextlib.contextmanager
    def run(number: int, title: str, limit: float | None = None):
        start = time.perf_counter()
        ok = False
        detail = ""
        try:
            yield
            elapsed = time.perf_counter() - start
            if limit is not None and elapsed > limit:
                detail = f"took {elapsed:.1f}s, limit {limit:g}s"
                raise AssertionError(detail)
            ok = True
        except Exception as exc:
            detail = detail or f"{type(exc).__name__}: {str(exc).splitlines()[0] if str(exc) else ''}"
            raise
        finally:
            elapsed = time.perf_counter() - start
            results[number] = (title, ok, elapsed, detail)

    return run


def pytest_terminal_summary(terminalreporter, config):
    results = config.stash[_results]
    if not results:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(results):
        title, ok, elapsed, detail = results[number]
        line = f"{'PASS' if ok else 'FAIL'}  {number:2d}. {title} ({elapsed:.2f}s)"
        if detail:
            line += f"  [{detail}]"
        terminalreporter.write_line(line)
