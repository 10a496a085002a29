from decimal import Decimal, localcontext

import pytest

from addcomp.numeric import IrrationalNumber

SQRT2 = IrrationalNumber.sqrt(2)
SQRT3 = IrrationalNumber.sqrt(3)
GOLDEN = IrrationalNumber(1, 1, 2, 5)


def decimal_value(theta, digits=50):
    """theta to ``digits`` significant digits, computed by ``decimal`` alone."""
    with localcontext() as ctx:
        ctx.prec = digits
        return (theta.u + theta.v * Decimal(theta.d).sqrt()) / theta.w


@pytest.fixture(params=[SQRT2, SQRT3, GOLDEN], ids=["sqrt2", "sqrt3", "golden"])
def theta(request):
    return request.param


_CRITERIA = []


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(id, text): acceptance criterion")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is not None and rep.when == "call":
        cell = getattr(item, "callspec", None)
        text = marker.args[1] + (f" [{cell.id}]" if cell else "")
        _CRITERIA.append((marker.args[0], text, rep.outcome, rep.duration))


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.write_sep("=", "acceptance criteria")
    for cid, text, outcome, duration in sorted(_CRITERIA):
        status = "PASS" if outcome == "passed" else "FAIL"
        terminalreporter.write_line(f"[{status}] criterion {cid}: {text} ({duration:.2f}s)")
