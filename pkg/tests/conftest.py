import random

import pytest


@pytest.fixture
def rng():
    return random.Random(12345)


def random_tokens(rng, n, vocab=30):
    words = [f"слово{chr(0x430 + i % 32)}{i}" for i in range(vocab)]
    weights = [1.0 / (i + 1) for i in range(vocab)]
    return rng.choices(words, weights=weights, k=n)


# One summary line per acceptance criterion, whatever the verbosity.
_criteria = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title): acceptance criterion")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is None:
        return
    number, title = marker.args
    if report.when == "call" or (report.when == "setup" and not report.passed):
        detail = dict(item.user_properties).get("detail", "")
        _criteria[number] = (title, report.passed, detail)


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_criteria):
        title, passed, detail = _criteria[number]
        line = f"criterion {number:2d} {'PASS' if passed else 'FAIL'}  {title}"
        terminalreporter.write_line(line + (f"  [{detail}]" if detail else ""))
