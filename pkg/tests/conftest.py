from hypothesis import settings

settings.register_profile("heckoid", deadline=None, max_examples=60)
settings.load_profile("heckoid")


def pytest_terminal_summary(terminalreporter):
    from test_acceptance import RESULTS

    if not RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(RESULTS):
        terminalreporter.write_line(RESULTS[number].line())
