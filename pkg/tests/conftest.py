import pytest
from hypothesis import HealthCheck, settings

from cdlab.constructions import dihedral, extraspecial, quaternion, symmetric

settings.register_profile("default", deadline=None, max_examples=40,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


@pytest.fixture(scope="session")
def D4():
    return dihedral(4)


@pytest.fixture(scope="session")
def Q8():
    return quaternion(8)


@pytest.fixture(scope="session")
def S3():
    return symmetric(3)


@pytest.fixture(scope="session")
def XS3():
    return extraspecial(3, "plus")


def pytest_terminal_summary(terminalreporter):
    """One line per acceptance criterion; parametrized cases are merged."""
    rows: dict[int, list[tuple[bool, str]]] = {}
    for outcome in ("passed", "failed"):
        for rep in terminalreporter.stats.get(outcome, []):
            props = dict(rep.user_properties)
            if rep.when == "call" and "criterion" in props:
                rows.setdefault(props["criterion"], []).append((outcome == "passed", props.get("summary", "")))
    if not rows:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(rows):
        status = "PASS" if all(ok for ok, _ in rows[n]) else "FAIL"
        text = "; ".join(sorted(t for _, t in rows[n]))
        terminalreporter.write_line(f"criterion {n:2d}: {status}  {text}")
