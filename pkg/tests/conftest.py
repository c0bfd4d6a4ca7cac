import sys
from pathlib import Path

from hypothesis import HealthCheck, settings, strategies as st

sys.path.insert(0, str(Path(__file__).parent))

settings.register_profile(
    "repo", deadline=None, max_examples=60, derandomize=True,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("repo")

from strongprox.spaces import FiniteSpace  # noqa: E402

POINTS = "abcde"


@st.composite
def finite_spaces(draw, max_points=4):
    n = draw(st.integers(1, max_points))
    basis = draw(st.lists(st.integers(1, (1 << n) - 1), max_size=5))
    return FiniteSpace(POINTS[:n], basis)


@st.composite
def space_and_subsets(draw, count=2, max_points=4):
    space = draw(finite_spaces(max_points))
    subsets = [draw(st.integers(0, space.full)) for _ in range(count)]
    return (space, *subsets)


ACCEPTANCE: list[str] = []


def record(number: int, ok: bool, detail: str) -> bool:
    line = f"acceptance #{number:<2} {'PASS' if ok else 'FAIL'}  {detail}"
    ACCEPTANCE.append(line)
    print(line)
    return ok


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE, key=lambda s: int(s.split("#")[1].split()[0])):
            terminalreporter.write_line(line)
