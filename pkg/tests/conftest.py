import random
import sys

import pytest

from cigram.hypergroup import build_data

CATALOG = {
    "quintic": ((1, 1, 1, 1, 1), (5,)),
    "sextic_1^4_2": ((1, 1, 1, 1, 2), (6,)),
    "octic_1^4_4": ((1, 1, 1, 1, 4), (8,)),
    "1^6_2_4": ((1, 1, 1, 1, 1, 1), (2, 4)),
    "1^6_3_3": ((1, 1, 1, 1, 1, 1), (3, 3)),
    "1^6_2_2_2": ((1, 1, 1, 1, 1, 1), (2, 2, 2)),
    "k3_quartic": ((1, 1, 1, 1), (4,)),
    "1^4_2_2": ((1, 1, 1, 1), (2, 2)),
    "1_1_2_4": ((1, 1, 2), (4,)),
}


def random_partition(rng, total):
    parts = []
    left = total
    while left:
        k = rng.randint(1, left)
        parts.append(k)
        left -= k
    return sorted(parts)


def random_cases(count, max_q=12, seed=20240531):
    """Distinct (q, d) with Q <= max_q and Q_red >= 1 (i.e. q, d differ as multisets)."""
    rng = random.Random(seed)
    seen, out = set(), []
    while len(out) < count:
        Q = rng.randint(2, max_q)
        q = tuple(random_partition(rng, Q))
        d = tuple(random_partition(rng, Q))
        if q == d or (q, d) in seen:
            continue
        seen.add((q, d))
        out.append((q, d))
    return out


@pytest.fixture(params=sorted(CATALOG), ids=sorted(CATALOG))
def catalog_data(request):
    q, d = CATALOG[request.param]
    return build_data(q, d)


@pytest.fixture
def quintic():
    return build_data((1, 1, 1, 1, 1), (5,))


@pytest.fixture
def k3():
    return build_data((1, 1, 1, 1), (4,))


def pytest_terminal_summary(terminalreporter):
    acceptance = sys.modules.get("test_acceptance")
    results = getattr(acceptance, "RESULTS", None)
    if not results:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(results):
        title, failures = results[number]
        status = "PASS" if not failures else "FAIL"
        terminalreporter.write_line(f"criterion {number}: {status}  {title}")
