from __future__ import annotations

import pytest

from twosite.finset import cat2_instance, fixture_categories, jt_coverage
from twosite.site import TwoSite


class Fixture:
    """The window {1, C2codisc, D2, BZ2, 1+1} with J(surjections) and named cells."""

    def __init__(self, groupoids_only: bool = False):
        self.K = K = cat2_instance(fixture_categories(), groupoids_only)
        self.site = TwoSite(K, jt_coverage(K))
        for name in ("1", "C2codisc", "D2", "BZ2"):
            setattr(self, name.replace("1", "one"), K.find_object(name))
        self.coprod = K.find_object("1+1")
        self.C2_to_1 = K.find_one_cell("C2codisc_to_1")
        self.D2_to_1 = K.find_one_cell("D2_to_1")
        self.BZ2_to_1 = K.find_one_cell("BZ2_to_1")
        self.points = K.hom(self.one, self.C2codisc)
        self.pt_BZ2 = K.hom(self.one, self.BZ2)[0]
        self.triv_C2_BZ2 = K.hom(self.C2codisc, self.BZ2)[0]

    def obj(self, name: str):
        return self.K.find_object(name)

    def cell(self, label: str):
        return self.K.find_one_cell(label)


@pytest.fixture(scope="session")
def fx() -> Fixture:
    return Fixture()


@pytest.fixture(scope="session")
def gfx() -> Fixture:
    return Fixture(groupoids_only=True)


# --------------------------------------------------------------------------
# acceptance summary: one line per criterion at the end of the run

ACCEPTANCE_CRITERIA = {
    1: "coverage axioms on the fixture",
    2: "BF1-BF4 on the fixture site",
    3: "weak equivalence = ff and essentially surjective",
    4: "localisation inverts exactly the weak equivalences",
    5: "2-cell equivalence relation and witnesses",
    6: "normal forms and class keys",
    7: "hom-categories over a cofinal class",
    8: "slices are 2-sites satisfying BF1-BF4",
    9: "determinism and certificate soundness",
}
_acceptance: dict[int, tuple[bool, str]] = {}


@pytest.fixture
def acceptance():
    """``acceptance(n, ok, detail)`` records criterion ``n`` and asserts it."""

    def record(n: int, ok: bool, detail: str) -> None:
        _acceptance[n] = (ok, detail)
        print(f"ACCEPTANCE {n} [PRIMARY] {'PASS' if ok else 'FAIL'}: {ACCEPTANCE_CRITERIA[n]} ({detail})")
        assert ok, detail

    return record


def pytest_runtest_logreport(report):
    # a criterion test that crashes before recording still counts as a failure
    name = report.nodeid.rpartition("::")[2]
    if report.failed and name.startswith("test_criterion_"):
        n = int(name.split("_")[2])
        if n not in _acceptance:
            _acceptance[n] = (False, f"error in {report.when}: {report.longrepr.reprcrash.message if hasattr(report.longrepr, 'reprcrash') else report.longrepr}")


def pytest_terminal_summary(terminalreporter):
    if not _acceptance:
        return
    terminalreporter.section("acceptance criteria")
    for n, name in ACCEPTANCE_CRITERIA.items():
        if n in _acceptance:
            ok, detail = _acceptance[n]
            terminalreporter.write_line(f"ACCEPTANCE {n} [PRIMARY] {'PASS' if ok else 'FAIL'}: {name} ({detail})")
        else:
            terminalreporter.write_line(f"ACCEPTANCE {n} [PRIMARY] NOT RUN: {name}")
