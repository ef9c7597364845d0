from fractions import Fraction

from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from clifford_spectrum.exact import QS2
from clifford_spectrum.torus import KINDS, S4, Section, TrigPoly, frames_of

settings.register_profile("default", deadline=None, max_examples=40,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

rationals = st.fractions(min_value=-20, max_value=20, max_denominator=12)
qs2 = st.builds(QS2, rationals, rationals)
nonzero_qs2 = qs2.filter(bool)
small_qs2 = st.builds(QS2, st.fractions(min_value=-4, max_value=4, max_denominator=4),
                      st.sampled_from([Fraction(0), Fraction(0), Fraction(1), Fraction(-1, 2)]))


@st.composite
def trig_polys(draw, max_freq: int = 2, max_terms: int = 4) -> TrigPoly:
    f = TrigPoly()
    for _ in range(draw(st.integers(0, max_terms))):
        kind = draw(st.sampled_from(KINDS))
        m, n = draw(st.integers(0, max_freq)), draw(st.integers(0, max_freq))
        f = f + TrigPoly.mono(kind, m, n, draw(small_qs2))
    return f


@st.composite
def sections(draw, target: str = S4, max_freq: int = 2) -> Section:
    return Section(target, [draw(trig_polys(max_freq)) for _ in frames_of(target)])


# -- acceptance report ------------------------------------------------------------

ACCEPTANCE_LINES: dict[int, str] = {}


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for k in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(ACCEPTANCE_LINES[k])
