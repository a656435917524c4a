import sys
from pathlib import Path

from hypothesis import HealthCheck, settings, strategies as st

from aic.lasso import make
from aic.lattice import CATALOGUE, build_lattice, repair_monotone
from aic.term import BOT, TOP, Apply, Head, Join, Majorum, Meet, Minorum, Orbit, Shift, Var

sys.path.insert(0, str(Path(__file__).parent))

settings.register_profile("default", deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

lattices = st.sampled_from(CATALOGUE).map(build_lattice)


@st.composite
def lassos(draw, lattice, max_prefix=4, max_period=4):
    elem = st.integers(0, lattice.size - 1)
    prefix = draw(st.lists(elem, max_size=max_prefix))
    period = draw(st.lists(elem, min_size=1, max_size=max_period))
    return make(lattice, prefix, period)


@st.composite
def monotone_maps(draw, lattice):
    raw = draw(st.lists(st.integers(0, lattice.size - 1), min_size=lattice.size, max_size=lattice.size))
    return repair_monotone(lattice, raw)


@st.composite
def lattice_with(draw, *kinds):
    """A lattice followed by one sample per kind ('lasso' or 'map')."""
    L = draw(lattices)
    out = [L]
    for k in kinds:
        out.append(draw(lassos(L) if k == "lasso" else monotone_maps(L)))
    return tuple(out)


def terms(max_leaves=8, fsyms=("F", "G")):
    leaves = st.one_of(st.just(BOT), st.just(TOP), st.sampled_from("abc").map(Var))
    unary = [Head, Shift, Majorum, Minorum]

    def extend(inner):
        return st.one_of(
            st.tuples(st.sampled_from(unary), inner).map(lambda p: p[0](p[1])),
            st.tuples(st.sampled_from(fsyms), inner).map(lambda p: Apply(*p)),
            st.tuples(st.sampled_from(fsyms), inner).map(lambda p: Orbit(*p)),
            st.tuples(inner, inner).map(lambda p: Join(*p)),
            st.tuples(inner, inner).map(lambda p: Meet(*p)),
        )

    return st.recursive(leaves, extend, max_leaves=max_leaves)
