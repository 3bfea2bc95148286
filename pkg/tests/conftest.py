from hypothesis import settings, strategies as st

from homlab.core import Structure

settings.register_profile("default", deadline=None, max_examples=60)
settings.load_profile("default")


@st.composite
def digraphs(draw, max_size=4, min_size=1):
    n = draw(st.integers(min_size, max_size))
    u = [str(i) for i in range(n)]
    pairs = [(a, b) for a in u for b in u]
    edges = draw(st.lists(st.sampled_from(pairs), unique=True, max_size=len(pairs)))
    return Structure.build(u, {"E": edges}, arities={"E": 2})
