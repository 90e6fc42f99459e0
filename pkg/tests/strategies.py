from hypothesis import strategies as st

from idealgraph.ring import RingSpec


def specs(max_components: int = 4, max_chain: int = 3, min_components: int = 1):
    """Ring specs with chain lengths in ``0..max_chain`` (0 is a field)."""
    return st.lists(
        st.integers(0, max_chain), min_size=min_components, max_size=max_components
    ).map(lambda ns: RingSpec(tuple(ns)))


def connected_specs(max_components: int = 3, max_chain: int = 2):
    """Specs whose graph has at least two vertices and is connected."""
    return specs(max_components, max_chain, min_components=2).filter(
        lambda s: s.chain_lengths.count(0) < 2 or len(s) > 2
    )
