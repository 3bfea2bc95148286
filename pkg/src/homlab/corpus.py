"""Deterministic test corpora of small structures."""

from __future__ import annotations

import random

from .core import (
    Structure,
    complete_graph,
    isolated_points,
    looped_point,
    undirected_cycle,
    undirected_path,
)
from .cycles import directed_cycle


def random_digraph(rng: random.Random, size: int, density: float = 0.4) -> Structure:
    u = [str(i) for i in range(size)]
    edges = [(a, b) for a in u for b in u if rng.random() < density]
    return Structure.build(u, {"E": edges}, arities={"E": 2})


def random_pairs(count: int = 500, seed: int = 0, max_source: int = 4,
                 max_target: int = 3) -> list[tuple[Structure, Structure]]:
    """(source, target) digraph pairs with sizes drawn uniformly from the bounds."""
    rng = random.Random(seed)
    pairs = []
    for _ in range(count):
        b = random_digraph(rng, rng.randint(1, max_source), rng.choice([0.2, 0.35, 0.5]))
        a = random_digraph(rng, rng.randint(1, max_target), rng.choice([0.3, 0.5, 0.7]))
        pairs.append((b, a))
    return pairs


def named_structures() -> dict[str, Structure]:
    return {
        "K2": complete_graph(2),
        "K3": complete_graph(3),
        "C5u": undirected_cycle(5),
        "C2": directed_cycle(2),
        "C3": directed_cycle(3),
        "C4": directed_cycle(4),
        "P1": undirected_path(1),
        "P2": undirected_path(2),
        "P3": undirected_path(3),
        "loop": looped_point(),
        "I2": isolated_points(2),
        "T3": Structure.build(["0", "1", "2"], {"E": [("0", "1"), ("0", "2"), ("1", "2")]}),
    }


def small_bases(max_size: int = 3) -> list[Structure]:
    """Named structures with at most ``max_size`` elements."""
    return [s for s in named_structures().values() if s.size <= max_size]
