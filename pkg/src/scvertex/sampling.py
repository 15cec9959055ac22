"""Seeded random elements for property checks."""
from __future__ import annotations

import random
from dataclasses import dataclass

from .elements import Algebra, Element, Node, nprod


@dataclass(frozen=True)
class SampleConfig:
    max_length: int = 3
    max_d: int = 2
    max_odd: int = 1


def random_dgen(alg: Algebra, rng: random.Random, cfg: SampleConfig = SampleConfig()) -> Element:
    g = alg.gen(rng.choice(alg.generators).name)
    for i in alg.sector.odd_indices:
        for _ in range(rng.randint(0, cfg.max_odd)):
            g = g.D(i)
    k = rng.randint(0, cfg.max_d)
    return g.d(k) if k else g


def random_monomial(alg: Algebra, rng: random.Random, cfg: SampleConfig = SampleConfig()) -> Element:
    n = rng.randint(1, cfg.max_length)
    return nprod(*[random_dgen(alg, rng, cfg) for _ in range(n)])


def random_tree(alg: Algebra, rng: random.Random, leaves: int, cfg: SampleConfig = SampleConfig()) -> Node:
    """A random binary product tree whose leaves are derived generators."""
    if leaves == 1:
        return Node("elem", value=random_dgen(alg, rng, cfg))
    k = rng.randint(1, leaves - 1)
    return Node("prod", (random_tree(alg, rng, k, cfg), random_tree(alg, rng, leaves - k, cfg)))


def pool(alg: Algebra, seed: int, size: int, cfg: SampleConfig = SampleConfig()) -> list[Element]:
    rng = random.Random(seed)
    return [random_monomial(alg, rng, cfg) for _ in range(size)]
