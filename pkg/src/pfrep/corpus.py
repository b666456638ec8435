"""Seeded random concrete algebras: closures of one or two random generators on tiny bases."""

from __future__ import annotations

import random
from typing import Iterator

from pfrep.pfun import CORE_SIGNATURE, ConcreteAlgebra, all_functions, close_generators


def random_closures(
    count: int, seed: int = 0, max_base: int = 3, max_generators: int = 2, min_base: int = 1
) -> Iterator[ConcreteAlgebra]:
    """``count`` closures under compose, meet and antidomain on ``min_base..max_base`` points."""
    rng = random.Random(seed)
    pools = {k: all_functions(tuple(f"x{i}" for i in range(k))) for k in range(min_base, max_base + 1)}
    for _ in range(count):
        k = rng.randint(min_base, max_base)
        gens = [rng.choice(pools[k]) for _ in range(rng.randint(1, max_generators))]
        yield close_generators(tuple(f"x{i}" for i in range(k)), gens, CORE_SIGNATURE)
