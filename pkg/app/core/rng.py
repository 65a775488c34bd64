"""Seeded random source for the Markov chains.

Draws come from numpy's PCG64 bit generator; bounded integers use numpy's
rejection-based ``Generator.integers`` so no modulo bias creeps in. Draws are
pulled in blocks per bound, which keeps runs bit-reproducible for a seed.
"""

from typing import Dict, List, Optional, Tuple, Union

import numpy as np

from app.core.errors import InstanceTooSmallError

RNG_ALGORITHM = "PCG64"
_BLOCK = 4096


def resolve_seed(seed: Optional[int]) -> int:
    """Return ``seed`` or a fresh 64-bit seed from OS entropy"""
    if seed is not None:
        return seed
    return int(np.random.SeedSequence().generate_state(1, dtype=np.uint64)[0])


class ChainRandom:
    algorithm = RNG_ALGORITHM

    def __init__(self, seed: Union[int, np.random.SeedSequence]):
        if not isinstance(seed, np.random.SeedSequence):
            seed = np.random.SeedSequence(seed)
        self._seq = seed
        self._gen = np.random.Generator(np.random.PCG64(self._seq))
        self._ints: Dict[int, List[int]] = {}
        self._floats: List[float] = []

    def below(self, bound: int) -> int:
        """Uniform integer in [0, bound)"""
        buf = self._ints.get(bound)
        if not buf:
            buf = self._gen.integers(0, bound, size=_BLOCK).tolist()
            self._ints[bound] = buf
        return buf.pop()

    def uniform(self) -> float:
        if not self._floats:
            self._floats = self._gen.random(_BLOCK).tolist()
        return self._floats.pop()

    def coin(self, p: float) -> bool:
        return self.uniform() < p

    def distinct(self, n: int, k: int) -> Tuple[int, ...]:
        """Uniform ordered k-tuple of distinct vertices from 1..n"""
        if n < k:
            raise InstanceTooSmallError(f"Cannot draw {k} distinct vertices from {n}")
        picked: List[int] = []
        for j in range(k):
            r = self.below(n - j)
            for p in sorted(picked):
                if r >= p:
                    r += 1
            picked.append(r)
        return tuple(p + 1 for p in picked)

    def spawn(self, count: int) -> List["ChainRandom"]:
        """Independent child streams for concurrently running chains"""
        return [ChainRandom(child) for child in self._seq.spawn(count)]
