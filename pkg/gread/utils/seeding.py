"""
Sementes - toda aleatoriedade deriva de uma única semente inteira
"""
import numpy as np

SEED_MASK = 0xFFFFFFFFFFFFFFFF


def make_rng(seed) -> np.random.Generator:
    """Gerador numpy a partir de uma semente inteira ou de uma SeedSequence"""
    if isinstance(seed, np.random.SeedSequence):
        return np.random.default_rng(seed)
    return np.random.default_rng(np.random.SeedSequence(int(seed) & SEED_MASK))


def derive_seed(seed, *keys) -> int:
    """Semente filha determinística para um fluxo nomeado por inteiros (época, célula, camada...)"""
    entropy = [int(seed) & SEED_MASK] + [int(k) for k in keys]
    return int(np.random.SeedSequence(entropy).generate_state(1, dtype=np.uint64)[0])
