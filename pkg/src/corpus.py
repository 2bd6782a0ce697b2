"""
Corpus aléatoires reproductibles pour les suites de propriétés

Tous les tirages passent par numpy.random.default_rng(seed).
"""
from typing import Optional

import numpy as np

from config.config import Config
from src.boolfun import BooleanFunction, walsh_spectrum
from src.code_analysis import LinearCode, is_self_orthogonal
from src.error_handler import ConstructionError, ValidationError
from src.gf2 import BitMatrix, nullspace, rank
from src.logger import get_logger

logger = get_logger('corpus')

_MAX_RETRIES = 1000


def make_rng(seed: Optional[int] = None) -> np.random.Generator:
    return np.random.default_rng(Config.RANDOM_SEED if seed is None else seed)


def random_code(rng: np.random.Generator, n_max: int = 24, k_max: int = 10) -> LinearCode:
    """Code [n, k] uniforme en n ∈ 1..n_max, k ∈ 1..min(k_max, n); lignes libres"""
    n = int(rng.integers(1, n_max + 1))
    k = int(rng.integers(1, min(k_max, n) + 1))
    for _ in range(_MAX_RETRIES):
        bits = rng.integers(0, 2, size=(k, n), dtype=np.uint8)
        G = BitMatrix.from_bits(bits)
        if rank(G) == k:
            return LinearCode(G)
    raise ConstructionError(f"Could not draw {k} independent rows of length {n}")


def random_so_code(rng: np.random.Generator, n: int, k: int) -> LinearCode:
    """Code SO [n, k] construit ligne à ligne dans le dual pair du code courant"""
    if not 1 <= k <= n // 2:
        raise ValidationError(f"A self-orthogonal [n={n}, k] code needs 1 <= k <= n/2, got k = {k}")

    rows = BitMatrix.empty(n)
    while rows.n_rows < k:
        dual = nullspace(rows) if rows.n_rows else BitMatrix.identity(n)
        dual_bits = dual.to_bits()
        for _ in range(_MAX_RETRIES):
            coefficients = rng.integers(0, 2, size=dual.n_rows, dtype=np.uint8)
            candidate = (coefficients @ dual_bits) % 2
            if candidate.sum() % 2 or not candidate.any():
                continue
            extended = rows.vstack(BitMatrix.from_bits(candidate[None, :]))
            if rank(extended) == extended.n_rows:
                rows = extended
                break
        else:
            raise ConstructionError(f"Could not extend a self-orthogonal [{n},{rows.n_rows}] code")

    return LinearCode(rows)


def random_even_code(rng: np.random.Generator, n: int, k: int) -> LinearCode:
    """Code [n, k] dont toutes les lignes (donc tous les mots) sont de poids pair"""
    if not 1 <= k <= n - 1:
        raise ValidationError(f"An even [n={n}, k] code needs 1 <= k <= n - 1, got k = {k}")
    for _ in range(_MAX_RETRIES):
        bits = rng.integers(0, 2, size=(k, n), dtype=np.uint8)
        bits[:, -1] ^= (bits.sum(axis=1) % 2).astype(np.uint8)
        G = BitMatrix.from_bits(bits)
        if rank(G) == k:
            return LinearCode(G)
    raise ConstructionError(f"Could not draw an even [{n},{k}] code")


def random_admissible_function(rng: np.random.Generator, m: int) -> BooleanFunction:
    """f(0) = 0, f non nulle, non linéaire"""
    for _ in range(_MAX_RETRIES):
        table = rng.integers(0, 2, size=1 << m, dtype=np.uint8)
        table[0] = 0
        if not table.any():
            continue
        f = BooleanFunction(m, table)
        if walsh_spectrum(f).is_affine_free():
            return f
    raise ConstructionError(f"Could not draw an admissible Boolean function on {m} variables")


def random_quadratic_function(rng: np.random.Generator, k: int) -> BooleanFunction:
    """g(x) = Σ_{i<j} a_ij x_i x_j + Σ b_i x_i; spectre 4-divisible pour k ≥ 3"""
    if k < 3:
        raise ValidationError(f"Quadratic functions with 4-divisible spectra need k >= 3, got: {k}")
    xs = np.arange(1 << k, dtype=np.int64)
    x_bits = ((xs[:, None] >> np.arange(k)[None, :]) & 1).astype(np.int64)
    upper = np.triu(rng.integers(0, 2, size=(k, k)), 1)
    linear = rng.integers(0, 2, size=k)
    quadratic = np.einsum('xi,ij,xj->x', x_bits, upper, x_bits)
    table = ((quadratic + x_bits @ linear) % 2).astype(np.uint8)
    return BooleanFunction(k, table)


def find_even_non_so_code(seed: Optional[int] = None, max_trials: Optional[int] = None) -> LinearCode:
    """Premier code pair non SO rencontré par échantillonnage de petits codes"""
    rng = make_rng(seed)
    max_trials = max_trials or Config.COUNTEREXAMPLE_MAX_TRIALS
    for trial in range(max_trials):
        n = int(rng.integers(3, 9))
        k = int(rng.integers(2, n))
        code = random_even_code(rng, n, k)
        if not is_self_orthogonal(code):
            logger.debug(f"Even non-SO code found after {trial + 1} trials: {code}")
            return code
    raise ConstructionError(f"No even non-self-orthogonal code found in {max_trials} trials")

