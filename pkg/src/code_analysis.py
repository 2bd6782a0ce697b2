"""
Moteur de certification des codes binaires linéaires

Distributions de poids par énumération exhaustive (code de Gray), auto-orthogonalité
par deux voies indépendantes, classe de parité, sous-code 4-divisible, minimalité,
condition AB, transformée de MacWilliams et identité des moments.
"""
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Dict, Iterable, List, Optional, Tuple

import numpy as np

from config.config import Config
from src.error_handler import (
    ConsistencyError, ErrorHandler, PreconditionError, ValidationError, ValidationManager
)
from src.gf2 import BitMatrix, BitVector, rref
from src.logger import get_logger, soq_logger
from src.monitoring import get_metrics_collector, get_performance_monitor
from src.utils import format_enumerator

logger = get_logger('analysis')


class ParityClass(Enum):
    NOT_EVEN = 'NOT_EVEN'
    SINGLY_EVEN = 'SINGLY_EVEN'
    DOUBLY_EVEN = 'DOUBLY_EVEN'


class SOCheckMode(Enum):
    BASIS = 'BASIS'
    ALL_PAIRS = 'ALL_PAIRS'


class MinimalityMode(Enum):
    LEMMA = 'LEMMA'
    COVER_ORACLE = 'COVER_ORACLE'


def to_gray_code(x: int) -> int:
    return x ^ (x >> 1)


def _flipped_bit(t: int) -> int:
    """Bit qui change entre gray(t-1) et gray(t)"""
    return (t & -t).bit_length() - 1


@dataclass(frozen=True)
class WeightDistribution:
    """Compteurs A_0..A_n (entiers Python exacts)"""
    n: int
    counts: Tuple[int, ...]

    def __post_init__(self):
        counts = tuple(int(c) for c in self.counts)
        if len(counts) != self.n + 1:
            raise ValidationError(f"Expected {self.n + 1} counts, got {len(counts)}")
        if any(c < 0 for c in counts):
            raise ValidationError("Weight counts must be non-negative")
        object.__setattr__(self, 'counts', counts)

    @classmethod
    def from_terms(cls, n: int, terms: Iterable[Tuple[int, int]]) -> 'WeightDistribution':
        counts = [0] * (n + 1)
        for w, a in terms:
            if not 0 <= w <= n:
                raise ValidationError(f"Weight {w} outside 0..{n}")
            counts[w] += int(a)
        return cls(n, tuple(counts))

    @classmethod
    def from_array(cls, counts: np.ndarray) -> 'WeightDistribution':
        return cls(len(counts) - 1, tuple(int(c) for c in counts))

    def __getitem__(self, w: int) -> int:
        return self.counts[w] if 0 <= w <= self.n else 0

    @property
    def total(self) -> int:
        return sum(self.counts)

    @property
    def dimension(self) -> int:
        total = self.total
        if total < 1 or total & (total - 1):
            raise ValidationError(f"Counts sum to {total}, not a power of two")
        return total.bit_length() - 1

    def validate(self, k: int = None) -> 'WeightDistribution':
        """Vérifie A_0 = 1 et Σ A_i = 2^k"""
        if self.counts[0] != 1:
            raise ValidationError(f"A_0 must be 1, got {self.counts[0]}")
        if k is not None and self.total != 1 << k:
            raise ValidationError(f"Counts sum to {self.total}, expected 2^{k} = {1 << k}")
        self.dimension
        return self

    def terms(self) -> List[Tuple[int, int]]:
        return [(w, a) for w, a in enumerate(self.counts) if a]

    def nonzero_weights(self) -> List[int]:
        return [w for w, a in enumerate(self.counts) if a and w > 0]

    @property
    def w_min(self) -> Optional[int]:
        weights = self.nonzero_weights()
        return weights[0] if weights else None

    @property
    def w_max(self) -> Optional[int]:
        weights = self.nonzero_weights()
        return weights[-1] if weights else None

    def moment(self, r: int) -> int:
        return sum((w ** r) * a for w, a in enumerate(self.counts))

    def enumerator(self) -> str:
        return format_enumerator(self.terms())

    def parity_class(self) -> ParityClass:
        weights = self.nonzero_weights()
        if any(w % 2 for w in weights):
            return ParityClass.NOT_EVEN
        if any(w % 4 == 2 for w in weights):
            return ParityClass.SINGLY_EVEN
        return ParityClass.DOUBLY_EVEN

    def __str__(self) -> str:
        return self.enumerator()


class LinearCode:
    """Code engendré par les lignes (indépendantes) d'une matrice génératrice"""

    def __init__(self, generator: BitMatrix):
        if generator.n_rows == 0:
            raise ValidationError("A code needs at least one generator row")
        if rref(generator)[1] != generator.n_rows:
            raise ValidationError("Generator rows must be linearly independent; use new_code()")
        self.generator = generator
        self.n = generator.n_cols
        self.k = generator.n_rows
        self._message_weights = None
        self._weight_distribution = None

    @property
    def rows(self) -> List[BitVector]:
        return self.generator.rows

    def encode(self, message: int) -> BitVector:
        """Mot de code Σ message_i·ligne_i (bit i du message pour la ligne i)"""
        if not 0 <= message < (1 << self.k):
            raise ValidationError(f"Message {message} outside 0..2^{self.k}-1")
        words = np.zeros(self.generator.words.shape[1], dtype=np.uint64)
        for i in range(self.k):
            if message >> i & 1:
                words ^= self.generator.words[i]
        return BitVector(self.n, words)

    def same_code(self, other: 'LinearCode') -> bool:
        """Égalité des espaces lignes"""
        if self.n != other.n or self.k != other.k:
            return False
        return rref(self.generator)[0] == rref(other.generator)[0]

    def __repr__(self) -> str:
        return f"LinearCode([{self.n},{self.k}])"


def new_code(G: BitMatrix) -> LinearCode:
    """Réduit G à une famille génératrice libre (conservée telle quelle si déjà libre)"""
    R, r, _ = rref(G)
    if r == 0:
        raise ValidationError("The zero matrix generates the empty code, which is not modeled")
    if r == G.n_rows:
        return LinearCode(G)
    logger.debug(f"Generator has {G.n_rows} rows but rank {r}; keeping the reduced basis")
    return LinearCode(BitMatrix(R.words[:r], G.n_cols))


class CodewordEnumerator:
    """Parcours des 2^k mots de code

    Les b bits de poids faible du message sont développés en un bloc de 2^b mots
    (doublement successif). Les k - b bits de poids fort suivent un code de Gray:
    chaque pas ne modifie le décalage courant que d'une ligne. L'espace des pas est
    découpé en segments contigus traités par des workers indépendants, chacun
    initialisé avec le mot de code de début de segment.
    """

    def __init__(self, workers: int = None, block_bits: int = None):
        self.workers = max(1, workers or Config.ENUMERATION_WORKERS)
        self.block_bits = block_bits or Config.ENUMERATION_BLOCK_BITS
        self.logger = get_logger('enumeration')
        self.metrics = get_metrics_collector()

    @staticmethod
    def _span_table(rows: np.ndarray) -> np.ndarray:
        table = np.zeros((1 << rows.shape[0], rows.shape[1]), dtype=np.uint64)
        for i in range(rows.shape[0]):
            half = 1 << i
            table[half:2 * half] = table[:half] ^ rows[i]
        return table

    def effective_block_bits(self, k: int, n_words: int) -> int:
        """Bits développés en bloc: 2^b · n_words ≤ ENUMERATION_BLOCK_WORDS"""
        budget = Config.ENUMERATION_BLOCK_WORDS // max(1, n_words)
        return max(0, min(k, self.block_bits, budget.bit_length() - 1))

    def _segments(self, n_steps: int) -> List[Tuple[int, int]]:
        n_segments = min(n_steps, self.workers * 4)
        bounds = [n_steps * s // n_segments for s in range(n_segments + 1)]
        return [(bounds[s], bounds[s + 1]) for s in range(n_segments) if bounds[s] < bounds[s + 1]]

    def _run(self, code: LinearCode, mode: str, out: np.ndarray = None) -> np.ndarray:
        words = np.asarray(code.generator.words, dtype=np.uint64)
        b = self.effective_block_bits(code.k, words.shape[1])
        low = self._span_table(words[:b])
        high = words[b:]
        n_steps = 1 << (code.k - b)
        n = code.n

        def process_segment(start: int, stop: int) -> np.ndarray:
            counts = np.zeros(n + 1, dtype=np.int64)
            g = to_gray_code(start)
            offset = np.zeros(words.shape[1], dtype=np.uint64)
            for i in range(high.shape[0]):
                if g >> i & 1:
                    offset ^= high[i]
            for t in range(start, stop):
                if t > start:
                    offset ^= high[_flipped_bit(t)]
                    g = to_gray_code(t)
                block = low ^ offset
                if mode == 'words':
                    out[g << b:(g + 1) << b] = block
                    continue
                weights = np.bitwise_count(block).sum(axis=1, dtype=np.int64)
                if mode == 'weights':
                    out[g << b:(g + 1) << b] = weights
                else:
                    counts += np.bincount(weights, minlength=n + 1)
            return counts

        segments = self._segments(n_steps)
        start_time = time.perf_counter()
        if len(segments) == 1 or self.workers == 1:
            partials = [process_segment(a, z) for a, z in segments]
        else:
            with ThreadPoolExecutor(max_workers=self.workers) as executor:
                futures = [executor.submit(process_segment, a, z) for a, z in segments]
                partials = [future.result() for future in futures]

        total = np.sum(partials, axis=0)
        elapsed = time.perf_counter() - start_time
        soq_logger.log_enumeration(n, code.k, self.workers, 1 << code.k, elapsed)
        self.metrics.record_duration('enumeration', elapsed)
        self.metrics.increment_counter('codewords_enumerated', 1 << code.k)
        return total if mode == 'counts' else out

    def weight_counts(self, code: LinearCode) -> np.ndarray:
        ValidationManager.require_capacity('weight enumeration', code.k, Config.MAX_ENUMERATION_DIMENSION)
        return self._run(code, 'counts')

    def message_weights(self, code: LinearCode, limit: int = None) -> np.ndarray:
        """Poids du mot de code de chaque message (indexé par le message)"""
        ValidationManager.require_capacity(
            'message weight table', code.k, limit or Config.MAX_SUBCODE_DIMENSION
        )
        out = np.zeros(1 << code.k, dtype=np.int64)
        return self._run(code, 'weights', out)

    def codewords(self, code: LinearCode) -> np.ndarray:
        """Tous les mots de code compactés, indexés par le message"""
        ValidationManager.require_capacity('codeword table', code.k, Config.MAX_PAIRWISE_DIMENSION)
        out = np.zeros((1 << code.k, code.generator.words.shape[1]), dtype=np.uint64)
        return self._run(code, 'words', out)


def _enumerator(workers: int = None) -> CodewordEnumerator:
    return CodewordEnumerator(workers=workers)


def _message_weights(C: LinearCode, limit: int = None) -> np.ndarray:
    if C._message_weights is None or C._message_weights.shape[0] != 1 << C.k:
        C._message_weights = _enumerator().message_weights(C, limit)
    return C._message_weights


@ErrorHandler.name_capacity_check('weight distribution')
def weight_distribution(C: LinearCode, workers: int = None) -> WeightDistribution:
    if workers is None and C._weight_distribution is not None:
        return C._weight_distribution
    counts = _enumerator(workers).weight_counts(C)
    wd = WeightDistribution.from_array(counts).validate(C.k)
    if workers is None:
        C._weight_distribution = wd
    return wd


def is_self_orthogonal(C: LinearCode) -> bool:
    """G·Gᵀ = 0, produits de chaque ligne avec elle-même compris"""
    return not C.generator.gram().any()


@ErrorHandler.name_capacity_check('congruence SO check')
def congruence_so_check(C: LinearCode, mode: SOCheckMode = SOCheckMode.BASIS) -> bool:
    """wt(u)+wt(v) ≡ wt(u+v) (mod 4) sur les paires de la base ou de tout le code"""
    mode = SOCheckMode(mode)
    if mode is SOCheckMode.BASIS:
        words = C.generator.words
        row_weights = np.bitwise_count(words).sum(axis=1, dtype=np.int64)
        sum_weights = np.bitwise_count(words[:, None, :] ^ words[None, :, :]).sum(axis=2, dtype=np.int64)
        return bool(np.all((row_weights[:, None] + row_weights[None, :] - sum_weights) % 4 == 0))

    ValidationManager.require_capacity('all-pairs congruence', C.k, Config.MAX_ALL_PAIRS_DIMENSION)
    wts = _message_weights(C, Config.MAX_ALL_PAIRS_DIMENSION)
    size = wts.shape[0]
    idx = np.arange(size, dtype=np.int64)
    chunk = max(1, (1 << 22) // size)
    for i0 in range(0, size, chunk):
        rows = idx[i0:i0 + chunk, None]
        residue = (wts[rows] + wts[None, :] - wts[rows ^ idx[None, :]]) % 4
        if residue.any():
            return False
    return True


def parity_class(C: LinearCode) -> ParityClass:
    return weight_distribution(C).parity_class()


@ErrorHandler.name_capacity_check('four-divisible subcode')
def four_divisible_subcode(C: LinearCode) -> Tuple[bool, Optional[LinearCode]]:
    """C₁ = {u : wt(u) ≡ 0 mod 4}; (linéaire ?, C₁ si linéaire et non nul)"""
    wts = _message_weights(C, Config.MAX_SUBCODE_DIMENSION)
    members = np.flatnonzero(wts % 4 == 0)
    if members.shape[0] == 1:
        return True, None

    message_bits = ((members[:, None] >> np.arange(C.k)) & 1).astype(np.uint8)
    basis, dim, _ = rref(BitMatrix.from_bits(message_bits))
    if members.shape[0] != 1 << dim:
        return False, None

    basis_bits = basis.to_bits()[:dim]
    generator = [C.encode(int(sum(int(b) << i for i, b in enumerate(row)))) for row in basis_bits]
    return True, new_code(BitMatrix.from_rows(generator))


@ErrorHandler.name_capacity_check('minimality')
def is_minimal(C: LinearCode, mode: MinimalityMode = MinimalityMode.LEMMA) -> bool:
    """Aucun mot non nul ne couvre un autre mot non nul distinct"""
    mode = MinimalityMode(mode)
    ValidationManager.require_capacity('pairwise minimality', C.k, Config.MAX_PAIRWISE_DIMENSION)
    size = 1 << C.k
    idx = np.arange(size, dtype=np.int64)

    if mode is MinimalityMode.LEMMA:
        # u couvre v  ⇔  wt(u+v) = wt(u) - wt(v)
        wts = _message_weights(C, Config.MAX_PAIRWISE_DIMENSION)
        chunk = max(1, (1 << 22) // size)
        for i0 in range(1, size, chunk):
            rows = idx[i0:i0 + chunk, None]
            violated = wts[rows ^ idx[None, :]] == wts[rows] - wts[None, :]
            violated[:, 0] = False
            violated[rows[:, 0] - i0, rows[:, 0]] = False
            if violated.any():
                return False
        return True

    words = _enumerator().codewords(C)
    chunk = max(1, (1 << 22) // (size * words.shape[1]))
    for i0 in range(1, size, chunk):
        block = words[i0:i0 + chunk]
        covered = ((words[None, :, :] & ~block[:, None, :]) == 0).all(axis=2)
        covered[:, 0] = False
        covered[np.arange(block.shape[0]), np.arange(i0, i0 + block.shape[0])] = False
        if covered.any():
            return False
    return True


def ratio_le_half(w_min: Optional[int], w_max: Optional[int]) -> bool:
    """w_min / w_max ≤ 1/2 en arithmétique entière"""
    if w_min is None or w_max is None:
        return False
    return 2 * w_min <= w_max


def ab_status(C: LinearCode) -> Tuple[bool, bool]:
    """(minimal, w_min/w_max ≤ 1/2)"""
    wd = weight_distribution(C)
    return is_minimal(C, MinimalityMode.LEMMA), ratio_le_half(wd.w_min, wd.w_max)


def two_weight_minimality(wd: WeightDistribution) -> Optional[bool]:
    """Code à deux poids w1 < w2 avec w2 ≠ 2·w1: minimal; sinon indéterminé"""
    weights = wd.nonzero_weights()
    if len(weights) == 1:
        return True
    if len(weights) == 2 and weights[1] != 2 * weights[0]:
        return True
    return None


def has_four_divisible_nonzero(wd: WeightDistribution) -> bool:
    return any(w % 4 == 0 for w in wd.nonzero_weights())


def _krawtchouk_row(n: int, i: int) -> List[int]:
    """K_j(i) pour j = 0..n, par la récurrence à trois termes"""
    values = [1]
    if n >= 1:
        values.append(n - 2 * i)
    for j in range(1, n):
        nxt = ((n - 2 * i) * values[j] - (n - j + 1) * values[j - 1])
        values.append(nxt // (j + 1))
    return values


def macwilliams(wd: WeightDistribution, k: int) -> WeightDistribution:
    """Distribution du dual: B_j = 2^{-k} Σ_i A_i K_j(i)"""
    if k < 0 or k > wd.n:
        raise ValidationError(f"Dimension {k} outside 0..{wd.n}")
    if wd.total != 1 << k:
        raise ValidationError(f"Counts sum to {wd.total}, expected 2^{k} = {1 << k}")
    if wd.counts[0] != 1:
        raise ValidationError(f"A_0 must be 1, got {wd.counts[0]}")

    n = wd.n
    sums = [0] * (n + 1)
    for i, a in enumerate(wd.counts):
        if not a:
            continue
        row = _krawtchouk_row(n, i)
        for j in range(n + 1):
            sums[j] += a * row[j]

    scale = 1 << k
    dual = []
    for j, s in enumerate(sums):
        if s % scale or s < 0:
            raise ValidationError(f"Distribution is not a code's: dual count at weight {j} is {s}/{scale}")
        dual.append(s // scale)
    return WeightDistribution(n, tuple(dual))


def power_moment_check(C: LinearCode, m: int, n_prime: int,
                       distribution: WeightDistribution = None) -> bool:
    """Σ w·A_w = 2^{m-1}·n et Σ w²·A_w = 2^{m-2}[n(n+1) + 2·A_2^⊥], n = n_f + n'

    A_2^⊥ provient de MacWilliams appliqué à la distribution énumérée; la
    distribution testée peut être fournie séparément.
    """
    if m != C.k:
        raise PreconditionError(f"Code dimension {C.k} does not match m = {m}")
    if not 0 < n_prime < C.n:
        raise PreconditionError(f"n' = {n_prime} is not a proper tail of a length-{C.n} code")

    certified = weight_distribution(C)
    dual = macwilliams(certified, C.k)
    tested = distribution or certified
    n = C.n

    if dual[1] != 0:
        logger.info(f"Dual has {dual[1]} words of weight 1; the moment identity assumes none")

    first = tested.moment(1) == (1 << (m - 1)) * n
    second = 4 * tested.moment(2) == (1 << m) * (n * (n + 1) + 2 * dual[2])
    logger.debug(f"Power moments: n_f = {n - n_prime}, A_2^perp = {dual[2]}, first = {first}, second = {second}")
    return first and second


@dataclass
class AnalysisReport:
    """Certificat d'un code; les champs non renseignés valent None"""
    n: Optional[int] = None
    k: Optional[int] = None
    d: Optional[int] = None
    weight_distribution: Optional[WeightDistribution] = None
    parity_class: Optional[ParityClass] = None
    self_orthogonal: Optional[bool] = None
    minimal: Optional[bool] = None
    violates_ab: Optional[bool] = None
    w_min: Optional[int] = None
    w_max: Optional[int] = None

    FIELDS = ('n', 'k', 'd', 'weight_distribution', 'parity_class', 'self_orthogonal',
              'minimal', 'violates_ab', 'w_min', 'w_max')

    @property
    def weight_enumerator(self) -> Optional[str]:
        return self.weight_distribution.enumerator() if self.weight_distribution else None

    def populated(self) -> List[str]:
        return [name for name in self.FIELDS if getattr(self, name) is not None]

    def mismatches(self, other: 'AnalysisReport') -> List[str]:
        """Champs renseignés ici qui diffèrent dans other"""
        return [name for name in self.populated() if getattr(self, name) != getattr(other, name)]

    def to_dict(self) -> Dict[str, Any]:
        wd = self.weight_distribution
        return {
            'n': self.n,
            'k': self.k,
            'd': self.d,
            'weight_distribution': [[w, a] for w, a in wd.terms()] if wd else None,
            'parity_class': self.parity_class.value if self.parity_class else None,
            'self_orthogonal': self.self_orthogonal,
            'minimal': self.minimal,
            'violates_ab': self.violates_ab,
            'w_min': self.w_min,
            'w_max': self.w_max,
            'weight_enumerator': self.weight_enumerator,
        }


def report_from_distribution(wd: WeightDistribution, **flags) -> AnalysisReport:
    """Rapport déduit d'une distribution (prédite ou énumérée)"""
    return AnalysisReport(
        n=wd.n, k=wd.dimension, d=wd.w_min, weight_distribution=wd,
        parity_class=wd.parity_class(), w_min=wd.w_min, w_max=wd.w_max, **flags
    )


@ErrorHandler.log_and_reraise
@get_performance_monitor().monitor_function('analyze', component='code_analysis')
def analyze(C: LinearCode, workers: int = None) -> AnalysisReport:
    wd = weight_distribution(C, workers)
    so = is_self_orthogonal(C)
    if so != congruence_so_check(C, SOCheckMode.BASIS):
        raise ConsistencyError("Gram-matrix and basis-congruence SO checks disagree")

    minimal = is_minimal(C, MinimalityMode.LEMMA)
    if two_weight_minimality(wd) and not minimal:
        raise ConsistencyError("Two-weight code with w2 != 2 w1 certified non-minimal")
    if so and C.k >= 2 and wd.parity_class() is ParityClass.SINGLY_EVEN and not has_four_divisible_nonzero(wd):
        raise ConsistencyError("Singly-even self-orthogonal code without a nonzero weight divisible by 4")
    return report_from_distribution(
        wd, self_orthogonal=so, minimal=minimal,
        violates_ab=minimal and ratio_le_half(wd.w_min, wd.w_max)
    )
