"""
Fonctions booléennes, transformée de Walsh et codes C_f / C_{D_f}

Un point x de F_2^m est codé par l'entier dont le bit i est la coordonnée i;
ω·x est la parité du ET bit à bit. Les colonnes de C_f et C_{D_f} suivent
l'ordre croissant de ce codage.
"""
from dataclasses import dataclass, field
from enum import Enum
from typing import List, Optional, Sequence, Tuple

import numpy as np
from scipy.linalg import hadamard

from config.config import Config
from src.code_analysis import (
    LinearCode, WeightDistribution, new_code, ratio_le_half, report_from_distribution
)
from src.error_handler import (
    ConsistencyError, PreconditionError, ValidationError, ValidationManager
)
from src.gf2 import BitMatrix, rank
from src.logger import get_logger
from src.monitoring import get_metrics_collector

logger = get_logger('boolfun')


class WalshMode(Enum):
    FAST = 'FAST'
    NAIVE = 'NAIVE'


def _popcount_parity(values: np.ndarray) -> np.ndarray:
    return (np.bitwise_count(np.asarray(values, dtype=np.uint64)) & 1).astype(np.uint8)


@dataclass(frozen=True, eq=False)
class BooleanFunction:
    """Table de vérité: table[idx(x)] = f(x)"""
    m: int
    table: np.ndarray = field(repr=False)

    def __post_init__(self):
        if self.m < 1:
            raise ValidationError(f"A Boolean function needs at least one variable, got m = {self.m}")
        table = np.array(self.table, dtype=np.uint8).reshape(-1)
        if table.shape[0] != 1 << self.m:
            raise ValidationError(f"Truth table has {table.shape[0]} entries, expected 2^{self.m}")
        if table.size and table.max() > 1:
            raise ValidationError("Truth table entries must be 0 or 1")
        table.flags.writeable = False
        object.__setattr__(self, 'table', table)

    @classmethod
    def from_table(cls, table: Sequence[int]) -> 'BooleanFunction':
        table = np.asarray(table, dtype=np.uint8)
        size = table.shape[0]
        if size < 2 or size & (size - 1):
            raise ValidationError(f"Truth table length {size} is not a power of two")
        return cls(size.bit_length() - 1, table)

    @classmethod
    def linear(cls, m: int, c: int) -> 'BooleanFunction':
        """x ↦ c·x"""
        return cls(m, _popcount_parity(np.arange(1 << m) & c))

    @property
    def size(self) -> int:
        return self.table.shape[0]

    def __call__(self, x: int) -> int:
        return int(self.table[x])

    def support(self) -> np.ndarray:
        """D_f, ordre croissant"""
        return np.flatnonzero(self.table)

    def weight(self) -> int:
        return int(self.table.sum())

    def to_string(self) -> str:
        return ''.join('1' if b else '0' for b in self.table)

    def __eq__(self, other) -> bool:
        if not isinstance(other, BooleanFunction):
            return NotImplemented
        return self.m == other.m and np.array_equal(self.table, other.table)

    def __hash__(self) -> int:
        return hash((self.m, self.table.tobytes()))


@dataclass(frozen=True, eq=False)
class WalshSpectrum:
    """W(ω) pour ω = 0..2^m-1; valeurs paires, congruentes entre elles mod 4 (m ≥ 2), Parseval exact"""
    m: int
    values: np.ndarray = field(repr=False)

    def __post_init__(self):
        values = np.array(self.values, dtype=np.int64).reshape(-1)
        if values.shape[0] != 1 << self.m:
            raise ConsistencyError(f"Spectrum has {values.shape[0]} values, expected 2^{self.m}")
        if np.any(np.abs(values) > 1 << self.m):
            raise ConsistencyError("Spectrum value exceeds 2^m in magnitude")
        if np.any(values % 2):
            raise ConsistencyError("Walsh values must all be even")
        if self.m >= 2 and np.unique(values % 4).shape[0] > 1:
            raise ConsistencyError("Walsh values must be pairwise congruent mod 4")
        if int(np.sum(values * values)) != 1 << (2 * self.m):
            raise ConsistencyError("Spectrum violates Parseval's relation")
        values = values.astype(np.int32)
        values.flags.writeable = False
        object.__setattr__(self, 'values', values)

    def __getitem__(self, omega: int) -> int:
        return int(self.values[omega])

    def __eq__(self, other) -> bool:
        if not isinstance(other, WalshSpectrum):
            return NotImplemented
        return self.m == other.m and np.array_equal(self.values, other.values)

    def __hash__(self) -> int:
        return hash((self.m, self.values.tobytes()))

    def value_counts(self) -> List[Tuple[int, int]]:
        vals, counts = np.unique(self.values, return_counts=True)
        return [(int(v), int(c)) for v, c in zip(vals, counts)]

    def is_affine_free(self) -> bool:
        """Aucune valeur de module 2^m"""
        return not np.any(np.abs(self.values.astype(np.int64)) == 1 << self.m)


@dataclass(frozen=True)
class PartialSpread:
    """s sous-espaces de dimension t = m/2 de F_2^m, d'intersections deux à deux triviales"""
    m: int
    s: int
    subspaces: Tuple[BitMatrix, ...]

    @property
    def t(self) -> int:
        return self.m // 2

    def points(self, i: int) -> np.ndarray:
        """Les 2^t points de E_i (codage entier)"""
        basis = self.subspaces[i].to_bits().astype(np.int64)
        generators = (basis << np.arange(self.m)).sum(axis=1)
        pts = np.zeros(1, dtype=np.int64)
        for g in generators:
            pts = np.concatenate([pts, pts ^ g])
        return pts


def walsh_spectrum(f: BooleanFunction, mode: WalshMode = WalshMode.FAST) -> WalshSpectrum:
    """W_f(ω) = Σ_x (-1)^{f(x) + ω·x}"""
    mode = WalshMode(mode)
    signs = 1 - 2 * f.table.astype(np.int32)

    if mode is WalshMode.FAST:
        ValidationManager.require_capacity('fast Walsh transform', f.m, Config.WALSH_FAST_MAX_VARS)
        a = signs.copy()
        h = 1
        while h < f.size:
            a = a.reshape(-1, 2, h)
            a = np.stack((a[:, 0, :] + a[:, 1, :], a[:, 0, :] - a[:, 1, :]), axis=1)
            h *= 2
        values = a.reshape(-1)
    else:
        ValidationManager.require_capacity('naive Walsh transform', f.m, Config.WALSH_NAIVE_MAX_VARS)
        H = hadamard(f.size, dtype=np.int8)
        values = np.empty(f.size, dtype=np.int64)
        chunk = max(1, (1 << 22) // f.size)
        for i0 in range(0, f.size, chunk):
            values[i0:i0 + chunk] = H[i0:i0 + chunk].astype(np.int64) @ signs

    get_metrics_collector().increment_counter('walsh_transforms', tags={'mode': mode.value})
    return WalshSpectrum(f.m, values)


def is_bent(f: BooleanFunction) -> bool:
    if f.m % 2:
        raise ValidationError(f"Bentness needs an even number of variables, got m = {f.m}")
    W = walsh_spectrum(f)
    return bool(np.all(np.abs(W.values) == 1 << (f.m // 2)))


def build_Cf(f: BooleanFunction) -> LinearCode:
    """C_f = {(a·f(x) + b·x)_{x ≠ 0}}; lignes: les m formes coordonnées puis f"""
    if f(0) != 0:
        raise PreconditionError("build_Cf requires f(0) = 0")
    if f.weight() == 0:
        raise PreconditionError("build_Cf requires f not identically zero")
    if not walsh_spectrum(f).is_affine_free():
        raise PreconditionError("f is linear (|W_f| = 2^m somewhere); C_f would lose a dimension")

    xs = np.arange(1, f.size, dtype=np.int64)
    coordinate_rows = ((xs[None, :] >> np.arange(f.m)[:, None]) & 1).astype(np.uint8)
    bits = np.vstack([coordinate_rows, f.table[1:][None, :]])
    code = LinearCode(BitMatrix.from_bits(bits))
    logger.debug(f"Built C_f: [{code.n},{code.k}]")
    return code


def build_CDf(f: BooleanFunction, require_full_dimension: bool = True) -> LinearCode:
    """C_{D_f} = {(x·d_1, ..., x·d_n)}; colonnes = éléments de D_f croissants"""
    support = f.support()
    if support.shape[0] == 0:
        raise PreconditionError("D_f is empty")

    n = support.shape[0]
    if require_full_dimension:
        W = walsh_spectrum(f)
        if np.any(2 * n + W.values[1:].astype(np.int64) == 0):
            raise PreconditionError("2n + W_f(ω) = 0 for some ω ≠ 0; C_{D_f} would lose a dimension")

    bits = ((support[None, :] >> np.arange(f.m)[:, None]) & 1).astype(np.uint8)
    return new_code(BitMatrix.from_bits(bits))


def predict_wd_Cf(W: WalshSpectrum) -> WeightDistribution:
    """Multiset: 0, 2^{m-1} (×2^m - 1), (2^m - W(ω))/2 pour chaque ω"""
    if not W.is_affine_free():
        raise PreconditionError("Spectrum of an affine function; C_f is degenerate")
    size = 1 << W.m
    n = size - 1
    counts = [0] * (n + 1)
    counts[0] = 1
    counts[size // 2] += size - 1
    for value, mult in W.value_counts():
        counts[(size - value) // 2] += mult
    return WeightDistribution(n, tuple(counts))


def predict_wd_CDf(W: WalshSpectrum, n: int) -> WeightDistribution:
    """Poids (2n + W(ω))/4 pour ω ≠ 0"""
    counts = [0] * (n + 1)
    counts[0] = 1
    for omega in range(1, 1 << W.m):
        numerator = 2 * n + W[omega]
        if numerator % 4:
            raise ConsistencyError(f"Non-integral weight (2n + W({omega}))/4 = {numerator}/4")
        w = numerator // 4
        if w == 0:
            raise PreconditionError(f"Codeword for ω = {omega} vanishes; C_(D_f) is not of dimension m")
        if not 0 < w <= n:
            raise ConsistencyError(f"Predicted weight {w} outside 1..{n}")
        counts[w] += 1
    return WeightDistribution(n, tuple(counts))


def so_congruences(values: Sequence[int]) -> bool:
    """W(b) ± W(0) ≡ 0 (mod 8) pour tout b, sur des valeurs brutes"""
    values = np.asarray(values, dtype=np.int64)
    w0 = values[0]
    return bool(np.all((values + w0) % 8 == 0) and np.all((values - w0) % 8 == 0))


def cf_so_check(W: WalshSpectrum) -> bool:
    return so_congruences(W.values)


def cf_so_singly_even_check(W: WalshSpectrum) -> bool:
    """Toutes les valeurs ≡ 4 (mod 8)"""
    return bool(np.all(W.values.astype(np.int64) % 8 == 4))


def cf_minimality_check(W: WalshSpectrum) -> bool:
    """Aucune paire h ≠ l avec W(h) + W(l) = 2^m ou W(h) - W(l) = 2^m"""
    target = 1 << W.m
    vals, counts = np.unique(W.values.astype(np.int64), return_counts=True)
    present = dict(zip(vals.tolist(), counts.tolist()))
    for v, c in present.items():
        partner = target - v
        if partner in present and (partner != v or c > 1):
            return False
        if v - target in present:
            return False
    return True


def make_partial_spread(m: int, s: int) -> PartialSpread:
    """Sous-espaces du spread complet de F_{2^t} × F_{2^t}: {(0, y)} puis les graphes {(x, λx)}"""
    from src.gf2m_field import field_new

    if m < 6 or m % 2:
        raise ValidationError(f"Partial spreads need an even m >= 6, got: {m}")
    t = m // 2
    if not 1 <= s <= (1 << t) + 1:
        raise ValidationError(f"Spread order must be between 1 and {(1 << t) + 1}, got: {s}")

    F = field_new(t)
    unit = 1 << np.arange(t)
    subspaces = []
    vertical = ((unit[:, None] << t) >> np.arange(m)[None, :]) & 1
    subspaces.append(BitMatrix.from_bits(vertical.astype(np.uint8)))
    for lam in range(s - 1):
        images = F.mul(lam, unit) if lam else np.zeros(t, dtype=np.int64)
        points = unit | (np.asarray(images, dtype=np.int64) << t)
        basis = (points[:, None] >> np.arange(m)[None, :]) & 1
        subspaces.append(BitMatrix.from_bits(basis.astype(np.uint8)))

    spread = PartialSpread(m=m, s=s, subspaces=tuple(subspaces[:s]))

    cover = np.zeros(1 << m, dtype=np.int64)
    for i, basis in enumerate(spread.subspaces):
        if rank(basis) != t:
            raise ConsistencyError(f"Spread element {i} has dimension {rank(basis)} instead of {t}")
        cover[spread.points(i)[1:]] += 1
    if np.any(cover > 1):
        raise ConsistencyError("Spread elements intersect non-trivially")
    return spread


def spread_function(P: PartialSpread) -> BooleanFunction:
    """f(x) = 1 ssi x appartient à un nombre impair de E_i ∖ {0}"""
    counts = np.zeros(1 << P.m, dtype=np.int64)
    for i in range(len(P.subspaces)):
        counts[P.points(i)[1:]] += 1
    return BooleanFunction(P.m, (counts % 2).astype(np.uint8))


def spread_spectrum_formula(m: int, s: int) -> List[Tuple[int, int]]:
    """Valeurs (W, multiplicité) attendues pour la fonction d'un spread partiel d'ordre s"""
    t = m // 2
    covered = s * ((1 << t) - 1)
    totals = {}
    for value, mult in (((1 << m) - 2 * covered, 1),
                        (2 * s - (1 << (t + 1)), covered),
                        (2 * s, (1 << m) - 1 - covered)):
        if mult:
            totals[value] = totals.get(value, 0) + mult
    return sorted(totals.items())


def flip_lift(g: BooleanFunction, alpha: int = 0, add_one: bool = False) -> BooleanFunction:
    """f(x, y1, y2) = g_α(x) + y1·y2 (+1), idx = idx(x) + 2^k·y1 + 2^{k+1}·y2

    g_α est g dont la valeur en α est inversée.
    """
    if not 0 <= alpha < g.size:
        raise ValidationError(f"alpha = {alpha} is not a point of F_2^{g.m}")
    if g(alpha) != 0:
        raise PreconditionError(f"flip_lift requires g(alpha) = 0, got g({alpha}) = 1")
    if add_one and alpha != 0:
        raise PreconditionError("The add-one variant requires alpha = 0")

    g_alpha = g.table.copy()
    g_alpha[alpha] ^= 1
    y1y2 = np.array([0, 0, 0, 1], dtype=np.uint8)
    table = (y1y2[:, None] ^ g_alpha[None, :]).reshape(-1)
    if add_one:
        table ^= 1
    return BooleanFunction(g.m + 2, table)


def flip_lift_spectrum(W_g: WalshSpectrum, alpha: int = 0, add_one: bool = False) -> np.ndarray:
    """W_f(b, c1, c2) = ±2(-1)^{c1c2}(W_g(b) - 2(-1)^{b·α}), signe - pour la variante +1"""
    b = np.arange(1 << W_g.m)
    inner = W_g.values.astype(np.int64) - 2 * (1 - 2 * _popcount_parity(b & alpha).astype(np.int64))
    sign = -1 if add_one else 1
    c_signs = np.array([1, 1, 1, -1], dtype=np.int64)
    return (sign * 2 * c_signs[:, None] * inner[None, :]).reshape(-1)


def bent_sign_counts(W: WalshSpectrum) -> Tuple[int, int]:
    """(#{b : W(b) = +2^{m/2}}, #{b : W(b) = -2^{m/2}})"""
    r = 1 << (W.m // 2)
    return int(np.sum(W.values == r)), int(np.sum(W.values == -r))


def predicted_cf_report(W: WalshSpectrum, minimal: Optional[bool] = None):
    """Rapport prédit pour C_f à partir du spectre (distribution, SO, minimalité)"""
    wd = predict_wd_Cf(W)
    if minimal is None:
        minimal = cf_minimality_check(W)
    violates = minimal and ratio_le_half(wd.w_min, wd.w_max)
    return report_from_distribution(wd, self_orthogonal=cf_so_check(W), minimal=minimal, violates_ab=violates)
