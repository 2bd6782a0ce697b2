"""
Constructions de codes binaires auto-orthogonaux simplement pairs

Chaque construction renvoie le code construit, le rapport prédit par la
théorie (distribution de poids, auto-orthogonalité, minimalité) et le rapport
certifié par énumération exhaustive.
"""
import time
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence

import numpy as np

from config.config import Config
from src.boolfun import (
    bent_sign_counts, build_CDf, build_Cf, flip_lift, make_partial_spread,
    spread_function, spread_spectrum_formula, walsh_spectrum
)
from src.code_analysis import (
    AnalysisReport, LinearCode, WeightDistribution, analyze, is_self_orthogonal,
    ratio_le_half, report_from_distribution, two_weight_minimality
)
from src.error_handler import PreconditionError, ValidationError, ValidationManager
from src.gf2 import BitMatrix, BitVector, in_row_space, standard_form
from src.gf2m_field import field_new, find_bent_trace_function, trace_truth_table
from src.logger import get_logger, soq_logger
from src.monitoring import get_metrics_collector, get_performance_monitor
from src.utils import read_matrix_file

logger = get_logger('constructions')

# Bases imprimées disponibles dans data/golden
_GOLDEN_SIMPLEX = {3: 'simplex_3.txt', 4: 'simplex_4.txt'}


@dataclass
class ConstructionResult:
    """Code construit, rapports prédit et certifié"""
    name: str
    params: Dict[str, int]
    code: LinearCode
    predicted: AnalysisReport
    certified: AnalysisReport
    match: bool
    mismatches: List[str] = field(default_factory=list)
    notes: Dict[str, Any] = field(default_factory=dict)

    def to_dict(self) -> Dict[str, Any]:
        return {
            'construction': self.name,
            'params': dict(self.params),
            'predicted': self.predicted.to_dict(),
            'certified': self.certified.to_dict(),
            'match': self.match,
            'mismatches': list(self.mismatches),
            'notes': self.notes,
        }


def _require_valid(name: str, params: Dict[str, Any]) -> None:
    errors = ValidationManager.validate_construction_parameters(name, params)
    if errors:
        raise ValidationError('; '.join(errors))


def _certify(name: str, params: Dict[str, int], code: LinearCode, predicted: AnalysisReport,
             notes: Dict[str, Any] = None, workers: int = None) -> ConstructionResult:
    start_time = time.perf_counter()
    with get_performance_monitor().track('certification', component=name):
        certified = analyze(code, workers)

    mismatches = predicted.mismatches(certified)
    result = ConstructionResult(
        name=name, params=params, code=code, predicted=predicted, certified=certified,
        match=not mismatches, mismatches=mismatches, notes=notes or {}
    )
    get_metrics_collector().increment_counter('constructions_built', tags={'construction': name})
    soq_logger.log_construction(name, params, result.match, time.perf_counter() - start_time)
    if mismatches:
        logger.warning(f"{name} {params}: predicted and certified reports differ on {mismatches}")
    return result


def _predicted(wd: WeightDistribution, self_orthogonal: bool, minimal: bool = None) -> AnalysisReport:
    """Rapport prédit; deux poids w2 ≠ 2·w1, ou 2·w_min > w_max, suffisent à la minimalité"""
    if minimal is None:
        minimal = two_weight_minimality(wd)
    if minimal is None and not ratio_le_half(wd.w_min, wd.w_max):
        minimal = True
    violates = None if minimal is None else (minimal and ratio_le_half(wd.w_min, wd.w_max))
    return report_from_distribution(wd, self_orthogonal=self_orthogonal, minimal=minimal, violates_ab=violates)


def _is_simplex(G: BitMatrix, m: int) -> bool:
    """Les colonnes sont exactement les 2^m - 1 vecteurs non nuls"""
    if G.shape != (m, (1 << m) - 1):
        return False
    bits = G.to_bits().astype(int)
    columns = {sum(int(b) << i for i, b in enumerate(bits[:, c])) for c in range(G.n_cols)}
    return len(columns) == G.n_cols and 0 not in columns


def _golden_simplex(m: int) -> Optional[BitMatrix]:
    filename = _GOLDEN_SIMPLEX.get(m)
    if filename is None:
        return None
    path = Path(Config.GOLDEN_DIR) / filename
    if not path.exists():
        logger.warning(f"Golden simplex basis {path} not found; using ascending columns")
        return None
    G = read_matrix_file(path)
    if not _is_simplex(G, m):
        logger.warning(f"Golden file {path} is not a simplex generator; using ascending columns")
        return None
    return G


def simplex(m: int) -> LinearCode:
    """Code simplexe [2^m - 1, m, 2^{m-1}]

    Pour m = 3, 4 la base imprimée (data/golden) est utilisée; sinon la colonne
    c est le vecteur d'encodage c + 1 (ligne i = bit i).
    """
    if not isinstance(m, int) or m < 2:
        raise ValidationError(f"simplex requires m >= 2, got: {m}")
    ValidationManager.validate_field_degree(m, Config.MAX_FIELD_DEGREE)

    G = _golden_simplex(m)
    if G is None:
        xs = np.arange(1, 1 << m, dtype=np.int64)
        G = BitMatrix.from_bits(((xs[None, :] >> np.arange(m)[:, None]) & 1).astype(np.uint8))
    return LinearCode(G)


def paste_so(C: LinearCode, V: Sequence[BitVector], C_prime: LinearCode) -> LinearCode:
    """Lignes (u_i | v_i): code SO de longueur n + n' dès que C et C' sont SO et V ⊂ C'"""
    if len(V) != C.k:
        raise ValidationError(f"Need one tail vector per generator row: {len(V)} != {C.k}")
    if not is_self_orthogonal(C):
        raise PreconditionError("paste_so requires a self-orthogonal code C")
    if not is_self_orthogonal(C_prime):
        raise PreconditionError("paste_so requires a self-orthogonal tail code C'")
    for i, v in enumerate(V):
        if v.length != C_prime.n:
            raise ValidationError(f"Tail vector {i} has length {v.length}, expected {C_prime.n}")
        if not in_row_space(C_prime.generator, v):
            raise ValidationError(f"Tail vector {i} is not a codeword of C'")

    tails = BitMatrix.from_rows(list(V), n_cols=C_prime.n)
    return LinearCode(C.generator.hstack(tails))


def _repetition_tail(n_prime: int) -> LinearCode:
    """{0, 1_{n'}}"""
    return LinearCode(BitMatrix.from_rows([BitVector.ones(n_prime)]))


def _indicator(n: int, ones: int) -> BitVector:
    """(1_{ones} | 0_{n - ones})"""
    return BitVector.from_bits([1] * ones + [0] * (n - ones))


def construct_simplex(m: int, workers: int = None) -> ConstructionResult:
    params = {'m': m}
    _require_valid('simplex', params)
    code = simplex(m)
    n = (1 << m) - 1
    wd = WeightDistribution.from_terms(n, [(0, 1), (1 << (m - 1), n)])
    return _certify('simplex', params, code, _predicted(wd, self_orthogonal=m >= 3),
                    workers=workers)


def construct_two_weight(m: int, n_prime: int, workers: int = None) -> ConstructionResult:
    """Simplexe collé à {0, 1_{n'}} sur la première ligne"""
    params = {'m': m, 'n_prime': n_prime}
    _require_valid('two-weight', params)

    base = simplex(m)
    V = [BitVector.ones(n_prime)] + [BitVector.zeros(n_prime)] * (m - 1)
    code = paste_so(base, V, _repetition_tail(n_prime))

    half = 1 << (m - 1)
    wd = WeightDistribution.from_terms(code.n, [(0, 1), (half, half - 1), (half + n_prime, half)])
    # Coller un code minimal donne un code minimal
    return _certify('two-weight', params, code, _predicted(wd, True, minimal=True), workers=workers)


def construct_four_weight_a(m: int, n_prime: int, n_second: int, workers: int = None) -> ConstructionResult:
    """Simplexe collé à ⟨1_{n'}, (1_{n''} | 0)⟩ sur les deux premières lignes"""
    params = {'m': m, 'n_prime': n_prime, 'n_second': n_second}
    _require_valid('four-weight-a', params)

    base = simplex(m)
    tail_code = LinearCode(BitMatrix.from_rows([BitVector.ones(n_prime), _indicator(n_prime, n_second)]))
    V = [BitVector.ones(n_prime), _indicator(n_prime, n_second)] + [BitVector.zeros(n_prime)] * (m - 2)
    code = paste_so(base, V, tail_code)

    half, quarter = 1 << (m - 1), 1 << (m - 2)
    wd = WeightDistribution.from_terms(code.n, [
        (0, 1), (half, quarter - 1), (half + n_second, quarter),
        (half + n_prime - n_second, quarter), (half + n_prime, quarter),
    ])
    return _certify('four-weight-a', params, code, _predicted(wd, True, minimal=True), workers=workers)


def construct_four_weight_bent(m: int, n_prime: int, workers: int = None) -> ConstructionResult:
    """C_{D_f} (f = Tr(γ^j x³) courbe) mis sous forme standard, 1_{n'} collé à la première ligne"""
    params = {'m': m, 'n_prime': n_prime}
    _require_valid('four-weight-bent', params)

    F = field_new(m)
    f, j = find_bent_trace_function(F)
    W = walsh_spectrum(f)
    n_f = f.weight()
    base_code = build_CDf(f)
    R, _ = standard_form(base_code.generator)
    base = LinearCode(R)

    V = [BitVector.ones(n_prime)] + [BitVector.zeros(n_prime)] * (m - 1)
    code = paste_so(base, V, _repetition_tail(n_prime))

    quarter, h = 1 << (m - 2), 1 << ((m - 2) // 2)
    upper = W[0] < 0
    if upper:
        # n_f = 2^{m-1} + 2^{(m-2)/2}
        terms = [(quarter, quarter - 1), (quarter + n_prime, quarter - h),
                 (quarter + h, quarter), (quarter + h + n_prime, quarter + h)]
    else:
        terms = [(quarter - h, quarter), (quarter - h + n_prime, quarter - h),
                 (quarter, quarter - 1), (quarter + n_prime, quarter + h)]
    wd = WeightDistribution.from_terms(code.n, [(0, 1)] + terms)

    notes = {
        'bent_exponent_index': j,
        'n_f': n_f,
        'walsh_at_zero': W[0],
        'support_size_branch': 'upper' if upper else 'lower',
    }
    return _certify('four-weight-bent', params, code, _predicted(wd, True, minimal=True),
                    notes=notes, workers=workers)


def construct_ding_spread(m: int, s: int, workers: int = None) -> ConstructionResult:
    """C_f pour la fonction indicatrice (mod 2) d'un spread partiel d'ordre s"""
    params = {'m': m, 's': s}
    _require_valid('spread', params)

    spread = make_partial_spread(m, s)
    f = spread_function(spread)
    code = build_Cf(f)

    size = 1 << m
    counts = {0: 1, size // 2: size - 1}
    for value, mult in spread_spectrum_formula(m, s):
        w = (size - value) // 2
        counts[w] = counts.get(w, 0) + mult
    wd = WeightDistribution.from_terms(size - 1, counts.items())

    t = m // 2
    notes = {'t': t, 'ab_claimed': s <= 1 << (t - 2)}
    return _certify('spread', params, code, _predicted(wd, s % 2 == 0, minimal=True),
                    notes=notes, workers=workers)


def _five_weight_distribution(k: int, plus: int, minus: int) -> WeightDistribution:
    """Poids croissants: 3N, P, 2^{k+2} - 1, 3P, N"""
    r = 1 << (k // 2)
    two = 1 << (k + 1)
    return WeightDistribution.from_terms((1 << (k + 2)) - 1, [
        (0, 1), (two - r - 2, 3 * minus), (two - r + 2, plus), (two, (1 << (k + 2)) - 1),
        (two + r - 2, 3 * plus), (two + r + 2, minus),
    ])


def construct_five_weight(k: int, workers: int = None) -> ConstructionResult:
    """C_f pour f = flip_lift(g, 0, +1), g = Tr(γ^j x³) courbe sur GF(2^k)"""
    params = {'k': k}
    _require_valid('five-weight', params)

    F = field_new(k)
    g, j = find_bent_trace_function(F)
    plus, minus = bent_sign_counts(walsh_spectrum(g))
    code = build_Cf(flip_lift(g, 0, add_one=True))

    wd = _five_weight_distribution(k, plus, minus)
    r = 1 << (k // 2)
    two = 1 << (k + 1)
    top, second = two + r + 2, two + r - 2
    notes = {
        'bent_exponent_index': j,
        'walsh_plus_count': plus,
        'walsh_minus_count': minus,
        # La table imprimée échange les deux multiplicités les plus hautes
        'table_top_multiplicities': {str(second): minus, str(top): 3 * plus},
        'predicted_top_multiplicities': {str(second): wd[second], str(top): wd[top]},
    }
    return _certify('five-weight', params, code, _predicted(wd, True, minimal=True),
                    notes=notes, workers=workers)


def construct_five_weight_trace(k: int, workers: int = None) -> ConstructionResult:
    """C_f pour f = flip_lift(Tr, 0, +1) sur GF(2^k)"""
    params = {'k': k}
    _require_valid('five-weight-trace', params)

    F = field_new(k)
    g = trace_truth_table(F, 1, 1)
    code = build_Cf(flip_lift(g, 0, add_one=True))

    base = 1 << k
    wd = WeightDistribution.from_terms((1 << (k + 2)) - 1, [
        (0, 1), (base + 2, 1), (2 * base - 2, 3 * (base - 1)), (2 * base, 4 * base - 1),
        (2 * base + 2, base - 1), (3 * base - 2, 3),
    ])
    return _certify('five-weight-trace', params, code, _predicted(wd, True, minimal=True), workers=workers)


def build_construction(name: str, params: Dict[str, int], workers: int = None) -> ConstructionResult:
    """Aiguillage par nom (utilisé par la CLI et la vérification des exemples)"""
    builders = {
        'simplex': lambda p: construct_simplex(p.get('m'), workers),
        'two-weight': lambda p: construct_two_weight(p.get('m'), p.get('n_prime'), workers),
        'four-weight-a': lambda p: construct_four_weight_a(p.get('m'), p.get('n_prime'), p.get('n_second'), workers),
        'four-weight-bent': lambda p: construct_four_weight_bent(p.get('m'), p.get('n_prime'), workers),
        'spread': lambda p: construct_ding_spread(p.get('m'), p.get('s'), workers),
        'five-weight': lambda p: construct_five_weight(p.get('k'), workers),
        'five-weight-trace': lambda p: construct_five_weight_trace(p.get('k'), workers),
    }
    if name not in builders:
        raise ValidationError(f"Unknown construction: {name}")
    return builders[name](params)
