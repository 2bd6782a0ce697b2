"""
Arithmétique dans GF(2^m) par tables de logarithmes

Un élément est codé par l'entier dont les bits sont les coefficients du
polynôme; 0 code le zéro du corps (sans logarithme). γ est la classe de x.
"""
import functools
from dataclasses import dataclass, field
from typing import Tuple

import numpy as np

from config.config import Config
from src.error_handler import ConsistencyError, ConstructionError, ValidationError, ValidationManager
from src.logger import get_logger

logger = get_logger('field')

# Polynômes de Conway pour p = 2, bits = coefficients (m=6 : x^6+x^4+x^3+x+1)
CONWAY_POLYNOMIALS = {
    1: 0x3,
    2: 0x7,
    3: 0xB,
    4: 0x13,
    5: 0x25,
    6: 0x5B,
    7: 0x83,
    8: 0x11D,
    9: 0x211,
    10: 0x46F,
    11: 0x805,
    12: 0x10EB,
    13: 0x201B,
    14: 0x40A9,
    15: 0x8035,
    16: 0x1002D,
}


@dataclass(frozen=True, eq=False)
class FieldContext:
    m: int
    modulus: int
    log_table: np.ndarray = field(repr=False)
    antilog_table: np.ndarray = field(repr=False)
    trace_table: np.ndarray = field(repr=False)

    @property
    def order(self) -> int:
        return 1 << self.m

    @property
    def generator(self) -> int:
        return int(self.antilog_table[0 if self.m == 1 else 1])

    def element(self, j: int) -> int:
        """γ^j"""
        return int(self.antilog_table[j % (self.order - 1)])

    def mul(self, a, b):
        """Produit, scalaire ou vectoriel"""
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        q1 = self.order - 1
        out = self.antilog_table[(self.log_table[a] + self.log_table[b]) % q1]
        out = np.where((a == 0) | (b == 0), 0, out)
        return int(out) if out.ndim == 0 else out

    def power(self, a, e: int):
        a = np.asarray(a, dtype=np.int64)
        q1 = self.order - 1
        out = self.antilog_table[(self.log_table[a] * e) % q1]
        if e == 0:
            out = np.ones_like(out)
        else:
            out = np.where(a == 0, 0, out)
        return int(out) if out.ndim == 0 else out


def clmul_mod(a: int, b: int, modulus: int) -> int:
    """Produit polynomial sans retenue réduit modulo modulus"""
    m = modulus.bit_length() - 1
    result = 0
    while b:
        if b & 1:
            result ^= a
        b >>= 1
        a <<= 1
        if a >> m & 1:
            a ^= modulus
    return result


def _build_tables(m: int, modulus: int) -> FieldContext:
    q = 1 << m
    log_table = np.zeros(q, dtype=np.int64)
    antilog_table = np.zeros(q, dtype=np.int64)
    seen = np.zeros(q, dtype=bool)

    a = 1
    for i in range(q - 1):
        if seen[a]:
            raise ConsistencyError(
                f"Polynomial {modulus:#x} is not primitive: x has order {i} instead of {q - 1}"
            )
        seen[a] = True
        antilog_table[i] = a
        log_table[a] = i
        a <<= 1
        if a & q:
            a ^= modulus
    if a != 1:
        raise ConsistencyError(f"Polynomial {modulus:#x} is not primitive for degree {m}")
    antilog_table[q - 1] = 1

    # Tr(x) = x + x^2 + ... + x^(2^(m-1)), calculé sur tous les éléments
    elements = np.arange(q, dtype=np.int64)
    acc = elements.copy()
    conj = elements.copy()
    for _ in range(m - 1):
        conj = np.where(conj == 0, 0, antilog_table[(2 * log_table[conj]) % (q - 1)])
        acc ^= conj
    if np.any(acc > 1):
        raise ConsistencyError(f"Trace does not land in GF(2) for modulus {modulus:#x}")

    for table in (log_table, antilog_table, acc):
        table.flags.writeable = False
    return FieldContext(m=m, modulus=modulus, log_table=log_table,
                        antilog_table=antilog_table, trace_table=acc.astype(np.uint8))


@functools.lru_cache(maxsize=None)
def _field_cached(m: int, modulus: int) -> FieldContext:
    logger.debug(f"Building GF(2^{m}) tables for modulus {modulus:#x}")
    return _build_tables(m, modulus)


def field_new(m: int) -> FieldContext:
    """Construit GF(2^m) avec le polynôme configuré (surcharge ou Conway)"""
    ValidationManager.validate_field_degree(m, Config.MAX_FIELD_DEGREE)
    modulus = Config.field_poly(m) or CONWAY_POLYNOMIALS[m]
    if modulus.bit_length() - 1 != m:
        raise ValidationError(f"Modulus {modulus:#x} does not have degree {m}")
    return _field_cached(m, modulus)


def trace(F: FieldContext, a) -> int:
    a = np.asarray(a, dtype=np.int64)
    if np.any((a < 0) | (a >= F.order)):
        raise ValidationError(f"Element outside GF(2^{F.m})")
    out = F.trace_table[a]
    return int(out) if out.ndim == 0 else out


def trace_truth_table(F: FieldContext, c: int, d: int):
    """Table de vérité de x ↦ Tr(c·x^d), indexée par le codage des éléments"""
    from src.boolfun import BooleanFunction

    if d < 1:
        raise ValidationError(f"Exponent must be at least 1, got: {d}")
    xs = np.arange(F.order, dtype=np.int64)
    values = F.mul(c, F.power(xs, d))
    return BooleanFunction(F.m, F.trace_table[values])


def find_bent_trace_function(F: FieldContext, d: int = 3) -> Tuple[object, int]:
    """Premier j ≥ 1 tel que Tr(γ^j x^d) soit courbe; retourne (f, j)"""
    from src.boolfun import is_bent

    if F.m % 2:
        raise ValidationError(f"Bent functions need an even number of variables, got m = {F.m}")
    for j in range(1, F.order - 1):
        f = trace_truth_table(F, F.element(j), d)
        if is_bent(f):
            if j > 1:
                logger.info(f"Tr(gamma x^{d}) is not bent on GF(2^{F.m}); using gamma^{j}")
            return f, j
    raise ConstructionError(f"No bent function of the form Tr(gamma^j x^{d}) on GF(2^{F.m})")
