"""
Algèbre linéaire sur GF(2) en représentation compacte (mots de 64 bits)

Le bit i d'un vecteur logique est le bit (i mod 64) du mot i // 64.
Le poids est donc la somme des popcounts par mot et le produit scalaire
la parité du popcount du ET bit à bit.
"""
from typing import Iterable, List, Sequence, Tuple

import numpy as np

from config.config import Config
from src.error_handler import ValidationError, ValidationManager

WORD_BITS = 64


def n_words(n_bits: int) -> int:
    return (n_bits + WORD_BITS - 1) // WORD_BITS


def pack_bits(bits: np.ndarray) -> np.ndarray:
    """Compacte un tableau (..., n) de 0/1 en mots uint64 (..., ceil(n/64))"""
    bits = np.asarray(bits, dtype=np.uint8)
    n = bits.shape[-1]
    n_bytes = n_words(n) * 8
    packed = np.packbits(bits, axis=-1, bitorder='little')
    if packed.shape[-1] < n_bytes:
        pad = [(0, 0)] * (packed.ndim - 1) + [(0, n_bytes - packed.shape[-1])]
        packed = np.pad(packed, pad)
    packed = np.ascontiguousarray(packed)
    return packed.view('<u8').astype(np.uint64).reshape(packed.shape[:-1] + (n_words(n),))


def unpack_words(words: np.ndarray, n_bits: int) -> np.ndarray:
    """Inverse de pack_bits"""
    words = np.ascontiguousarray(np.asarray(words, dtype='<u8'))
    as_bytes = words.view(np.uint8).reshape(words.shape[:-1] + (words.shape[-1] * 8,))
    return np.unpackbits(as_bytes, axis=-1, bitorder='little')[..., :n_bits]


def _tail_mask(n_bits: int) -> np.uint64:
    rem = n_bits % WORD_BITS
    if rem == 0:
        return np.uint64(0xFFFFFFFFFFFFFFFF)
    return np.uint64((1 << rem) - 1)


def _check_length(n_bits: int) -> None:
    if n_bits < 0:
        raise ValidationError(f"Vector length must be non-negative, got: {n_bits}")
    ValidationManager.require_capacity('vector length', n_bits, Config.MAX_VECTOR_LENGTH)


class BitVector:
    """Vecteur binaire immuable"""

    __slots__ = ('length', 'words')

    def __init__(self, length: int, words: np.ndarray):
        _check_length(length)
        words = np.array(words, dtype=np.uint64).reshape(-1)
        if words.shape[0] != n_words(length):
            raise ValidationError(f"Expected {n_words(length)} words for length {length}, got {words.shape[0]}")
        if length and (words[-1] & ~_tail_mask(length)):
            raise ValidationError("Bits beyond the vector length must be zero")
        words.flags.writeable = False
        object.__setattr__(self, 'length', length)
        object.__setattr__(self, 'words', words)

    def __setattr__(self, name, value):
        raise AttributeError("BitVector is immutable")

    @classmethod
    def from_bits(cls, bits: Iterable[int]) -> 'BitVector':
        bits = np.asarray(list(bits) if not isinstance(bits, np.ndarray) else bits, dtype=np.uint8)
        if bits.size and bits.max() > 1:
            raise ValidationError("Bits must be 0 or 1")
        return cls(bits.shape[0], pack_bits(bits))

    @classmethod
    def from_string(cls, text: str) -> 'BitVector':
        if any(ch not in '01' for ch in text):
            raise ValidationError(f"Invalid bit string: {text!r}")
        return cls.from_bits([int(ch) for ch in text])

    @classmethod
    def zeros(cls, length: int) -> 'BitVector':
        return cls(length, np.zeros(n_words(length), dtype=np.uint64))

    @classmethod
    def ones(cls, length: int) -> 'BitVector':
        return cls.from_bits(np.ones(length, dtype=np.uint8))

    def to_bits(self) -> np.ndarray:
        return unpack_words(self.words, self.length)

    def support(self) -> np.ndarray:
        return np.flatnonzero(self.to_bits())

    def concat(self, other: 'BitVector') -> 'BitVector':
        return BitVector.from_bits(np.concatenate([self.to_bits(), other.to_bits()]))

    def __add__(self, other: 'BitVector') -> 'BitVector':
        _require_same_length(self, other)
        return BitVector(self.length, self.words ^ other.words)

    def __and__(self, other: 'BitVector') -> 'BitVector':
        _require_same_length(self, other)
        return BitVector(self.length, self.words & other.words)

    def __len__(self) -> int:
        return self.length

    def __getitem__(self, i: int) -> int:
        if not 0 <= i < self.length:
            raise IndexError(i)
        return int((self.words[i // WORD_BITS] >> np.uint64(i % WORD_BITS)) & np.uint64(1))

    def __eq__(self, other) -> bool:
        if not isinstance(other, BitVector):
            return NotImplemented
        return self.length == other.length and np.array_equal(self.words, other.words)

    def __hash__(self) -> int:
        return hash((self.length, self.words.tobytes()))

    def __str__(self) -> str:
        return ''.join('1' if b else '0' for b in self.to_bits())

    def __repr__(self) -> str:
        return f"BitVector('{self}')"


def _require_same_length(u: BitVector, v: BitVector) -> None:
    if u.length != v.length:
        raise ValidationError(f"Length mismatch: {u.length} != {v.length}")


class BitMatrix:
    """Matrice binaire immuable, une ligne compacte par rangée du tableau de mots"""

    __slots__ = ('n_cols', 'words')

    def __init__(self, words: np.ndarray, n_cols: int):
        _check_length(n_cols)
        words = np.array(words, dtype=np.uint64)
        if words.ndim != 2 or words.shape[1] != n_words(n_cols):
            raise ValidationError(f"Word array of shape {words.shape} does not fit {n_cols} columns")
        if n_cols and words.shape[0] and np.any(words[:, -1] & ~_tail_mask(n_cols)):
            raise ValidationError("Bits beyond the column count must be zero")
        words.flags.writeable = False
        object.__setattr__(self, 'n_cols', n_cols)
        object.__setattr__(self, 'words', words)

    def __setattr__(self, name, value):
        raise AttributeError("BitMatrix is immutable")

    @classmethod
    def from_bits(cls, bits) -> 'BitMatrix':
        bits = np.asarray(bits, dtype=np.uint8)
        if bits.ndim != 2:
            raise ValidationError(f"Expected a 2D bit array, got shape {bits.shape}")
        if bits.size and bits.max() > 1:
            raise ValidationError("Bits must be 0 or 1")
        return cls(pack_bits(bits), bits.shape[1])

    @classmethod
    def from_rows(cls, rows: Sequence[BitVector], n_cols: int = None) -> 'BitMatrix':
        if not rows:
            if n_cols is None:
                raise ValidationError("n_cols is required for an empty matrix")
            return cls.empty(n_cols)
        lengths = {r.length for r in rows}
        if len(lengths) != 1 or (n_cols is not None and lengths != {n_cols}):
            raise ValidationError(f"All rows must share one length, got {sorted(lengths)}")
        return cls(np.stack([r.words for r in rows]), rows[0].length)

    @classmethod
    def from_strings(cls, lines: Sequence[str]) -> 'BitMatrix':
        return cls.from_rows([BitVector.from_string(line) for line in lines])

    @classmethod
    def empty(cls, n_cols: int) -> 'BitMatrix':
        return cls(np.zeros((0, n_words(n_cols)), dtype=np.uint64), n_cols)

    @classmethod
    def identity(cls, k: int) -> 'BitMatrix':
        return cls.from_bits(np.eye(k, dtype=np.uint8))

    @property
    def n_rows(self) -> int:
        return self.words.shape[0]

    @property
    def shape(self) -> Tuple[int, int]:
        return self.n_rows, self.n_cols

    @property
    def rows(self) -> List[BitVector]:
        return [BitVector(self.n_cols, w) for w in self.words]

    def row(self, i: int) -> BitVector:
        return BitVector(self.n_cols, self.words[i])

    def to_bits(self) -> np.ndarray:
        return unpack_words(self.words, self.n_cols)

    def to_strings(self) -> List[str]:
        return [''.join('1' if b else '0' for b in row) for row in self.to_bits()]

    def permute_columns(self, permutation: Sequence[int]) -> 'BitMatrix':
        """La colonne c du résultat est la colonne permutation[c] de l'entrée"""
        permutation = np.asarray(permutation, dtype=np.int64)
        if sorted(permutation.tolist()) != list(range(self.n_cols)):
            raise ValidationError("Not a permutation of the columns")
        return BitMatrix.from_bits(self.to_bits()[:, permutation])

    def hstack(self, other: 'BitMatrix') -> 'BitMatrix':
        if self.n_rows != other.n_rows:
            raise ValidationError(f"Row count mismatch: {self.n_rows} != {other.n_rows}")
        return BitMatrix.from_bits(np.hstack([self.to_bits(), other.to_bits()]))

    def vstack(self, other: 'BitMatrix') -> 'BitMatrix':
        if self.n_cols != other.n_cols:
            raise ValidationError(f"Column count mismatch: {self.n_cols} != {other.n_cols}")
        return BitMatrix(np.vstack([self.words, other.words]), self.n_cols)

    def gram(self) -> np.ndarray:
        """M·Mᵀ sur GF(2), matrice uint8 (k, k)"""
        overlap = np.bitwise_count(self.words[:, None, :] & self.words[None, :, :]).sum(axis=2)
        return (overlap & 1).astype(np.uint8)

    def __eq__(self, other) -> bool:
        if not isinstance(other, BitMatrix):
            return NotImplemented
        return self.n_cols == other.n_cols and np.array_equal(self.words, other.words)

    def __hash__(self) -> int:
        return hash((self.n_cols, self.words.shape, self.words.tobytes()))

    def __repr__(self) -> str:
        return f"BitMatrix({self.n_rows}x{self.n_cols})"


def weight(v: BitVector) -> int:
    return int(np.bitwise_count(v.words).sum())


def inner_product(u: BitVector, v: BitVector) -> int:
    _require_same_length(u, v)
    return int(np.bitwise_count(u.words & v.words).sum()) & 1


def rref(M: BitMatrix) -> Tuple[BitMatrix, int, List[int]]:
    """Forme échelonnée réduite; pivot = colonne non nulle la plus à gauche, ligne disponible la plus haute"""
    R = np.array(M.words, dtype=np.uint64)
    n_rows = R.shape[0]
    pivot_cols: List[int] = []
    r = 0

    for c in range(M.n_cols):
        if r == n_rows:
            break
        w = c // WORD_BITS
        bit = np.uint64(1) << np.uint64(c % WORD_BITS)
        candidates = np.flatnonzero(R[r:, w] & bit)
        if candidates.size == 0:
            continue
        p = r + int(candidates[0])
        if p != r:
            R[[r, p]] = R[[p, r]]
        others = (R[:, w] & bit) != 0
        others[r] = False
        R[others] ^= R[r]
        pivot_cols.append(c)
        r += 1

    return BitMatrix(R, M.n_cols), r, pivot_cols


def rank(M: BitMatrix) -> int:
    return rref(M)[1]


def nullspace(M: BitMatrix) -> BitMatrix:
    """Base de {v : M·vᵀ = 0}, de taille n_cols - rang"""
    R, r, pivots = rref(M)
    n = M.n_cols
    pivot_set = set(pivots)
    free = [c for c in range(n) if c not in pivot_set]
    if not free:
        return BitMatrix.empty(n)

    R_bits = R.to_bits()[:r]
    basis = np.zeros((len(free), n), dtype=np.uint8)
    basis[np.arange(len(free)), free] = 1
    if r:
        basis[:, pivots] = R_bits[:, free].T
    return BitMatrix.from_bits(basis)


def in_row_space(M: BitMatrix, v: BitVector) -> bool:
    if v.length != M.n_cols:
        raise ValidationError(f"Length mismatch: {v.length} != {M.n_cols}")
    return rank(M.vstack(BitMatrix.from_rows([v]))) == rank(M)


def standard_form(G: BitMatrix) -> Tuple[BitMatrix, Tuple[int, ...]]:
    """(I_k | A) et la permutation de colonnes appliquée à l'entrée"""
    R, r, pivots = rref(G)
    if r < G.n_rows:
        raise ValidationError(f"standard_form requires full row rank: rank {r} < {G.n_rows} rows")

    permutation = list(range(G.n_cols))
    for j, p in enumerate(pivots):
        if p != j:
            permutation[j], permutation[p] = permutation[p], permutation[j]

    return R.permute_columns(permutation), tuple(permutation)
