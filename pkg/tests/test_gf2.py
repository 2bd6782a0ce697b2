import unittest
import numpy as np
import sys
import os

# Ajouter le répertoire parent au path
sys.path.append(os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

from src.gf2 import (
    BitMatrix, BitVector, in_row_space, inner_product, nullspace, pack_bits, rank, rref,
    standard_form, unpack_words, weight
)
from src.code_analysis import LinearCode, new_code, weight_distribution
from src.error_handler import CapacityError, ValidationError
from src.so_constructions import simplex
from config.config import Config

class TestBitVector(unittest.TestCase):

    def setUp(self):
        """Vecteurs de test"""
        self.u = BitVector.from_string('110100')
        self.v = BitVector.from_string('011100')

    def test_weight_and_inner_product(self):
        """Poids et produit scalaire"""
        self.assertEqual(weight(self.u), 3)
        self.assertEqual(weight(self.v), 3)
        # Intersection {1, 3}: parité paire
        self.assertEqual(inner_product(self.u, self.v), 0)
        self.assertEqual(inner_product(self.u, BitVector.from_string('100000')), 1)

    def test_xor_and_concat(self):
        """Somme et concaténation"""
        self.assertEqual(str(self.u + self.v), '101000')
        self.assertEqual(str(self.u.concat(self.v)), '110100011100')
        self.assertEqual(str(self.u & self.v), '010100')

    def test_length_mismatch(self):
        """Longueurs différentes refusées"""
        with self.assertRaises(ValidationError):
            inner_product(self.u, BitVector.from_string('101'))
        with self.assertRaises(ValidationError):
            self.u + BitVector.ones(7)

    def test_multi_word_vectors(self):
        """Vecteurs sur plusieurs mots de 64 bits"""
        bits = np.zeros(130, dtype=np.uint8)
        bits[[0, 63, 64, 129]] = 1
        v = BitVector.from_bits(bits)
        self.assertEqual(weight(v), 4)
        self.assertEqual(v[129], 1)
        self.assertEqual(v[128], 0)
        np.testing.assert_array_equal(v.support(), [0, 63, 64, 129])
        self.assertEqual(weight(BitVector.ones(130)), 130)

    def test_pack_unpack(self):
        """pack_bits et unpack_words sont inverses"""
        rng = np.random.default_rng(7)
        bits = rng.integers(0, 2, size=(5, 100), dtype=np.uint8)
        np.testing.assert_array_equal(unpack_words(pack_bits(bits), 100), bits)

    def test_invalid_string(self):
        """Caractère non binaire"""
        with self.assertRaises(ValidationError):
            BitVector.from_string('10a1')

    def test_immutable(self):
        """Les vecteurs sont immuables"""
        with self.assertRaises(AttributeError):
            self.u.length = 3

    def test_capacity_guard(self):
        """Longueur au-delà de MAX_VECTOR_LENGTH"""
        with self.assertRaises(CapacityError) as ctx:
            BitVector.zeros(Config.MAX_VECTOR_LENGTH + 1)
        self.assertEqual(ctx.exception.check, 'vector length')

class TestBitMatrix(unittest.TestCase):

    # Matrice génératrice du code de Hamming [7,4]
    HAMMING = BitMatrix.from_strings([
        '1000110',
        '0100101',
        '0010011',
        '0001111',
    ])

    def setUp(self):
        self.G = self.HAMMING

    def test_rank_and_rref(self):
        """Rang et pivots"""
        R, r, pivots = rref(self.G)
        self.assertEqual(r, 4)
        self.assertEqual(pivots, [0, 1, 2, 3])
        self.assertEqual(R, self.G)

        dependent = BitMatrix.from_strings(['1100', '0110', '1010'])
        self.assertEqual(rank(dependent), 2)
        self.assertEqual(rank(BitMatrix.from_strings(['0000'])), 0)

    def test_rref_rows_keep_shape(self):
        """La forme réduite garde la forme de l'entrée, lignes nulles en bas"""
        M = BitMatrix.from_strings(['0110', '0110', '0011'])
        R, r, pivots = rref(M)
        self.assertEqual(R.shape, (3, 4))
        self.assertEqual(r, 2)
        self.assertEqual(pivots, [1, 2])
        self.assertEqual(R.to_strings(), ['0101', '0011', '0000'])

    def test_nullspace(self):
        """Le noyau est orthogonal aux lignes et de bonne dimension"""
        N = nullspace(self.G)
        self.assertEqual(N.n_rows, 3)
        self.assertFalse(np.any((self.G.to_bits().astype(int) @ N.to_bits().T.astype(int)) % 2))
        self.assertEqual(rank(N), 3)

    def test_in_row_space(self):
        """Appartenance à l'espace ligne"""
        self.assertTrue(in_row_space(self.G, BitVector.from_string('1100011')))
        self.assertFalse(in_row_space(self.G, BitVector.from_string('1000000')))

    def test_standard_form(self):
        """Forme standard (I | A) et permutation de colonnes"""
        G = BitMatrix.from_strings(['0110', '1011'])
        S, perm = standard_form(G)
        np.testing.assert_array_equal(S.to_bits()[:, :2], np.eye(2, dtype=np.uint8))
        self.assertEqual(sorted(perm), [0, 1, 2, 3])
        # Même code à permutation près
        R, _, _ = rref(G)
        self.assertEqual(R.permute_columns(perm), S)

    def test_standard_form_rank_deficient(self):
        """Lignes liées refusées"""
        with self.assertRaises(ValidationError):
            standard_form(BitMatrix.from_strings(['110', '110']))

    def test_gram(self):
        """G·Gᵀ sur GF(2)"""
        gram = self.G.gram()
        self.assertEqual(gram.shape, (4, 4))
        # Ligne 1000110 de poids 3
        self.assertEqual(gram[0, 0], 1)

    def test_stacking(self):
        """Concaténations horizontale et verticale"""
        H = self.G.hstack(BitMatrix.from_strings(['1', '0', '0', '1']))
        self.assertEqual(H.shape, (4, 8))
        V = self.G.vstack(BitMatrix.from_strings(['1111111']))
        self.assertEqual(V.shape, (5, 7))
        with self.assertRaises(ValidationError):
            self.G.hstack(BitMatrix.from_strings(['1']))

class TestRandomInvariants(unittest.TestCase):
    """Invariants sur matrices aléatoires (n ≤ 64, k ≤ 16)"""

    def setUp(self):
        self.rng = np.random.default_rng(2024)

    def random_matrix(self, n_max=64, k_max=16):
        n = int(self.rng.integers(1, n_max + 1))
        k = int(self.rng.integers(1, k_max + 1))
        return BitMatrix.from_bits(self.rng.integers(0, 2, size=(k, n), dtype=np.uint8))

    def test_weight_of_sum(self):
        """wt(u) + wt(v) - wt(u+v) = 2·|supp(u) ∩ supp(v)|"""
        for _ in range(1000):
            n = int(self.rng.integers(1, 200))
            u = BitVector.from_bits(self.rng.integers(0, 2, size=n))
            v = BitVector.from_bits(self.rng.integers(0, 2, size=n))
            self.assertEqual(weight(u) + weight(v) - weight(u + v), 2 * weight(u & v))

    def test_rref_idempotent_and_same_row_space(self):
        """rref(rref(M)) = rref(M), même espace ligne"""
        for _ in range(200):
            M = self.random_matrix()
            R, r, pivots = rref(M)
            R2, r2, pivots2 = rref(R)
            self.assertEqual(R2, R)
            self.assertEqual((r2, pivots2), (r, pivots))
            self.assertEqual(rank(M.vstack(R)), r)
            for row in M.rows:
                self.assertTrue(in_row_space(R, row))

    def test_rank_nullity(self):
        """rang + dim noyau = n et M·Nᵀ = 0"""
        for _ in range(200):
            M = self.random_matrix()
            N = nullspace(M)
            self.assertEqual(rank(M) + N.n_rows, M.n_cols)
            if N.n_rows:
                self.assertEqual(rank(N), N.n_rows)
                product = (M.to_bits().astype(np.int64) @ N.to_bits().T.astype(np.int64)) % 2
                self.assertFalse(np.any(product))

    def test_standard_form_keeps_weights(self):
        """La forme standard engendre un code de même distribution des poids"""
        for _ in range(50):
            M = self.random_matrix()
            if rank(M) == 0:
                continue
            C = new_code(M)
            S, perm = standard_form(C.generator)
            self.assertEqual(sorted(perm), list(range(M.n_cols)))
            self.assertEqual(weight_distribution(LinearCode(S)), weight_distribution(C))

    def test_hamming_is_dual_of_simplex(self):
        """Le noyau du simplexe m = 3 engendre le code de Hamming [7,4]"""
        N = nullspace(simplex(3).generator)
        self.assertEqual(N.shape, (4, 7))
        hamming = LinearCode(N)
        self.assertEqual(weight_distribution(hamming).counts, (1, 0, 0, 7, 7, 0, 0, 1))
        self.assertTrue(LinearCode(nullspace(N)).same_code(simplex(3)))

if __name__ == '__main__':
    unittest.main()
