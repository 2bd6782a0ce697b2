import unittest
import itertools
import numpy as np
import sys
import os

# Ajouter le répertoire parent au path
sys.path.append(os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

from src.so_constructions import (
    ConstructionResult, build_construction, construct_ding_spread, construct_five_weight,
    construct_five_weight_trace, construct_four_weight_a, construct_four_weight_bent,
    construct_simplex, construct_two_weight, paste_so, simplex, _predicted
)
from src.code_analysis import (
    LinearCode, MinimalityMode, ParityClass, WeightDistribution, is_minimal, is_self_orthogonal,
    power_moment_check, weight_distribution
)
from src.error_handler import PreconditionError, ValidationError
from src.gf2 import BitMatrix, BitVector
from src.utils import read_matrix_file

GOLDEN = os.path.join(os.path.dirname(os.path.dirname(os.path.abspath(__file__))), 'data', 'golden')

def code_from(*rows):
    return LinearCode(BitMatrix.from_strings(list(rows)))

class TestSimplex(unittest.TestCase):

    def test_small_simplex(self):
        """[3,2,2]: tous les mots non nuls de poids 2"""
        code = simplex(2)
        self.assertEqual((code.n, code.k), (3, 2))
        self.assertEqual(weight_distribution(code).terms(), [(0, 1), (2, 3)])
        self.assertFalse(is_self_orthogonal(code))

    def test_golden_basis(self):
        """m = 3, 4: base imprimée"""
        self.assertEqual(simplex(3).generator, read_matrix_file(os.path.join(GOLDEN, 'simplex_3.txt')))
        self.assertEqual(simplex(4).generator, read_matrix_file(os.path.join(GOLDEN, 'simplex_4.txt')))

    def test_constant_weight(self):
        """Poids constant 2^{m-1}, doublement pair pour m ≥ 3"""
        for m in (3, 4, 5, 6):
            wd = weight_distribution(simplex(m))
            self.assertEqual(wd.terms(), [(0, 1), (1 << (m - 1), (1 << m) - 1)])
        self.assertEqual(weight_distribution(simplex(3)).parity_class(), ParityClass.DOUBLY_EVEN)

    def test_ascending_columns(self):
        """Hors bases imprimées: colonne c = encodage de c + 1"""
        bits = simplex(5).generator.to_bits()
        columns = [sum(int(b) << i for i, b in enumerate(bits[:, c])) for c in range(31)]
        self.assertEqual(columns, list(range(1, 32)))

    def test_invalid_m(self):
        """m < 2 refusé"""
        with self.assertRaises(ValidationError):
            simplex(1)

    def test_construct_simplex(self):
        """Prédiction et certification concordent"""
        self.assertTrue(construct_simplex(3).match)
        result = construct_simplex(2)
        self.assertTrue(result.match)
        self.assertFalse(result.certified.self_orthogonal)

class TestPasteSO(unittest.TestCase):

    def setUp(self):
        """C = C' = ⟨1100, 0011⟩"""
        self.C = code_from('1100', '0011')
        self.C_prime = code_from('1100', '0011')

    def test_zero_tails(self):
        """V nul: C complété par des zéros"""
        code = paste_so(self.C, [BitVector.zeros(4)] * 2, self.C_prime)
        self.assertEqual(code.generator.to_strings(), ['11000000', '00110000'])
        self.assertTrue(is_self_orthogonal(code))

    def test_sixteen_distinct_codes(self):
        """4^2 choix de V donnent 16 codes distincts"""
        members = [BitVector.from_string(s) for s in ('0000', '1100', '0011', '1111')]
        codes = [paste_so(self.C, list(V), self.C_prime) for V in itertools.product(members, repeat=2)]
        self.assertEqual(len(codes), 16)
        for code in codes:
            self.assertTrue(is_self_orthogonal(code))
        for a, b in itertools.combinations(codes, 2):
            self.assertFalse(a.same_code(b))

    def test_preconditions(self):
        """C non SO, vecteur hors de C', mauvaise longueur"""
        with self.assertRaises(PreconditionError):
            paste_so(code_from('1100', '0110'), [BitVector.zeros(4)] * 2, self.C_prime)
        with self.assertRaises(PreconditionError):
            paste_so(self.C, [BitVector.zeros(4)] * 2, code_from('1100', '0110'))
        with self.assertRaises(ValidationError):
            paste_so(self.C, [BitVector.from_string('1010'), BitVector.zeros(4)], self.C_prime)
        with self.assertRaises(ValidationError):
            paste_so(self.C, [BitVector.zeros(3)] * 2, self.C_prime)
        with self.assertRaises(ValidationError):
            paste_so(self.C, [BitVector.zeros(4)], self.C_prime)

    def test_pasting_keeps_minimality(self):
        """Coller un code minimal donne un code minimal"""
        base = simplex(3)
        tails = code_from('110000', '001111')
        members = [BitVector.from_string(s) for s in ('000000', '110000', '001111', '111111')]
        rng = np.random.default_rng(17)
        for _ in range(8):
            V = [members[i] for i in rng.integers(0, 4, size=3)]
            code = paste_so(base, V, tails)
            self.assertTrue(is_minimal(code, MinimalityMode.COVER_ORACLE))

class TestTwoWeight(unittest.TestCase):

    def test_two_weight_prediction_is_minimal(self):
        """Deux poids 4 et 10 (w_min/w_max ≤ 1/2): minimalité prédite par le lemme des deux poids"""
        wd = WeightDistribution.from_terms(13, [(0, 1), (4, 3), (10, 4)])
        report = _predicted(wd, True)
        self.assertTrue(report.minimal)
        self.assertTrue(report.violates_ab)
        # 2 et 4: lemme muet, rapport w_min/w_max = 1/2, minimalité non prédite
        report = _predicted(WeightDistribution.from_terms(4, [(0, 1), (2, 2), (4, 1)]), True)
        self.assertIsNone(report.minimal)
        self.assertIsNone(report.violates_ab)

    def test_first_example(self):
        """(3, 6): [13,3,4], 1+3z^4+4z^10"""
        result = construct_two_weight(3, 6)
        self.assertTrue(result.match)
        self.assertEqual((result.code.n, result.code.k, result.certified.d), (13, 3, 4))
        self.assertEqual(result.certified.weight_enumerator, '1+3z^4+4z^10')
        self.assertEqual(result.code.generator, read_matrix_file(os.path.join(GOLDEN, 'ex_two_weight_1.txt')))

    def test_second_example(self):
        """(4, 10): [25,4,8], minimal, viole AB"""
        result = construct_two_weight(4, 10)
        self.assertTrue(result.match)
        self.assertEqual(result.certified.weight_enumerator, '1+7z^8+8z^18')
        self.assertTrue(result.certified.minimal)
        self.assertTrue(result.certified.violates_ab)
        self.assertEqual(result.certified.parity_class, ParityClass.SINGLY_EVEN)

    def test_short_tail(self):
        """(3, 2): poids 4 et 6, pas de violation AB"""
        result = construct_two_weight(3, 2)
        self.assertTrue(result.match)
        self.assertEqual(result.certified.weight_distribution.nonzero_weights(), [4, 6])
        self.assertFalse(result.certified.violates_ab)

    def test_invalid_parameters(self):
        """n' ≢ 2 mod 4 ou m < 3"""
        with self.assertRaises(ValidationError):
            construct_two_weight(3, 4)
        with self.assertRaises(ValidationError):
            construct_two_weight(2, 6)

class TestFourWeight(unittest.TestCase):

    def test_simplex_examples(self):
        """Exemples publiés de la construction à partir du simplexe"""
        result = construct_four_weight_a(3, 6, 2)
        self.assertTrue(result.match)
        self.assertEqual(result.certified.weight_enumerator, '1+z^4+2z^6+2z^8+2z^10')

        result = construct_four_weight_a(4, 10, 4)
        self.assertTrue(result.match)
        self.assertEqual(result.certified.weight_enumerator, '1+3z^8+4z^12+4z^14+4z^18')
        self.assertTrue(result.certified.minimal)
        self.assertTrue(result.certified.violates_ab)

    def test_simplex_invalid_parameters(self):
        """n'' impair, nul ou ≥ n'"""
        for n_second in (3, 0, 6, 8):
            with self.assertRaises(ValidationError):
                construct_four_weight_a(3, 6, n_second)

    def test_bent_example(self):
        """(6, 14): [50,6,16] et identité des moments"""
        result = construct_four_weight_bent(6, 14)
        self.assertTrue(result.match)
        self.assertEqual((result.code.n, result.code.k, result.certified.d), (50, 6, 16))
        self.assertEqual(result.certified.weight_enumerator, '1+15z^16+16z^20+12z^30+20z^34')
        self.assertTrue(result.certified.violates_ab)
        self.assertEqual(result.notes['n_f'], 36)
        self.assertEqual(result.notes['support_size_branch'], 'upper')
        self.assertTrue(power_moment_check(result.code, 6, 14))

    def test_bent_short_tail(self):
        """(6, 2): poids {16, 18, 20, 22}"""
        result = construct_four_weight_bent(6, 2)
        self.assertTrue(result.match)
        self.assertEqual(result.certified.weight_distribution.nonzero_weights(), [16, 18, 20, 22])
        self.assertFalse(result.certified.violates_ab)

    def test_bent_invalid_parameters(self):
        """m impair ou trop petit"""
        with self.assertRaises(ValidationError):
            construct_four_weight_bent(4, 14)
        with self.assertRaises(ValidationError):
            construct_four_weight_bent(7, 14)

class TestSpread(unittest.TestCase):

    def test_published_example(self):
        """(6, 2): [63,7,14] SO simplement pair"""
        result = construct_ding_spread(6, 2)
        self.assertTrue(result.match)
        self.assertEqual((result.code.n, result.code.k, result.certified.d), (63, 7, 14))
        self.assertEqual(result.certified.weight_enumerator, '1+z^14+49z^30+63z^32+14z^38')
        self.assertEqual(result.certified.parity_class, ParityClass.SINGLY_EVEN)
        self.assertTrue(result.notes['ab_claimed'])

    def test_odd_order(self):
        """(6, 3): non SO, minimal"""
        result = construct_ding_spread(6, 3)
        self.assertTrue(result.match)
        self.assertFalse(result.certified.self_orthogonal)
        self.assertTrue(result.certified.minimal)

    def test_order_divisible_by_four(self):
        """(6, 4): SO doublement pair"""
        result = construct_ding_spread(6, 4)
        self.assertTrue(result.match)
        self.assertTrue(result.certified.self_orthogonal)
        self.assertEqual(result.certified.parity_class, ParityClass.DOUBLY_EVEN)

    def test_larger_field(self):
        """(8, 6): SO simplement pair, minimal, sans violation AB"""
        result = construct_ding_spread(8, 6)
        self.assertTrue(result.match)
        self.assertEqual(result.certified.parity_class, ParityClass.SINGLY_EVEN)
        self.assertTrue(result.certified.minimal)
        self.assertFalse(result.certified.violates_ab)

    def test_excluded_orders(self):
        """s ∈ {1, 2^t, 2^t + 1} refusés"""
        for s in (1, 8, 9, 10):
            with self.assertRaises(ValidationError):
                construct_ding_spread(6, s)

class TestFiveWeight(unittest.TestCase):

    def test_published_example(self):
        """k = 6: [255,9,118]"""
        result = construct_five_weight(6)
        self.assertTrue(result.match)
        self.assertEqual((result.code.n, result.code.k, result.certified.d), (255, 9, 118))
        self.assertEqual(result.certified.weight_enumerator,
                         '1+84z^118+36z^122+255z^128+108z^134+28z^138')
        self.assertEqual(result.certified.parity_class, ParityClass.SINGLY_EVEN)
        self.assertTrue(result.certified.minimal)
        self.assertFalse(result.certified.violates_ab)

    def test_table_pairing_recorded(self):
        """Les multiplicités hautes dépendent du signe des valeurs de Walsh"""
        notes = construct_five_weight(6).notes
        self.assertEqual((notes['walsh_plus_count'], notes['walsh_minus_count']), (36, 28))
        self.assertEqual(notes['predicted_top_multiplicities'], {'134': 108, '138': 28})
        self.assertEqual(notes['table_top_multiplicities'], {'134': 28, '138': 108})

    def test_small_field(self):
        """k = 4: [63,7,26]"""
        result = construct_five_weight(4)
        self.assertTrue(result.match)
        self.assertEqual((result.code.n, result.code.k, result.certified.d), (63, 7, 26))
        self.assertEqual(result.certified.weight_distribution.nonzero_weights(), [26, 30, 32, 34, 38])

    def test_invalid_k(self):
        """k impair ou trop petit"""
        for k in (2, 5):
            with self.assertRaises(ValidationError):
                construct_five_weight(k)

    def test_trace_example(self):
        """k = 6: [255,9,66], viole AB"""
        result = construct_five_weight_trace(6)
        self.assertTrue(result.match)
        self.assertEqual(result.certified.weight_enumerator, '1+z^66+189z^126+255z^128+63z^130+3z^190')
        self.assertTrue(result.certified.minimal)
        self.assertTrue(result.certified.violates_ab)

    def test_trace_small_field(self):
        """k = 3: [31,6,10], 10/22 ≤ 1/2"""
        result = construct_five_weight_trace(3)
        self.assertTrue(result.match)
        self.assertEqual((result.code.n, result.code.k, result.certified.d), (31, 6, 10))
        self.assertEqual(result.certified.w_max, 22)

    def test_trace_ratio(self):
        """(2^k + 2)/(3·2^k - 2) ≤ 1/2"""
        for k in range(2, 30):
            self.assertLessEqual(2 * ((1 << k) + 2), 3 * (1 << k) - 2)

class TestDispatch(unittest.TestCase):

    def test_build_construction(self):
        """Aiguillage par nom et sérialisation"""
        result = build_construction('two-weight', {'m': 3, 'n_prime': 6})
        self.assertIsInstance(result, ConstructionResult)
        data = result.to_dict()
        self.assertEqual(list(data), ['construction', 'params', 'predicted', 'certified',
                                      'match', 'mismatches', 'notes'])
        self.assertEqual(data['params'], {'m': 3, 'n_prime': 6})

    def test_unknown_construction(self):
        """Nom inconnu"""
        with self.assertRaises(ValidationError):
            build_construction('seven-weight', {})

if __name__ == '__main__':
    unittest.main()
