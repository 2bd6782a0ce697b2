import os
from dotenv import load_dotenv
from pathlib import Path

# Charger le fichier .env s'il existe
env_path = Path(__file__).parent.parent / '.env'
if env_path.exists():
    load_dotenv(env_path)


def _collect_field_poly_overrides():
    """Lit les variables SOQ_FIELD_POLY_<m> (polynômes en hexadécimal)"""
    overrides = {}
    for key, value in os.environ.items():
        if not key.startswith('SOQ_FIELD_POLY_'):
            continue
        suffix = key[len('SOQ_FIELD_POLY_'):]
        if not suffix.isdigit():
            continue
        try:
            overrides[int(suffix)] = int(value, 16)
        except ValueError:
            # Signalé par validate_config
            overrides[int(suffix)] = None
    return overrides


class Config:
    # Logging Configuration
    LOG_LEVEL = os.getenv('LOG_LEVEL', 'INFO').upper()
    LOG_FILE = os.getenv('LOG_FILE', 'logs/soq.log')

    # Enumeration Configuration
    ENUMERATION_WORKERS = int(os.getenv('ENUMERATION_WORKERS', str(os.cpu_count() or 1)))
    ENUMERATION_BLOCK_BITS = int(os.getenv('ENUMERATION_BLOCK_BITS', '12'))
    # Mots de 64 bits par bloc (table basse et bloc de chaque worker)
    ENUMERATION_BLOCK_WORDS = int(os.getenv('ENUMERATION_BLOCK_WORDS', str(2 ** 16)))
    MAX_ENUMERATION_DIMENSION = int(os.getenv('MAX_ENUMERATION_DIMENSION', '28'))
    MAX_PAIRWISE_DIMENSION = int(os.getenv('MAX_PAIRWISE_DIMENSION', '14'))
    MAX_ALL_PAIRS_DIMENSION = int(os.getenv('MAX_ALL_PAIRS_DIMENSION', '14'))
    MAX_SUBCODE_DIMENSION = int(os.getenv('MAX_SUBCODE_DIMENSION', '20'))
    MAX_VECTOR_LENGTH = int(os.getenv('MAX_VECTOR_LENGTH', str(2 ** 20)))

    # Walsh Transform Configuration
    WALSH_FAST_MAX_VARS = int(os.getenv('WALSH_FAST_MAX_VARS', '24'))
    WALSH_NAIVE_MAX_VARS = int(os.getenv('WALSH_NAIVE_MAX_VARS', '12'))

    # Finite Field Configuration
    MAX_FIELD_DEGREE = 16
    FIELD_POLY_OVERRIDES = _collect_field_poly_overrides()

    # Random Corpora
    RANDOM_SEED = int(os.getenv('RANDOM_SEED', '20250101'))
    COUNTEREXAMPLE_MAX_TRIALS = int(os.getenv('COUNTEREXAMPLE_MAX_TRIALS', '100000'))

    # Files
    GOLDEN_DIR = os.getenv('GOLDEN_DIR', str(Path(__file__).parent.parent / 'data' / 'golden'))
    OUTPUT_DIR = os.getenv('OUTPUT_DIR', 'output')

    # Constructions exposées par la CLI
    CONSTRUCTIONS = {
        'simplex': {'name': 'Code simplexe', 'params': ['m']},
        'two-weight': {'name': 'Deux poids (collage)', 'params': ['m', 'nprime']},
        'four-weight-a': {'name': 'Quatre poids (simplexe)', 'params': ['m', 'nprime', 'nsecond']},
        'four-weight-bent': {'name': 'Quatre poids (fonction courbe)', 'params': ['m', 'nprime']},
        'spread': {'name': 'Spread partiel', 'params': ['m', 's']},
        'five-weight': {'name': 'Cinq poids (courbe relevée)', 'params': ['k']},
        'five-weight-trace': {'name': 'Cinq poids (trace)', 'params': ['k']},
    }

    @classmethod
    def field_poly(cls, m):
        """Retourne le polynôme surchargé pour le degré m, ou None"""
        return cls.FIELD_POLY_OVERRIDES.get(m)

    @classmethod
    def set_field_poly(cls, poly):
        """Enregistre un polynôme (degré déduit de la longueur binaire)"""
        degree = poly.bit_length() - 1
        if degree < 1 or degree > cls.MAX_FIELD_DEGREE:
            raise ValueError(f"Field polynomial {poly:#x} has unsupported degree {degree}")
        cls.FIELD_POLY_OVERRIDES[degree] = poly
        return degree

    @classmethod
    def validate_config(cls):
        """Valide la configuration au démarrage"""
        errors = []

        if cls.LOG_LEVEL not in ('DEBUG', 'INFO', 'WARNING', 'ERROR', 'CRITICAL'):
            errors.append(f"LOG_LEVEL must be a logging level name, got {cls.LOG_LEVEL}")

        if cls.ENUMERATION_WORKERS < 1:
            errors.append("ENUMERATION_WORKERS must be greater than 0")

        if not 1 <= cls.ENUMERATION_BLOCK_BITS <= 20:
            errors.append("ENUMERATION_BLOCK_BITS must be between 1 and 20")

        if cls.ENUMERATION_BLOCK_WORDS < 1:
            errors.append("ENUMERATION_BLOCK_WORDS must be greater than 0")

        if not 1 <= cls.MAX_ENUMERATION_DIMENSION <= 28:
            errors.append("MAX_ENUMERATION_DIMENSION must be between 1 and 28")

        if cls.MAX_PAIRWISE_DIMENSION > cls.MAX_ENUMERATION_DIMENSION:
            errors.append("MAX_PAIRWISE_DIMENSION cannot exceed MAX_ENUMERATION_DIMENSION")

        if cls.WALSH_NAIVE_MAX_VARS > cls.WALSH_FAST_MAX_VARS:
            errors.append("WALSH_NAIVE_MAX_VARS cannot exceed WALSH_FAST_MAX_VARS")

        for degree, poly in cls.FIELD_POLY_OVERRIDES.items():
            if poly is None:
                errors.append(f"SOQ_FIELD_POLY_{degree} is not a hexadecimal polynomial")
            elif poly.bit_length() - 1 != degree:
                errors.append(f"SOQ_FIELD_POLY_{degree} has degree {poly.bit_length() - 1}")

        if cls.COUNTEREXAMPLE_MAX_TRIALS < 1:
            errors.append("COUNTEREXAMPLE_MAX_TRIALS must be greater than 0")

        if errors:
            raise ValueError(f"Configuration errors: {', '.join(errors)}")

        return True
