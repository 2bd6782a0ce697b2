"""
Module de gestion d'erreurs et validations pour la boîte à outils de codes
"""
import functools
from typing import Any, Dict, List
from src.logger import get_logger

logger = get_logger('validation')

class SoqError(Exception):
    """Exception de base de la boîte à outils"""
    pass

class ValidationError(SoqError):
    """Erreur de validation des entrées (paramètres, fichiers)"""
    pass

class MatrixFormatError(ValidationError):
    """Erreur de syntaxe d'un fichier matrice ou table de vérité"""
    def __init__(self, message, line=None, column=None):
        location = ""
        if line is not None:
            location = f"line {line}"
            if column is not None:
                location += f", column {column}"
            location += ": "
        super().__init__(f"{location}{message}")
        self.line = line
        self.column = column

class CapacityError(SoqError):
    """Un garde-fou de taille a été dépassé"""
    def __init__(self, message, check=None, limit=None, requested=None):
        super().__init__(message)
        self.check = check
        self.limit = limit
        self.requested = requested

class PreconditionError(SoqError):
    """Une précondition mathématique n'est pas satisfaite"""
    pass

class ConsistencyError(SoqError):
    """Incohérence interne (polynôme non primitif, poids non entier, ...)"""
    pass

class ConstructionError(SoqError):
    """Une construction n'a pas pu être réalisée"""
    pass

class ValidationManager:
    """Gestionnaire centralisé des validations"""

    @staticmethod
    def require_capacity(check: str, value: int, limit: int) -> None:
        """Lève CapacityError si value dépasse limit"""
        if value > limit:
            logger.warning(f"Capacity guard '{check}' exceeded: {value} > {limit}")
            raise CapacityError(
                f"{check}: requested {value} exceeds limit {limit}",
                check=check, limit=limit, requested=value
            )

    @staticmethod
    def validate_field_degree(m: int, max_degree: int) -> int:
        """Valide le degré d'extension d'un corps GF(2^m)"""
        if not isinstance(m, int) or isinstance(m, bool):
            raise ValidationError(f"Field degree must be an integer, got: {m!r}")
        if not 1 <= m <= max_degree:
            raise ValidationError(f"Field degree must be between 1 and {max_degree}, got: {m}")
        return m

    @staticmethod
    def validate_construction_parameters(name: str, params: Dict[str, Any]) -> List[str]:
        """Valide les paramètres d'une construction; retourne la liste des erreurs"""
        errors = []

        m = params.get('m')
        k = params.get('k')
        n_prime = params.get('n_prime')
        n_second = params.get('n_second')
        s = params.get('s')

        if name == 'simplex':
            if m is None or m < 2:
                errors.append(f"simplex requires m >= 2, got: {m}")
        elif name == 'two-weight':
            if m is None or m < 3:
                errors.append(f"two-weight requires m >= 3, got: {m}")
            if n_prime is None or n_prime % 4 != 2:
                errors.append(f"n' must be 2 mod 4, got: {n_prime}")
        elif name == 'four-weight-a':
            if m is None or m < 3:
                errors.append(f"four-weight-a requires m >= 3, got: {m}")
            if n_prime is None or n_prime % 4 != 2:
                errors.append(f"n' must be 2 mod 4, got: {n_prime}")
            if n_second is None or n_second % 2 != 0:
                errors.append(f"n'' must be even, got: {n_second}")
            elif n_second <= 0 or (n_prime is not None and n_second >= n_prime):
                errors.append(f"n'' must satisfy 0 < n'' < n', got: {n_second}")
        elif name == 'four-weight-bent':
            if m is None or m < 6 or m % 2 != 0:
                errors.append(f"four-weight-bent requires an even m >= 6, got: {m}")
            if n_prime is None or n_prime % 4 != 2:
                errors.append(f"n' must be 2 mod 4, got: {n_prime}")
        elif name == 'spread':
            if m is None or m < 6 or m % 2 != 0:
                errors.append(f"spread requires an even m >= 6, got: {m}")
            elif s is None:
                errors.append("spread requires s")
            else:
                t = m // 2
                if not 1 <= s <= 2 ** t + 1:
                    errors.append(f"s must be between 1 and {2 ** t + 1}, got: {s}")
                elif s in (1, 2 ** t, 2 ** t + 1):
                    errors.append(f"s = {s} is excluded (s must avoid 1, 2^t and 2^t+1)")
        elif name == 'five-weight':
            if k is None or k < 4 or k % 2 != 0:
                errors.append(f"five-weight requires an even k >= 4, got: {k}")
        elif name == 'five-weight-trace':
            if k is None or k < 3:
                errors.append(f"five-weight-trace requires k >= 3, got: {k}")
        else:
            errors.append(f"Unknown construction: {name}")

        if errors:
            logger.warning(f"Validation errors for construction {name}: {errors}")

        return errors

    @staticmethod
    def parse_enumerator_count(value: Any) -> int:
        """Convertit un coefficient d'énumérateur en entier non négatif"""
        try:
            count = int(value)
        except (TypeError, ValueError):
            raise ValidationError(f"Invalid enumerator coefficient: {value!r}")
        if count < 0:
            raise ValidationError(f"Enumerator coefficient must be non-negative, got: {count}")
        return count

class ErrorHandler:
    """Gestionnaire centralisé des erreurs"""

    @staticmethod
    def name_capacity_check(check: str):
        """Décorateur: préfixe les CapacityError avec le nom de la sous-vérification"""
        def decorator(func):
            @functools.wraps(func)
            def wrapper(*args, **kwargs):
                try:
                    return func(*args, **kwargs)
                except CapacityError as e:
                    logger.error(f"Capacity error in {check}: {e}")
                    raise CapacityError(
                        f"{check}: {e}", check=check, limit=e.limit, requested=e.requested
                    ) from e
            return wrapper
        return decorator

    @staticmethod
    def log_and_reraise(func):
        """Décorateur qui log les erreurs de la boîte à outils puis les relance"""
        @functools.wraps(func)
        def wrapper(*args, **kwargs):
            try:
                return func(*args, **kwargs)
            except SoqError as e:
                logger.error(f"{type(e).__name__} in {func.__name__}: {e}")
                raise
        return wrapper

