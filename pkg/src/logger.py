"""
Module de logging centralisé pour la boîte à outils de codes auto-orthogonaux
"""
import logging
import logging.handlers
import sys
from pathlib import Path
from config.config import Config

class SoqLogger:
    """Gestionnaire de logging centralisé"""

    _instance = None
    _initialized = False

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super(SoqLogger, cls).__new__(cls)
        return cls._instance

    def __init__(self):
        if not self._initialized:
            self.setup_logging()
            self._initialized = True

    def setup_logging(self):
        """Configure le logging avec rotation; la console écrit sur stderr"""

        formatter = logging.Formatter(
            '%(asctime)s - %(name)s - %(levelname)s - [%(filename)s:%(lineno)d] - %(message)s',
            datefmt='%Y-%m-%d %H:%M:%S'
        )

        self.logger = logging.getLogger('soq')
        self.logger.setLevel(getattr(logging, Config.LOG_LEVEL, logging.INFO))
        self.logger.propagate = False

        # Éviter la duplication des handlers
        if not self.logger.handlers:

            # stdout est réservé au JSON de la CLI
            console_handler = logging.StreamHandler(sys.stderr)
            console_handler.setFormatter(formatter)
            console_handler.setLevel(getattr(logging, Config.LOG_LEVEL, logging.INFO))
            self.logger.addHandler(console_handler)

            if Config.LOG_FILE:
                log_dir = Path(Config.LOG_FILE).parent
                log_dir.mkdir(parents=True, exist_ok=True)

                file_handler = logging.handlers.RotatingFileHandler(
                    Config.LOG_FILE,
                    maxBytes=10*1024*1024,  # 10MB
                    backupCount=5,
                    encoding='utf-8'
                )
                file_handler.setFormatter(formatter)
                file_handler.setLevel(logging.DEBUG)

                error_handler = logging.handlers.RotatingFileHandler(
                    str(log_dir / 'errors.log'),
                    maxBytes=5*1024*1024,  # 5MB
                    backupCount=3,
                    encoding='utf-8'
                )
                error_handler.setFormatter(formatter)
                error_handler.setLevel(logging.ERROR)

                self.logger.addHandler(file_handler)
                self.logger.addHandler(error_handler)

    def get_logger(self, name=None):
        """Retourne un logger configuré"""
        if name:
            return logging.getLogger(f'soq.{name}')
        return self.logger

    def set_console_level(self, level):
        """Ajuste le niveau du handler console (option --verbose de la CLI)"""
        for handler in self.logger.handlers:
            if isinstance(handler, logging.StreamHandler) and not isinstance(handler, logging.FileHandler):
                handler.setLevel(level)
        self.logger.setLevel(min(self.logger.level, level))

    def log_enumeration(self, n, k, workers, codewords, execution_time):
        """Log spécialisé pour les énumérations de mots de code"""
        logger = self.get_logger('enumeration')

        message = f"Enumeration: [{n},{k}] | Workers: {workers} | Codewords: {codewords}"
        message += f" | Time: {execution_time:.3f}s"

        logger.debug(message)

    def log_construction(self, name, params, match, execution_time):
        """Log spécialisé pour les constructions"""
        logger = self.get_logger('construction')

        message = f"Construction: {name} | Params: {params} | Match: {match} | Time: {execution_time:.3f}s"

        if match is False:
            logger.warning(message)
        else:
            logger.info(message)

    def log_verification_case(self, case, passed, detail=None):
        """Log d'un cas de vérification des exemples publiés"""
        logger = self.get_logger('verification')

        message = f"Verification: {case} | {'PASS' if passed else 'FAIL'}"
        if detail:
            message += f" | {detail}"

        if passed:
            logger.info(message)
        else:
            logger.error(message)

    def log_performance_metrics(self, component, metrics):
        """Log des métriques de performance"""
        logger = self.get_logger('performance')

        message = f"Performance [{component}]: "
        message += " | ".join([f"{k}: {v}" for k, v in metrics.items()])

        logger.debug(message)

# Instance singleton
soq_logger = SoqLogger()

def get_logger(name=None):
    """Fonction helper pour obtenir un logger"""
    return soq_logger.get_logger(name)
